import math

import pytest
from hypothesis import settings

from fransonlab.circuit import OpticalCircuit, SpdcSource, UnbalancedInterferometer
from fransonlab.units import Wavelength

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def ideal_franson(phi_a=0.0, phi_b=0.0, imbalance=1.2e-9, pump_coherence_time=math.inf):
    """Lossless pair source feeding two matched unbalanced interferometers."""
    return OpticalCircuit((
        SpdcSource(Wavelength(773e-9), Wavelength(1546e-9), pump_coherence_time=pump_coherence_time),
        UnbalancedInterferometer(imbalance, phi_a, id="if1", photon=0),
        UnbalancedInterferometer(imbalance, phi_b, id="if2", photon=1),
    ))


@pytest.fixture
def franson_ideal():
    return ideal_franson()
