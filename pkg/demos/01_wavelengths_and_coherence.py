"""Photon-pair wavelengths, filter bandwidth and coherence.

Run with ``python demos/01_wavelengths_and_coherence.py``.
"""
from fransonlab.units import (
    MediumParams,
    Wavelength,
    coherence_length_in_medium,
    coherence_time,
    complementary_wavelength,
    group_index_for_delay_per_km,
    sp_lifetime,
    spool_round_trip_delay,
)

pump = Wavelength.from_nm(773)

# Energy conservation fixes the idler once the signal is chosen. At the
# degeneracy point both photons sit at twice the pump wavelength.
for signal_nm in (1546, 1500, 1600):
    idler = complementary_wavelength(Wavelength.from_nm(signal_nm), pump)
    print(f"signal {signal_nm} nm -> idler {idler.nm:.3f} nm")

# The Bragg gratings narrow the photons to 0.8 nm. A Gaussian spectrum of that
# width gives a coherence time of a few ps, far below the 1.2 ns imbalance of
# the interferometers, so a single photon cannot interfere with itself there.
tau = coherence_time(Wavelength.from_nm(1546), 0.8e-9)
lc = coherence_length_in_medium(tau, MediumParams(1.468))
print(f"filtered coherence time {tau * 1e12:.2f} ps, length in fibre {lc * 1e3:.3f} mm")
print(f"unfiltered (80 nm) coherence time {coherence_time(Wavelength.from_nm(1546), 80e-9) * 1e15:.0f} fs")

# The waveguides are 5 and 10 mm long: several coherence lengths.
print(f"shortest waveguide / coherence length = {5e-3 / lc:.1f}")

# Plasmon life-time in a 1 cm waveguide versus the round trip through a spool.
# The spool index is set so that light takes 5 us per km one way.
life = sp_lifetime(1e-2)
spool = MediumParams(group_index_for_delay_per_km(5e-6))
for km in (27, 124):
    dt = spool_round_trip_delay(km, spool)
    print(f"{km:4d} km: delay {dt * 1e3:.3f} ms, delay / life-time = {dt / life:.3g}")
