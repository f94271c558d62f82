"""Path-sum and Monte Carlo simulation of time-bin plasmon interference experiments."""

__version__ = "0.1.0"
