"""Parametric frequency conversion of single-photon pulses in slow-light
atomic media."""

__version__ = '0.0.1'
