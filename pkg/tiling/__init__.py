"""Exact engine for simultaneous translational and multiplicative tilings of the plane."""
