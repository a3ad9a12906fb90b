"""Homogeneous coupled cell networks: monoid representations, generic
bifurcation classification and feedforward amplification."""

__version__ = "0.1.0"
