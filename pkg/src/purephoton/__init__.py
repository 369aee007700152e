"""Spectral purity of group-velocity-matched SPDC photon pairs."""
