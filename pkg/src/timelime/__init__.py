"""Defect-reduction planning over CK metrics with precedence-restricted LIME."""

__version__ = "0.1.0"
