"""Divided powers, symmetric tensors and multiplicative polynomial laws, computed exactly."""

__version__ = "0.1.0"
