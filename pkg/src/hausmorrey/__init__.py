"""Morrey-type spaces with mixed radial-angular integrability and Hausdorff operators."""

__version__ = "0.1.0"
