"""Exact top Chern classes of first jet bundles for scrolls and hyperquadric fibrations."""

__version__ = "0.1.0"
