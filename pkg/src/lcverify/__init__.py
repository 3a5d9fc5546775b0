"""Exact verification of p-torsion questions in local cohomology of determinantal and hypersurface rings."""

__version__ = "0.1.0"
