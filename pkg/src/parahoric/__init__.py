"""Exact verification toolkit: root-system level graphs, concave-function
subgroup lattices, and small Steinberg representations of matrix groups
over Z/p^h."""

__version__ = "0.1.0"
