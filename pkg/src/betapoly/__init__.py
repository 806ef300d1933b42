"""Expected face numbers of random beta, beta' polytopes and random half-sphere cones."""
__version__ = "0.1.0"
