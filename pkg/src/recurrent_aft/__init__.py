"""Stable revision with recurrent approximators over tetralattices, and the
Φ approximator for ground hybrid knowledge bases with propositional ontologies."""

__version__ = "0.1.0"
