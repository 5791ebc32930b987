"""Heegaard Floer tau invariants from combinatorial data.

Computes tau invariants of knots from grid diagrams (for the 3-sphere)
and from user-supplied filtered complexes (for other 3-manifolds), and
evaluates the full family of rational Seifert/slice/PL-slice genus
bounds, braided-satellite tau bounds, deep-slice deductions and
Floer-simple genus formulas built on them.
"""

__version__ = "0.1.0"
