"""Verification toolkit for the Real Abelian Main Conjecture over real
cyclic fields.

Subpackages by theme:

- characters:   p-adic characters of cyclic groups and group-ring idempotents
- quadratic:    real quadratic fields (fundamental unit, class group)
- cyclounits:   cyclotomic-unit logarithms and norm relations
- lattice:      exact integer lattices (HNF/SNF, indices, relation search)
- casbridge:    GP subprocess bridge and offline fixtures
- verification: per-case orders, analytic indices, capitulation diagnostics
- cli:          command-line front end
"""

__version__ = "0.1.0"
