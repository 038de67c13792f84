"""Exact constructions of graded-division algebras and Galois extensions
over small finite fields.

Everything is computed in exact arithmetic: field scalars are discrete-log
codes, linear algebra runs over lookup tables, and every constructed object
verifies its own defining identities at construction time.
"""

__version__ = "0.1.0"
