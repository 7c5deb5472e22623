"""Classification toolkit for trace-Hermitian self-dual additive codes
over GF(9), their graph representations, and their equivalence classes."""

__version__ = "0.1.0"
