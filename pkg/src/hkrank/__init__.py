"""Binomial-coefficient linear systems over GF(2): construction, exact solving,
combinatorial characterizations and sweeps that compare the two."""

__version__ = "0.1.0"
