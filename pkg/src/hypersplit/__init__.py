"""Exact hypergeometric sums over finite fields, Q_p and C."""

__version__ = "0.1.0"
