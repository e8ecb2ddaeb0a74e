"""Exact logical and game-theoretic tooling for bounded graph neural networks."""

__version__ = "0.1.0"
