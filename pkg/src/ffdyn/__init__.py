"""Periodic points of polynomial and rational maps over finite fields."""

__version__ = "0.1.0"
