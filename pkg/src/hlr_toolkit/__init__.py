"""Exact rational toolkit for Hom-Leibniz-Rinehart algebras and crossed modules."""

__version__ = "0.1.0"
