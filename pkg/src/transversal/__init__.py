"""Symbolic workbench for Rees algebras, relation types, Tor and transversality checks."""

__version__ = "0.1.0"
