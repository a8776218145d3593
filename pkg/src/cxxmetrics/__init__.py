"""Lexical size, complexity, object-orientation and maintainability metrics for C++ trees."""

__version__ = "0.1.0"
