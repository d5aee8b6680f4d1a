"""
Unit tests for pellsolver modules.

Tests individual solvers and helpers in isolation.
"""
