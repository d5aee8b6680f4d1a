"""
Test package for pellsolver.

This package contains all tests organized by type:
- unit: Unit tests for individual modules
- integration: End-to-end checks against the worked examples, the CLI and the benchmark
- fixtures: Test data and fixtures
"""
