"""
Integration tests for pellsolver.

Worked examples end to end, the command-line interface and the range benchmark.
"""
