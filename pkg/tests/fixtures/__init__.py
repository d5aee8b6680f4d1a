"""
Test fixtures and data for pellsolver.

transcript_61.txt is the substitution transcript of the A=61 class I
distinctive form 5l^2 - 5m^2 - 12lm reduced to value -1 at X = Y = 1.
"""
