"""
Test suite for matrixless.
"""
