"""
Unit tests for matrixless components.
"""
