"""
Integration tests: published error tables and scaling.
"""
