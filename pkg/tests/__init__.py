"""
corrdim test suite.
"""
