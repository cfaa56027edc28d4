"""
Unit tests for the Vandermonde approximation toolkit.
"""