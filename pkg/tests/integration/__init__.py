"""
Integration tests for the Vandermonde approximation toolkit.
"""