"""
Test package for the Vandermonde approximation toolkit.
"""
