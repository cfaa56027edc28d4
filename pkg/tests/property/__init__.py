"""
Property-based tests for the Vandermonde approximation toolkit.
"""