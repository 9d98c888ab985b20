"""Tropical 1-tacnodal curves: exact combinatorics and verification."""
