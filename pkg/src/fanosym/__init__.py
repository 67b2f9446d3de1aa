"""Exact computations around symmetric-group actions on Fano varieties.

Submodules
----------
grouprep
    Partition combinatorics and minimal faithful degrees of S_k, A_k and covers.
spinmolien
    Spin double covers of A_k as exact matrix groups and their Molien series.
wci
    Weighted complete intersection combinatorics and the symmetric-action search.
fermat
    Smoothness of power-sum complete intersections.
toric
    Class groups and ray partitions of simplicial fans.
bounds
    Prime and Sylow based upper bounds.
"""
__version__ = "0.1.0"
