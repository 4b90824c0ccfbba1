"""Exact computations for isotrivial elliptic and Lagrangian fibrations."""
