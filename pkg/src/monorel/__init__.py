"""Calculus for monotone linear relations on R^n."""
