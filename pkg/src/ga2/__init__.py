"""Planar polynomial automorphisms over Q and F_p."""
