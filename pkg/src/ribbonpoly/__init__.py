"""Ribbon-graph polynomials, partial duality and quasi-tree expansions."""
