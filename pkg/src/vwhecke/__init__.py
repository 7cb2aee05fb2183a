"""Exact verification toolkit for type B/C VW-algebra actions and graded Hecke algebra modules."""
