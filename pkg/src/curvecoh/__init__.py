"""Exact cohomology complexes of constructible sheaves on curves.

The input is finite gluing data: a finite cover group acting on the generic
fibre, boundary fibres with inertia subgroups and gluing maps.  The output
is an explicit bounded complex of finite ZZ/n-modules together with its
cohomology, the action of a finite Galois quotient on it, and its descent
to a base field of cohomological dimension one.
"""

__version__ = "0.1.0"
