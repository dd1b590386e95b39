"""Exact arithmetic in a generalized Heisenberg group.

Builds H(Q^2), multiplies a few elements, shows that every commutator is
central, and maps elements to unitriangular matrices.
"""

from fractions import Fraction

import numpy as np

from genheis import HeisenbergGroup, PairingSpace

G = HeisenbergGroup(PairingSpace.ell(2, 2))
u = G.element(1, [1, 0], [0, 1])
v = G.element(Fraction(1, 2), [0, 3], [2, 0])

print("u     =", u)
print("v     =", v)
print("u v   =", G.multiply(u, v))
print("v u   =", G.multiply(v, u))

k = G.commutator(u, v)
print("[u,v] =", k, " closed form:", G.commutator_closed_form(u, v))
print("[u,v] is central:", G.is_central(k))

print("u^5   =", G.power(u, 5))
print("u^-2  =", G.power(u, -2))

print("\nmatrix of u:")
print(np.vectorize(str)(G.matrix_rep(u)))
same = np.array_equal(G.matrix_rep(G.multiply(u, v)), G.matrix_rep(u).dot(G.matrix_rep(v)))
print("matrix(u v) == matrix(u) matrix(v):", same)
