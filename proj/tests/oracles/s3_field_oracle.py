"""Decomposition data for the Galois closure of the cubic field of discriminant 257.

The closure is the totally real S3 sextic of discriminant 257^3 = 16974593.
For unramified l the factorisation pattern of the cubic mod l gives the
Frobenius cycle type: (1,1,1) -> trivial, (1,2) -> transposition, (3) -> 3-cycle.
At 257 the cubic has a double root, so the decomposition group is the inertia
group of order 2, mapping onto Gal(Q(sqrt 257)/Q).
"""
from sympy import Poly, discriminant, factor_list, symbols

x = symbols("x")
f = x**3 - 3 * x**2 - 2 * x + 1

if __name__ == "__main__":
    print("disc", discriminant(f, x))
    for l in (2, 3, 5, 7, 13, 257):
        _, facs = factor_list(f, x, modulus=l)
        pattern = sorted(Poly(g, x).degree() * 1 for g, m in facs for _ in range(m))
        print(l, [(str(g), m) for g, m in facs], pattern)
