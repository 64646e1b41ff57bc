"""Frobenius cycle types in the quintic subfield of the Hilbert class field of Q(sqrt 1093).

h(1093) = 5, so the degree-5 field is a D5 extension with discriminant 1093^2.
For l != 1093 split in Q(sqrt 1093), Frob has order 1 iff a prime above l is
principal, else order 5. Inert l gives order 2. The ramified prime is
principal (sqrt 1093 generates it), so decomposition = inertia = C2.
Principality is decided by walking the cycle of reduced indefinite forms.
"""
from math import isqrt
from sympy import jacobi_symbol

D = 1093
R = isqrt(D)


def rho(f):
    a, b, c = f
    # b' = -b mod 2c, chosen in the reduced window
    m = 2 * abs(c)
    bp = (-b) % m
    lo = R - m  # want sqrt(D) - 2|c| < b' <= sqrt(D)
    if m > R:
        # pick largest b' <= R with b' == -b mod m, unless below -R
        while bp > R:
            bp -= m
    else:
        while bp <= lo:
            bp += m
        while bp > R:
            bp -= m
    return (c, bp, (bp * bp - D) // (4 * c))


def reduced(f):
    a, b, c = f
    return 0 < b < D ** 0.5 and abs(D ** 0.5 - 2 * abs(a)) < b


def cycle_has_unit(f):
    for _ in range(200):
        if reduced(f):
            break
        f = rho(f)
    start = f
    seen = set()
    while f not in seen:
        seen.add(f)
        if abs(f[0]) == 1:
            return True
        f = rho(f)
    return False


def form_for(l):
    for b in range(1, 2 * l, 2):
        if (b * b - D) % (4 * l) == 0:
            return (l, b, (b * b - D) // (4 * l))
    raise ValueError


def frob_order(l):
    if l == D:
        return "ramified C2"
    k = jacobi_symbol(D, l) if l > 2 else (1 if D % 8 in (1, 7) else -1)
    if k == -1:
        return 2
    return 1 if cycle_has_unit(form_for(l)) else 5


if __name__ == "__main__":
    # sanity: 1093 = principal?  9^2*... check some small split primes
    for l in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 1093):
        print(l, frob_order(l))
