"""Shared test helpers: naive reference implementations and random generators.

Everything here is deliberately independent of the package internals: dict
arithmetic, literal definition-chasing, no trees, no packed keys.
"""

import random
from fractions import Fraction

from janetbasis import MonomialOrder, Polynomial, degrevlex


def naive_degrevlex_greater(u, v):
    """Literal rule: higher degree wins, else last nonzero entry of u-v negative."""
    du, dv = sum(u), sum(v)
    if du != dv:
        return du > dv
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return a < b
    return False


def naive_deglex_greater(u, v):
    du, dv = sum(u), sum(v)
    if du != dv:
        return du > dv
    for a, b in zip(u, v):
        if a != b:
            return a > b
    return False


def poly_to_dict(p):
    return {mon: Fraction(int(c.numerator), int(c.denominator)) for mon, c in p.terms}


def dict_add(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def dict_scale(a, c):
    if not c:
        return {}
    return {m: c * v for m, v in a.items()}


def dict_mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def dict_to_poly(order, d):
    return Polynomial.from_terms(order, d.items())


def random_monomial(rng, n, max_deg):
    while True:
        mon = tuple(rng.randint(0, max_deg) for _ in range(n))
        if sum(mon) <= max_deg:
            return mon


def random_monomial_set(rng, n, max_deg, max_size):
    size = rng.randint(1, max_size)
    return list({random_monomial(rng, n, max_deg) for _ in range(size)})


def random_polynomial(rng, order, max_deg=3, max_terms=4, zero_ok=False):
    terms = {}
    for _ in range(rng.randint(0 if zero_ok else 1, max_terms)):
        mon = random_monomial(rng, order.n, max_deg)
        terms[mon] = terms.get(mon, 0) + rng.randint(-3, 3)
    p = Polynomial.from_terms(order, terms.items())
    if not p and not zero_ok:
        return Polynomial.variable(order, rng.randrange(order.n))
    return p


def random_basis(rng, order, size=3, max_deg=2):
    """A random monic basis with pairwise distinct leading monomials."""
    out = []
    seen = set()
    for _ in range(size * 3):
        if len(out) == size:
            break
        p = random_polynomial(rng, order, max_deg=max_deg)
        if p and p.lm not in seen:
            seen.add(p.lm)
            out.append(p.monic())
    return out


def all_monomials_up_to(n, max_deg):
    """Every exponent tuple in n variables of total degree <= max_deg."""
    out = [()]
    for _ in range(n):
        out = [m + (e,) for m in out for e in range(max_deg + 1 - sum(m))]
    return out
