"""Janet head / full normal forms, ordinary normal forms, and autoreduction.

An elementary Janet reduction of a term a*u by a basis element f replaces it
with -(a/lc(f)) * f * (u/lm(f)), and is allowed only when u/lm(f) uses just
the multiplicative variables of lm(f).  The unique-divisor property of Janet
division makes every reduction sequence confluent, so the worklist below
scans terms in descending order.
"""

from __future__ import annotations

import heapq

from .division import JanetTree
from .poly import MonomialOrder, Polynomial, divides, _add_scaled


class ReductionContext:
    """A basis indexed by a Janet tree over its leading monomials.

    Mutations (add/remove) are engine-side bookkeeping; the normal-form
    functions only read.  Leading monomials must stay pairwise distinct.
    """

    __slots__ = ("order", "tree", "_polys", "_next")

    def __init__(self, basis=(), order: MonomialOrder | None = None):
        basis = list(basis)
        if order is None:
            if not basis:
                raise ValueError("an empty context needs an explicit order")
            order = basis[0].order
        self.order = order
        self.tree = JanetTree(order.n)
        self._polys = {}
        self._next = 0
        for f in basis:
            self.add(f)

    def add(self, f: Polynomial) -> int:
        """Index f and return its handle; rejects duplicate leading monomials."""
        if not f:
            raise ValueError("zero polynomial in a reduction context")
        if f.order != self.order:
            raise ValueError("polynomial order differs from context order")
        handle = self._next
        self.tree.insert(f.lm, handle)
        self._polys[handle] = f
        self._next += 1
        return handle

    def remove(self, handle: int) -> Polynomial:
        f = self._polys.pop(handle)
        self.tree.remove(f.lm)
        return f

    def poly(self, handle: int) -> Polynomial:
        return self._polys[handle]

    def items(self):
        return list(self._polys.items())

    def polynomials(self):
        return [self._polys[h] for h in sorted(self._polys)]

    def __len__(self):
        return len(self._polys)


def hnf_j(p: Polynomial, ctx: ReductionContext, stats=None) -> Polynomial:
    """Janet head normal form: reduce the leading term until it has no divisor."""
    t = p._t
    polys = ctx._polys
    tree = ctx.tree
    while t:
        key, u, c = t[0]
        h = tree.divisor(u)
        if h is None:
            break
        ft = polys[h]._t
        fk, flm, flc = ft[0]
        cc = c if flc == 1 else c / flc
        v = tuple(a - b for a, b in zip(u, flm))
        if stats is not None:
            stats.head_reduction_steps += 1
        t = _add_scaled(t, 1, -cc, key - fk, v, ft, 1)
    return Polynomial(ctx.order, t)


def nf_j(p: Polynomial, ctx: ReductionContext, stats=None, skip=None) -> Polynomial:
    """Full Janet normal form: no term of the result has a Janet divisor.

    skip names a context handle whose hits are ignored; autoreduction uses it
    to reduce an element modulo the rest while keeping the full partition.
    """
    t = list(p._t)
    polys = ctx._polys
    tree = ctx.tree
    out = []
    start = 0
    while start < len(t):
        key, u, c = t[start]
        h = tree.divisor(u)
        if h is None or (skip is not None and h == skip):
            out.append(t[start])
            start += 1
            continue
        ft = polys[h]._t
        fk, flm, flc = ft[0]
        cc = c if flc == 1 else c / flc
        v = tuple(a - b for a, b in zip(u, flm))
        if stats is not None:
            if out:
                stats.tail_reduction_steps += 1
            else:
                stats.head_reduction_steps += 1
        t = _add_scaled(t, start + 1, -cc, key - fk, v, ft, 1)
        start = 0
    return Polynomial(ctx.order, out)


def _var_mask(u) -> int:
    m = 0
    for i, e in enumerate(u):
        if e:
            m |= 1 << i
    return m


def nf_ordinary(p: Polynomial, basis) -> Polynomial:
    """Ordinary multivariate division remainder of p by the basis.

    Reducers are tried smallest leading monomial first, which pins the result
    deterministically.  The working polynomial lives in a dict with a heap of
    pending monomials so an elementary step costs O(|reducer| log width);
    deep reduction chains swell the working set far past the reducer sizes.
    """
    basis = [f for f in basis if f]
    if not basis or not p:
        return p
    order = p.order
    reducers = sorted(
        ((sum(f.lm), _var_mask(f.lm), f.lm, f._t) for f in basis),
        key=lambda r: r[3][0][0],
    )
    coeffs = {}
    heap = []
    for k, m, c in p._t:
        coeffs[m] = c
        heap.append((-k, m))
    heapq.heapify(heap)
    out = []
    while heap:
        nk, u = heapq.heappop(heap)
        c = coeffs.pop(u, None)
        if c is None:  # stale heap entry: cancelled or superseded
            continue
        du = sum(u)
        um = _var_mask(u)
        hit = None
        for dg, mg, lmg, ft in reducers:
            if dg > du:
                break
            if mg & um != mg:
                continue
            if all(a <= b for a, b in zip(lmg, u)):
                hit = ft
                break
        if hit is None:
            out.append((-nk, u, c))
            continue
        fk, flm, flc = hit[0]
        cc = c if flc == 1 else c / flc
        kshift = -nk - fk
        v = tuple(a - b for a, b in zip(u, flm))
        for gk, gm, gc in hit[1:]:
            m = tuple(a + b for a, b in zip(gm, v))
            prev = coeffs.get(m)
            if prev is None:
                coeffs[m] = -cc * gc
                heapq.heappush(heap, (-(gk + kshift), m))
            else:
                s = prev - cc * gc
                if s:
                    coeffs[m] = s
                else:
                    del coeffs[m]
    return Polynomial(order, out)


def j_autoreduce(F, order: MonomialOrder | None = None):
    """Janet autoreduction: make every term of every element divisor-free.

    Returns monic polynomials, sorted ascending, generating the same ideal,
    such that no term of any element has a Janet divisor among the other
    leading monomials (with multiplicativity taken over the whole head set).
    """
    pool = list(F)
    if order is None:
        if not pool:
            raise ValueError("autoreduction of an empty set needs an order")
        order = pool[0].order
    for f in pool:
        if not f:
            raise ValueError("zero polynomial in autoreduction input")
        if f.order != order:
            raise ValueError("mixed orders in autoreduction input")
    pool = [f.monic() for f in pool]
    while pool:
        # collapse duplicate heads first: with monic elements the difference
        # is one elementary reduction and strictly drops the leading monomial
        by_lm = {}
        fresh = []
        for f in pool:
            g = by_lm.get(f.lm)
            if g is None:
                by_lm[f.lm] = f
            else:
                d = f - g
                if d:
                    fresh.append(d.monic())
        if fresh or len(by_lm) != len(pool):
            pool = list(by_lm.values()) + fresh
            continue
        ctx = ReductionContext(pool)
        changed = False
        new_pool = []
        for handle, f in enumerate(pool):
            h = nf_j(f, ctx, skip=handle)
            if h != f:
                changed = True
            if h:
                new_pool.append(h.monic())
        if not changed:
            break
        pool = new_pool
    key = lambda f: f._t[0][0]
    return sorted(pool, key=key)


def minimalize_heads(polys):
    """Drop elements whose leading monomial is divisible by another's."""
    ranked = sorted(enumerate(polys), key=lambda it: it[1]._t[0][0])
    kept = []
    for _, f in ranked:
        if not any(divides(g.lm, f.lm) for g in kept):
            kept.append(f)
    return kept


def interreduce_ordinary(polys):
    """Tail-reduce every element by the others until stable; monic, ascending.

    With pairwise indivisible heads this yields the reduced form directly;
    zero remainders (possible for general input) are dropped.
    """
    work = [f.monic() for f in polys if f]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            h = nf_ordinary(work[i], work[:i] + work[i + 1 :])
            if not h:
                del work[i]
                changed = True
                break
            h = h.monic()
            if h != work[i]:
                work[i] = h
                changed = True
    return sorted(work, key=lambda f: f._t[0][0])
