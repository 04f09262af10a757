"""Independent correctness checks: textbook Buchberger and basis certificates.

Everything here goes through ordinary division and S-polynomials only, so it
exercises none of the Janet-tree machinery it is used to validate (the shared
substrate is just polynomial arithmetic).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .poly import MonomialOrder, Polynomial, divides, mon_div, mon_lcm, mon_mul
from .reduction import ReductionContext, interreduce_ordinary, minimalize_heads, nf_j, nf_ordinary

GROEBNER_S_PAIRS = "groebner-s-pairs"
JANET_CERTIFICATE = "janet-basis"
IDEAL_EQUALITY = "ideal-equality"


@dataclass
class CertificateReport:
    """Outcome of one certificate; passed exactly when witnesses is empty."""

    property: str
    passed: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """Classical critical-pair combination cancelling both leading terms."""
    if not f or not g:
        raise ValueError("s-polynomial of a zero polynomial")
    if f.order != g.order:
        raise ValueError("mixed orders")
    l = mon_lcm(f.lm, g.lm)
    a = f.mul_term(mon_div(l, f.lm), 1 / f.lc)
    b = g.mul_term(mon_div(l, g.lm), 1 / g.lc)
    return a - b


def _dedupe_monic(polys):
    out = []
    seen = set()
    for f in polys:
        g = f.monic()
        if g not in seen:
            seen.add(g)
            out.append(g)
    return out


def _validate(polys, order):
    if not polys:
        raise ValueError("empty polynomial set")
    if order is None:
        order = polys[0].order
    for f in polys:
        if not f:
            raise ValueError("zero polynomial")
        if f.order != order:
            raise ValueError("mixed orders")
    return order


def _gm_add(order, lms, pairs, t):
    """Gebauer-Moeller pair update after appending element t.

    Prunes old pairs whose lcm strictly factors through the new head, keeps
    one representative per minimal new lcm, and drops coprime-head pairs.
    """
    lmf = lms[t]
    for i, j in list(pairs):
        l = mon_lcm(lms[i], lms[j])
        if (
            divides(lmf, l)
            and l != mon_lcm(lms[i], lmf)
            and l != mon_lcm(lms[j], lmf)
        ):
            pairs.discard((i, j))
    by_lcm = {}
    for i in range(t):
        by_lcm.setdefault(mon_lcm(lms[i], lmf), []).append(i)
    minimal = []
    for l in sorted(by_lcm, key=order.key):
        if not any(divides(m, l) for m in minimal):
            minimal.append(l)
    for l in minimal:
        if not any(mon_mul(lms[i], lmf) == l for i in by_lcm[l]):
            pairs.add((min(by_lcm[l]), t))


def buchberger_reduced_gb(F, order: MonomialOrder | None = None, *,
                          pair_elimination: str = "gebauer-moeller"):
    """The monic reduced Groebner basis of the ideal generated by F.

    Plain Buchberger with normal (minimal-lcm) pair selection.  Pair
    elimination is "gebauer-moeller" (default) or "none"; both give the same
    basis, the latter reduces every pair and exists for differential testing.
    """
    if pair_elimination not in ("gebauer-moeller", "none"):
        raise ValueError(f"unknown pair elimination: {pair_elimination!r}")
    polys = list(F)
    order = _validate(polys, order)
    basis = []
    lms = []
    pairs = set()
    heap = []
    pushed = set()

    def append(f):
        basis.append(f)
        lms.append(f.lm)
        t = len(basis) - 1
        if pair_elimination == "gebauer-moeller":
            _gm_add(order, lms, pairs, t)
        else:
            for i in range(t):
                pairs.add((i, t))
        for i, j in pairs:
            if (i, j) not in pushed:
                pushed.add((i, j))
                heapq.heappush(heap, (order.key(mon_lcm(lms[i], lms[j])), i, j))

    for f in _dedupe_monic(polys):
        append(f)
    while pairs:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        r = nf_ordinary(s_polynomial(basis[i], basis[j]), basis)
        if r:
            append(r.monic())
    return interreduce_ordinary(minimalize_heads(basis))


def is_groebner(G) -> CertificateReport:
    """Check that every S-polynomial of G reduces to zero by ordinary division."""
    polys = list(G)
    _validate(polys, None)
    witnesses = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            r = nf_ordinary(s_polynomial(polys[i], polys[j]), polys)
            if r:
                witnesses.append((i, j))
    return CertificateReport(GROEBNER_S_PAIRS, not witnesses, witnesses)


def is_janet_basis(G) -> CertificateReport:
    """Check autoreducedness plus that all non-multiplicative prolongations vanish.

    Witnesses are ("duplicate-head", lm), ("reducible-term", index, monomial)
    or ("prolongation", index, variable).
    """
    polys = list(G)
    _validate(polys, None)
    polys = [f.monic() for f in polys]
    witnesses = []
    if len({f.lm for f in polys}) != len(polys):
        seen = set()
        for f in polys:
            if f.lm in seen:
                witnesses.append(("duplicate-head", f.lm))
            seen.add(f.lm)
        return CertificateReport(JANET_CERTIFICATE, False, witnesses)
    ctx = ReductionContext(polys)
    for handle, f in enumerate(polys):
        for mon, _ in f.terms:
            hit = ctx.tree.divisor(mon)
            if hit is not None and hit != handle:
                witnesses.append(("reducible-term", handle, mon))
    for handle, f in enumerate(polys):
        for x in sorted(ctx.tree.non_multiplicative(f.lm)):
            if nf_j(f.mul_var(x), ctx):
                witnesses.append(("prolongation", handle, x))
    return CertificateReport(JANET_CERTIFICATE, not witnesses, witnesses)


def ideals_equal(F1, F2) -> CertificateReport:
    """Compare the reduced Groebner bases of the two generating sets."""
    g1 = buchberger_reduced_gb(F1)
    g2 = buchberger_reduced_gb(F2)
    witnesses = []
    for f in g1:
        if f not in g2:
            witnesses.append(("only-first", str(f)))
    for f in g2:
        if f not in g1:
            witnesses.append(("only-second", str(f)))
    return CertificateReport(IDEAL_EQUALITY, not witnesses, witnesses)
