"""Sparse multivariate polynomials over Q with degree-compatible monomial orders.

Monomials are exponent tuples of fixed length n.  Variable 0 is the greatest
variable of the order and is printed as ``x1``.  Coefficients are exact
rationals (gmpy2.mpq when available, fractions.Fraction otherwise).
"""

from __future__ import annotations

from fractions import Fraction as _Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is in the default install
    from fractions import Fraction as Q


def _q(value):
    # gmpy2 rejects Fraction objects whose internals are not machine ints
    if isinstance(value, _Fraction):
        return Q(int(value.numerator), int(value.denominator))
    return Q(value)

Mon = tuple

DEGREVLEX = "degrevlex"
DEGLEX = "deglex"

# Exponents live in 16-bit digits of the packed order key; key arithmetic is
# only valid while the total degree stays below the digit bound.
_DIGIT_BITS = 16
MAX_DEGREE = (1 << _DIGIT_BITS) - 1


def total_degree(u) -> int:
    """Sum of the exponents of u."""
    return sum(u)


def _check_dim(u, v):
    if len(u) != len(v):
        raise ValueError(f"monomial dimension mismatch: {len(u)} vs {len(v)}")


def mon_mul(u, v):
    """Product of two monomials; raises OverflowError past the degree bound."""
    _check_dim(u, v)
    w = tuple(a + b for a, b in zip(u, v))
    if sum(w) > MAX_DEGREE:
        raise OverflowError(f"monomial degree {sum(w)} exceeds bound {MAX_DEGREE}")
    return w


def divides(u, v) -> bool:
    """True when u divides v componentwise."""
    _check_dim(u, v)
    return all(a <= b for a, b in zip(u, v))


def proper_divides(u, v) -> bool:
    """True when u divides v and deg(u) < deg(v)."""
    return divides(u, v) and sum(u) < sum(v)


def mon_div(u, v):
    """Quotient u / v; raises ValueError when v does not divide u."""
    if not divides(v, u):
        raise ValueError(f"{v} does not divide {u}")
    return tuple(a - b for a, b in zip(u, v))


def mon_lcm(u, v):
    _check_dim(u, v)
    w = tuple(max(a, b) for a, b in zip(u, v))
    if sum(w) > MAX_DEGREE:
        raise OverflowError(f"monomial degree {sum(w)} exceeds bound {MAX_DEGREE}")
    return w


def unit_mon(n):
    return (0,) * n


def mindeg(monomials) -> int:
    """Minimal total degree over a nonempty collection of monomials."""
    degs = [sum(u) for u in monomials]
    if not degs:
        raise ValueError("mindeg of an empty set")
    return min(degs)


class MonomialOrder:
    """A degree-compatible order (degrevlex or deglex) on n-variable monomials.

    The order is exposed as an additive integer key: key(u*v) equals
    key(u) + key(v) - key(1), and u > v in the order iff key(u) > key(v).
    """

    __slots__ = ("kind", "n", "k0", "_shift")

    def __init__(self, kind: str, n: int):
        if kind not in (DEGREVLEX, DEGLEX):
            raise ValueError(f"unknown monomial order kind: {kind!r}")
        if n < 1:
            raise ValueError("order needs at least one variable")
        self.kind = kind
        self.n = n
        self._shift = _DIGIT_BITS * n
        self.k0 = self.key(unit_mon(n))

    def key(self, u) -> int:
        """Packed integer sort key; ascending key order is ascending monomial order."""
        if len(u) != self.n:
            raise ValueError(f"monomial dimension mismatch: {len(u)} vs {self.n}")
        deg = 0
        acc = 0
        if self.kind == DEGREVLEX:
            # tie-break: last nonzero entry of the difference negative => greater
            sh = 0
            for e in u:
                deg += e
                acc += (MAX_DEGREE - e) << sh
                sh += _DIGIT_BITS
        else:
            sh = self._shift
            for e in u:
                deg += e
                sh -= _DIGIT_BITS
                acc += e << sh
        if deg > MAX_DEGREE:
            raise OverflowError(f"monomial degree {deg} exceeds bound {MAX_DEGREE}")
        return (deg << self._shift) + acc

    def compare(self, u, v) -> int:
        """-1, 0 or 1 as u <, =, > v."""
        ku = self.key(u)
        kv = self.key(v)
        return (ku > kv) - (ku < kv)

    def key_degree(self, key: int) -> int:
        """Total degree encoded in a packed key."""
        return key >> self._shift

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.n})"


def degrevlex(n: int) -> MonomialOrder:
    return MonomialOrder(DEGREVLEX, n)


def deglex(n: int) -> MonomialOrder:
    return MonomialOrder(DEGLEX, n)


def _add_scaled(a, ai, c, kshift, v, b, bi):
    """Merge a[ai:] + c * x^v * b[bi:] over (key, mon, coeff) triples.

    Both inputs are strictly descending by key; v is None for an unshifted
    merge.  kshift is key(x^v) - k0 so shifted keys are plain integer adds.
    """
    out = []
    la = len(a)
    lb = len(b)
    if ai < la:
        ta = a[ai]
    if bi < lb:
        tb = b[bi]
        kb = tb[0] + kshift
    while ai < la and bi < lb:
        ka = ta[0]
        if ka > kb:
            out.append(ta)
            ai += 1
            if ai < la:
                ta = a[ai]
        elif ka < kb:
            if v is None:
                out.append((kb, tb[1], c * tb[2]))
            else:
                ub = tb[1]
                out.append((kb, tuple(x + y for x, y in zip(ub, v)), c * tb[2]))
            bi += 1
            if bi < lb:
                tb = b[bi]
                kb = tb[0] + kshift
        else:
            s = ta[2] + c * tb[2]
            if s:
                out.append((ka, ta[1], s))
            ai += 1
            bi += 1
            if ai < la:
                ta = a[ai]
            if bi < lb:
                tb = b[bi]
                kb = tb[0] + kshift
    if ai < la:
        out.extend(a[ai:])
    else:
        while bi < lb:
            tb = b[bi]
            if v is None:
                out.append((tb[0] + kshift, tb[1], c * tb[2]))
            else:
                ub = tb[1]
                out.append(
                    (tb[0] + kshift, tuple(x + y for x, y in zip(ub, v)), c * tb[2])
                )
            bi += 1
    return out


class Polynomial:
    """Immutable polynomial; terms kept strictly descending in the order.

    The empty term sequence is the zero polynomial.  Internal storage is a
    tuple of (key, monomial, coefficient) triples.
    """

    __slots__ = ("order", "_t")

    def __init__(self, order: MonomialOrder, triples=()):
        self.order = order
        self._t = tuple(triples)

    @classmethod
    def from_terms(cls, order: MonomialOrder, items) -> "Polynomial":
        """Build from (monomial, coefficient) pairs; combines and sorts."""
        acc = {}
        for mon, coeff in items:
            mon = tuple(mon)
            if len(mon) != order.n:
                raise ValueError(
                    f"monomial dimension mismatch: {len(mon)} vs {order.n}"
                )
            if any(e < 0 for e in mon):
                raise ValueError(f"negative exponent in {mon}")
            c = acc.get(mon)
            acc[mon] = _q(coeff) if c is None else c + _q(coeff)
        triples = sorted(
            ((order.key(m), m, c) for m, c in acc.items() if c),
            key=lambda t: t[0],
            reverse=True,
        )
        return cls(order, triples)

    @classmethod
    def zero(cls, order: MonomialOrder) -> "Polynomial":
        return cls(order)

    @classmethod
    def constant(cls, order: MonomialOrder, c) -> "Polynomial":
        c = _q(c)
        if not c:
            return cls(order)
        u = unit_mon(order.n)
        return cls(order, ((order.key(u), u, c),))

    @classmethod
    def one(cls, order: MonomialOrder) -> "Polynomial":
        return cls.constant(order, 1)

    @classmethod
    def variable(cls, order: MonomialOrder, i: int) -> "Polynomial":
        """The polynomial x_{i+1} (0-based variable index)."""
        if not 0 <= i < order.n:
            raise ValueError(f"variable index {i} out of range for n={order.n}")
        u = tuple(1 if j == i else 0 for j in range(order.n))
        return cls(order, ((order.key(u), u, Q(1)),))

    @property
    def terms(self):
        """Terms as (monomial, coefficient) pairs, descending."""
        return tuple((m, c) for _, m, c in self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    @property
    def lm(self):
        if not self._t:
            raise ValueError("leading monomial of the zero polynomial")
        return self._t[0][1]

    @property
    def lc(self):
        if not self._t:
            raise ValueError("leading coefficient of the zero polynomial")
        return self._t[0][2]

    @property
    def lt(self):
        if not self._t:
            raise ValueError("leading term of the zero polynomial")
        return self._t[0][1], self._t[0][2]

    def degree(self) -> int:
        """Total degree of the leading monomial (== max over terms)."""
        return sum(self.lm)

    def __len__(self):
        return len(self._t)

    def _require_same_order(self, other):
        if self.order != other.order:
            raise ValueError("polynomials belong to different orders")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_order(other)
        return Polynomial(self.order, _add_scaled(self._t, 0, Q(1), 0, None, other._t, 0))

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_order(other)
        return Polynomial(self.order, _add_scaled(self._t, 0, Q(-1), 0, None, other._t, 0))

    def __neg__(self):
        return Polynomial(self.order, tuple((k, m, -c) for k, m, c in self._t))

    def scale(self, c) -> "Polynomial":
        """Multiply every coefficient by the scalar c."""
        c = _q(c)
        if not c:
            return Polynomial(self.order)
        return Polynomial(self.order, tuple((k, m, c * cc) for k, m, cc in self._t))

    def mul_term(self, mon, coeff=1) -> "Polynomial":
        """Multiply by the single term coeff * x^mon."""
        coeff = _q(coeff)
        if not coeff or not self._t:
            return Polynomial(self.order)
        mon = tuple(mon)
        if len(mon) != self.order.n:
            raise ValueError(f"monomial dimension mismatch: {len(mon)} vs {self.order.n}")
        dm = sum(mon)
        if dm == 0:
            return self.scale(coeff)
        if self.degree() + dm > MAX_DEGREE:
            raise OverflowError(f"monomial degree exceeds bound {MAX_DEGREE}")
        kshift = self.order.key(mon) - self.order.k0
        return Polynomial(
            self.order,
            tuple(
                (k + kshift, tuple(a + b for a, b in zip(m, mon)), coeff * c)
                for k, m, c in self._t
            ),
        )

    def mul_var(self, i: int) -> "Polynomial":
        """Multiply by the variable x_{i+1}; the prolongation workhorse."""
        u = tuple(1 if j == i else 0 for j in range(self.order.n))
        return self.mul_term(u)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._require_same_order(other)
            acc = {}
            for _, m1, c1 in self._t:
                for _, m2, c2 in other._t:
                    m = mon_mul(m1, m2)
                    c = acc.get(m)
                    p = c1 * c2
                    acc[m] = p if c is None else c + p
            return Polynomial.from_terms(self.order, acc.items())
        try:
            return self.scale(other)
        except (TypeError, ValueError):
            return NotImplemented

    __rmul__ = __mul__

    def monic(self) -> "Polynomial":
        """Canonical form with leading coefficient 1."""
        if not self._t:
            return self
        c = self._t[0][2]
        if c == 1:
            return self
        inv = 1 / c
        return Polynomial(self.order, tuple((k, m, inv * cc) for k, m, cc in self._t))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.order == other.order and self._t == other._t

    def __hash__(self):
        return hash((self.order, self._t))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial<{format_polynomial(self)}>"


def format_monomial(mon, names=None) -> str:
    """Render an exponent tuple as ``x1^2*x3`` (empty product renders as 1)."""
    if names is None:
        names = [f"x{i + 1}" for i in range(len(mon))]
    parts = [
        f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(mon) if e
    ]
    return "*".join(parts) if parts else "1"


def format_polynomial(p: Polynomial, names=None) -> str:
    """Canonical rendering: descending terms, reduced fractions, explicit *."""
    if not p:
        return "0"
    pieces = []
    for i, (_, mon, coeff) in enumerate(p._t):
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if any(mon):
            body = format_monomial(mon, names)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        if i == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)
