"""Completion of polynomial systems to monic minimal Janet bases.

All strategies run the same outer scheme: keep a basis G indexed by a Janet
tree and a queue Q of pending polynomials (inputs, non-multiplicative
prolongations, displaced generators).  Reduced queue elements enter G after
displacing every generator whose head the new head properly divides.  A
terminal minimization pass then cuts the completed set down to the unique
minimal head set and renormalizes tails, so every strategy returns the same
canonical basis.  The strategies differ in how much of Q is reduced per
round and in the batch interreduction order:

* baseline  - one minimal-head element at a time, full normal form;
* I         - head-reduce the whole minimal-degree slice, then insert its
              members smallest head first after full reduction;
* II-high /
  II-low    - fully reduce the slice, interreduce it greedily starting from
              the highest / lowest head, insert in emission order.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import count

from .division import JanetTree
from .poly import MonomialOrder, Polynomial, divides, proper_divides
from .reduction import (
    ReductionContext,
    hnf_j,
    interreduce_ordinary,
    j_autoreduce,
    minimalize_heads,
    nf_j,
)


class Strategy(Enum):
    """Selection strategy for non-multiplicative prolongations."""

    BASELINE = "baseline"
    I = "I"
    II_HIGH = "II-high"
    II_LOW = "II-low"


@dataclass
class RunStats:
    """Counters for one completion run."""

    prolongations_enqueued: int = 0
    head_reduction_steps: int = 0
    tail_reduction_steps: int = 0
    zero_reductions: int = 0
    displacements: int = 0
    max_q_size: int = 0
    wall_time: float = 0.0
    # raw (displaced head, inserted head) events; audits the displacements counter
    displacement_log: list = field(default_factory=list, repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "prolongations_enqueued": self.prolongations_enqueued,
            "head_reduction_steps": self.head_reduction_steps,
            "tail_reduction_steps": self.tail_reduction_steps,
            "zero_reductions": self.zero_reductions,
            "displacements": self.displacements,
            "max_q_size": self.max_q_size,
            "wall_time": self.wall_time,
        }


class CompletionTimeout(RuntimeError):
    """Raised when a run exceeds its deadline; carries the partial stats."""

    def __init__(self, stats: RunStats):
        super().__init__(f"completion timed out after {stats.wall_time:.3f}s")
        self.stats = stats


class _TrivialIdeal(Exception):
    """Internal: a constant appeared, the ideal is the whole ring."""


@dataclass(frozen=True)
class GeneratorRecord:
    """A basis member plus the non-multiplicative variables already prolonged."""

    poly: Polynomial
    enqueued_nm: frozenset


class EngineState:
    """Mutable completion state: basis G, queue Q, and the run counters.

    Q is a heap keyed by (leading-monomial key, arrival ticket), so both the
    minimal-head pop and the minimal-degree slice are cheap and ties resolve
    first-in-first-out.
    """

    def __init__(self, order: MonomialOrder, stats: RunStats | None = None,
                 deadline: float | None = None):
        self.order = order
        self.stats = stats if stats is not None else RunStats()
        self.ctx = ReductionContext((), order)
        self.deadline = deadline
        self._started = time.monotonic()
        self._marks = {}
        self._heap = []
        self._tick = count()

    # -- queue ------------------------------------------------------------

    def push(self, p: Polynomial, enqueued_nm=frozenset()) -> None:
        heapq.heappush(self._heap, (p._t[0][0], next(self._tick), p, set(enqueued_nm)))
        if len(self._heap) > self.stats.max_q_size:
            self.stats.max_q_size = len(self._heap)

    def pop_min(self):
        """Pop the queue element with the smallest head (FIFO on ties)."""
        _, _, p, marks = heapq.heappop(self._heap)
        return p, marks

    def pop_min_degree_slice(self):
        """Pop every queue element whose head degree is the queue minimum."""
        out = []
        if not self._heap:
            return out
        d = self.order.key_degree(self._heap[0][0])
        while self._heap and self.order.key_degree(self._heap[0][0]) == d:
            out.append(self.pop_min())
        return out

    def q_size(self) -> int:
        return len(self._heap)

    # -- basis ------------------------------------------------------------

    def insert(self, h: Polynomial, enqueued_nm=frozenset()) -> int:
        """Displace every generator with head properly divisible by lm(h), add h.

        h must be a nonzero normal form modulo the current basis; in
        particular its head may not already be a basis head.
        """
        lm_h = h.lm
        if lm_h in self.ctx.tree:
            raise ValueError(f"head {lm_h} already in the basis; not a normal form")
        moved = [hdl for hdl, g in self.ctx.items() if proper_divides(lm_h, g.lm)]
        for hdl in moved:
            g = self.ctx.remove(hdl)
            self.stats.displacement_log.append((g.lm, lm_h))
            self.push(g, self._marks.pop(hdl))
            self.stats.displacements += 1
        handle = self.ctx.add(h)
        self._marks[handle] = set(enqueued_nm)
        return handle

    def enqueue_prolongations(self) -> None:
        """Queue g*x for every g in G and unseen non-multiplicative x of g."""
        tree = self.ctx.tree
        n = self.order.n
        for hdl, g in self.ctx.items():
            mult = tree.multiplicative(g.lm)
            marks = self._marks[hdl]
            for i in range(n):
                if i in mult or i in marks:
                    continue
                marks.add(i)
                self.push(g.mul_var(i))
                self.stats.prolongations_enqueued += 1

    def generators(self):
        """Current basis as GeneratorRecord values, in insertion order."""
        return [
            GeneratorRecord(self.ctx.poly(h), frozenset(self._marks[h]))
            for h in sorted(self._marks)
        ]

    def unfinished_prolongations(self):
        """Live non-multiplicative prolongations that do not reduce to zero.

        The per-generator enqueue marks deduplicate prolongations, but a mark
        can go stale: a prolongation may have reduced to zero through a
        generator that was displaced afterwards, shrinking the involutive
        span while the mark stayed set.  This sweep re-checks every pair.
        """
        tree = self.ctx.tree
        out = []
        for _, g in self.ctx.items():
            self.check_deadline()
            for x in sorted(tree.non_multiplicative(g.lm)):
                p = g.mul_var(x)
                if nf_j(p, self.ctx):
                    out.append(p)
        return out

    def check_deadline(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.stats.wall_time = time.monotonic() - self._started
            raise CompletionTimeout(self.stats)


def _guard_constant(h: Polynomial) -> None:
    if not any(h.lm):
        raise _TrivialIdeal


def _run_baseline(state: EngineState) -> None:
    stats = state.stats
    while state.q_size():
        state.check_deadline()
        p, marks = state.pop_min()
        h = nf_j(p, state.ctx, stats=stats)
        if not h:
            stats.zero_reductions += 1
            continue
        _guard_constant(h)
        keep = marks if h == p else frozenset()
        state.insert(h.monic(), keep)
        state.enqueue_prolongations()


def _run_strategy_one(state: EngineState) -> None:
    stats = state.stats
    while state.q_size():
        state.check_deadline()
        batch = []
        tick = count()
        for s, marks in state.pop_min_degree_slice():
            p = hnf_j(s, state.ctx, stats=stats)
            if not p:
                stats.zero_reductions += 1
                continue
            keep = marks if p == s else set()
            batch.append((p._t[0][0], next(tick), p.monic(), keep))
        heapq.heapify(batch)
        while batch:
            state.check_deadline()
            _, _, p, marks = heapq.heappop(batch)
            h = nf_j(p, state.ctx, stats=stats)
            if not h:
                stats.zero_reductions += 1
                continue
            _guard_constant(h)
            keep = marks if h == p else frozenset()
            state.insert(h.monic(), keep)
            state.enqueue_prolongations()


def _update_records(items, order: MonomialOrder, choice: str, stats=None):
    """Greedy interreduction of a batch, emitting in Update order.

    items are (polynomial, marks) pairs in arrival order; the extremal-head
    element (highest or lowest per choice, FIFO on ties) seeds the result and
    each following extremal element is fully reduced modulo the emissions so
    far before being appended.
    """
    if choice not in ("highest", "lowest"):
        raise ValueError(f"unknown update choice: {choice!r}")
    remaining = list(items)
    if not remaining:
        return []
    pick_high = choice == "highest"

    def pop_extremal():
        best = 0
        bk = remaining[0][0]._t[0][0]
        for idx in range(1, len(remaining)):
            k = remaining[idx][0]._t[0][0]
            if k > bk if pick_high else k < bk:
                best = idx
                bk = k
        return remaining.pop(best)

    f, marks = pop_extremal()
    ctx = ReductionContext((f,))
    emitted = [(f, marks)]
    while remaining:
        p, marks = pop_extremal()
        h = nf_j(p, ctx, stats=stats)
        if not h:
            if stats is not None:
                stats.zero_reductions += 1
            continue
        keep = marks if h == p else set()
        h = h.monic()
        ctx.add(h)
        emitted.append((h, keep))
    return emitted


def update(P, order: MonomialOrder | None = None, choice: str = "highest"):
    """Interreduce a batch greedily from its highest or lowest head.

    Returns the surviving polynomials, monic, in emission order.
    """
    polys = list(P)
    if order is None:
        if not polys:
            raise ValueError("empty update batch needs an order")
        order = polys[0].order
    for f in polys:
        if not f:
            raise ValueError("zero polynomial in update batch")
        if f.order != order:
            raise ValueError("mixed orders in update batch")
    items = [(f.monic(), frozenset()) for f in polys]
    return [f for f, _ in _update_records(items, order, choice)]


def _run_strategy_two(state: EngineState, choice: str) -> None:
    stats = state.stats
    while state.q_size():
        state.check_deadline()
        batch = []
        for s, marks in state.pop_min_degree_slice():
            p = nf_j(s, state.ctx, stats=stats)
            if not p:
                stats.zero_reductions += 1
                continue
            keep = marks if p == s else set()
            batch.append((p.monic(), keep))
        for h, marks in _update_records(batch, state.order, choice, stats=stats):
            state.check_deadline()
            # batch interreduction can give an element a head that is again
            # reducible modulo the live basis (even equal to a basis head);
            # such an element must be re-reduced before it may enter G
            if state.ctx.tree.divisor(h.lm) is not None:
                h = nf_j(h, state.ctx, stats=stats)
                if not h:
                    stats.zero_reductions += 1
                    continue
                h = h.monic()
                marks = frozenset()
            _guard_constant(h)
            state.insert(h, marks)
            state.enqueue_prolongations()


_RUNNERS = {
    Strategy.BASELINE: _run_baseline,
    Strategy.I: _run_strategy_one,
    Strategy.II_HIGH: lambda state: _run_strategy_two(state, "highest"),
    Strategy.II_LOW: lambda state: _run_strategy_two(state, "lowest"),
}


def _minimal_complete_heads(heads, order: MonomialOrder):
    """The minimal Janet-complete head set inside a complete head set.

    Starts from the minimal ordinary generators (which every Janet basis of
    the ideal must carry) and closes them under irreducible non-multiplicative
    prolongations, smallest first.  Constructivity of Janet division puts this
    closure inside every complete head set, in particular inside the input.
    """
    minimal = [u for u in heads if not any(v != u and divides(v, u) for v in heads)]
    tree = JanetTree(order.n)
    kept = []
    for u in sorted(minimal, key=order.key):
        tree.insert(u, True)
        kept.append(u)
    while True:
        best = None
        for u in kept:
            for x in tree.non_multiplicative(u):
                w = list(u)
                w[x] += 1
                w = tuple(w)
                if tree.divisor(w) is None:
                    k = order.key(w)
                    if best is None or k < best[0]:
                        best = (k, w)
        if best is None:
            return set(kept)
        tree.insert(best[1], True)
        kept.append(best[1])


def _minimize(basis, order: MonomialOrder):
    """Cut a Janet basis down to the minimal one and normalize its tails.

    The completion loops can leave behind generators whose heads became
    redundant after later insertions changed the ideal: such heads are
    ordinarily divisible by other heads yet Janet-irreducible because their
    own presence blocks the divisor.  Selection order decides whether they
    appear, so strategies would disagree without this step.
    """
    needed = _minimal_complete_heads([g.lm for g in basis], order)
    kept = [g for g in basis if g.lm in needed]
    if len(kept) != len(needed):
        raise RuntimeError("completion ended with an incomplete head set")
    return j_autoreduce(kept, order)


def janet_basis(F, order: MonomialOrder | None = None,
                strategy: Strategy | str = Strategy.BASELINE, *,
                timeout: float | None = None):
    """Compute the monic minimal Janet basis of the ideal generated by F.

    Returns (basis, stats) with the basis sorted ascending by head.  The
    result is independent of the strategy; a nonzero constant in the ideal
    short-circuits to the basis [1].

    Raises CompletionTimeout (carrying partial stats) when a timeout in
    seconds is given and exceeded.
    """
    polys = list(F)
    if not polys:
        raise ValueError("empty input system")
    if order is None:
        order = polys[0].order
    for f in polys:
        if not isinstance(f, Polynomial):
            raise TypeError(f"not a polynomial: {f!r}")
        if not f:
            raise ValueError("zero polynomial in input")
        if f.order != order:
            raise ValueError("mixed orders in input")
    strategy = Strategy(strategy)

    started = time.monotonic()
    deadline = started + timeout if timeout is not None else None
    stats = RunStats()
    state = EngineState(order, stats, deadline)

    inputs = []
    seen = set()
    for f in polys:
        g = f.monic()
        if g not in seen:
            seen.add(g)
            inputs.append(g)

    try:
        if any(not any(f.lm) for f in inputs):
            raise _TrivialIdeal
        first = min(range(len(inputs)), key=lambda i: (inputs[i]._t[0][0], i))
        state.insert(inputs[first])
        for i, f in enumerate(inputs):
            if i != first:
                state.push(f)
        runner = _RUNNERS[strategy]
        runner(state)
        while True:
            missing = state.unfinished_prolongations()
            if not missing:
                break
            for p in missing:
                state.push(p)
                stats.prolongations_enqueued += 1
            runner(state)
        basis = _minimize([rec.poly for rec in state.generators()], order)
    except _TrivialIdeal:
        basis = [Polynomial.one(order)]
    stats.wall_time = time.monotonic() - started
    return basis, stats


def extract_reduced_gb(basis, order: MonomialOrder | None = None):
    """Reduced Groebner basis sitting inside a monic minimal Janet basis.

    Keeps the elements whose head no other head divides and tail-reduces the
    kept ones against each other; sorted ascending by head.
    """
    polys = list(basis)
    if not polys:
        raise ValueError("empty basis")
    if order is None:
        order = polys[0].order
    for f in polys:
        if not f:
            raise ValueError("zero polynomial in basis")
        if f.order != order:
            raise ValueError("mixed orders in basis")
    kept = minimalize_heads([f.monic() for f in polys])
    return interreduce_ordinary(kept)
