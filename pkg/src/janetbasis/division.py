"""Janet division: multiplicative-variable partitions and unique-divisor queries.

A finite monomial set is recursively grouped by the exponents of x1, x2, ...;
a variable is multiplicative for a member exactly when its exponent attains
the group maximum at that level.  ``janet_partition`` materializes the groups
literally; ``JanetTree`` is the incremental prefix-tree index the completion
engine queries.
"""

from __future__ import annotations

from typing import Iterator


class JanetPartition:
    """Multiplicative / non-multiplicative variable sets for a finite monomial set."""

    __slots__ = ("n", "_mult")

    def __init__(self, n: int, mult: dict):
        self.n = n
        self._mult = mult

    def multiplicative(self, u) -> frozenset:
        return self._mult[tuple(u)]

    def non_multiplicative(self, u) -> frozenset:
        return frozenset(range(self.n)) - self._mult[tuple(u)]

    def monomials(self):
        return self._mult.keys()

    def __contains__(self, u):
        return tuple(u) in self._mult

    def __len__(self):
        return len(self._mult)


def janet_partition(monomials) -> JanetPartition:
    """Partition a finite monomial set into multiplicative variable sets.

    Builds the nested exponent groups directly from their definition: the
    level-i group of u collects the members that agree with u on the first
    i exponents, and x_{i+1} is multiplicative for u iff u attains the
    maximal (i+1)-th exponent inside u's level-i group.
    """
    todo = [tuple(u) for u in monomials]
    seen = set()
    unique = []
    for u in todo:
        if u not in seen:
            seen.add(u)
            unique.append(u)
    if not unique:
        raise ValueError("janet_partition of an empty set")
    n = len(unique[0])
    for u in unique:
        if len(u) != n:
            raise ValueError("mixed monomial dimensions")
    mult = {u: set() for u in unique}
    groups = [unique]
    for i in range(n):
        next_groups = []
        for group in groups:
            # group invariant: all members share exponents 0..i-1
            m = max(u[i] for u in group)
            split = {}
            for u in group:
                if u[i] == m:
                    mult[u].add(i)
                split.setdefault(u[i], []).append(u)
            next_groups.extend(split.values())
        groups = next_groups
    return JanetPartition(n, {u: frozenset(s) for u, s in mult.items()})


def janet_divisors(v, monomials) -> list:
    """All u in the set that Janet-divide v, by direct scan (0 or 1 by uniqueness)."""
    part = janet_partition(monomials)
    v = tuple(v)
    found = []
    for u in part.monomials():
        if len(u) != len(v):
            raise ValueError("mixed monomial dimensions")
        if any(a > b for a, b in zip(u, v)):
            continue
        mult = part.multiplicative(u)
        if all(i in mult for i in range(len(v)) if v[i] > u[i]):
            found.append(u)
    return found


def janet_divisor(v, monomials):
    """The unique Janet divisor of v in the set, or None."""
    found = janet_divisors(v, monomials)
    if len(found) > 1:  # impossible for Janet division; guards the scan itself
        raise AssertionError(f"multiple Janet divisors of {v}: {found}")
    return found[0] if found else None


class _Node:
    __slots__ = ("children", "payload")

    def __init__(self):
        self.children = {}
        self.payload = None


class JanetTree:
    """Prefix tree over exponent vectors answering unique-Janet-divisor queries.

    Depth i branches on the exponent of x_{i+1}; a leaf at depth n carries the
    handle of the indexed basis element.  At most one root-to-leaf path can
    satisfy the Janet divisor conditions, so queries walk a single path.
    """

    __slots__ = ("n", "_root", "_size")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("tree needs at least one variable")
        self.n = n
        self._root = _Node()
        self._size = 0

    def __len__(self):
        return self._size

    def __contains__(self, mon):
        node = self._root
        for e in tuple(mon):
            node = node.children.get(e)
            if node is None:
                return False
        return True

    def insert(self, mon, payload) -> None:
        """Index mon; duplicate monomials are rejected."""
        mon = tuple(mon)
        if len(mon) != self.n:
            raise ValueError(f"monomial dimension mismatch: {len(mon)} vs {self.n}")
        if mon in self:
            raise ValueError(f"monomial already indexed: {mon}")
        node = self._root
        for e in mon:
            nxt = node.children.get(e)
            if nxt is None:
                nxt = _Node()
                node.children[e] = nxt
            node = nxt
        node.payload = payload
        self._size += 1

    def remove(self, mon):
        """Drop mon from the index and return its payload."""
        mon = tuple(mon)
        if len(mon) != self.n:
            raise ValueError(f"monomial dimension mismatch: {len(mon)} vs {self.n}")
        path = [self._root]
        node = self._root
        for e in mon:
            node = node.children.get(e)
            if node is None:
                raise KeyError(f"monomial not indexed: {mon}")
            path.append(node)
        payload = node.payload
        node.payload = None
        # prune now-empty branches bottom-up
        for i in range(self.n - 1, -1, -1):
            child = path[i + 1]
            if child.children or child.payload is not None:
                break
            del path[i].children[mon[i]]
        self._size -= 1
        return payload

    def divisor(self, v):
        """Payload of the unique Janet divisor of v, or None.

        At each depth the divisor's exponent is forced: the group maximum when
        it does not exceed v's exponent (the variable is then multiplicative),
        otherwise exactly v's exponent.
        """
        node = self._root
        for e in v:
            children = node.children
            if not children:
                return None
            dmax = max(children)
            if dmax <= e:
                node = children[dmax]
            else:
                node = children.get(e)
                if node is None:
                    return None
        return node.payload

    def multiplicative(self, mon) -> frozenset:
        """Multiplicative variables of an indexed monomial."""
        mon = tuple(mon)
        node = self._root
        mult = []
        for i, e in enumerate(mon):
            children = node.children
            nxt = children.get(e)
            if nxt is None:
                raise KeyError(f"monomial not indexed: {mon}")
            if e == max(children):
                mult.append(i)
            node = nxt
        return frozenset(mult)

    def non_multiplicative(self, mon) -> frozenset:
        return frozenset(range(self.n)) - self.multiplicative(mon)

    def members(self) -> Iterator[tuple]:
        """Yield (monomial, payload) pairs in variable-exponent order."""
        stack = [((), self._root)]
        while stack:
            prefix, node = stack.pop()
            if len(prefix) == self.n:
                yield prefix, node.payload
                continue
            for e in sorted(node.children, reverse=True):
                stack.append((prefix + (e,), node.children[e]))

    def partition(self) -> JanetPartition:
        """The partition of the currently indexed set (computed via the tree)."""
        mult = {}
        for mon, _ in self.members():
            mult[mon] = self.multiplicative(mon)
        if not mult:
            raise ValueError("partition of an empty tree")
        return JanetPartition(self.n, mult)
