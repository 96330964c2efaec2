"""Finite groups as Cayley tables, with the derived structure used downstream."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np

__all__ = ['GroupError', 'FiniteGroup', 'Subgroup', 'cyclic', 'direct_product', 'dihedral',
           'symmetric', 'from_table', 'parse_group']


class GroupError(ValueError):
    """Raised when a table does not define a group, or a map is not a homomorphism."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group given by its Cayley table ``table[a][b] = a*b``, identity at index 0.

    Use :func:`from_table` (or one of the builders) rather than the constructor; they
    verify the group axioms.
    """
    table: tuple[tuple[int, ...], ...]
    name: str = ''
    labels: tuple[str, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order %d' % self.order})"

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        arr.setflags(write=False)
        return arr

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        result = 0
        for _ in range(k):
            result = self.table[result][g]
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def exponent(self) -> int:
        return reduce(math.lcm, (self.element_order(g) for g in range(self.order)), 1)

    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())

    def commutes(self, a: int, b: int) -> bool:
        return self.table[a][b] == self.table[b][a]

    def centralizer(self, g: int) -> 'Subgroup':
        return Subgroup(self, tuple(h for h in range(self.order) if self.commutes(g, h)))

    def commuting_pairs(self) -> list[tuple[int, int]]:
        """All (g, h) with gh = hg, in lexicographic order."""
        n = self.order
        return [(g, h) for g in range(n) for h in range(n) if self.commutes(g, h)]

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen, classes = set(), []
        inv = self.inverse
        for g in range(self.order):
            if g in seen:
                continue
            cls = sorted({self.table[self.table[x][g]][inv[x]] for x in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return classes

    def cyclic_subgroup(self, g: int) -> 'Subgroup':
        return Subgroup(self, tuple(sorted({self.power(g, k) for k in range(self.element_order(g))})))

    def maximal_cyclic_subgroups(self) -> list['Subgroup']:
        """Cyclic subgroups not properly contained in another cyclic subgroup."""
        cyc = {frozenset(self.cyclic_subgroup(g).elements) for g in range(self.order)}
        maximal = [c for c in cyc if not any(c < d for d in cyc)]
        return [Subgroup(self, tuple(sorted(c))) for c in sorted(maximal, key=lambda c: (len(c), sorted(c)))]

    def is_homomorphism(self, images, target: 'FiniteGroup') -> bool:
        return all(images[self.table[a][b]] == target.table[images[a]][images[b]]
                   for a in range(self.order) for b in range(self.order))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by a sorted tuple of element indices."""
    parent: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(self.elements)))
        object.__setattr__(self, 'elements', els)
        s = set(els)
        if 0 not in s:
            raise GroupError("subgroup must contain the identity")
        for a in els:
            if self.parent.inverse[a] not in s:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in els:
                if self.parent.table[a][b] not in s:
                    raise GroupError(f"subgroup not closed under product at ({a}, {b})")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def as_group(self) -> FiniteGroup:
        """The subgroup relabelled 0..|S|-1 in the order of ``elements``."""
        pos = {g: i for i, g in enumerate(self.elements)}
        tab = tuple(tuple(pos[self.parent.table[a][b]] for b in self.elements) for a in self.elements)
        labels = tuple(self.parent.label(g) for g in self.elements) if self.parent.labels else None
        return FiniteGroup(tab, name=f"subgroup of {self.parent.name}", labels=labels)


def from_table(raw, name: str = '', labels=None) -> FiniteGroup:
    """Validate a Cayley table and wrap it.

    The identity must sit at index 0.  Violations raise :class:`GroupError` naming the
    offending elements.
    """
    rows = [list(map(int, r)) for r in raw]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise GroupError("table must be a non-empty square array")
    for a, r in enumerate(rows):
        for b, x in enumerate(r):
            if not 0 <= x < n:
                raise GroupError(f"entry table[{a}][{b}] = {x} out of range")
    for a in range(n):
        if rows[0][a] != a or rows[a][0] != a:
            raise GroupError(f"index 0 is not a two-sided identity (fails at {a})")
        if 0 not in rows[a]:
            raise GroupError(f"element {a} has no right inverse")
        b = rows[a].index(0)
        if rows[b][a] != 0:
            raise GroupError(f"element {a} has no two-sided inverse")
    arr = np.array(rows, dtype=np.int64)
    # (ab)c == a(bc) for all triples
    left = arr[arr[:, :, None], np.arange(n)[None, None, :]]
    right = arr[np.arange(n)[:, None, None], arr[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = map(int, bad[0])
        raise GroupError(f"associativity fails at (a, b, c) = ({a}, {b}, {c})")
    return FiniteGroup(tuple(tuple(r) for r in rows), name=name,
                       labels=tuple(labels) if labels is not None else None)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("order must be positive")
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                       name=f"Z{n}", labels=tuple(str(a) for a in range(n)))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) at index g*|H| + h."""
    m = H.order
    tab = tuple(tuple(G.table[a // m][b // m] * m + H.table[a % m][b % m]
                      for b in range(G.order * m)) for a in range(G.order * m))
    labels = tuple(f"({G.label(g)},{H.label(h)})" for g in range(G.order) for h in range(m))
    return FiniteGroup(tab, name=f"{G.name}x{H.name}", labels=labels)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon (order 2n); r^k at index k, s r^k at n + k."""
    if n < 1:
        raise GroupError("n must be positive")
    els = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]
    pos = {e: i for i, e in enumerate(els)}

    def mul(x, y):
        (f1, k1), (f2, k2) = x, y
        # s^f1 r^k1 s^f2 r^k2 = s^(f1+f2) r^((-1)^f2 k1 + k2)
        return ((f1 + f2) % 2, ((-k1 if f2 else k1) + k2) % n)

    tab = tuple(tuple(pos[mul(x, y)] for y in els) for x in els)
    labels = tuple(("r^%d" % k if f == 0 else "sr^%d" % k) for f, k in els)
    return from_table(tab, name=f"D{n}", labels=labels)


def symmetric(n: int) -> FiniteGroup:
    """S_n for n <= 4, elements as permutations in lexicographic order (identity first)."""
    if not 1 <= n <= 4:
        raise GroupError("symmetric(n) supports 1 <= n <= 4")
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    tab = tuple(tuple(pos[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    labels = tuple("".join(str(i + 1) for i in p) for p in perms)
    return from_table(tab, name=f"S{n}", labels=labels)


_BUILTIN = re.compile(r'^(Z\d+(?:xZ\d+)*|S[1-4]|D\d+)$')


def parse_group(spec: str) -> FiniteGroup:
    """Builtin names: ``Z<N>``, ``Z<N>xZ<M>`` (any number of factors), ``S1``..``S4``, ``D<N>``."""
    spec = spec.strip()
    if not _BUILTIN.match(spec):
        raise GroupError(f"unknown group name {spec!r}")
    if spec[0] == 'S':
        return symmetric(int(spec[1:]))
    if spec[0] == 'D':
        return dihedral(int(spec[1:]))
    factors = [cyclic(int(f[1:])) for f in spec.split('x')]
    return reduce(direct_product, factors)
