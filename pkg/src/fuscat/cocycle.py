"""Normalized group cochains valued in roots of unity, stored as exponent tables.

A 3-cocycle with modulus ``m`` is an integer array ``e`` of shape ``(n, n, n)`` with
``omega(a, b, c) = zeta_m ** e[a, b, c]``.  All cohomology questions reduce to linear
algebra over Z/m on the *normalized* coordinates (arguments different from the
identity), handled by :mod:`fuscat.modlin`.

Classes are taken in H^3(G, C^x), not in H^3(G, Z/m): a mu_m-valued cocycle is trivial
in C^x-cohomology exactly when it is the coboundary of a mu_{m|G|}-valued cochain, so
class computations run at modulus ``m * |G|`` after multiplying exponents by ``|G|``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import Cyclotomic, root_of_unity
from .grp import FiniteGroup, GroupError, Subgroup, direct_product, parse_group, from_table
from .modlin import LocalSmith, crt, factorize, hnf_mod, reduce_mod_hnf

__all__ = ['CocycleError', 'Cocycle3', 'Cochain2', 'omega_t', 'trivial', 'check_cocycle',
           'coboundary', 'coboundary1', 'is_coboundary', 'class_order', 'cohomologous',
           'restrict', 'transport', 'external_product', 'eps_invariant', 'theta_value',
           'dpr_theta', 'cohomology_basis', 'CohomologyBasis', 'random_cochain2',
           'MAX_BASIS_ORDER']

#: Largest group order accepted by :func:`cohomology_basis` (the d^3 matrix has
#: (|G|-1)^7 entries).
MAX_BASIS_ORDER = 10


class CocycleError(ValueError):
    """Raised for malformed cochain data or a failed cocycle condition."""


@dataclass(frozen=True, eq=False)
class Cocycle3:
    """Exponent table of a normalized 3-cochain, ``omega(a,b,c) = zeta_m**e[a,b,c]``.

    The plain constructor does not check the cocycle condition; :meth:`validated`
    (and every builder in this module) does.
    """
    group: FiniteGroup
    modulus: int
    exponents: np.ndarray

    def __post_init__(self):
        n = self.group.order
        e = np.asarray(self.exponents, dtype=np.int64)
        if e.shape != (n, n, n):
            raise CocycleError(f"exponent table must have shape ({n}, {n}, {n}), got {e.shape}")
        if self.modulus < 1:
            raise CocycleError("modulus must be positive")
        e = e % self.modulus
        e.setflags(write=False)
        object.__setattr__(self, 'exponents', e)

    def validated(self) -> 'Cocycle3':
        """Return self after checking normalization and the cocycle identity."""
        problem = _cocycle_violation(self)
        if problem:
            raise CocycleError(problem)
        return self

    def __call__(self, a: int, b: int, c: int) -> Cyclotomic:
        return root_of_unity(self.modulus, int(self.exponents[a, b, c]))

    def exponent(self, a: int, b: int, c: int) -> int:
        return int(self.exponents[a, b, c])

    def lift(self, modulus: int) -> 'Cocycle3':
        """The same cocycle written with a multiple of the current modulus."""
        if modulus % self.modulus:
            raise CocycleError(f"{modulus} is not a multiple of {self.modulus}")
        return Cocycle3(self.group, modulus, self.exponents * (modulus // self.modulus))

    def __mul__(self, other: 'Cocycle3') -> 'Cocycle3':
        if other.group != self.group:
            raise CocycleError("cocycles live on different groups")
        m = math.lcm(self.modulus, other.modulus)
        return Cocycle3(self.group, m, self.lift(m).exponents + other.lift(m).exponents)

    def __pow__(self, k: int) -> 'Cocycle3':
        return Cocycle3(self.group, self.modulus, self.exponents * k)

    def inverse(self) -> 'Cocycle3':
        return self ** -1

    def __eq__(self, other):
        if not isinstance(other, Cocycle3) or other.group != self.group:
            return NotImplemented
        m = math.lcm(self.modulus, other.modulus)
        return bool((self.lift(m).exponents == other.lift(m).exponents).all())

    def __hash__(self):
        return hash((self.group, self.modulus))

    def __repr__(self):
        return f"Cocycle3({self.group!r}, modulus={self.modulus})"

    def to_json(self) -> dict:
        g = self.group
        return {"group": {"order": g.order, "table": [list(r) for r in g.table]},
                "modulus": self.modulus,
                "exponents": [int(x) for x in self.exponents.ravel()]}

    @classmethod
    def from_json(cls, data: dict) -> 'Cocycle3':
        """Parse the cocycle file format; the group is a builtin name or a table object."""
        try:
            grp = data["group"]
            if isinstance(grp, str):
                G = parse_group(grp)
            else:
                G = from_table(grp["table"])
                if "order" in grp and grp["order"] != G.order:
                    raise CocycleError("group 'order' disagrees with its table")
            m = int(data["modulus"])
            flat = np.asarray(data["exponents"], dtype=np.int64)
        except (KeyError, TypeError) as exc:
            raise CocycleError(f"malformed cocycle data: {exc}") from None
        n = G.order
        if flat.size != n ** 3:
            raise CocycleError(f"expected {n ** 3} exponents, got {flat.size}")
        return cls(G, m, flat.reshape(n, n, n)).validated()

    @classmethod
    def load(cls, path) -> 'Cocycle3':
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True, eq=False)
class Cochain2:
    """Exponent table of a normalized 2-cochain ``beta(a,b) = zeta_m**e[a,b]``."""
    group: FiniteGroup
    modulus: int
    exponents: np.ndarray

    def __post_init__(self):
        n = self.group.order
        e = np.asarray(self.exponents, dtype=np.int64) % self.modulus
        if e.shape != (n, n):
            raise CocycleError(f"exponent table must have shape ({n}, {n})")
        if e[0].any() or e[:, 0].any():
            raise CocycleError("2-cochain is not normalized")
        e.setflags(write=False)
        object.__setattr__(self, 'exponents', e)

    def __call__(self, a: int, b: int) -> Cyclotomic:
        return root_of_unity(self.modulus, int(self.exponents[a, b]))


# ---------------------------------------------------------------------------
# builders and checks

def omega_t(N: int, t: int) -> Cocycle3:
    """The cocycle ``exp(2 pi i t <l>(<m>+<n>-<m+n>) / N^2)`` on Z/N, modulus N^2."""
    from .grp import cyclic
    if N < 1:
        raise CocycleError("N must be positive")
    r = np.arange(N)
    bracket = N * (r[:, None] + r[None, :] >= N)  # <m> + <n> - <m+n>
    e = t * r[:, None, None] * bracket[None, :, :]
    return Cocycle3(cyclic(N), N * N, e)


def trivial(G: FiniteGroup, modulus: int = 1) -> Cocycle3:
    n = G.order
    return Cocycle3(G, modulus, np.zeros((n, n, n), dtype=np.int64))


def _cocycle_violation(w: Cocycle3) -> str | None:
    e, T, m = w.exponents, w.group.array, w.modulus
    if e[0].any() or e[:, 0].any() or e[:, :, 0].any():
        a, b, c = map(int, np.argwhere((e != 0) & _touches_identity(len(T)))[0])
        return f"cocycle not normalized at ({a}, {b}, {c})"
    bad = np.argwhere(_d3_full(e, T) % m)
    if len(bad):
        a, b, c, d = map(int, bad[0])
        return f"cocycle condition fails at (a, b, c, d) = ({a}, {b}, {c}, {d})"
    return None


def _touches_identity(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None, None] == 0) | (idx[None, :, None] == 0) | (idx[None, None, :] == 0)


def _d3_full(e: np.ndarray, T: np.ndarray) -> np.ndarray:
    n = len(T)
    a = np.arange(n)[:, None, None, None]
    b = np.arange(n)[None, :, None, None]
    c = np.arange(n)[None, None, :, None]
    d = np.arange(n)[None, None, None, :]
    return (e[b, c, d] - e[T[a, b], c, d] + e[a, T[b, c], d]
            - e[a, b, T[c, d]] + e[a, b, c])


def check_cocycle(w: Cocycle3) -> bool:
    """True when ``w`` is normalized and satisfies the 3-cocycle identity."""
    return _cocycle_violation(w) is None


def coboundary(beta: Cochain2) -> Cocycle3:
    """``d beta(a,b,c) = beta(b,c) - beta(ab,c) + beta(a,bc) - beta(a,b)``."""
    T, e = beta.group.array, beta.exponents
    n = len(T)
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    out = e[b, c] - e[T[a, b], c] + e[a, T[b, c]] - e[a, b]
    return Cocycle3(beta.group, beta.modulus, out)


def coboundary1(G: FiniteGroup, alpha, modulus: int) -> np.ndarray:
    """``d alpha(a,b) = alpha(b) - alpha(ab) + alpha(a)`` for a normalized 1-cochain."""
    alpha = np.asarray(alpha, dtype=np.int64)
    T = G.array
    return (alpha[None, :] - alpha[T] + alpha[:, None]) % modulus


def random_cochain2(G: FiniteGroup, modulus: int, rng: np.random.Generator) -> Cochain2:
    n = G.order
    e = rng.integers(0, modulus, size=(n, n))
    e[0] = 0
    e[:, 0] = 0
    return Cochain2(G, modulus, e)


def external_product(w1: Cocycle3, w2: Cocycle3) -> Cocycle3:
    """``(w1 x w2)((a,a'),(b,b'),(c,c')) = w1(a,b,c) w2(a',b',c')`` on the direct product."""
    G, H = w1.group, w2.group
    m = math.lcm(w1.modulus, w2.modulus)
    e1 = w1.lift(m).exponents
    e2 = w2.lift(m).exponents
    e = e1[:, None, :, None, :, None] + e2[None, :, None, :, None, :]
    k = G.order * H.order
    return Cocycle3(direct_product(G, H), m, e.reshape(k, k, k))


# ---------------------------------------------------------------------------
# coboundary matrices on normalized coordinates

@lru_cache(maxsize=32)
def _d2_matrix(G: FiniteGroup) -> np.ndarray:
    """Matrix of d: C^2 -> C^3 restricted to non-identity arguments.

    Rows are triples (a,b,c), columns pairs (x,y), all in 1..n-1, lexicographic.
    """
    n = G.order
    k = n - 1
    T = G.array
    D = np.zeros((k ** 3, k * k), dtype=np.int64)
    if k == 0:
        return D
    g = np.arange(1, n)
    a, b, c = (x.ravel() for x in np.meshgrid(g, g, g, indexing='ij'))
    row = np.arange(k ** 3)
    for sign, x, y in ((1, b, c), (-1, T[a, b], c), (1, a, T[b, c]), (-1, a, b)):
        keep = (x != 0) & (y != 0)
        np.add.at(D, (row[keep], (x[keep] - 1) * k + (y[keep] - 1)), sign)
    D.setflags(write=False)
    return D


@lru_cache(maxsize=8)
def _d3_matrix(G: FiniteGroup) -> np.ndarray:
    n = G.order
    k = n - 1
    T = G.array
    D = np.zeros((k ** 4, k ** 3), dtype=np.int64)
    if k == 0:
        return D
    g = np.arange(1, n)
    a, b, c, d = (x.ravel() for x in np.meshgrid(g, g, g, g, indexing='ij'))
    row = np.arange(k ** 4)
    terms = ((1, b, c, d), (-1, T[a, b], c, d), (1, a, T[b, c], d),
             (-1, a, b, T[c, d]), (1, a, b, c))
    for sign, x, y, z in terms:
        keep = (x != 0) & (y != 0) & (z != 0)
        np.add.at(D, (row[keep], ((x[keep] - 1) * k + (y[keep] - 1)) * k + (z[keep] - 1)), sign)
    D.setflags(write=False)
    return D


def _coords(e: np.ndarray) -> np.ndarray:
    """Normalized coordinates of a 3-cochain table."""
    return e[1:, 1:, 1:].ravel()


def _from_coords3(v: np.ndarray, n: int) -> np.ndarray:
    e = np.zeros((n, n, n), dtype=np.int64)
    e[1:, 1:, 1:] = np.asarray(v).reshape(n - 1, n - 1, n - 1)
    return e


def _from_coords2(v: np.ndarray, n: int) -> np.ndarray:
    e = np.zeros((n, n), dtype=np.int64)
    e[1:, 1:] = np.asarray(v).reshape(n - 1, n - 1)
    return e


@lru_cache(maxsize=256)
def _d2_smith(G: FiniteGroup, p: int, k: int) -> LocalSmith:
    return LocalSmith(_d2_matrix(G), p, k, track_columns=True)


def _solve_d2(G: FiniteGroup, w: np.ndarray, m: int) -> np.ndarray | None:
    parts = []
    for p, k in factorize(m).items():
        x = _d2_smith(G, p, k).solve(w)
        if x is None:
            return None
        parts.append((x, p ** k))
    if not parts:
        return np.zeros((G.order - 1) ** 2, dtype=np.int64)
    return crt(parts)[0]


# ---------------------------------------------------------------------------
# cohomology classes

def is_coboundary(w: Cocycle3) -> Cochain2 | None:
    """A 2-cochain ``beta`` with ``d beta = w``, or None when ``w`` is nontrivial.

    A witness with the same modulus is preferred; otherwise the witness takes values in
    ``mu_{m|G|}`` (this is always enough for C^x-valued triviality).
    """
    G, m, n = w.group, w.modulus, w.group.order
    if n == 1:
        return Cochain2(G, m, np.zeros((1, 1), dtype=np.int64))
    for M in (m, m * n):
        x = _solve_d2(G, _coords(w.exponents) * (M // m), M)
        if x is not None:
            return Cochain2(G, M, _from_coords2(x, n))
    return None


def class_order(w: Cocycle3) -> int:
    """Order of the class of ``w`` in H^3(G, C^x)."""
    G, m, n = w.group, w.modulus, w.group.order
    if n == 1:
        return 1
    M = m * n
    v = _coords(w.exponents) * n
    order = 1
    for p, k in factorize(M).items():
        order *= _d2_smith(G, p, k).cokernel_order(v)
    return order


def cohomologous(w1: Cocycle3, w2: Cocycle3) -> bool:
    return class_order(w1 * w2.inverse()) == 1


def restrict(w: Cocycle3, S: Subgroup) -> Cocycle3:
    """Restriction to ``S``, relabelled as ``S.as_group()`` (elements in sorted order)."""
    if S.parent != w.group:
        raise CocycleError("subgroup of a different group")
    idx = np.array(S.elements)
    return Cocycle3(S.as_group(), w.modulus, w.exponents[np.ix_(idx, idx, idx)])


def transport(w: Cocycle3, iso, target: FiniteGroup) -> Cocycle3:
    """Push ``w`` forward along the isomorphism ``g -> iso[g]`` onto ``target``."""
    iso = [int(x) for x in iso]
    G = w.group
    if len(iso) != G.order or sorted(iso) != list(range(target.order)):
        raise GroupError("map is not a bijection onto the target group")
    if not G.is_homomorphism(iso, target):
        raise GroupError("map is not a group homomorphism")
    n = G.order
    e = np.zeros((n, n, n), dtype=np.int64)
    ix = np.array(iso)
    e[np.ix_(ix, ix, ix)] = w.exponents
    return Cocycle3(target, w.modulus, e)


def eps_invariant(w: Cocycle3, g: int) -> Cyclotomic:
    """``prod_{k < ord(g)} omega(g, g^k, g)``; its order is the class order of w on <g>."""
    G = w.group
    total, x = 0, 0
    for _ in range(G.element_order(g)):
        total += int(w.exponents[g, x, g])
        x = G.mul(x, g)
    return root_of_unity(w.modulus, total)


def theta_value(w: Cocycle3, g: int, x: int, y: int) -> int:
    """Exponent of ``omega(g,x,y) omega(x,y,g) / omega(x,g,y)`` for x, y commuting with g."""
    G = w.group
    if not (G.commutes(g, x) and G.commutes(g, y)):
        raise GroupError(f"({x}, {y}) not in the centralizer of {g}")
    e = w.exponents
    return int(e[g, x, y] + e[x, y, g] - e[x, g, y]) % w.modulus


def dpr_theta(w: Cocycle3, g: int) -> dict[tuple[int, int], int]:
    """The 2-cochain ``theta_g`` on the centralizer of ``g`` as ``{(x, y): exponent}``."""
    C = w.group.centralizer(g).elements
    return {(x, y): theta_value(w, g, x, y) for x in C for y in C}


# ---------------------------------------------------------------------------
# generators of the mu_m-representable part of H^3(G, C^x)

@dataclass(frozen=True)
class CohomologyBasis:
    """Invariant factors (ascending divisibility chain) with one cocycle per factor."""
    group: FiniteGroup
    modulus: int
    invariant_factors: tuple[int, ...]
    representatives: tuple[Cocycle3, ...]

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)


def cohomology_basis(G: FiniteGroup, m: int, max_order: int = MAX_BASIS_ORDER) -> CohomologyBasis:
    """Classes of H^3(G, C^x) representable by mu_m-valued cocycles.

    For ``m`` a multiple of ``|G|`` this is the whole group H^3(G, C^x).  Each
    representative is the lexicographically least exponent table in its coset modulo
    coboundaries of mu_m-valued cochains.
    """
    n = G.order
    if n > max_order:
        raise CocycleError(f"cohomology_basis limited to |G| <= {max_order} (d^3 has "
                           f"{(n - 1) ** 7} entries at |G| = {n})")
    if n == 1 or m == 1:
        return CohomologyBasis(G, m, (), ())
    d3 = _d3_matrix(G)
    parts: list[list[tuple[np.ndarray, int]]] = []
    for p, k in factorize(m).items():
        q = p ** k
        e = 0
        while n % p ** (e + 1) == 0:
            e += 1
        K = k + e
        gens = [z for z, _ in LocalSmith(d3, p, k, track_columns=True).kernel_generators()]
        if not gens:
            continue
        Z = np.array(gens).T  # columns: cocycles mod q
        # image of |G| * z in coker(d^2 mod p^K), coordinates in sum of Z/p^v
        ls2 = _d2_smith(G, p, K)
        Y = ls2.apply_left(Z * n % p ** K)
        vals = ls2.valuations + [K] * (Y.shape[0] - ls2.rank)
        rows = [i for i, v in enumerate(vals) if v > 0]
        if not rows:
            continue
        top = max(vals[i] for i in rows)
        Ys = np.array([Y[i] * p ** (top - vals[i]) for i in rows]) % p ** top
        ls = LocalSmith(Ys, p, top, track_columns=True)
        found = []
        for i, v in enumerate(ls.valuations):
            if v < top:
                rep = Z @ ls.V[:, i] % q
                found.append((rep, p ** (top - v)))
        found.sort(key=lambda x: -x[1])
        idem = (m // q) * pow(m // q, -1, q) % m  # CRT idempotent for the p-part of Z/m
        parts.append([(rep * idem % m, o) for rep, o in found])
    width = max((len(x) for x in parts), default=0)
    factors, reps = [], []
    for i in range(width):
        rep = np.zeros((n - 1) ** 3, dtype=np.int64)
        order = 1
        for plist in parts:
            if i < len(plist):
                rep = (rep + plist[i][0]) % m
                order *= plist[i][1]
        factors.append(order)
        reps.append(rep)
    factors.reverse()
    reps.reverse()
    if reps:
        hnf = hnf_mod(_d2_matrix(G).T, m)
        reps = [reduce_mod_hnf(hnf, r, m) for r in reps]
    cocycles = tuple(Cocycle3(G, m, _from_coords3(r, n)).validated() for r in reps)
    return CohomologyBasis(G, m, tuple(factors), cocycles)
