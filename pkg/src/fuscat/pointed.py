"""The pointed fusion category C(G, omega) and its Frobenius-Schur indicators.

Simple objects are the one-dimensional graded pieces ``V_g``.  Everything reduces to
sums of cocycle exponents, so indicator values are computed as a single exponent mod
``m`` and only turned into a :class:`~fuscat.cyclo.Cyclotomic` at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce

from .cocycle import Cocycle3, class_order, restrict, trivial
from .cyclo import Cyclotomic, root_of_unity, zero
from .grp import FiniteGroup

__all__ = ['PointedCategory', 'SimpleObject', 'indicator', 'higher_indicator',
           'fs_exponent_object', 'fs_exponent_category', 'indicator_table']


@dataclass(frozen=True, eq=False)
class PointedCategory:
    """G-graded vector spaces with associator given by a verified 3-cocycle.

    Parameters
    ----------
    group : FiniteGroup
    omega : Cocycle3, optional
        Defaults to the trivial cocycle.
    """
    group: FiniteGroup
    omega: Cocycle3 | None = None

    def __post_init__(self):
        if self.omega is None:
            object.__setattr__(self, 'omega', trivial(self.group))
        if self.omega.group != self.group:
            raise ValueError("cocycle is defined on a different group")
        self.omega.validated()

    @property
    def rank(self) -> int:
        return self.group.order

    @property
    def dimension(self) -> int:
        return self.group.order

    def simple(self, g: int) -> 'SimpleObject':
        return SimpleObject(self, g)

    @cached_property
    def _sub_orders(self) -> dict:
        return {}

    def restricted_class_order(self, S) -> int:
        """Order of the class of omega restricted to the subgroup ``S`` (memoized)."""
        key = S.elements
        cache = self._sub_orders
        if key not in cache:
            cache[key] = class_order(restrict(self.omega, S))
        return cache[key]


@dataclass(frozen=True)
class SimpleObject:
    """The simple object ``V_g``; all structure scalars are roots of unity."""
    category: PointedCategory
    g: int

    @property
    def dim(self) -> int:
        return 1

    @property
    def dual(self) -> 'SimpleObject':
        return SimpleObject(self.category, self.category.group.inverse[self.g])

    def ev(self) -> Cyclotomic:
        """Evaluation scalar ``omega(g, g^-1, g)^-1`` (coevaluation is 1)."""
        G, w = self.category.group, self.category.omega
        return root_of_unity(w.modulus, -w.exponent(self.g, G.inverse[self.g], self.g))

    def pivotal(self) -> Cyclotomic:
        """Pivotal scalar ``j_g = omega(g^-1, g, g^-1)``."""
        G, w = self.category.group, self.category.omega
        gi = G.inverse[self.g]
        return root_of_unity(w.modulus, w.exponent(gi, self.g, gi))


def _indicator_exponent(C: PointedCategory, g: int, n: int) -> int | None:
    """Exponent s with nu_n(V_g) = zeta_m**s, or None when the indicator vanishes."""
    if n < 1:
        raise ValueError("n must be positive")
    G, e = C.group, C.omega.exponents
    row = e[g, :, g]
    total, x = 0, 0
    for _ in range(n):
        total += int(row[x])
        x = G.mul(x, g)
    return total if x == 0 else None


def indicator(C: PointedCategory, g: int, n: int) -> Cyclotomic:
    """``nu_n(V_g) = prod_{j<n} omega(g, g^j, g)`` when ``g^n = e``, else 0."""
    s = _indicator_exponent(C, g, n)
    return zero() if s is None else root_of_unity(C.omega.modulus, s)


def higher_indicator(C: PointedCategory, g: int, n: int, r: int) -> Cyclotomic:
    """``nu_{n,r}(V_g) = nu_n(V_g)**r`` (hom spaces from the unit are at most 1-dimensional)."""
    if r < 1:
        raise ValueError("r must be positive")
    s = _indicator_exponent(C, g, n)
    return zero() if s is None else root_of_unity(C.omega.modulus, s * r)


def fs_exponent_object(C: PointedCategory, g: int) -> int:
    """``ord(g) * ord(res_<g> [omega])``."""
    G = C.group
    return G.element_order(g) * C.restricted_class_order(G.cyclic_subgroup(g))


def fs_exponent_category(C: PointedCategory) -> int:
    """lcm over maximal cyclic subgroups S of ``|S| * ord(res_S [omega])``."""
    return reduce(math.lcm, (S.order * C.restricted_class_order(S)
                             for S in C.group.maximal_cyclic_subgroups()), 1)


def indicator_table(C: PointedCategory, n_max: int) -> list[list[Cyclotomic]]:
    """Rows indexed by group elements, columns by n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    return [[indicator(C, g, n) for n in range(1, n_max + 1)] for g in range(C.group.order)]
