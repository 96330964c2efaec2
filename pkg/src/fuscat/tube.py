"""The tube algebra of a pointed category C(G, omega).

The basis is indexed by commuting pairs ``(g, h)``; ``b(g,h) b(g',h')`` vanishes unless
``g = g'`` and otherwise equals ``c_g(h, h') b(g, hh')`` with ``c_g`` the complex
conjugate of ``theta_g``.  Basis elements are rescaled by ``sqrt|G|`` so no square roots
enter the scalars; the functional ``phi_g`` then reads ``|G|`` times the coefficient of
``b(g, e)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cocycle import theta_value
from .cyclo import Cyclotomic, one, root_of_unity, zero
from .pointed import PointedCategory

__all__ = ['TubeError', 'TubeAlgebra', 'TubeElement', 'build', 'multiply', 'power', 'phi',
           'phi_g', 'indicator_via_tube', 'indicator_sequence_via_tube', 'fs_exponent_via_tube']


class TubeError(RuntimeError):
    """An algebra axiom failed; signals inconsistent structure constants."""


@dataclass(frozen=True, eq=False)
class TubeElement:
    """Sparse coefficient vector over the basis of ``algebra`` (zeros omitted)."""
    algebra: 'TubeAlgebra' = field(repr=False)
    terms: dict

    @property
    def coefficients(self) -> tuple[Cyclotomic, ...]:
        z = zero()
        return tuple(self.terms.get(i, z) for i in range(len(self.algebra.basis)))

    def coefficient(self, g: int, h: int) -> Cyclotomic:
        return self.terms.get(self.algebra.index[(g, h)], zero())

    def __eq__(self, other):
        if not isinstance(other, TubeElement) or other.algebra is not self.algebra:
            return NotImplemented
        return self.terms == other.terms

    def __mul__(self, other: 'TubeElement') -> 'TubeElement':
        return multiply(self.algebra, self, other)

    def __add__(self, other: 'TubeElement') -> 'TubeElement':
        terms = dict(self.terms)
        for i, c in other.terms.items():
            s = terms.get(i, zero()) + c
            if s.is_zero():
                terms.pop(i, None)
            else:
                terms[i] = s
        return TubeElement(self.algebra, terms)


class TubeAlgebra:
    """Tube algebra of ``category``; construct through :func:`build`.

    Attributes
    ----------
    basis : list of (g, h)
        Commuting pairs in lexicographic order.
    index : dict
        Inverse of ``basis``.
    structure : dict
        ``(i, j) -> (k, exponent)``: ``basis[i] * basis[j] = zeta_m**exponent * basis[k]``,
        present only for nonzero products.
    """

    def __init__(self, category: PointedCategory):
        self.category = category
        G, w = category.group, category.omega
        self.modulus = w.modulus
        self.basis = G.commuting_pairs()
        self.index = {p: i for i, p in enumerate(self.basis)}
        self._by_g: dict[int, list[int]] = {}
        for i, (g, _) in enumerate(self.basis):
            self._by_g.setdefault(g, []).append(i)
        m = self.modulus
        # c_g(h, h') = conj theta_g(h, h')
        self.structure = {}
        for g, idx in self._by_g.items():
            for i in idx:
                h = self.basis[i][1]
                for j in idx:
                    h2 = self.basis[j][1]
                    k = self.index[(g, G.mul(h, h2))]
                    self.structure[(i, j)] = (k, -theta_value(w, g, h, h2) % m)
        self.one = self.element({(g, 0): one() for g in range(G.order)})
        self.t = self.element({(g, g): one() for g in range(G.order)})

    def __len__(self):
        return len(self.basis)

    def element(self, coeffs: dict) -> TubeElement:
        """Element from ``{(g, h): coefficient}``."""
        terms = {}
        for pair, c in coeffs.items():
            if pair not in self.index:
                raise KeyError(f"{pair} is not a commuting pair")
            c = Cyclotomic.coerce(c)
            if not c.is_zero():
                terms[self.index[pair]] = c
        return TubeElement(self, terms)

    def basis_element(self, g: int, h: int) -> TubeElement:
        return self.element({(g, h): one()})

    def verify(self) -> dict[str, bool]:
        """Check associativity on all basis triples, the unit and centrality of ``t``.

        Raises :class:`TubeError` naming the first failing triple or pair.
        """
        G, m, S = self.category.group, self.modulus, self.structure
        for g, idx in self._by_g.items():
            for i in idx:
                for j in idx:
                    k1, c1 = S[(i, j)]
                    for l in idx:
                        left_k, c2 = S[(k1, l)]
                        k2, c3 = S[(j, l)]
                        right_k, c4 = S[(i, k2)]
                        if left_k != right_k or (c1 + c2 - c3 - c4) % m:
                            raise TubeError("associativity fails on basis triple "
                                            f"{self.basis[i]}, {self.basis[j]}, {self.basis[l]}")
        for i, (g, h) in enumerate(self.basis):
            e = self.index[(g, 0)]
            if S[(e, i)] != (i, 0) or S[(i, e)] != (i, 0):
                raise TubeError(f"unit fails at basis element {(g, h)}")
            tg = self.index[(g, g)]
            (k1, c1), (k2, c2) = S[(tg, i)], S[(i, tg)]
            if k1 != k2 or (c1 - c2) % m:
                raise TubeError(f"t does not commute with basis element {(g, h)}")
        return {"associativity": True, "unit": True, "t_central": True}


def build(C: PointedCategory, verify: bool = True) -> TubeAlgebra:
    """Construct the tube algebra; axioms are checked unless ``verify`` is False."""
    A = TubeAlgebra(C)
    if verify:
        A.verify()
    return A


def multiply(A: TubeAlgebra, u: TubeElement, v: TubeElement) -> TubeElement:
    out: dict[int, Cyclotomic] = {}
    S, m = A.structure, A.modulus
    for i, a in u.terms.items():
        for j, b in v.terms.items():
            hit = S.get((i, j))
            if hit is None:
                continue
            k, c = hit
            val = a * b * root_of_unity(m, c)
            prev = out.get(k)
            out[k] = val if prev is None else prev + val
    return TubeElement(A, {k: c for k, c in out.items() if not c.is_zero()})


def power(A: TubeAlgebra, u: TubeElement, n: int) -> TubeElement:
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = A.one
    for _ in range(n):
        result = multiply(A, result, u)
    return result


def phi_g(A: TubeAlgebra, u: TubeElement, g: int) -> Cyclotomic:
    """``|G|`` times the coefficient of ``b(g, e)`` in ``u``."""
    return u.coefficient(g, 0).scale(A.category.group.order)


def phi(A: TubeAlgebra, u: TubeElement) -> Cyclotomic:
    total = zero()
    for g in range(A.category.group.order):
        total = total + phi_g(A, u, g)
    return total


def indicator_via_tube(A: TubeAlgebra, g: int, n: int) -> Cyclotomic:
    """``nu_n(V_g) = conj(phi_g(t**n)) / |G|``."""
    if n < 1:
        raise ValueError("n must be positive")
    return phi_g(A, power(A, A.t, n), g).conj().scale(Fraction(1, A.category.group.order))


def indicator_sequence_via_tube(A: TubeAlgebra, g: int, n_max: int) -> list[Cyclotomic]:
    """``[nu_1(V_g), ..., nu_{n_max}(V_g)]`` from successive powers of ``t``."""
    out, x = [], A.one
    inv = Fraction(1, A.category.group.order)
    for _ in range(n_max):
        x = multiply(A, x, A.t)
        out.append(phi_g(A, x, g).conj().scale(inv))
    return out


def fs_exponent_via_tube(A: TubeAlgebra) -> int:
    """Least n >= 1 with ``t**n = one``, searched up to ``exp(G)**2``."""
    bound = A.category.group.exponent() ** 2
    x = A.one
    for n in range(1, bound + 1):
        x = multiply(A, x, A.t)
        if x == A.one:
            return n
    raise TubeError(f"t has no order <= exp(G)^2 = {bound}; structure constants are inconsistent")
