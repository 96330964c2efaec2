"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored on the power basis 1, z, ..., z^(n-1) of z = exp(2 pi i/n),
reduced modulo the n-th cyclotomic polynomial so that every coefficient at an
index >= phi(n) is zero.  Two elements with the same conductor are equal exactly
when their coefficient tuples agree.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

__all__ = ['Cyclotomic', 'root_of_unity', 'zero', 'one', 'cyclotomic_polynomial', 'totient']


def _norm_coeff(c):
    # coefficients are kept as int when integral, Fraction otherwise
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm_coeff(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _norm_coeff(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _poly_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dn]  # den is monic
        out[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    assert not any(num[:dn]), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def _reduction_terms(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    return deg, tuple((e, c) for e, c in enumerate(phi[:-1]) if c)


def _reduce(n: int, dense: list) -> tuple:
    """Reduce a length-n coefficient list (exponents already mod n) modulo Phi_n."""
    deg, terms = _reduction_terms(n)
    for k in range(n - 1, deg - 1, -1):
        c = dense[k]
        if c:
            dense[k] = 0
            shift = k - deg
            for e, pc in terms:
                dense[shift + e] -= c * pc
    return tuple(_norm_coeff(c) if isinstance(c, Fraction) else c for c in dense)


class Cyclotomic:
    """An exact element of Q(zeta_n), immutable.

    Parameters
    ----------
    conductor : int
        The n with the value expressed in Q(zeta_n).
    coeffs : sequence of rationals
        Coefficients c_k of sum c_k zeta_n^k; any length, indices are taken mod n.
        Entries may be int, Fraction or strings such as ``"3/4"``.
    """

    __slots__ = ('_n', '_c', '_hash')

    def __init__(self, conductor: int, coeffs: Iterable = ()):
        n = int(conductor)
        if n < 1:
            raise ValueError("conductor must be a positive integer")
        dense = [0] * n
        for k, c in enumerate(coeffs):
            c = _norm_coeff(c)
            if c:
                dense[k % n] += c
        self._n = n
        self._c = _reduce(n, dense)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> 'Cyclotomic':
        obj = cls.__new__(cls)
        obj._n = n
        obj._c = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, q) -> 'Cyclotomic':
        return cls._raw(1, (_norm_coeff(q),))

    @classmethod
    def coerce(cls, x) -> 'Cyclotomic':
        if isinstance(x, Cyclotomic):
            return x
        return cls.from_rational(x)

    # -- accessors ---------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __repr__(self) -> str:
        return f"Cyclotomic({self._n}, {[str(c) for c in self._c]})"

    def __str__(self) -> str:
        return self.format()

    # -- conductor handling ------------------------------------------------

    def lift(self, m: int) -> 'Cyclotomic':
        """Express the same value in Q(zeta_m); requires conductor | m."""
        n = self._n
        if m == n:
            return self
        if m % n:
            raise ValueError(f"cannot lift conductor {n} to {m}")
        step = m // n
        dense = [0] * m
        for k, c in enumerate(self._c):
            if c:
                dense[k * step] = c
        return Cyclotomic._raw(m, _reduce(m, dense))

    def _common(self, other: 'Cyclotomic') -> tuple['Cyclotomic', 'Cyclotomic']:
        if self._n == other._n:
            return self, other
        m = math.lcm(self._n, other._n)
        return self.lift(m), other.lift(m)

    def minimize(self) -> 'Cyclotomic':
        """Return the same value at the smallest conductor that holds it."""
        n = self._n
        if n == 1:
            return self
        q = self.as_rational()
        if q is not None:
            return Cyclotomic.from_rational(q)
        for d in _divisors(n)[1:-1]:
            if d % 4 == 2:
                continue
            fixed = all(self.galois(r) == self for r in range(1 + d, n, d) if math.gcd(r, n) == 1)
            if fixed:
                small = _express_in_subfield(self, d)
                if small is not None:
                    return small
        return self

    # -- predicates and conversions ----------------------------------------

    def is_zero(self) -> bool:
        return not any(self._c)

    def as_rational(self) -> Fraction | None:
        if any(self._c[1:]):
            return None
        return Fraction(self._c[0])

    def to_complex(self) -> complex:
        n = self._n
        return sum(complex(c) * cmath.exp(2j * math.pi * k / n) for k, c in enumerate(self._c) if c) + 0j

    def order_as_root_of_unity(self) -> int | None:
        """Least k >= 1 with self**k == 1, or None if self is not a root of unity."""
        if self.is_zero():
            return None
        if self * self.conj() != 1:
            return None
        for k in _divisors(2 * self._n):
            if self ** k == 1:
                return k
        return None

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.from_rational(other)
            except TypeError:
                return NotImplemented
        a, b = self._common(other)
        return Cyclotomic._raw(a._n, tuple(_norm_coeff(x + y) for x, y in zip(a._c, b._c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self._n, tuple(-c for c in self._c))

    def __sub__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.from_rational(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                q = _norm_coeff(other)
            except TypeError:
                return NotImplemented
            return self.scale(q)
        a, b = self._common(other)
        n = a._n
        if n == 1:
            return Cyclotomic.from_rational(a._c[0] * b._c[0])
        ia = [(k, c) for k, c in enumerate(a._c) if c]
        ib = [(k, c) for k, c in enumerate(b._c) if c]
        dense = [0] * n
        for k1, c1 in ia:
            for k2, c2 in ib:
                k = k1 + k2
                if k >= n:
                    k -= n
                dense[k] += c1 * c2
        return Cyclotomic._raw(n, _reduce(n, dense))

    __rmul__ = __mul__

    def scale(self, q) -> 'Cyclotomic':
        """Multiply by an exact rational."""
        q = _norm_coeff(q)
        return Cyclotomic._raw(self._n, tuple(_norm_coeff(c * q) for c in self._c))

    def inverse(self) -> 'Cyclotomic':
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self._n
        nonzero = [(k, c) for k, c in enumerate(self._c) if c]
        if len(nonzero) == 1:
            k, c = nonzero[0]
            return root_of_unity(n, -k).lift(n).scale(Fraction(1) / c)
        # x^-1 = (product of the other Galois conjugates) / norm
        rest = one()
        for r in range(2, n):
            if math.gcd(r, n) == 1:
                rest = rest * self.galois(r)
        norm = (self * rest).as_rational()
        assert norm is not None and norm != 0
        return rest.scale(Fraction(1) / norm)

    def __truediv__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                q = _norm_coeff(other)
            except TypeError:
                return NotImplemented
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / q)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> 'Cyclotomic':
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = one().lift(self._n) if self._n > 1 else one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- Galois action -----------------------------------------------------

    def galois(self, r: int) -> 'Cyclotomic':
        """Apply the automorphism zeta_n -> zeta_n**r (r coprime to the conductor)."""
        n = self._n
        if math.gcd(r, n) != 1:
            raise ValueError(f"r={r} is not coprime to the conductor {n}")
        if n == 1:
            return self
        dense = [0] * n
        for k, c in enumerate(self._c):
            if c:
                dense[(k * r) % n] += c
        return Cyclotomic._raw(n, _reduce(n, dense))

    def conj(self) -> 'Cyclotomic':
        return self.galois(-1)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.from_rational(other)
            except TypeError:
                return NotImplemented
        if self._n == other._n:
            return self._c == other._c
        a, b = self._common(other)
        return a._c == b._c

    def __hash__(self) -> int:
        if self._hash is None:
            m = self.minimize()
            q = m.as_rational()
            self._hash = hash(q) if q is not None else hash((m._n, m._c))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- formatting and serialization --------------------------------------

    def format(self) -> str:
        """Exact text form, e.g. ``-1``, ``1/2``, ``E(8)^3``, ``E(5)+E(5)^4``."""
        q = self.as_rational()
        if q is not None:
            return str(q)
        o = self.order_as_root_of_unity()
        if o is not None:
            for j in range(1, o):
                if math.gcd(j, o) == 1 and root_of_unity(o, j) == self:
                    return f"E({o})" if j == 1 else f"E({o})^{j}"
        m = self.minimize()
        parts = []
        for k, c in enumerate(m._c):
            if not c:
                continue
            mono = "1" if k == 0 else (f"E({m._n})" if k == 1 else f"E({m._n})^{k}")
            if k == 0:
                term = str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = f"{c}*{mono}"
            parts.append(term)
        text = parts[0]
        for p in parts[1:]:
            text += p if p.startswith("-") else "+" + p
        return text

    def to_json(self) -> dict:
        return {"conductor": self._n,
                "coeffs": [[str(Fraction(c).numerator), str(Fraction(c).denominator)] for c in self._c]}

    @classmethod
    def from_json(cls, obj) -> 'Cyclotomic':
        """Parse the file form; bare integers and ``"p/q"`` strings are accepted as rationals."""
        if isinstance(obj, (int, str)):
            return cls.from_rational(obj)
        if not isinstance(obj, dict) or "conductor" not in obj or "coeffs" not in obj:
            raise ValueError(f"malformed cyclotomic: {obj!r}")
        coeffs = []
        for c in obj["coeffs"]:
            if isinstance(c, (list, tuple)):
                p, q = c
                coeffs.append(Fraction(int(p), int(q)))
            else:
                coeffs.append(Fraction(c))
        return cls(int(obj["conductor"]), coeffs)


def _express_in_subfield(x: Cyclotomic, d: int) -> Cyclotomic | None:
    """Coordinates of x on the basis zeta_d^j, j < phi(d), by exact elimination."""
    n = x.conductor
    deg = totient(d)
    basis = [root_of_unity(d, j).lift(d).lift(n).coeffs for j in range(deg)]
    rows = [[Fraction(basis[j][i]) for j in range(deg)] + [Fraction(x.coeffs[i])] for i in range(n)]
    rows = [r for r in rows if any(r)]
    piv_cols = []
    r = 0
    for col in range(deg):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    sol = [Fraction(0)] * deg
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][-1]
    return Cyclotomic(d, sol)


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n**k, stored at the conductor n/gcd(n, k)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    k %= n
    g = math.gcd(n, k)
    n, k = n // g, k // g
    if n == 1:
        return Cyclotomic._raw(1, (1,))
    dense = [0] * n
    dense[k] = 1
    return Cyclotomic._raw(n, _reduce(n, dense))


def zero() -> Cyclotomic:
    return Cyclotomic._raw(1, (0,))


def one() -> Cyclotomic:
    return Cyclotomic._raw(1, (1,))
