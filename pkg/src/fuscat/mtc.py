"""Modular data: S-matrix, twists, dimensions and fusion rules.

Twists are stored as exact rotation numbers ``p/q`` (``omega_i = exp(2 pi i p/q)``).
Data can be ingested either with an S-matrix, in which case fusion is derived by the
Verlinde formula, or with an explicit fusion tensor; when both are present they must
agree.  Every check runs at load time and failures name the witnessing indices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from importlib import resources

import numpy as np

from .cyclo import Cyclotomic, one, root_of_unity, zero

__all__ = ['ModularDataError', 'ModularData', 'load', 'from_dict', 'fixture', 'FIXTURES',
           'verlinde', 'bantay_indicator', 'fs_exponent', 'etingof_exponent', 'diagnostics',
           'Diagnostic', 'unit_multiplicity_of_power']

FIXTURES = ('toric', 'double-semion')


class ModularDataError(ValueError):
    """The data violate one of the axioms of modular data."""


@dataclass(frozen=True, eq=False)
class ModularData:
    """Validated modular data; build with :func:`load`, :func:`from_dict` or :func:`fixture`.

    ``fusion[i, k, j]`` is the multiplicity ``N^j_{ik}`` of ``X_j`` in ``X_i (x) X_k``.
    """
    labels: tuple[str, ...]
    dual: tuple[int, ...]
    twists: tuple[Fraction, ...]
    dims: tuple[Cyclotomic, ...]
    global_dim: Cyclotomic
    s_matrix: tuple[tuple[Cyclotomic, ...], ...] | None
    fusion: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.labels)

    def twist(self, i: int) -> Cyclotomic:
        t = self.twists[i]
        return root_of_unity(t.denominator, t.numerator)

    @cached_property
    def _inv_dim(self) -> Cyclotomic:
        return self.global_dim.inverse()


def _cyc(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.from_json(x)


def from_dict(data: dict) -> ModularData:
    """Parse and validate the JSON modular-data schema."""
    try:
        r = int(data["rank"])
        dual = tuple(int(x) for x in data.get("dual", range(r)))
        twists = tuple(Fraction(int(t["num"]), int(t["den"])) % 1 for t in data["twists"])
        dims = tuple(_cyc(d) for d in data["dims"])
        gdim = _cyc(data["global_dim"]) if "global_dim" in data else None
        labels = tuple(str(x) for x in data.get("labels", range(r)))
        S = data.get("s_matrix")
        S = tuple(tuple(_cyc(x) for x in row) for row in S) if S is not None else None
        fusion = data.get("fusion")
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ModularDataError(f"malformed modular data: {exc!r}") from None
    for name, seq in (("dual", dual), ("twists", twists), ("dims", dims), ("labels", labels)):
        if len(seq) != r:
            raise ModularDataError(f"'{name}' has length {len(seq)}, expected rank {r}")
    if sorted(dual) != list(range(r)) or any(dual[dual[i]] != i for i in range(r)):
        raise ModularDataError("'dual' is not an involutive permutation")
    if dual[0] != 0:
        raise ModularDataError("unit object is not self-dual")
    if twists[0] != 0:
        raise ModularDataError("twist of the unit is not 1")
    if dims[0] != one():
        raise ModularDataError("dimension of the unit is not 1")
    for i in range(r):
        if dims[i] != dims[dual[i]]:
            raise ModularDataError(f"d_{i} != d_{dual[i]} (dual pair)")
        if twists[i] != twists[dual[i]]:
            raise ModularDataError(f"twist of {i} differs from its dual {dual[i]}")
    total = reduce(lambda a, b: a + b, (dims[i] * dims[dual[i]] for i in range(r)), zero())
    if gdim is None:
        gdim = total
    elif gdim != total:
        raise ModularDataError("global_dim differs from the sum of d_i d_i*")
    if gdim.is_zero():
        raise ModularDataError("global dimension vanishes")

    N = None
    if S is not None:
        _check_s(S, dims, dual, r)
        N = _verlinde_tensor(S, dual, r)
    if fusion is not None:
        F = np.asarray(fusion, dtype=np.int64)
        if F.size != r ** 3:
            raise ModularDataError(f"fusion must have {r ** 3} entries, got {F.size}")
        F = F.reshape(r, r, r)
        if N is not None:
            bad = np.argwhere(F != N)
            if len(bad):
                i, k, j = map(int, bad[0])
                raise ModularDataError(f"fusion disagrees with Verlinde at N^{j}_({i},{k})")
        N = F
    if N is None:
        raise ModularDataError("need an S-matrix or a fusion tensor")
    _check_fusion(N, dims, dual, r)
    N.setflags(write=False)
    M = ModularData(labels, dual, twists, dims, gdim, S, N)
    if S is not None:
        _check_balancing(M)
    return M


def _check_s(S, dims, dual, r):
    if len(S) != r or any(len(row) != r for row in S):
        raise ModularDataError("S-matrix has the wrong shape")
    for i in range(r):
        for j in range(i + 1, r):
            if S[i][j] != S[j][i]:
                raise ModularDataError(f"S not symmetric at ({i},{j})")
    for i in range(r):
        for j in range(r):
            acc = zero()
            for k in range(r):
                acc = acc + S[i][k] * S[j][k].conj()
            if acc != (one() if i == j else zero()):
                raise ModularDataError(f"S not unitary at ({i},{j})")
    for i in range(r):
        for j in range(r):
            acc = zero()
            for k in range(r):
                acc = acc + S[i][k] * S[k][j]
            if acc != (one() if j == dual[i] else zero()):
                raise ModularDataError(f"S^2 is not charge conjugation at ({i},{j})")
    if S[0][0].is_zero():
        raise ModularDataError("s_00 vanishes")
    for i in range(r):
        if S[0][i] != dims[i] * S[0][0]:
            raise ModularDataError(f"s_0{i} / s_00 differs from d_{i}")


def _verlinde_tensor(S, dual, r) -> np.ndarray:
    N = np.zeros((r, r, r), dtype=np.int64)
    inv0 = [S[0][x].inverse() for x in range(r)]
    for i in range(r):
        for k in range(i, r):
            for j in range(r):
                val = zero()
                for x in range(r):
                    val = val + S[i][x] * S[k][x] * S[dual[j]][x] * inv0[x]
                q = val.as_rational()
                if q is None or q.denominator != 1 or q < 0:
                    raise ModularDataError(
                        f"Verlinde formula gives {val.format()} for N^{j}_({i},{k}); "
                        "not a nonnegative integer")
                N[i, k, j] = N[k, i, j] = int(q)
    return N


def _check_fusion(N, dims, dual, r):
    if (N < 0).any():
        i, k, j = map(int, np.argwhere(N < 0)[0])
        raise ModularDataError(f"negative fusion coefficient N^{j}_({i},{k})")
    eye = np.eye(r, dtype=np.int64)
    if not (N[0] == eye).all() or not (N[:, 0] == eye).all():
        raise ModularDataError("unit object does not act as identity on fusion")
    for i in range(r):
        for j in range(r):
            if N[i, j, 0] != (1 if j == dual[i] else 0):
                raise ModularDataError(f"N^0_({i},{j}) violates duality")
    bad = np.argwhere(N != N.transpose(1, 0, 2))
    if len(bad):
        i, k, j = map(int, bad[0])
        raise ModularDataError(f"fusion not commutative at N^{j}_({i},{k})")
    d = np.array(dual)
    bad = np.argwhere(N != N[np.ix_(d, d, d)])
    if len(bad):
        i, k, j = map(int, bad[0])
        raise ModularDataError(f"N^{j}_({i},{k}) differs from its dual")
    # (X_a X_b) X_c = X_a (X_b X_c)
    left = np.einsum('abx,xcd->abcd', N, N)
    right = np.einsum('bcx,axd->abcd', N, N)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c, _ = map(int, bad[0])
        raise ModularDataError(f"fusion not associative at ({a},{b},{c})")
    for i in range(r):
        for k in range(r):
            acc = zero()
            for j in range(r):
                if N[i, k, j]:
                    acc = acc + dims[j].scale(int(N[i, k, j]))
            if acc != dims[i] * dims[k]:
                raise ModularDataError(f"d_{i} d_{k} differs from the dimension of X_{i} X_{k}")


def _check_balancing(M: ModularData):
    """``s_ij * s_00**-1 = sum_k N^k_{i* j} d_k omega_k / (omega_i omega_j)``."""
    r, S = M.rank, M.s_matrix
    for i in range(r):
        for j in range(r):
            acc = zero()
            for k in range(r):
                n = int(M.fusion[M.dual[i], j, k])
                if n:
                    rot = M.twists[k] - M.twists[i] - M.twists[j]
                    acc = acc + (M.dims[k] * root_of_unity(rot.denominator, rot.numerator)).scale(n)
            if acc * S[0][0] != S[i][j]:
                raise ModularDataError(f"S and twists violate the balancing relation at ({i},{j})")


def load(path) -> ModularData:
    with open(path) as fh:
        return from_dict(json.load(fh))


def fixture(name: str) -> ModularData:
    """Bundled data: ``"toric"`` (centre of Vec_Z2) or ``"double-semion"``."""
    if name not in FIXTURES:
        raise ModularDataError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files('fuscat').joinpath('data', f'{name}.json').read_text()
    return from_dict(json.loads(text))


def verlinde(M: ModularData, i: int, k: int, j: int) -> int:
    """``N^j_{ik}``, computed from the S-matrix when one is present."""
    if M.s_matrix is None:
        return int(M.fusion[i, k, j])
    return int(_verlinde_tensor(M.s_matrix, M.dual, M.rank)[i, k, j])


def bantay_indicator(M: ModularData, j: int, n: int) -> Cyclotomic:
    """``(1/dim) sum_{i,k} N^j_{ik} d_i d_k (omega_i / omega_k)**n``."""
    if n < 1:
        raise ValueError("n must be positive")
    acc = zero()
    r = M.rank
    for i in range(r):
        for k in range(r):
            mult = int(M.fusion[i, k, j])
            if mult:
                rot = (M.twists[i] - M.twists[k]) * n
                term = M.dims[i] * M.dims[k] * root_of_unity(rot.denominator, rot.numerator)
                acc = acc + term.scale(mult)
    return acc * M._inv_dim


def fs_exponent(M: ModularData) -> int:
    """Order of the twist: lcm of the orders of all ``omega_i``."""
    return reduce(math.lcm, (t.denominator for t in M.twists), 1)


def etingof_exponent(M: ModularData) -> int:
    """Least n with ``(omega_k / (omega_i omega_j))**n = 1`` whenever ``N^k_{ij} != 0``."""
    out = 1
    for i, j, k in np.argwhere(M.fusion > 0):
        rot = (M.twists[k] - M.twists[i] - M.twists[j]) % 1
        out = math.lcm(out, rot.denominator)
    return out


def _prime_factors(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


@dataclass(frozen=True)
class Diagnostic:
    name: str
    passed: bool
    detail: str


def unit_multiplicity_of_power(M: ModularData, p: int) -> int:
    """``N_0`` of ``V^{(x) p}`` for V the sum of all simple objects."""
    x = np.zeros(M.rank, dtype=object)
    x[0] = 1
    V = M.fusion.sum(axis=1).astype(object)  # V (x) X_i has X_j with multiplicity sum_k N^j_{ik}
    for _ in range(p):
        x = x @ V
    return int(x[0])


def diagnostics(M: ModularData, primes=(3, 5, 7)) -> list[Diagnostic]:
    """Consistency checks between twists, fusion and indicators.

    A failure means the data cannot come from a modular category.
    """
    out = []
    F, E = fs_exponent(M), etingof_exponent(M)
    out.append(Diagnostic("fsexp_over_exp", F % E == 0 and F // E in (1, 2),
                          f"FSexp = {F}, exp = {E}, ratio = {Fraction(F, E)}"))
    dim_q = M.global_dim.as_rational()
    if all(d.as_rational() is not None and d.as_rational().denominator == 1 for d in M.dims) \
            and dim_q is not None and dim_q.denominator == 1:
        pf, pd = _prime_factors(F), _prime_factors(int(dim_q))
        out.append(Diagnostic("prime_factors", pf == pd,
                              f"primes(FSexp) = {sorted(pf)}, primes(dim) = {sorted(pd)}"))
    nu2 = [bantay_indicator(M, j, 2) for j in range(M.rank)]
    allowed = {zero(), one(), -one()}
    out.append(Diagnostic("nu2_values", all(v in allowed for v in nu2),
                          "nu_2 = " + ", ".join(v.format() for v in nu2)))
    periodic = True
    for j in range(M.rank):
        seq = [bantay_indicator(M, j, n) for n in range(1, 2 * F + 1)]
        if seq[F - 1] != M.dims[j] or any(seq[n] != seq[n + F] for n in range(F)):
            periodic = False
    out.append(Diagnostic("periodicity", periodic,
                          f"nu_n(X_j) has period {F} and nu_{F}(X_j) = d_j"))
    for p in primes:
        if F % p == 0:
            continue
        n0 = unit_multiplicity_of_power(M, p)
        out.append(Diagnostic(f"congruence_p{p}", (n0 - 1) % p == 0,
                              f"N_0(V) = 1, N_0(V^{p}) = {n0}, difference mod {p} = {(n0 - 1) % p}"))
    return out

