"""Linear algebra over Z/m for integer matrices.

Everything is reduced to prime powers q = p**k, where Z/q is a local ring and a
Smith-type diagonalisation only needs the p-adic valuation of each entry.  Results
for composite moduli are glued with the Chinese remainder theorem.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = ['factorize', 'LocalSmith', 'invariant_factors_mod', 'solve_mod', 'cokernel_order',
           'hnf_mod', 'reduce_mod_hnf', 'crt']


def factorize(m: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@lru_cache(maxsize=None)
def _valuation_table(p: int, k: int) -> np.ndarray:
    """p-adic valuation of every residue mod p**k, with v(0) = k."""
    q = p ** k
    table = np.zeros(q, dtype=np.int64)
    for v in range(1, k):
        table[::p ** v] = v
    table[0] = k
    table.setflags(write=False)
    return table


class LocalSmith:
    """Diagonal reduction ``P A Q = diag(p**v_1, ..., p**v_r, 0, ...)`` over Z/p**k.

    ``P`` is stored as the sequence of elimination steps so it can be replayed on any
    right-hand side.  ``Q`` (and its inverse) is kept when ``track_columns`` is set.
    ``track_left_inverse`` keeps ``P**-1``, whose columns generate the cokernel.
    """

    def __init__(self, A, p: int, k: int, track_columns: bool = False,
                 track_left_inverse: bool = False):
        self.p, self.k = p, k
        self.q = q = p ** k
        A = np.array(A, dtype=np.int64) % q
        if A.ndim != 2:
            raise ValueError("matrix expected")
        rows, cols = A.shape
        self.shape = (rows, cols)
        vt = _valuation_table(p, k)
        V = np.eye(cols, dtype=np.int64) if track_columns else None
        Vinv = np.eye(cols, dtype=np.int64) if track_columns else None
        Pinv = np.eye(rows, dtype=np.int64) if track_left_inverse else None
        steps = []
        vals = []
        r = 0
        while r < min(rows, cols):
            sub = A[r:, r:]
            if not sub.any():
                break
            flat = int(np.argmin(vt[sub]))
            i, j = divmod(flat, cols - r)
            i += r
            j += r
            if i != r:
                A[[r, i]] = A[[i, r]]
                if Pinv is not None:
                    Pinv[:, [r, i]] = Pinv[:, [i, r]]
            if j != r:
                A[:, [r, j]] = A[:, [j, r]]
                if V is not None:
                    V[:, [r, j]] = V[:, [j, r]]
                    Vinv[[r, j]] = Vinv[[j, r]]
            v = int(vt[A[r, r]])
            pv = p ** v
            unit = int(A[r, r]) // pv
            uinv = pow(unit, -1, q)
            A[r] = A[r] * uinv % q
            if Pinv is not None:
                Pinv[:, r] = Pinv[:, r] * unit % q
            f = A[r + 1:, r] // pv
            nz = np.flatnonzero(f)
            if len(nz):
                # columns left of r are already zero below the pivot row
                ri = r + 1 + nz
                A[ri, r:] = (A[ri, r:] - np.outer(f[nz], A[r, r:])) % q
                if Pinv is not None:
                    Pinv[:, r] = (Pinv[:, r] + Pinv[:, r + 1:] @ f) % q
            g = A[r, r + 1:] // pv
            if V is not None and g.any():
                V[:, r + 1:] = (V[:, r + 1:] - np.outer(V[:, r], g)) % q
                Vinv[r] = (Vinv[r] + g @ Vinv[r + 1:]) % q
            A[r, r + 1:] = 0
            steps.append((i, uinv, f))
            vals.append(v)
            r += 1
        self.steps = steps
        self.valuations = vals
        self.rank = r
        self.V, self.Vinv, self.Pinv = V, Vinv, Pinv

    def diagonal(self) -> list[int]:
        """Diagonal entries p**v in elimination order; zero pivots are reported as q."""
        zeros = min(self.shape) - self.rank
        return [self.p ** v for v in self.valuations] + [self.q] * zeros

    def apply_left(self, w) -> np.ndarray:
        """P @ w mod q, for a vector or a matrix of column vectors."""
        q = self.q
        w = np.array(w, dtype=np.int64) % q
        for r, (i, uinv, f) in enumerate(self.steps):
            if i != r:
                w[[r, i]] = w[[i, r]]
            w[r] = w[r] * uinv % q
            if f.any():
                nz = np.flatnonzero(f)
                ri = r + 1 + nz
                w[ri] = (w[ri] - (np.outer(f[nz], w[r]) if w.ndim == 2 else f[nz] * w[r])) % q
        return w

    def solve(self, w) -> np.ndarray | None:
        """Some x with A x = w (mod q), or None."""
        if self.V is None:
            raise ValueError("solve needs track_columns=True")
        q = self.q
        wp = self.apply_left(w)
        r = self.rank
        if wp[r:].any():
            return None
        y = np.zeros(self.shape[1], dtype=np.int64)
        for i, v in enumerate(self.valuations):
            pv = self.p ** v
            if wp[i] % pv:
                return None
            y[i] = wp[i] // pv
        return self.V @ y % q

    def cokernel_order(self, w) -> int:
        """Additive order of the class of w in (Z/q)^rows / image(A)."""
        wp = self.apply_left(w)
        order = 1
        for i, x in enumerate(wp):
            mod = self.p ** self.valuations[i] if i < self.rank else self.q
            o = mod // math.gcd(int(x), mod)
            order = max(order, o)
        return order

    def kernel_generators(self) -> list[tuple[np.ndarray, int]]:
        """Generators (x, additive order) of {x : A x = 0 mod q}; the sum is direct."""
        if self.V is None:
            raise ValueError("kernel needs track_columns=True")
        out = []
        for r in range(self.shape[1]):
            v = self.valuations[r] if r < self.rank else self.k
            if v == 0:
                continue
            out.append((self.V[:, r] * self.p ** (self.k - v) % self.q, self.p ** v))
        return out


def invariant_factors_mod(A, m: int) -> list[int]:
    """Diagonal entries gcd(s_i, m) of the Smith form of A over Z/m, dropping 1 and m.

    Returned as an ascending divisibility chain.
    """
    per_prime = []
    for p, k in factorize(m).items():
        ls = LocalSmith(A, p, k)
        per_prime.append(sorted((d for d in ls.diagonal() if d > 1), reverse=True))
    return [d for d in _merge_prime_parts(per_prime) if d != m]


def _merge_prime_parts(per_prime: list[list[int]]) -> list[int]:
    width = max((len(x) for x in per_prime), default=0)
    out = []
    for i in range(width):
        d = 1
        for parts in per_prime:
            if i < len(parts):
                d *= parts[i]
        out.append(d)
    return out[::-1]


def crt(residues: list[tuple[np.ndarray, int]]) -> tuple[np.ndarray, int]:
    """Glue vectors x_i mod q_i (pairwise coprime) into one vector mod prod q_i."""
    x, m = np.zeros_like(residues[0][0]), 1
    for xi, qi in residues:
        # x + m * t = xi (mod qi)
        t = (xi - x) * pow(m, -1, qi) % qi
        x = x + m * t
        m *= qi
    return x % m, m


def solve_mod(A, w, m: int, cache=None) -> np.ndarray | None:
    """Some x with A x = w (mod m), or None.  ``cache`` maps (p, k) to a LocalSmith of A."""
    parts = []
    for p, k in factorize(m).items():
        ls = cache(p, k) if cache else LocalSmith(A, p, k, track_columns=True)
        x = ls.solve(w)
        if x is None:
            return None
        parts.append((x, p ** k))
    if not parts:
        return np.zeros(np.shape(A)[1], dtype=np.int64)
    return crt(parts)[0]


def cokernel_order(A, w, m: int, cache=None) -> int:
    """Order of w in (Z/m)^rows / image(A mod m)."""
    order = 1
    for p, k in factorize(m).items():
        ls = cache(p, k) if cache else LocalSmith(A, p, k)
        order *= ls.cokernel_order(w)
    return order


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    return old_r, old_s, old_t


def hnf_mod(gens, m: int) -> np.ndarray:
    """Upper-triangular basis of the submodule of (Z/m)^n spanned by the rows of ``gens``.

    Row j vanishes left of column j and carries a divisor d_j of m on the diagonal
    (d_j = m marks a zero row).  Every element of the module whose first nonzero
    entry is at column j has that entry divisible by d_j, so reduction against
    the rows is canonical.
    """
    gens = np.atleast_2d(np.asarray(gens, dtype=np.int64)) % m
    n = gens.shape[1]
    pool = [g for g in gens if g.any()]
    basis = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        piv, rest = None, []
        for g in pool:
            if g[j] == 0:
                rest.append(g)
            elif piv is None:
                piv = g
            else:
                a, b = int(piv[j]), int(g[j])
                d, s, t = _xgcd(a, b)
                other = ((b // d) * piv - (a // d) * g) % m
                piv = (s * piv + t * g) % m
                if other.any():
                    rest.append(other)
        if piv is None:
            basis[j, j] = m
            pool = rest
            continue
        d, s, _ = _xgcd(int(piv[j]), m)
        row = s * piv % m
        back = (piv - (int(piv[j]) // d) * row) % m
        ann = (m // d) * row % m
        rest.extend(x for x in (back, ann) if x.any())
        basis[j] = row
        pool = rest
    for j in range(n - 1, 0, -1):
        dj = basis[j, j]
        for i in range(j):
            c = basis[i, j] // dj
            if c:
                basis[i, j:] = (basis[i, j:] - c * basis[j, j:]) % m
    return basis


def reduce_mod_hnf(basis: np.ndarray, w, m: int) -> np.ndarray:
    """The lexicographically least vector with entries in [0, m) in the coset w + lattice."""
    w = np.array(w, dtype=np.int64) % m
    for j in range(len(w)):
        c = w[j] // basis[j, j]
        if c:
            w = (w - c * basis[j]) % m
    return w
