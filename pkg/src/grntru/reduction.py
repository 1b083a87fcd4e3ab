"""Lattice basis reduction with exact integer arithmetic.

The reference path is an all-integer LLL that tracks the Gram-Schmidt data as
exact integers (lambda[i][j] = d[j+1] * mu[i][j], with d[i] the Gram
determinant of the leading i rows), so the Lovasz and size-reduction
post-conditions hold exactly on every output.  A floating-point pre-pass
performs only integer row operations and merely accelerates the exact pass,
which always runs to completion afterwards.

SVP for small blocks is solved by full (unpruned) enumeration over the exact
rational Gram-Schmidt data, and a plain block reduction (BKZ) is built on
top of both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import NotFound, ParameterError, RankError
from .lattice import IntegerLattice, norm_sq, sign_normalize

Rows = List[List[int]]

DEFAULT_DELTA = 0.99
DEFAULT_ETA = 0.501


@dataclass(frozen=True)
class ReductionConfig:
    """Reduction algorithm and its parameters.

    ``delta`` and ``eta`` are the Lovasz and size-reduction parameters;
    ``beta`` and ``max_tours`` apply to BKZ only.  ``float_prepass`` toggles
    the floating-point acceleration (the exact pass always runs).
    """

    algorithm: str = "LLL"
    delta: float = DEFAULT_DELTA
    eta: float = DEFAULT_ETA
    beta: int = 10
    max_tours: int = 8
    float_prepass: bool = True

    def __post_init__(self):
        if self.algorithm not in ("LLL", "BKZ"):
            raise ParameterError(f"unknown algorithm {self.algorithm!r}")
        if not 0.25 < self.delta <= 1.0:
            raise ParameterError(f"delta={self.delta} outside (1/4, 1]")
        if not 0.5 <= self.eta < math.sqrt(self.delta):
            raise ParameterError(f"eta={self.eta} outside [1/2, sqrt(delta))")
        if self.beta < 2:
            raise ParameterError(f"beta={self.beta} must be at least 2")
        if self.max_tours < 1:
            raise ParameterError(f"max_tours={self.max_tours} must be positive")

    def delta_fraction(self) -> Fraction:
        return Fraction(str(self.delta))

    def label(self) -> str:
        return "LLL" if self.algorithm == "LLL" else f"BKZ{self.beta}"


@dataclass
class ReducedBasis:
    """Reduction output.

    ``reduced_rows`` keeps the order produced by the algorithm, where the
    LLL conditions hold between consecutive Gram-Schmidt vectors.  ``rows``
    is the same basis sorted ascending by norm (ties broken by entries) for
    shortest-first scanning.
    """

    rows: Rows
    reduced_rows: Rows
    config: ReductionConfig

    @property
    def dim(self) -> int:
        return len(self.rows)


def _as_rows(basis) -> Rows:
    if isinstance(basis, IntegerLattice):
        return basis.rows()
    if isinstance(basis, ReducedBasis):
        return [list(r) for r in basis.reduced_rows]
    return [[int(x) for x in row] for row in basis]


def _sorted_rows(rows: Rows) -> Rows:
    return [list(r) for r in sorted(rows, key=lambda r: (norm_sq(r), tuple(r)))]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def integer_gso(rows: Rows) -> Tuple[List[List[int]], List[int]]:
    """Exact Gram-Schmidt data: lambda[i][j] for j < i, and d[0..n].

    d[i] is the Gram determinant of the first i rows (d[0] = 1), so
    mu[i][j] = lambda[i][j] / d[j+1] and ||b*_i||^2 = d[i+1] / d[i].
    Raises RankError when the rows are linearly dependent.
    """
    n = len(rows)
    lam = [[0] * i for i in range(n)]
    d = [1] * (n + 1)
    for i in range(n):
        for j in range(i + 1):
            u = _dot(rows[i], rows[j])
            lj = lam[j]
            li = lam[i]
            for k in range(j):
                u = (d[k + 1] * u - li[k] * lj[k]) // d[k]
            if j < i:
                li[j] = u
            else:
                if u <= 0:
                    raise RankError(f"rows are linearly dependent at row {i}")
                d[i + 1] = u
    return lam, d


def gram_determinant(rows: Rows) -> int:
    """Exact Gram determinant of the row set."""
    _, d = integer_gso(rows)
    return d[len(rows)]


def _gso_fractions(
    lam: List[List[int]], d: List[int], n: int
) -> Tuple[List[List[Fraction]], List[Fraction]]:
    mu = [[Fraction(lam[i][j], d[j + 1]) for j in range(i)] for i in range(n)]
    bstar = [Fraction(d[i + 1], d[i]) for i in range(n)]
    return mu, bstar


def _exact_lll(rows: Rows, delta: Fraction) -> None:
    """All-integer LLL, in place.  Rows end up size-reduced and Lovasz-valid."""
    n = len(rows)
    if n <= 1:
        if n == 1 and not any(rows[0]):
            raise RankError("zero row")
        return
    lam, d = integer_gso(rows)
    num, den = delta.numerator, delta.denominator

    def reduce_row(k: int, l: int) -> None:
        lk = lam[k]
        dl = d[l + 1]
        if 2 * abs(lk[l]) > dl:
            q = (2 * lk[l] + dl) // (2 * dl)
            rk, rl = rows[k], rows[l]
            for t in range(len(rk)):
                rk[t] -= q * rl[t]
            lk[l] -= q * dl
            ll = lam[l]
            for i in range(l):
                lk[i] -= q * ll[i]

    k = 1
    while k < n:
        reduce_row(k, k - 1)
        lkk = lam[k][k - 1]
        if den * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den * lkk * lkk:
            rows[k - 1], rows[k] = rows[k], rows[k - 1]
            lam_k, lam_k1 = lam[k], lam[k - 1]
            for j in range(k - 1):
                lam_k[j], lam_k1[j] = lam_k1[j], lam_k[j]
            b_new = (d[k - 1] * d[k + 1] + lkk * lkk) // d[k]
            for i in range(k + 1, n):
                li = lam[i]
                t = li[k]
                li[k] = (d[k + 1] * li[k - 1] - lkk * t) // d[k]
                li[k - 1] = (b_new * t + lkk * li[k]) // d[k + 1]
            d[k] = b_new
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                reduce_row(k, l)
            k += 1


_PREPASS_ENTRY_LIMIT = 1 << 40
_PREPASS_STEP_LIMIT = 1 << 20


def _float_prepass(rows: Rows, delta: float, eta: float) -> Rows:
    """Floating-point LLL pre-reduction using only integer row operations.

    Best effort: on iteration caps or overflow risk it returns whatever it
    has, which still spans the same lattice.  The exact pass finishes the
    job either way.
    """
    import numpy as np

    n = len(rows)
    if n <= 1:
        return rows
    max_abs = max(max(abs(x) for x in row) for row in rows)
    if max_abs == 0 or max_abs > _PREPASS_ENTRY_LIMIT:
        return rows
    basis = np.array(rows, dtype=np.int64)
    mu = np.zeros((n, n))
    bs = np.zeros(n)

    def refresh() -> bool:
        star = basis.astype(np.float64)
        for i in range(n):
            v = star[i]
            for j in range(i):
                denom = bs[j]
                if denom <= 0.0:
                    return False
                mu[i, j] = (basis[i].astype(np.float64) @ star[j]) / denom
                v = v - mu[i, j] * star[j]
            star[i] = v
            bs[i] = float(v @ v)
            if not math.isfinite(bs[i]) or bs[i] <= 0.0:
                return False
        return True

    if not refresh():
        return rows
    cap = 300 * n * n + 10_000
    since_refresh = 0
    iters = 0
    k = 1
    while k < n and iters < cap:
        iters += 1
        since_refresh += 1
        if since_refresh > 8 * n:
            since_refresh = 0
            if int(np.abs(basis).max()) > _PREPASS_ENTRY_LIMIT or not refresh():
                break
        for j in range(k - 1, -1, -1):
            if abs(mu[k, j]) > eta:
                q = round(float(mu[k, j]))
                if abs(q) > _PREPASS_STEP_LIMIT:
                    return [[int(x) for x in row] for row in basis]
                basis[k] -= q * basis[j]
                mu[k, :j] -= q * mu[j, :j]
                mu[k, j] -= q
        mu_kk = mu[k, k - 1]
        if bs[k] < (delta - mu_kk * mu_kk) * bs[k - 1]:
            basis[[k - 1, k]] = basis[[k, k - 1]]
            b_k = bs[k] + mu_kk * mu_kk * bs[k - 1]
            if b_k <= 0.0:
                break
            mu[k, k - 1] = mu_kk * bs[k - 1] / b_k
            bs[k] = bs[k - 1] * bs[k] / b_k
            bs[k - 1] = b_k
            if k >= 2:
                mu[[k - 1, k], : k - 1] = mu[[k, k - 1], : k - 1]
            for i in range(k + 1, n):
                t = mu[i, k]
                mu[i, k] = mu[i, k - 1] - mu_kk * t
                mu[i, k - 1] = t + mu[k, k - 1] * mu[i, k]
            k = max(k - 1, 1)
        else:
            k += 1
    return [[int(x) for x in row] for row in basis]


def lll_reduce(basis, cfg: Optional[ReductionConfig] = None) -> ReducedBasis:
    """LLL-reduce a basis; the output satisfies the exact post-conditions."""
    cfg = cfg or ReductionConfig()
    rows = _as_rows(basis)
    if not rows:
        raise RankError("empty basis")
    if cfg.float_prepass:
        rows = _float_prepass(rows, cfg.delta, cfg.eta)
    _exact_lll(rows, cfg.delta_fraction())
    return ReducedBasis(rows=_sorted_rows(rows), reduced_rows=rows, config=cfg)


def _root_interval(c: Fraction, bound: Fraction) -> Tuple[int, int]:
    """Integers x with (x - c)^2 <= bound; float guess fixed up exactly."""
    if bound < 0:
        return 1, 0
    s = math.sqrt(float(bound)) if bound > 0 else 0.0
    cf = float(c)
    lo = math.floor(cf - s)
    while (lo - c) * (lo - c) > bound:
        lo += 1
    while (lo - 1 - c) * (lo - 1 - c) <= bound:
        lo -= 1
    hi = math.ceil(cf + s)
    while (hi - c) * (hi - c) > bound:
        hi -= 1
    while (hi + 1 - c) * (hi + 1 - c) <= bound:
        hi += 1
    return lo, hi


def _enumerate_block(
    mu: List[List[Fraction]],
    bstar: List[Fraction],
    start: int,
    end: int,
    radius_sq: Fraction,
    tie_key: Optional[Callable[[List[int]], tuple]] = None,
):
    """Full enumeration of the projected block [start, end).

    Returns (u, norm_sq) for the shortest nonzero coefficient vector with
    projected norm at most the radius, or None.  Ties are broken by
    ``tie_key`` (default: sign-normalized coefficients, lexicographic).
    """
    blk = end - start
    if tie_key is None:
        tie_key = lambda u: tuple(sign_normalize(u))
    best_u: Optional[List[int]] = None
    best_rho = Fraction(radius_sq)
    best_key: Optional[tuple] = None
    u = [0] * blk

    def descend(level: int, partial: Fraction) -> None:
        nonlocal best_u, best_rho, best_key
        c = Fraction(0)
        mu_col = start + level
        for j in range(level + 1, blk):
            if u[j]:
                c -= mu[start + j][mu_col] * u[j]
        budget = best_rho - partial
        if budget < 0:
            return
        b_l = bstar[mu_col]
        lo, hi = _root_interval(c, budget / b_l)
        for x in range(lo, hi + 1):
            diff = x - c
            rho = partial + diff * diff * b_l
            if rho > best_rho:
                continue
            u[level] = x
            if level == 0:
                if any(u):
                    key = tie_key(u)
                    if (
                        rho < best_rho
                        or best_u is None
                        or (rho == best_rho and key < best_key)
                    ):
                        best_u = list(u)
                        best_rho = rho
                        best_key = key
            else:
                descend(level - 1, rho)
        u[level] = 0

    descend(blk - 1, Fraction(0))
    if best_u is None:
        return None
    return best_u, best_rho


SVP_DIM_LIMIT = 30


def svp_enumerate(basis, radius: Optional[float] = None) -> List[int]:
    """Provably shortest nonzero vector of an LLL-reduced basis.

    ``radius`` bounds the search (defaults to the shortest row norm, which
    always contains a lattice vector).  Raises NotFound when no nonzero
    vector lies within the radius.  Practical dimension limit: 30.
    """
    rows = _as_rows(basis)
    n = len(rows)
    if n > SVP_DIM_LIMIT:
        raise ParameterError(f"enumeration limited to dimension {SVP_DIM_LIMIT}")
    lam, d = integer_gso(rows)
    mu, bstar = _gso_fractions(lam, d, n)
    if radius is None:
        radius_sq = Fraction(min(norm_sq(row) for row in rows))
    elif isinstance(radius, Fraction):
        radius_sq = radius * radius
    else:
        radius_sq = Fraction(str(float(radius))) ** 2

    def vector_of(u: List[int]) -> List[int]:
        out = [0] * len(rows[0])
        for coeff, row in zip(u, rows):
            if coeff:
                for t in range(len(out)):
                    out[t] += coeff * row[t]
        return out

    found = _enumerate_block(
        mu, bstar, 0, n, radius_sq, tie_key=lambda u: tuple(sign_normalize(vector_of(u)))
    )
    if found is None:
        raise NotFound(f"no nonzero vector within radius^2 = {float(radius_sq):g}")
    u, _ = found
    return sign_normalize(vector_of(u))


def _unimodular_with_first_row(u: Sequence[int]) -> Rows:
    """Unimodular integer matrix whose first row is ``u`` (gcd must be 1).

    Built by recording the column operations that carry ``u`` to e_1, then
    applying their inverses in reverse to the identity.
    """
    n = len(u)
    v = list(u)
    ops: List[tuple] = []
    while True:
        nonzero = [(abs(x), idx) for idx, x in enumerate(v) if x]
        if not nonzero:
            raise ValueError("zero vector cannot head a unimodular matrix")
        if len(nonzero) == 1:
            break
        _, piv = min(nonzero)
        pv = v[piv]
        for idx, x in enumerate(v):
            if idx != piv and x:
                q = x // pv
                if q:
                    v[idx] -= q * pv
                    ops.append(("addmul", piv, idx, -q))
    _, piv = min((abs(x), idx) for idx, x in enumerate(v) if x)
    if abs(v[piv]) != 1:
        raise ValueError(f"entries have gcd {abs(v[piv])}, expected 1")
    if piv != 0:
        v[0], v[piv] = v[piv], v[0]
        ops.append(("swap", 0, piv))
    if v[0] < 0:
        v[0] = -v[0]
        ops.append(("neg", 0))
    mat = [[int(i == j) for j in range(n)] for i in range(n)]
    for op in reversed(ops):
        if op[0] == "addmul":
            _, i, j, c = op
            for row in mat:
                row[j] -= c * row[i]
        elif op[0] == "swap":
            _, i, j = op
            for row in mat:
                row[i], row[j] = row[j], row[i]
        else:
            _, i = op
            for row in mat:
                row[i] = -row[i]
    return mat


def bkz_reduce(basis, cfg: Optional[ReductionConfig] = None) -> ReducedBasis:
    """Plain block reduction: LLL, then tours of exact SVP on each block.

    Each block's leading projected vector is replaced whenever enumeration
    finds a strictly shorter one (delta slack), followed by a full exact
    LLL.  Stops after a clean tour or ``max_tours``.
    """
    cfg = cfg or ReductionConfig(algorithm="BKZ")
    rows = _as_rows(basis)
    n = len(rows)
    if cfg.beta > n:
        raise ParameterError(f"beta={cfg.beta} exceeds dimension {n}")
    delta = cfg.delta_fraction()
    if cfg.float_prepass:
        rows = _float_prepass(rows, cfg.delta, cfg.eta)
    _exact_lll(rows, delta)
    for _ in range(cfg.max_tours):
        changed = False
        for kappa in range(n - 1):
            end = min(kappa + cfg.beta, n)
            if end - kappa < 2:
                continue
            lam, d = integer_gso(rows)
            mu, bstar = _gso_fractions(lam, d, n)
            found = _enumerate_block(mu, bstar, kappa, end, bstar[kappa])
            if found is None:
                continue
            u, rho = found
            if rho >= delta * bstar[kappa]:
                continue
            if all(x == 0 for x in u[1:]) and abs(u[0]) == 1:
                continue
            transform = _unimodular_with_first_row(u)
            block = [rows[kappa + i] for i in range(end - kappa)]
            for i, trow in enumerate(transform):
                new_row = [0] * len(block[0])
                for coeff, brow in zip(trow, block):
                    if coeff:
                        for t in range(len(new_row)):
                            new_row[t] += coeff * brow[t]
                rows[kappa + i] = new_row
            _exact_lll(rows, delta)
            changed = True
        if not changed:
            break
    return ReducedBasis(rows=_sorted_rows(rows), reduced_rows=rows, config=cfg)


def reduce_basis(basis, cfg: Optional[ReductionConfig] = None) -> ReducedBasis:
    """Dispatch on cfg.algorithm."""
    cfg = cfg or ReductionConfig()
    if cfg.algorithm == "BKZ":
        return bkz_reduce(basis, cfg)
    return lll_reduce(basis, cfg)


def lll_conditions_hold(
    rows: Rows, delta: float = DEFAULT_DELTA, eta: float = DEFAULT_ETA
) -> Tuple[bool, bool]:
    """Exact post-hoc check: (size_reduced, lovasz) at the given parameters."""
    n = len(rows)
    lam, d = integer_gso(rows)
    mu, bstar = _gso_fractions(lam, d, n)
    eta_f = Fraction(str(eta))
    delta_f = Fraction(str(delta))
    size_ok = all(
        abs(mu[i][j]) <= eta_f for i in range(n) for j in range(i)
    )
    lovasz_ok = True
    for k in range(1, n):
        m = mu[k][k - 1]
        if delta_f * bstar[k - 1] > bstar[k] + m * m * bstar[k - 1]:
            lovasz_ok = False
            break
    return size_ok, lovasz_ok
