"""Key-recovery attacks on the public key via basis reduction.

Two routes: the naive attack reduces the full 2n-dimensional lattice and
scans for a short row whose f-part inverts mod p; the pull-back attack for
dihedral groups reduces the two half-size lattices instead and combines row
pairs into candidate keys, looking both for a short non-ternary key (k1) and
for a ternary key (k2) obtained when the combination halves cleanly.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import NotInLattice, NotInvertible, UnsupportedGroup
from .group_ring import (
    GroupRingElement,
    centered_lift,
    element,
    gr_mul,
    invert_mod_prime,
    is_invertible_mod_prime,
)
from .lattice import (
    LatticeVectorPair,
    build_ntru_lattice,
    build_sublattices,
    combine_pullback,
    in_full_lattice,
    norm_sq,
    sign_normalize,
    split_public_key,
)
from .ntru import Ciphertext, NtruParams, encrypt, sample_message, sample_ternary
from .reduction import ReductionConfig, reduce_basis


def key_norm(params: NtruParams) -> float:
    """Norm of a freshly sampled private key: sqrt(4d + 1)."""
    return math.sqrt(4 * params.d + 1)


@dataclass
class AttackOutcome:
    """Result of one attack run.

    ``k`` is the naive-attack key, ``k1``/``k2`` the pull-back keys (k2 is
    ternary when present).  ``success`` applies the norm accounting only;
    end-to-end decryption checks live in the experiment harness.
    """

    k: Optional[List[int]] = None
    k1: Optional[List[int]] = None
    k2: Optional[List[int]] = None
    norm_sq_k: Optional[int] = None
    norm_sq_k1: Optional[int] = None
    norm_sq_k2: Optional[int] = None
    rows_scanned: int = 0
    elapsed_s: float = 0.0
    failure: bool = False
    success: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def nrm(sq):
            return math.sqrt(sq) if sq is not None else None

        return {
            "k": self.k,
            "k1": self.k1,
            "k2": self.k2,
            "norm_k": nrm(self.norm_sq_k),
            "norm_k1": nrm(self.norm_sq_k1),
            "norm_k2": nrm(self.norm_sq_k2),
            "rows_scanned": self.rows_scanned,
            "time_s": self.elapsed_s,
            "success": self.success,
        }


def naive_attack(
    h: GroupRingElement,
    params: NtruParams,
    threshold: Optional[float] = None,
    cfg: Optional[ReductionConfig] = None,
) -> AttackOutcome:
    """Scan the reduced full lattice for a short row with invertible f-part.

    Rows are visited in ascending norm; the scan stops at the first row
    beyond the threshold (default 4 * sqrt(4d+1)).
    """
    cfg = cfg or ReductionConfig()
    threshold_sq = (
        16 * (4 * params.d + 1) if threshold is None else float(threshold) ** 2
    )
    n = params.n
    start = time.perf_counter()
    reduced = reduce_basis(build_ntru_lattice(h, params), cfg)
    outcome = AttackOutcome()
    for row in reduced.rows:
        outcome.rows_scanned += 1
        nsq = norm_sq(row)
        if nsq > threshold_sq:
            break
        f_part = row[:n]
        if is_invertible_mod_prime(element(params.group, f_part), params.p):
            outcome.k = sign_normalize(row)
            outcome.norm_sq_k = nsq
            break
    outcome.failure = outcome.k is None
    outcome.elapsed_s = time.perf_counter() - start
    outcome.success = {
        "k": outcome.k is not None
        and outcome.norm_sq_k <= 16 * (4 * params.d + 1)
    }
    return outcome


def pullback_attack(
    h: GroupRingElement,
    params: NtruParams,
    threshold: Optional[float] = None,
    cfg: Optional[ReductionConfig] = None,
) -> AttackOutcome:
    """Recover keys from the two half-size lattices (dihedral groups only).

    Scans row pairs (v, w) of the reduced sum and difference lattices in
    ascending norm, both capped by the threshold (default 2 * sqrt(4d+1)).
    Each pair combines into (f0+f1, f0-f1, g0+g1, g0-g1); the first
    combination with invertible f-part becomes k1, and the first lying in
    {-2, 0, 2}^(4N) whose halved f-part inverts mod p becomes k2.
    """
    if params.group.kind != "dihedral":
        raise UnsupportedGroup("pull-back attack requires a dihedral group")
    cfg = cfg or ReductionConfig()
    threshold_sq = (
        4 * (4 * params.d + 1) if threshold is None else float(threshold) ** 2
    )
    start = time.perf_counter()
    h0, h1 = split_public_key(h)
    lat_plus, lat_minus = build_sublattices(h0, h1, params.q)
    red_plus = reduce_basis(lat_plus, cfg)
    red_minus = reduce_basis(lat_minus, cfg)
    outcome = AttackOutcome()
    found_k1 = found_k2 = False

    def finish() -> AttackOutcome:
        outcome.failure = not (found_k1 or found_k2)
        outcome.elapsed_s = time.perf_counter() - start
        outcome.success = {
            "k1": found_k1 and outcome.norm_sq_k1 <= 16 * (4 * params.d + 1),
            "k2": found_k2,
        }
        return outcome

    for v in red_plus.rows:
        outcome.rows_scanned += 1
        if norm_sq(v) > threshold_sq:
            return finish()
        v_pair = LatticeVectorPair.from_vector(v)
        for w in red_minus.rows:
            outcome.rows_scanned += 1
            if norm_sq(w) > threshold_sq:
                break
            w_pair = LatticeVectorPair.from_vector(w)
            candidate = combine_pullback(v_pair, w_pair)
            half = len(candidate) // 2
            f_cand, g_cand = candidate[:half], candidate[half:]
            if not found_k1 and is_invertible_mod_prime(
                element(params.group, f_cand), params.p
            ):
                outcome.k1 = sign_normalize(candidate)
                outcome.norm_sq_k1 = norm_sq(candidate)
                found_k1 = True
            if not found_k2 and all(x in (-2, 0, 2) for x in candidate):
                ternary = [x // 2 for x in candidate]
                if is_invertible_mod_prime(
                    element(params.group, ternary[:half]), params.p
                ):
                    outcome.k2 = sign_normalize(ternary)
                    outcome.norm_sq_k2 = norm_sq(ternary)
                    found_k2 = True
            if found_k1 and found_k2:
                return finish()
    return finish()


def is_decryption_key(
    fk,
    gk,
    h: GroupRingElement,
    params: NtruParams,
    trials: int,
    rng: random.Random,
) -> bool:
    """Empirical decryption test for a candidate lattice key (fk, gk).

    Encrypts ``trials`` random message/blinding pairs under h and checks
    that decrypting with fk and its mod-p inverse recovers every message
    exactly.  Requires (fk, gk) in the lattice of h and fk invertible mod p.
    """
    fk_el = fk if isinstance(fk, GroupRingElement) else element(params.group, fk)
    gk_el = gk if isinstance(gk, GroupRingElement) else element(params.group, gk)
    pair = LatticeVectorPair(tuple(fk_el.coeffs), tuple(gk_el.coeffs))
    if not in_full_lattice(pair, h, params.q):
        raise NotInLattice("candidate (fk, gk) is not in the lattice of h")
    fk_p = invert_mod_prime(fk_el, params.p)  # NotInvertible propagates
    for _ in range(trials):
        m = sample_message(params, rng)
        r = element(params.group, sample_ternary(params.d, params.d, params.n, rng))
        ct = encrypt(h, m, r, params)
        a = centered_lift(gr_mul(fk_el, ct.c, params.q), params.q)
        recovered = centered_lift(gr_mul(fk_p, a, params.p), params.p)
        if recovered != m:
            return False
    return True


def decrypts_ciphertext(
    fk: List[int],
    h: GroupRingElement,
    ct: Ciphertext,
    m: GroupRingElement,
    params: NtruParams,
) -> bool:
    """True iff the candidate f-part decrypts one concrete ciphertext to m."""
    fk_el = element(params.group, fk)
    try:
        fk_p = invert_mod_prime(fk_el, params.p)
    except NotInvertible:
        return False
    a = centered_lift(gr_mul(fk_el, ct.c, params.q), params.q)
    return centered_lift(gr_mul(fk_p, a, params.p), params.p) == m
