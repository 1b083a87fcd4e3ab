"""Group-ring NTRU: parameters, ternary sampling, keygen, encrypt, decrypt.

The scheme works over Z_q G for a dihedral or cyclic group G.  Secrets are
ternary vectors; the public key is h = f_q * g mod q.  Decryption succeeds
exactly when q > (6d+1)p, which parameter validation enforces.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List

from .errors import KeygenExhausted, MessageRangeError, NotInvertible, ParameterError
from .group_ring import (
    GroupRingElement,
    GroupSpec,
    centered_lift,
    element,
    gr_add,
    gr_mul,
    gr_scalar_mul,
    invert_mod_power_of_two,
    invert_mod_prime,
)


@dataclass(frozen=True)
class NtruParams:
    """Scheme parameters.

    ``N`` is the size parameter: half the group order for dihedral groups,
    the full order for cyclic ones.  ``d`` controls ternary weights:
    f has d+1 ones and d minus-ones, g and r have d of each.
    """

    N: int
    p: int
    q: int
    d: int
    group: GroupSpec

    @property
    def n(self) -> int:
        """Group order (the coefficient vector length)."""
        return self.group.order

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "p": self.p,
            "q": self.q,
            "d": self.d,
            "group": self.group.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NtruParams":
        return cls(
            N=int(data["N"]),
            p=int(data["p"]),
            q=int(data["q"]),
            d=int(data["d"]),
            group=GroupSpec.from_dict(data["group"]),
        )


@dataclass(frozen=True)
class KeyPair:
    """Private material (f, g, f_p, f_q) plus the public key h."""

    f: GroupRingElement
    g: GroupRingElement
    f_p: GroupRingElement
    f_q: GroupRingElement
    h: GroupRingElement

    def norm_sq(self) -> int:
        """Squared norm of the stacked private vector (f, g)."""
        return sum(c * c for c in self.f.coeffs) + sum(c * c for c in self.g.coeffs)


@dataclass(frozen=True)
class Ciphertext:
    c: GroupRingElement


def validate_params(params: NtruParams) -> None:
    """Raise ParameterError naming the first violated constraint."""
    n = params.n
    if params.group.size != params.N:
        raise ParameterError(
            f"N={params.N} inconsistent with {params.group.kind} group of order {n}"
        )
    if params.p < 2:
        raise ParameterError(f"p={params.p} must be at least 2")
    if math.gcd(params.p, params.q) != 1:
        raise ParameterError(f"gcd(p, q) = {math.gcd(params.p, params.q)} != 1")
    if params.q <= params.p:
        raise ParameterError(f"q={params.q} must exceed p={params.p}")
    if params.d < 1:
        raise ParameterError(f"d={params.d} must be at least 1")
    if 2 * params.d + 1 > n:
        raise ParameterError(f"2d+1 = {2 * params.d + 1} exceeds group order {n}")
    bound = (6 * params.d + 1) * params.p
    if params.q <= bound:
        raise ParameterError(f"q={params.q} must exceed (6d+1)p = {bound}")


def sample_ternary(t1: int, t2: int, n: int, rng: random.Random) -> List[int]:
    """Uniform ternary vector with exactly t1 ones and t2 minus-ones."""
    if t1 + t2 > n:
        raise ParameterError(f"t1+t2 = {t1 + t2} exceeds length {n}")
    vec = [1] * t1 + [-1] * t2 + [0] * (n - t1 - t2)
    rng.shuffle(vec)
    return vec


def sample_message(params: NtruParams, rng: random.Random) -> GroupRingElement:
    """Uniform message: each coefficient from the centered residues mod p."""
    half = params.p // 2
    lo = half - params.p + 1  # centered range (-p/2, p/2] as integers
    coeffs = [rng.randint(lo, half) for _ in range(params.n)]
    return element(params.group, coeffs)


def keypair_from_secret(
    f: GroupRingElement, g: GroupRingElement, params: NtruParams
) -> KeyPair:
    """Derive the full key pair from given secret vectors f and g."""
    f_p = invert_mod_prime(f, params.p)
    f_q = invert_mod_power_of_two(f, params.q)
    h = gr_mul(f_q, g, params.q)
    return KeyPair(f=f, g=g, f_p=f_p, f_q=f_q, h=h)


def keygen(
    params: NtruParams, rng: random.Random, max_attempts: int = 1000
) -> KeyPair:
    """Sample a key pair, resampling f until it inverts mod p and mod q."""
    validate_params(params)
    n = params.n
    for _ in range(max_attempts):
        f = element(params.group, sample_ternary(params.d + 1, params.d, n, rng))
        try:
            f_p = invert_mod_prime(f, params.p)
            f_q = invert_mod_power_of_two(f, params.q)
        except NotInvertible:
            continue
        g = element(params.group, sample_ternary(params.d, params.d, n, rng))
        h = gr_mul(f_q, g, params.q)
        return KeyPair(f=f, g=g, f_p=f_p, f_q=f_q, h=h)
    raise KeygenExhausted(f"no invertible f found in {max_attempts} attempts")


def encrypt(
    h: GroupRingElement,
    m: GroupRingElement,
    r: GroupRingElement,
    params: NtruParams,
) -> Ciphertext:
    """c = p*(h * r) + m mod q.  The message must be centered mod p."""
    half = params.p // 2
    lo = half - params.p + 1
    for coeff in m.coeffs:
        if not lo <= coeff <= half:
            raise MessageRangeError(
                f"message coefficient {coeff} outside ({-params.p / 2}, {params.p / 2}]"
            )
    blinded = gr_scalar_mul(params.p, gr_mul(h, r))
    c = gr_add(blinded, m)
    return Ciphertext(element(params.group, (x % params.q for x in c.coeffs)))


def decrypt_with(
    f: GroupRingElement,
    f_p: GroupRingElement,
    ct: Ciphertext,
    params: NtruParams,
) -> GroupRingElement:
    """Decrypt using an arbitrary (f, f_p) pair, not necessarily the true key."""
    a = centered_lift(gr_mul(f, ct.c, params.q), params.q)
    return centered_lift(gr_mul(f_p, a, params.p), params.p)


def decrypt(sk: KeyPair, ct: Ciphertext, params: NtruParams) -> GroupRingElement:
    """Recover the message with the private key."""
    return decrypt_with(sk.f, sk.f_p, ct, params)


def keypair_to_dict(kp: KeyPair, params: NtruParams) -> dict:
    """JSON-ready key file: public material in [0, q), private centered."""
    return {
        "params": params.to_dict(),
        "f": kp.f.to_list(),
        "g": kp.g.to_list(),
        "f_p": centered_lift(kp.f_p, params.p).to_list(),
        "h": [x % params.q for x in kp.h.coeffs],
    }


def keypair_from_dict(data: dict) -> tuple[KeyPair, NtruParams]:
    """Rebuild a key pair from its file form; f_q is recomputed from f."""
    params = NtruParams.from_dict(data["params"])
    f = element(params.group, data["f"])
    g = element(params.group, data["g"])
    f_p = element(params.group, (x % params.p for x in data["f_p"]))
    f_q = invert_mod_power_of_two(f, params.q)
    h = element(params.group, (x % params.q for x in data["h"]))
    return KeyPair(f=f, g=g, f_p=f_p, f_q=f_q, h=h), params


def ciphertext_to_dict(ct: Ciphertext) -> dict:
    return {"c": ct.c.to_list()}


def ciphertext_from_dict(data: dict, params: NtruParams) -> Ciphertext:
    return Ciphertext(element(params.group, (x % params.q for x in data["c"])))
