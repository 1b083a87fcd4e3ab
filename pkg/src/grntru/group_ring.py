"""Exact arithmetic in integer group rings of dihedral and cyclic groups.

Elements of ZG are integer coefficient vectors indexed by a fixed ordering of
the group elements.  For the dihedral group of order 2N the ordering is

    1, x, ..., x^(N-1), y, yx, ..., yx^(N-1)

so that the matrix representation of any element splits into a circulant and a
reverse-circulant block.  All arithmetic is over arbitrary-precision integers;
nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import DimensionError, NotInvertible, UnsupportedModulus

Matrix = List[List[int]]


class GroupSpec:
    """A finite group given by a fixed element order and multiplication table.

    Supported kinds are ``"dihedral"`` (size N, order 2N, presentation
    x^N = y^2 = 1, x*y = y*x^(N-1)) and ``"cyclic"`` (size n, order n).
    Instances are immutable; tables are built once from the presentation.
    """

    __slots__ = ("kind", "size", "order", "mul_table", "inv_table")

    def __init__(self, kind: str, size: int):
        if size < 1:
            raise ValueError(f"group size must be positive, got {size}")
        if kind == "dihedral":
            order = 2 * size
            mul = _dihedral_table(size)
        elif kind == "cyclic":
            order = size
            mul = [[(i + j) % size for j in range(size)] for i in range(size)]
        else:
            raise ValueError(f"unknown group kind {kind!r}")
        inv = [0] * order
        for i in range(order):
            inv[i] = mul[i].index(0)
        self.kind = kind
        self.size = size
        self.order = order
        self.mul_table = mul
        self.inv_table = inv

    @classmethod
    def dihedral(cls, n: int) -> "GroupSpec":
        return cls("dihedral", n)

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls("cyclic", n)

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inv(self, i: int) -> int:
        return self.inv_table[i]

    def to_dict(self) -> dict:
        key = "N" if self.kind == "dihedral" else "n"
        return {"kind": self.kind, key: self.size}

    @classmethod
    def from_dict(cls, data: dict) -> "GroupSpec":
        kind = data["kind"]
        size = data["N"] if kind == "dihedral" else data["n"]
        return cls(kind, int(size))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupSpec)
            and self.kind == other.kind
            and self.size == other.size
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.size))

    def __repr__(self) -> str:
        return f"GroupSpec({self.kind!r}, {self.size})"


def _dihedral_table(n: int) -> Matrix:
    """Multiplication table of D_n under the fixed element order.

    Index i < n encodes x^i, index n+e encodes y*x^e.  Products follow the
    presentation: x^i * x^j = x^(i+j), x^i * y x^j = y x^(j-i),
    y x^i * x^j = y x^(i+j), y x^i * y x^j = x^(j-i), exponents mod n.
    """
    order = 2 * n
    table = [[0] * order for _ in range(order)]
    for i in range(order):
        ri, ei = divmod(i, n)
        for j in range(order):
            rj, ej = divmod(j, n)
            if ri == 0 and rj == 0:
                table[i][j] = (ei + ej) % n
            elif ri == 0 and rj == 1:
                table[i][j] = n + (ej - ei) % n
            elif ri == 1 and rj == 0:
                table[i][j] = n + (ei + ej) % n
            else:
                table[i][j] = (ej - ei) % n
    return table


@dataclass(frozen=True)
class GroupRingElement:
    """Integer coefficient vector attached to a GroupSpec element order.

    Two elements are equal iff they share the group and every coefficient.
    """

    group: GroupSpec
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise DimensionError(
                f"coefficient vector has length {len(self.coeffs)}, "
                f"group order is {self.group.order}"
            )

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return gr_add(self, other)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return gr_add(self, gr_scalar_mul(-1, other))

    def __neg__(self) -> "GroupRingElement":
        return gr_scalar_mul(-1, self)

    def to_list(self) -> List[int]:
        return list(self.coeffs)


def element(group: GroupSpec, coeffs: Iterable[int]) -> GroupRingElement:
    """Build a GroupRingElement from any integer iterable."""
    return GroupRingElement(group, tuple(int(c) for c in coeffs))


def zero(group: GroupSpec) -> GroupRingElement:
    return GroupRingElement(group, (0,) * group.order)


def one(group: GroupSpec) -> GroupRingElement:
    """The unity (1, 0, ..., 0) of the group ring."""
    return GroupRingElement(group, (1,) + (0,) * (group.order - 1))


def _require_same_group(a: GroupRingElement, b: GroupRingElement) -> None:
    if a.group != b.group:
        raise DimensionError(f"mismatched groups: {a.group} vs {b.group}")


def gr_add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Coefficient-wise sum."""
    _require_same_group(a, b)
    return GroupRingElement(a.group, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def gr_scalar_mul(d: int, a: GroupRingElement) -> GroupRingElement:
    """Scale every coefficient by the integer d."""
    return GroupRingElement(a.group, tuple(d * x for x in a.coeffs))


def gr_mul(
    a: GroupRingElement, b: GroupRingElement, modulus: int | None = None
) -> GroupRingElement:
    """Convolution product: out[i*j] accumulates a[i]*b[j] over the group law.

    With ``modulus`` the result is reduced into [0, modulus).  Runs in
    O(|G|^2) via the precomputed table, which is fine at desk scale.
    """
    _require_same_group(a, b)
    table = a.group.mul_table
    order = a.group.order
    out = [0] * order
    bc = b.coeffs
    for h, ah in enumerate(a.coeffs):
        if ah == 0:
            continue
        row = table[h]
        for k in range(order):
            out[row[k]] += ah * bc[k]
    if modulus is not None:
        out = [x % modulus for x in out]
    return GroupRingElement(a.group, tuple(out))


def to_matrix(a: GroupRingElement) -> Matrix:
    """Matrix representation of ``a``: entry (i, j) = a[g_i^-1 * g_j].

    The first row carries the coefficients of ``a``; the map is a ring
    homomorphism, so products of elements become products of matrices.
    For dihedral groups the result has block form [[H0, H1], [H1, H0]] with
    H0 circulant and H1 reverse-circulant.
    """
    g = a.group
    mul, inv, c = g.mul_table, g.inv_table, a.coeffs
    return [[c[k] for k in mul[inv[i]]] for i in range(g.order)]


def rotate(vec: Sequence[int], r: int) -> List[int]:
    """Rotate a vector left by r positions (right for negative r).

    Index map is i -> (i + r) mod n on 0-based positions, so rotate(v, 0) is v
    and rotate(rotate(v, r), -r) restores the input.  r is reduced mod n.
    """
    n = len(vec)
    r %= n
    return [vec[(i + r) % n] for i in range(n)]


def centered_mod(x: int, m: int) -> int:
    """The representative of x mod m lying in (-m/2, m/2]."""
    r = x % m
    return r - m if 2 * r > m else r


def centered_lift_vec(vec: Sequence[int], m: int) -> List[int]:
    return [centered_mod(x, m) for x in vec]


def centered_lift(a: GroupRingElement, m: int) -> GroupRingElement:
    """Lift every coefficient to its centered representative mod m."""
    return GroupRingElement(a.group, tuple(centered_mod(x, m) for x in a.coeffs))


def _solve_first_row_of_inverse(mat: Matrix, p: int) -> List[int] | None:
    """First row of mat^-1 over Z_p, or None if mat is singular mod p.

    Plain Gauss-Jordan elimination on the identity-augmented matrix.
    """
    n = len(mat)
    aug = [[x % p for x in row] for row in mat]
    for i in range(n):
        aug[i].extend(int(i == j) for j in range(n))
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] % p:
                pivot = r
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(x * inv) % p for x in aug[col]]
        prow = aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], prow)]
    return [aug[0][n + j] for j in range(n)]


def invert_mod_prime(a: GroupRingElement, p: int) -> GroupRingElement:
    """Inverse of ``a`` in Z_p G, via inverting its matrix representation.

    The matrix inverse of a representation matrix is again a representation
    matrix, so its first row is the coefficient vector of the inverse.
    Raises NotInvertible when the matrix is singular mod p.
    """
    row = _solve_first_row_of_inverse(to_matrix(a), p)
    if row is None:
        raise NotInvertible(f"element is not invertible mod {p}")
    return GroupRingElement(a.group, tuple(row))


def is_invertible_mod_prime(a: GroupRingElement, p: int) -> bool:
    """Rank test of the representation matrix over Z_p."""
    n = a.group.order
    m = [[x % p for x in row] for row in to_matrix(a)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] % p:
                pivot = r
                break
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        inv = pow(m[col][col], -1, p)
        prow = [(x * inv) % p for x in m[col]]
        m[col] = prow
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], prow)]
    return True


def invert_mod_power_of_two(a: GroupRingElement, q: int) -> GroupRingElement:
    """Inverse of ``a`` in Z_q G for q a power of two.

    Inverts mod 2 first, then Newton-lifts b <- b * (2 - a*b), doubling the
    modulus each step until it reaches q.  Raises NotInvertible when ``a``
    is singular mod 2 and UnsupportedModulus when q is not a power of two.
    """
    if q < 2 or q & (q - 1):
        raise UnsupportedModulus(f"modulus {q} is not a power of two >= 2")
    row = _solve_first_row_of_inverse(to_matrix(a), 2)
    if row is None:
        raise NotInvertible("element is not invertible mod 2")
    b = GroupRingElement(a.group, tuple(row))
    two = gr_scalar_mul(2, one(a.group))
    mod = 2
    while mod < q:
        mod = mod * mod
        correction = gr_add(two, gr_scalar_mul(-1, gr_mul(a, b, mod)))
        b = gr_mul(b, correction, mod)
    return GroupRingElement(a.group, tuple(x % q for x in b.coeffs))
