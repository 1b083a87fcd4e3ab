"""NTRU lattices for group-ring public keys and their dihedral splitting.

The full lattice for a public key h over a group of order n is spanned by the
rows of [[I_n, M(h)], [0, q I_n]] where M(h) is the matrix representation of
h.  For dihedral groups the right block is [[H0, H1], [H1, H0]], which an
integer conjugation turns into two independent blocks H0 + H1 and H0 - H1;
short vectors of the two half-size lattices pull back to the full one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import DimensionError, NotInLattice, StructureError, UnsupportedGroup
from .group_ring import GroupRingElement, Matrix, to_matrix
from .ntru import NtruParams


@dataclass(frozen=True)
class IntegerLattice:
    """Row-basis integer lattice with the modulus used to build it."""

    basis: Tuple[Tuple[int, ...], ...]
    q: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def rows(self) -> List[List[int]]:
        """Mutable copy of the basis rows."""
        return [list(r) for r in self.basis]


@dataclass(frozen=True)
class LatticeVectorPair:
    """A candidate lattice vector split into its f-part and g-part."""

    f_part: Tuple[int, ...]
    g_part: Tuple[int, ...]

    def __post_init__(self):
        if len(self.f_part) != len(self.g_part):
            raise DimensionError("f-part and g-part must have equal length")

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> "LatticeVectorPair":
        half = len(vec) // 2
        return cls(tuple(vec[:half]), tuple(vec[half:]))

    def to_vector(self) -> List[int]:
        return list(self.f_part) + list(self.g_part)


def norm_sq(vec: Sequence[int]) -> int:
    return sum(x * x for x in vec)


def sign_normalize(vec: Sequence[int]) -> List[int]:
    """Flip the sign so the first nonzero entry is positive."""
    for x in vec:
        if x:
            return [-v for v in vec] if x < 0 else list(vec)
    return list(vec)


def circulant(vec: Sequence[int]) -> Matrix:
    """Rows are successive right rotations of ``vec``."""
    n = len(vec)
    return [[vec[(j - i) % n] for j in range(n)] for i in range(n)]


def reverse_circulant(vec: Sequence[int]) -> Matrix:
    """Rows are successive left rotations of ``vec``; entry (i,j) = vec[i+j]."""
    n = len(vec)
    return [[vec[(i + j) % n] for j in range(n)] for i in range(n)]


def _q_ary_basis(right_block: Matrix, q: int) -> Tuple[Tuple[int, ...], ...]:
    """Rows of [[I, right_block], [0, qI]]."""
    n = len(right_block)
    rows = []
    for i in range(n):
        rows.append(
            tuple(int(i == j) for j in range(n)) + tuple(right_block[i])
        )
    for i in range(n):
        rows.append((0,) * n + tuple(q * int(i == j) for j in range(n)))
    return tuple(rows)


def build_ntru_lattice(h: GroupRingElement, params: NtruParams) -> IntegerLattice:
    """Full 2n-dimensional lattice [[I_n, M(h)], [0, q I_n]], h taken mod q."""
    q = params.q
    reduced = GroupRingElement(h.group, tuple(x % q for x in h.coeffs))
    return IntegerLattice(_q_ary_basis(to_matrix(reduced), q), q)


def split_public_key(h: GroupRingElement) -> Tuple[List[int], List[int]]:
    """Halves of a dihedral public key: rotation part and reflection part."""
    if h.group.kind != "dihedral":
        raise UnsupportedGroup(f"expected a dihedral group, got {h.group.kind}")
    n = h.group.size
    return list(h.coeffs[:n]), list(h.coeffs[n:])


def sum_difference_blocks(
    h0: Sequence[int], h1: Sequence[int]
) -> Tuple[Matrix, Matrix]:
    """H0 + H1 and H0 - H1 with H0 circulant in h0, H1 reverse-circulant in h1."""
    if len(h0) != len(h1):
        raise DimensionError("h0 and h1 must have equal length")
    a, b = circulant(h0), reverse_circulant(h1)
    plus = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    minus = [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return plus, minus


def build_sublattices(
    h0: Sequence[int], h1: Sequence[int], q: int
) -> Tuple[IntegerLattice, IntegerLattice]:
    """The two 2N-dimensional lattices with right blocks H0 + H1 and H0 - H1.

    Entries of the right blocks are deliberately not reduced mod q; the sum
    block can exceed q and the difference block can be negative.
    """
    plus, minus = sum_difference_blocks(h0, h1)
    return (
        IntegerLattice(_q_ary_basis(plus, q), q),
        IntegerLattice(_q_ary_basis(minus, q), q),
    )


def block_diagonalize(mat: Matrix) -> Tuple[Matrix, Matrix]:
    """Split a [[H0, H1], [H1, H0]] matrix into diag(H0+H1, H0-H1).

    Returns (S, D) where S = [[I, I], [I, -I]] and D is the block diagonal,
    satisfying the integer identity S*mat = D*S (equivalently
    S*mat*S = 2*D, since S*S = 2I).  Raises StructureError if ``mat`` does
    not have the required block form.
    """
    order = len(mat)
    if order % 2 or any(len(row) != order for row in mat):
        raise StructureError("matrix must be square with even order")
    n = order // 2
    h0 = [row[:n] for row in mat[:n]]
    h1 = [row[n:] for row in mat[:n]]
    for i in range(n):
        for j in range(n):
            if mat[n + i][j] != h1[i][j] or mat[n + i][n + j] != h0[i][j]:
                raise StructureError("matrix lacks the [[A,B],[B,A]] block form")
    s = [
        [int(i == j) for j in range(n)] + [int(i == j) for j in range(n)]
        for i in range(n)
    ] + [
        [int(i == j) for j in range(n)] + [-int(i == j) for j in range(n)]
        for i in range(n)
    ]
    plus = [[h0[i][j] + h1[i][j] for j in range(n)] for i in range(n)]
    minus = [[h0[i][j] - h1[i][j] for j in range(n)] for i in range(n)]
    d = [row + [0] * n for row in plus] + [[0] * n + row for row in minus]
    return s, d


def membership_check(
    pair: LatticeVectorPair, right_block: Matrix, q: int
) -> bool:
    """True iff g-part is congruent to f-part * right_block mod q."""
    f, g = pair.f_part, pair.g_part
    n = len(right_block)
    if len(f) != n or any(len(row) != len(g) for row in right_block):
        raise DimensionError("vector parts do not match the block dimensions")
    for j in range(len(g)):
        acc = 0
        for i, fi in enumerate(f):
            if fi:
                acc += fi * right_block[i][j]
        if (acc - g[j]) % q:
            return False
    return True


def in_full_lattice(pair: LatticeVectorPair, h: GroupRingElement, q: int) -> bool:
    """Membership in the full lattice of h."""
    return membership_check(pair, to_matrix(h), q)


def enumerate_rotation_orbit(
    f: Sequence[int], g: Sequence[int]
) -> List[Tuple[int, ...]]:
    """All rotation-orbit vectors of a dihedral lattice member (f, g).

    For each shift r the orbit contains (f0^(r), f1^(-r), g0^(r), g1^(-r))
    and the half-swapped (f1^(r), f0^(-r), g1^(r), g0^(-r)); every member of
    the orbit lies in the same lattice.  Duplicates are removed, order is
    deterministic.
    """
    if len(f) != len(g) or len(f) % 2:
        raise DimensionError("f and g must be equal even-length vectors")
    n = len(f) // 2
    f0, f1 = list(f[:n]), list(f[n:])
    g0, g1 = list(g[:n]), list(g[n:])

    def rot(v: List[int], r: int) -> List[int]:
        return [v[(i + r) % n] for i in range(n)]

    seen = {}
    for r in range(-n + 1, n):
        a = tuple(rot(f0, r) + rot(f1, -r) + rot(g0, r) + rot(g1, -r))
        b = tuple(rot(f1, r) + rot(f0, -r) + rot(g1, r) + rot(g0, -r))
        seen.setdefault(a, None)
        seen.setdefault(b, None)
    return list(seen)


def combine_pullback(
    v0: LatticeVectorPair, v1: LatticeVectorPair
) -> List[int]:
    """The pull-back vector (f0+f1, f0-f1, g0+g1, g0-g1) without checks."""
    if len(v0.f_part) != len(v1.f_part):
        raise DimensionError("sublattice vectors have mismatched dimensions")
    f0, g0 = v0.f_part, v0.g_part
    f1, g1 = v1.f_part, v1.g_part
    out = [x + y for x, y in zip(f0, f1)]
    out += [x - y for x, y in zip(f0, f1)]
    out += [x + y for x, y in zip(g0, g1)]
    out += [x - y for x, y in zip(g0, g1)]
    return out


def pull_back(
    v0: LatticeVectorPair,
    v1: LatticeVectorPair,
    h0: Sequence[int],
    h1: Sequence[int],
    q: int,
) -> List[int]:
    """Checked pull-back of members of the sum and difference lattices.

    Verifies v0 against H0 + H1 and v1 against H0 - H1 before combining;
    the result is guaranteed to lie in the full lattice.
    """
    plus, minus = sum_difference_blocks(h0, h1)
    if not membership_check(v0, plus, q):
        raise NotInLattice("v0 is not in the sum sublattice")
    if not membership_check(v1, minus, q):
        raise NotInLattice("v1 is not in the difference sublattice")
    return combine_pullback(v0, v1)


def gaussian_heuristic(dim: int, det_root: float) -> float:
    """Expected shortest length sqrt(dim / (2 pi e)) * det^(1/dim).

    ``det_root`` is the dim-th root of the lattice determinant.
    """
    if dim < 1:
        raise DimensionError(f"dimension must be positive, got {dim}")
    return math.sqrt(dim / (2 * math.pi * math.e)) * det_root


def full_lattice_sigma(N: int, q: int) -> float:
    """Gaussian-heuristic length for the full 4N lattice: sqrt(2qN / (pi e))."""
    return gaussian_heuristic(4 * N, math.sqrt(q))


def sublattice_sigma(N: int, q: int) -> float:
    """Gaussian-heuristic length for a 2N sublattice: sqrt(qN / (pi e))."""
    return gaussian_heuristic(2 * N, math.sqrt(q))


def write_basis_text(rows, path) -> None:
    """Plain-text matrix: one row per line, space-separated integers."""
    if isinstance(rows, IntegerLattice):
        rows = rows.basis
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(" ".join(str(x) for x in row) + "\n")


def read_basis_text(path) -> List[List[int]]:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([int(tok) for tok in line.split()])
    return rows
