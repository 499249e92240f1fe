"""Root systems of the complex simple Lie algebras, built exactly.

Everything here runs over exact integers and :class:`fractions.Fraction`;
no floating point is used anywhere.  Roots are represented by their integer
coordinate vectors in the basis of simple roots, so a root is just a tuple of
ints and the full system is generated by closing the simple roots under the
simple reflections

    s_j(beta) = beta - <beta, alpha_j^v> alpha_j,
    <beta, alpha_j^v> = sum_i beta_i A[i][j],

where ``A`` is the Cartan matrix with the convention
``A[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)``.

The inner product is recovered from a symmetrizer ``d`` with
``(alpha_i, alpha_j) = A[i][j] * d[j] / 2``, normalized so short roots have
squared length 1 in types B and F4 (and the standard choices elsewhere); only
ratios matter for anything computed here.

Conventions (nodes are 1-based in text output, 0-based internally):

* A_l: the chain 1 - 2 - ... - l.
* B_l: chain with a double bond l-1 => l, node l short  (A[l-1][l] = -2).
* C_l: chain with a double bond l-1 <= l, node l long   (A[l][l-1] = -2).
* D_l: chain 1 - ... - (l-2) with both l-1 and l attached to l-2.
* E_6/7/8: chain 1 - 3 - 4 - 5 - 6 (- 7 (- 8)) with node 2 attached to 4.
* F_4: chain 1 - 2 => 3 - 4, nodes 3 and 4 short.
* G_2: Cartan matrix [[2, -1], [-3, 2]], node 1 short.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

FAMILIES = "ABCDEFG"

_RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


class InternalError(AssertionError):
    """An internal invariant failed (a bug, never a data problem)."""


@dataclass(frozen=True, order=True)
class CartanType:
    """A simple type such as B4: a family letter plus a rank."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        lo, hi = _RANK_BOUNDS[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            bound = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
            raise ValueError(
                f"family {self.family} requires rank {bound}, got {self.rank}"
            )

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip()
        if not text or text[0].upper() not in FAMILIES or not text[1:].isdigit():
            raise ValueError(f"not a Cartan type: {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    @property
    def algebra_dim(self) -> int:
        """Complex dimension: number of roots plus the rank."""
        return len(build_root_system(self).roots) + self.rank

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def cartan_matrix(t: CartanType) -> tuple[tuple[int, ...], ...]:
    """The Cartan matrix of ``t`` under the conventions in the module doc."""
    l = t.rank
    A = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        A[i][j] = aij
        A[j][i] = aji

    if t.family == "A":
        for i in range(l - 1):
            bond(i, i + 1)
    elif t.family == "B":
        for i in range(l - 2):
            bond(i, i + 1)
        bond(l - 2, l - 1, -2, -1)  # node l short
    elif t.family == "C":
        for i in range(l - 2):
            bond(i, i + 1)
        bond(l - 2, l - 1, -1, -2)  # node l long
    elif t.family == "D":
        for i in range(l - 3):
            bond(i, i + 1)
        bond(l - 3, l - 2)
        bond(l - 3, l - 1)
    elif t.family == "E":
        # chain 1-3-4-5-6(-7(-8)) plus 2 attached to 4 (1-based)
        chain = [0, 2, 3, 4, 5, 6, 7][: l - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(1, 3)
    elif t.family == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # nodes 3, 4 short
        bond(2, 3)
    elif t.family == "G":
        bond(0, 1, -1, -3)  # node 1 short
    return tuple(tuple(row) for row in A)


def symmetrizer(t: CartanType) -> tuple[int, ...]:
    """Positive integers d with A[i][j] d[j] = A[j][i] d[i] (symmetrized form).

    Normalized so the short-root entry is 1.
    """
    l = t.rank
    A = cartan_matrix(t)
    d: list[Fraction | None] = [None] * l
    d[0] = Fraction(1)
    # propagate along bonds; the diagram is connected
    pending = [0]
    while pending:
        i = pending.pop()
        for j in range(l):
            if i != j and A[i][j] != 0 and d[j] is None:
                # A[i][j] d[j] = A[j][i] d[i]
                d[j] = d[i] * A[j][i] / A[i][j]
                pending.append(j)
    if any(x is None for x in d):
        raise InternalError(f"disconnected diagram for {t}")
    scale = min(x for x in d)
    out = [x / scale for x in d]
    if any(x.denominator != 1 for x in out):
        raise InternalError(f"non-integral symmetrizer for {t}")
    return tuple(x.numerator for x in out)


Root = tuple  # integer coordinates in the simple-root basis


@dataclass(frozen=True)
class RootSystem:
    """A finite root system with exact arithmetic helpers."""

    cartan_type: CartanType
    matrix: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    roots: tuple[Root, ...]  # all roots, sorted

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        l = self.rank
        return tuple(tuple(1 if i == j else 0 for j in range(l)) for i in range(l))

    @property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if all(c >= 0 for c in r))

    def inner(self, v: Sequence[int], w: Sequence[int]) -> Fraction:
        """Invariant inner product (v, w) via the symmetrized Cartan matrix."""
        total = Fraction(0)
        for i, vi in enumerate(v):
            if not vi:
                continue
            for j, wj in enumerate(w):
                if wj:
                    total += Fraction(vi * wj * self.matrix[i][j] * self.d[j], 2)
        return total


@lru_cache(maxsize=None)
def build_root_system(t: CartanType) -> RootSystem:
    """Close the simple roots under simple reflections.

    Every generated vector is checked to have all-nonnegative or
    all-nonpositive coordinates; anything else is an InternalError.
    """
    l = t.rank
    A = cartan_matrix(t)
    simple = [tuple(1 if i == j else 0 for j in range(l)) for i in range(l)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for j in range(l):
            pairing = sum(beta[i] * A[i][j] for i in range(l))
            if not pairing:
                continue
            new = list(beta)
            new[j] -= pairing
            image = tuple(new)
            if image not in roots:
                roots.add(image)
                frontier.append(image)
    for r in roots:
        if not (all(c >= 0 for c in r) or all(c <= 0 for c in r)):
            raise InternalError(f"mixed-sign root {r} in {t}")
    return RootSystem(t, A, symmetrizer(t), tuple(sorted(roots)))


def highest_root(rs: RootSystem) -> Root:
    """The unique positive root that dominates every positive root.

    ``theta - alpha`` has all-nonnegative coordinates for every positive root
    ``alpha``; exactly one root passes this filter.
    """
    pos = rs.positive_roots
    candidates = [
        beta
        for beta in pos
        if all(all(b - a >= 0 for b, a in zip(beta, alpha)) for alpha in pos)
    ]
    if len(candidates) != 1:
        raise InternalError(f"{len(candidates)} dominant candidates in {rs.cartan_type}")
    return candidates[0]


@dataclass(frozen=True)
class ExtendedDiagram:
    """The extended (affine) diagram: node 0 is the lowest root.

    ``marks`` lists the coefficients of the highest root prefixed with 1 for
    node 0; ``matrix`` is the full (rank+1) x (rank+1) affine Cartan matrix;
    ``edges`` lists (i, j, multiplicity) with multiplicity
    ``matrix[i][j] * matrix[j][i]`` (4 only for the rank-1 affine diagram,
    whose two nodes are joined by a multiplicity-4 bond).
    """

    base: CartanType
    lowest_root: Root
    marks: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int], ...]

    @property
    def nodes(self) -> range:
        return range(self.base.rank + 1)


def extended_diagram(rs: RootSystem) -> ExtendedDiagram:
    """Attach the lowest root as node 0 and return the affine diagram."""
    l = rs.rank
    theta = highest_root(rs)
    alpha0 = tuple(-c for c in theta)
    vectors = [alpha0] + list(rs.simple_roots)
    size = l + 1
    matrix: list[list[int]] = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            num = 2 * rs.inner(vectors[i], vectors[j])
            den = rs.inner(vectors[j], vectors[j])
            entry = num / den
            if entry.denominator != 1:
                raise InternalError("non-integral affine Cartan entry")
            matrix[i][j] = entry.numerator
    edges = []
    for i in range(size):
        for j in range(i + 1, size):
            mult = matrix[i][j] * matrix[j][i]
            if mult:
                edges.append((i, j, mult))
    marks = (1,) + theta
    return ExtendedDiagram(
        rs.cartan_type,
        alpha0,
        marks,
        tuple(tuple(row) for row in matrix),
        tuple(edges),
    )


def weyl_dim(t: CartanType, weight: Sequence[int]) -> int:
    """Dimension of the irreducible module with the given highest weight.

    ``weight`` lists nonnegative integer coordinates in the fundamental-weight
    basis.  Computed as the exact product over positive roots

        prod (lambda + rho, alpha) / (rho, alpha)

    using (omega_i, alpha) = c_i(alpha) d_i / 2.  The quotient is checked to
    be an exact integer.
    """
    rs = build_root_system(t)
    if len(weight) != t.rank:
        raise ValueError(f"weight length {len(weight)} != rank {t.rank}")
    if any(w < 0 or not isinstance(w, int) for w in weight):
        raise ValueError("weight coordinates must be nonnegative integers")
    num = 1
    den = 1
    for alpha in rs.positive_roots:
        shifted = 0
        plain = 0
        for c, w, di in zip(alpha, weight, rs.d):
            if c:
                shifted += c * (w + 1) * di
                plain += c * di
        num *= shifted
        den *= plain
    q, r = divmod(num, den)
    if r:
        raise InternalError(f"non-integral Weyl dimension for {t}, weight {weight}")
    return q


def fundamental_dim_check(t: CartanType) -> dict:
    """Compare Weyl dimensions of fundamental weights with the closed forms.

    Classical families only.  Returns a report dict with one entry per
    fundamental weight; ``match`` is False where the closed form disagrees
    with the Weyl formula.
    """
    if t.family not in "ABCD":
        raise ValueError(f"closed forms cover classical families only, got {t}")
    from . import tables  # late import: tables owns the closed-form data

    entries = []
    for r in range(1, t.rank + 1):
        weight = [1 if i == r - 1 else 0 for i in range(t.rank)]
        computed = weyl_dim(t, weight)
        closed = tables.closed_fundamental_dim(t, r)
        entries.append(
            {
                "type": str(t),
                "r": r,
                "weyl": computed,
                "closed_form": int(closed),
                "match": computed == closed,
            }
        )
    return {
        "type": str(t),
        "entries": entries,
        "all_match": all(e["match"] for e in entries),
    }


# ---------------------------------------------------------------------------
# linear algebra over Q (simple-root coordinates), for the covering check

def _rref(rows: Iterable[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row-echelon form with zero rows dropped (canonical basis)."""
    mat = [list(map(Fraction, row)) for row in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(pivot_row, len(mat)) if mat[r][col] != 0), None
        )
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        inv = 1 / mat[pivot_row][col]
        mat[pivot_row] = [x * inv for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(row) for row in mat[:pivot_row] if any(row))


def _in_span(vector: Sequence[int], basis: tuple[tuple[Fraction, ...], ...]) -> bool:
    v = list(map(Fraction, vector))
    for row in basis:
        lead = next(i for i, x in enumerate(row) if x != 0)
        if v[lead] != 0:
            factor = v[lead]
            v = [x - factor * y for x, y in zip(v, row)]
    return not any(v)


def _is_connected(matrix: Sequence[Sequence[int]]) -> bool:
    n = len(matrix)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and j not in seen and matrix[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def two_hyperplane_cover_check(rs: RootSystem) -> bool:
    """Can the root system be covered by two proper subspaces spanned by roots?

    Tests every proper subspace W1 spanned by a subset of roots (at most
    rank-1 of them suffice to span any candidate); the complement of
    W1 within the roots must then span a proper subspace W2.  Returns True
    iff such a covering pair exists.  Only positive roots are enumerated:
    spans are invariant under sign flips, so the halved system covers iff the
    full one does.

    The input must be indecomposable; for a reducible system the two factors
    trivially cover it, so asking is almost surely a caller bug.
    """
    if not _is_connected(rs.matrix):
        raise ValueError("two_hyperplane_cover_check needs an indecomposable system")
    pos = rs.positive_roots
    l = rs.rank
    seen_spans: set = set()
    for size in range(0, l):
        for subset in combinations(pos, size):
            basis = _rref(subset)
            if basis in seen_spans:
                continue
            seen_spans.add(basis)
            outside = [p for p in pos if not _in_span(p, basis)]
            if not outside:
                raise InternalError("proper subset spanned every root")
            if len(_rref(outside)) < l:
                return True
    return False
