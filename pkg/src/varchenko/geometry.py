"""Weighted hyperplane arrangements: chambers, faces, edges, multiplicities.

The engine is fully exact (integer and Fraction arithmetic throughout) and
works for any arrangement with rational coefficients, central or not.  The
pipeline:

  enumerate_chambers   incremental insertion, one exact feasibility test per
                       candidate sign extension
  face_of              the closed chamber intersected with one hyperplane,
                       with the set of hyperplanes vanishing on it
  canonical_edge       intersection of a hyperplane subset, closed under
                       implied hyperplanes, by rational Gaussian elimination
  relevant_edges       edges generated by faces, each with its multiplicity
  multiplicity         half the number of chambers whose face at a pivot
                       hyperplane spans exactly the given edge
  factored_determinant_general
                       the factored determinant  prod_E (1 - a(E)^2)^{l(E)}
                       built from relevant edges and multiplicities

Results of the expensive scans are cached on the Arrangement instance, so a
given arrangement object pays for chamber enumeration and the face scan once.
Caches are keyed by object identity; guards are only checked when a result is
actually computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

from .exactalg import FactoredProduct, Monomial, validate_var
from .feasibility import feasible_strict

DEFAULT_MAX_HYPERPLANES = 32
DEFAULT_MAX_CHAMBERS = 6000


class GeometryError(ValueError):
    pass


class GuardExceededError(GeometryError):
    """A configured size guard was hit; carries the count reached."""

    def __init__(self, what: str, count: int, limit: int):
        super().__init__(f"{what} guard exceeded: reached {count}, limit {limit}")
        self.count = count
        self.limit = limit


class EmptyFaceError(GeometryError):
    """The closed chamber does not meet the hyperplane (non-central only)."""


class EmptyIntersectionError(GeometryError):
    """The requested hyperplanes have empty common intersection."""


class InternalConsistencyError(AssertionError):
    """An invariant of the engine failed; indicates a bug, not bad input."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise GeometryError(f"exact rational expected, got {type(x).__name__}")


@dataclass(frozen=True)
class Hyperplane:
    """The affine set {x : normal . x = offset}, carrying a weight variable."""

    normal: tuple[Fraction, ...]
    offset: Fraction
    weight: str

    @staticmethod
    def make(normal: Sequence, offset, weight: str) -> "Hyperplane":
        nv = tuple(_as_fraction(a) for a in normal)
        if not any(nv):
            raise GeometryError(f"hyperplane {weight!r} has zero normal")
        return Hyperplane(nv, _as_fraction(offset), validate_var(weight))

    def primitive_key(self) -> tuple[int, ...]:
        """Scaled integer form of (normal, offset), unique per affine set.

        Proportional (normal, offset) pairs map to the same key: clear
        denominators, divide by the gcd, make the first nonzero entry positive.
        """
        den = 1
        for v in (*self.normal, self.offset):
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in (*self.normal, self.offset)]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        for v in ints:
            if v:
                if v < 0:
                    ints = [-u for u in ints]
                break
        return tuple(ints)

    def value_at(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.normal, point)), Fraction(0)) - self.offset


class Arrangement:
    """A finite list of pairwise distinct weighted hyperplanes in Q^dimension."""

    def __init__(self, dimension: int, hyperplanes: Sequence[Hyperplane]):
        if dimension < 1:
            raise GeometryError("dimension must be positive")
        hyps = tuple(hyperplanes)
        keys = {}
        weights = set()
        for idx, h in enumerate(hyps):
            if len(h.normal) != dimension:
                raise GeometryError(
                    f"hyperplane {idx} has {len(h.normal)} coefficients, expected {dimension}")
            k = h.primitive_key()
            if k in keys:
                raise GeometryError(
                    f"hyperplanes {keys[k]} and {idx} define the same affine set")
            keys[k] = idx
            if h.weight in weights:
                raise GeometryError(f"duplicate weight variable {h.weight!r}")
            weights.add(h.weight)
        self.dimension = dimension
        self.hyperplanes = hyps
        self._cache: dict = {}

    def __repr__(self):
        return f"Arrangement(dim={self.dimension}, m={len(self.hyperplanes)})"

    def weight_names(self) -> tuple[str, ...]:
        return tuple(h.weight for h in self.hyperplanes)

    def is_central(self) -> bool:
        return all(h.offset == 0 for h in self.hyperplanes)


@dataclass(frozen=True)
class Chamber:
    """Open region given by a sign per hyperplane, with a strict interior point."""

    signs: tuple[int, ...]
    witness: tuple[Fraction, ...]

    def sign_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass(frozen=True)
class Face:
    """Closed chamber intersected with one hyperplane (the pivot)."""

    chamber_index: int
    pivot: int
    zeros: frozenset[int]
    relint_witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class Edge:
    """Nonempty intersection of hyperplanes, closed under implied ones."""

    containing: frozenset[int]
    dim: int
    weight_monomial: Monomial
    multiplicity: int


# ---------------------------------------------------------------------------
# relation-row helpers
# ---------------------------------------------------------------------------


def _side_row(h: Hyperplane, sign: int):
    return tuple(sign * a for a in h.normal) + (-sign * h.offset,)


def _eq_row(h: Hyperplane):
    return h.normal + (-h.offset,)


def _sign_of(value: Fraction) -> int:
    return 1 if value > 0 else (-1 if value < 0 else 0)


# ---------------------------------------------------------------------------
# chamber enumeration
# ---------------------------------------------------------------------------


def enumerate_chambers(A: Arrangement,
                       max_hyperplanes: Optional[int] = None,
                       max_chambers: Optional[int] = None) -> tuple[Chamber, ...]:
    """All chambers of A, sorted lexicographically on signs with + before -.

    Incremental insertion: the regions of the first k hyperplanes are split
    by hyperplane k+1.  A region's witness decides one side for free; the
    other side costs one exact feasibility test.
    """
    cached = A._cache.get("chambers")
    if cached is not None:
        return cached
    limit_h = DEFAULT_MAX_HYPERPLANES if max_hyperplanes is None else max_hyperplanes
    limit_c = DEFAULT_MAX_CHAMBERS if max_chambers is None else max_chambers
    m = len(A.hyperplanes)
    if m > limit_h:
        raise GuardExceededError("hyperplane", m, limit_h)
    dim = A.dimension
    origin = tuple(Fraction(0) for _ in range(dim))
    # region: (signs, witness, strict rows so far)
    regions = [((), origin, [])]
    for h in A.hyperplanes:
        new_regions = []
        for signs, witness, rows in regions:
            v = h.value_at(witness)
            s = _sign_of(v)
            candidates = (s, -s) if s else (1, -1)
            for side in candidates:
                row = (_side_row(h, side), ">")
                if side == s:
                    new_regions.append((signs + (side,), witness, rows + [row]))
                    continue
                w = feasible_strict(rows + [row], dim)
                if w is not None:
                    new_regions.append((signs + (side,), w, rows + [row]))
        if len(new_regions) > limit_c:
            raise GuardExceededError("chamber", len(new_regions), limit_c)
        regions = new_regions
    chambers = tuple(sorted(
        (Chamber(signs, witness) for signs, witness, _ in regions),
        key=lambda c: tuple(0 if s > 0 else 1 for s in c.signs)))
    A._cache["chambers"] = chambers
    A._cache["chamber_index"] = {c.signs: i for i, c in enumerate(chambers)}
    return chambers


def chamber_index(A: Arrangement, chamber: Union[Chamber, int]) -> int:
    if isinstance(chamber, int):
        return chamber
    enumerate_chambers(A)
    idx = A._cache["chamber_index"].get(chamber.signs)
    if idx is None:
        raise GeometryError("not a chamber of this arrangement")
    return idx


# ---------------------------------------------------------------------------
# edges
# ---------------------------------------------------------------------------


def _reduce_row(row: list[Fraction], basis: list[tuple[int, list[Fraction]]]):
    for col, brow in basis:
        f = row[col]
        if f:
            for i in range(len(row)):
                row[i] -= f * brow[i]
    return row


def canonical_edge(A: Arrangement, subset: Iterable[int]) -> Edge:
    """Intersection of the given hyperplanes, closed under implication.

    Gaussian elimination over the rationals on the augmented rows; a
    hyperplane belongs to the edge iff its equation reduces to zero against
    the row basis.  Multiplicity is left unset (0).
    """
    idxs = frozenset(subset)
    if not idxs:
        raise GeometryError("edge subset must be nonempty")
    for i in idxs:
        if not (0 <= i < len(A.hyperplanes)):
            raise GeometryError(f"hyperplane index {i} out of range")
    cache = A._cache.setdefault("edges", {})
    hit = cache.get(idxs)
    if hit is not None:
        return hit
    n = A.dimension
    basis: list[tuple[int, list[Fraction]]] = []
    for i in sorted(idxs):
        row = _reduce_row(list(_eq_row(A.hyperplanes[i])), basis)
        col = next((j for j in range(n) if row[j]), None)
        if col is None:
            if row[n]:
                raise EmptyIntersectionError(f"hyperplanes {sorted(idxs)} do not meet")
            continue
        inv = 1 / row[col]
        row = [v * inv for v in row]
        for _, brow in basis:
            f = brow[col]
            if f:
                for j in range(n + 1):
                    brow[j] -= f * row[j]
        basis.append((col, row))
    containing = set(idxs)
    for i, h in enumerate(A.hyperplanes):
        if i in containing:
            continue
        row = _reduce_row(list(_eq_row(h)), basis)
        if not any(row):
            containing.add(i)
    containing = frozenset(containing)
    mono = Monomial.from_vars(A.hyperplanes[i].weight for i in sorted(containing))
    edge = Edge(containing, n - len(basis), mono, 0)
    cache[idxs] = edge
    cache.setdefault(containing, edge)
    return edge


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------


def face_of(A: Arrangement, chamber: Union[Chamber, int], h: int) -> Face:
    """The face (closure of the chamber) intersect (hyperplane h).

    zeros collects every hyperplane vanishing identically on the face: i is a
    zero iff {H_h = 0, all chamber inequalities weakened, sign_i H_i strict}
    is infeasible.  The relative-interior witness is the average of the
    witnesses of the feasible tests, which by convexity is strict off zeros
    and exact.  Raises EmptyFaceError when the closed chamber misses H_h
    (possible only for non-central arrangements).
    """
    ci = chamber_index(A, chamber)
    faces = A._cache.setdefault("faces", {})
    hit = faces.get((ci, h))
    if hit is not None:
        if isinstance(hit, EmptyFaceError):
            raise hit
        return hit
    if not (0 <= h < len(A.hyperplanes)):
        raise GeometryError(f"hyperplane index {h} out of range")
    C = enumerate_chambers(A)[ci]
    dim = A.dimension
    eq = (_eq_row(A.hyperplanes[h]), "=")
    weak = [(_side_row(hp, C.signs[i]), ">=")
            for i, hp in enumerate(A.hyperplanes) if i != h]
    others = [i for i in range(len(A.hyperplanes)) if i != h]

    # fast path: the face is a facet iff every other hyperplane can be strict
    all_strict = [eq] + [(_side_row(A.hyperplanes[i], C.signs[i]), ">") for i in others]
    w = feasible_strict(all_strict, dim)
    if w is not None:
        face = Face(ci, h, frozenset([h]), w)
        faces[(ci, h)] = face
        return face

    base = feasible_strict([eq] + weak, dim)
    if base is None:
        err = EmptyFaceError(f"chamber {ci} closure does not meet hyperplane {h}")
        faces[(ci, h)] = err
        raise err

    pool = [base]
    total = list(base)
    zeros = {h}
    for i in others:
        hp = A.hyperplanes[i]
        k = len(pool)
        avg_val = C.signs[i] * (hp.value_at([t / k for t in total]))
        if avg_val > 0:
            continue
        sys_i = [eq] + weak + [(_side_row(hp, C.signs[i]), ">")]
        wi = feasible_strict(sys_i, dim)
        if wi is None:
            zeros.add(i)
        else:
            pool.append(wi)
            total = [t + v for t, v in zip(total, wi)]
    k = len(pool)
    witness = tuple(t / k for t in total)
    face = Face(ci, h, frozenset(zeros), witness)
    faces[(ci, h)] = face
    return face


def _face_edge_table(A: Arrangement) -> dict:
    """(chamber index, hyperplane) -> zeros frozenset of the face, or None if
    the face is empty.  Computed once per arrangement."""
    table = A._cache.get("face_table")
    if table is not None:
        return table
    chambers = enumerate_chambers(A)
    table = {}
    for ci in range(len(chambers)):
        for h in range(len(A.hyperplanes)):
            try:
                table[(ci, h)] = face_of(A, ci, h).zeros
            except EmptyFaceError:
                table[(ci, h)] = None
    A._cache["face_table"] = table
    return table


# ---------------------------------------------------------------------------
# relevant edges, multiplicities, factored determinant
# ---------------------------------------------------------------------------


def multiplicity(A: Arrangement, E: Edge, pivot: Optional[int] = None) -> int:
    """Half the number of chambers whose face at `pivot` spans exactly E.

    The count is always even (chambers pair up across E); an odd count means
    the engine itself is broken and raises InternalConsistencyError.
    """
    if pivot is None:
        pivot = min(E.containing)
    if pivot not in E.containing:
        raise GeometryError(f"pivot {pivot} does not contain the edge")
    table = _face_edge_table(A)
    n_chambers = len(enumerate_chambers(A))
    count = sum(1 for ci in range(n_chambers) if table[(ci, pivot)] == E.containing)
    if count % 2:
        raise InternalConsistencyError(
            f"odd chamber count {count} for edge {sorted(E.containing)} at pivot {pivot}")
    return count // 2


def relevant_edges(A: Arrangement) -> list[Edge]:
    """Edges generated by faces, deduplicated, each with multiplicity >= 1.

    A face's zeros set is already closed (any hyperplane containing the
    generated edge contains the face), which canonical_edge re-verifies.
    """
    cached = A._cache.get("relevant_edges")
    if cached is not None:
        return list(cached)
    table = _face_edge_table(A)
    keys = {z for z in table.values() if z is not None}
    edges = []
    for zeros in sorted(keys, key=lambda z: (len(z), tuple(sorted(z)))):
        e = canonical_edge(A, zeros)
        if e.containing != zeros:
            raise InternalConsistencyError(
                f"face zeros {sorted(zeros)} not closed, edge gave {sorted(e.containing)}")
        mult = multiplicity(A, e)
        if mult < 1:
            raise InternalConsistencyError(
                f"face-generated edge {sorted(zeros)} has multiplicity 0")
        edges.append(Edge(e.containing, e.dim, e.weight_monomial, mult))
    A._cache["relevant_edges"] = tuple(edges)
    return edges


def factored_determinant_general(A: Arrangement) -> FactoredProduct:
    """Canonical factored determinant prod_E (1 - a(E)^2)^{l(E)} over the
    relevant edges with their geometric multiplicities."""
    factors = tuple((e.weight_monomial, e.multiplicity) for e in relevant_edges(A))
    return FactoredProduct(factors).canonical()


__all__ = [
    "Arrangement", "Chamber", "Edge", "Face", "Hyperplane",
    "EmptyFaceError", "EmptyIntersectionError", "GeometryError",
    "GuardExceededError", "InternalConsistencyError",
    "DEFAULT_MAX_CHAMBERS", "DEFAULT_MAX_HYPERPLANES",
    "canonical_edge", "chamber_index", "enumerate_chambers", "face_of",
    "factored_determinant_general", "feasible_strict", "multiplicity",
    "relevant_edges",
]
