"""Combinatorics of nondegenerate simplices of the stage-poset nerve.

A simplex is exactly a strictly increasing chain of stage indices; identity
morphisms and degenerate simplices are never stored.  The product category
with the walking-isomorphism factor is handled by ProductSimplex, whose
vertices are (stage, marker) pairs.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


class PosetSimplex:
    """Strictly increasing chain of stage indices; length = #morphisms."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[int]):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise ValueError("a simplex needs at least one vertex")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError(f"vertices must strictly increase: {vs}")
        self.vertices = vs

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def target(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PosetSimplex) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"PosetSimplex{self.vertices}"

    def sort_key(self) -> tuple:
        return (self.length, self.vertices)

    def face(self, i: int) -> "PosetSimplex":
        """The i-th face: drop an endpoint or compose at an interior vertex."""
        k = self.length
        if k < 1 or not 0 <= i <= k:
            raise IndexError(f"face index {i} out of range for length {k}")
        return PosetSimplex(self.vertices[:i] + self.vertices[i + 1:])

    def split(self, i: int) -> tuple["PosetSimplex", "PosetSimplex"]:
        """Prefix through the i-th vertex and suffix from it.

        The two parts share vertex i; concatenating over it recovers the
        simplex.  i = 0 and i = length give a single-vertex part.
        """
        if not 0 <= i <= self.length:
            raise IndexError(f"split index {i} out of range")
        return (PosetSimplex(self.vertices[:i + 1]),
                PosetSimplex(self.vertices[i:]))

    def concat(self, other: "PosetSimplex") -> "PosetSimplex":
        """Join over a shared endpoint (inverse of split)."""
        if self.target != other.source:
            raise ValueError("simplices do not share the junction vertex")
        return PosetSimplex(self.vertices + other.vertices[1:])

    def in_telescope_subcomplex(self) -> bool:
        """Whether the simplex lies in the consecutive-step subcomplex.

        With identities never stored this means: a vertex, or a single edge
        between consecutive stages.
        """
        if self.length == 0:
            return True
        if self.length == 1:
            return self.vertices[1] == self.vertices[0] + 1
        return False

    def to_json(self) -> list[int]:
        return list(self.vertices)


def face(s: PosetSimplex, i: int) -> PosetSimplex:
    return s.face(i)


def split(s: PosetSimplex, i: int) -> tuple[PosetSimplex, PosetSimplex]:
    return s.split(i)


def in_telescope_subcomplex(s: PosetSimplex) -> bool:
    return s.in_telescope_subcomplex()


def enumerate_simplices(max_stage: int, max_length: int,
                        stages: Iterable[int] | None = None) -> list[PosetSimplex]:
    """All chains with vertices <= max_stage and length <= max_length.

    Ordered by (length, lexicographic vertices).  An explicit stage set
    restricts the vertices (for diagrams supported on a sparse set).
    """
    if max_stage < 0:
        raise ValueError("max_stage must be >= 0")
    pool = sorted(set(stages)) if stages is not None else list(range(max_stage + 1))
    pool = [a for a in pool if a <= max_stage]
    out = []
    for k in range(0, max_length + 1):
        for vs in combinations(pool, k + 1):
            out.append(PosetSimplex(vs))
    return out


class ProductSimplex:
    """Nondegenerate chain in the product of the stage poset with the
    two-object category that has one morphism in each direction.

    Vertices are (stage, marker) pairs with nondecreasing stages and no two
    consecutive vertices equal.  Marker moves are unconstrained, which is
    what makes zig-zag chains such as (a,0)->(a,1)->(b,1) possible.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[tuple[int, int]]):
        vs = tuple((int(a), int(e)) for a, e in vertices)
        if not vs:
            raise ValueError("a chain needs at least one vertex")
        for (a, e), (b, f) in zip(vs, vs[1:]):
            if b < a:
                raise ValueError("stages must be nondecreasing")
            if (a, e) == (b, f):
                raise ValueError("degenerate chain: repeated vertex")
        if any(e not in (0, 1) for _, e in vs):
            raise ValueError("marker must be 0 or 1")
        self.vertices = vs

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def source(self) -> tuple[int, int]:
        return self.vertices[0]

    @property
    def target(self) -> tuple[int, int]:
        return self.vertices[-1]

    def nonidentity_marker_moves(self) -> int:
        """Number of morphisms whose marker component is not an identity."""
        return sum(1 for (a, e), (b, f) in zip(self.vertices, self.vertices[1:])
                   if e != f)

    def face_vertices(self, i: int) -> tuple[tuple[int, int], ...]:
        """Vertices of the i-th face; the result may be degenerate."""
        k = self.length
        if k < 1 or not 0 <= i <= k:
            raise IndexError(f"face index {i} out of range")
        return self.vertices[:i] + self.vertices[i + 1:]

    def split(self, i: int) -> tuple["ProductSimplex", "ProductSimplex"]:
        if not 0 <= i <= self.length:
            raise IndexError(f"split index {i} out of range")
        return (ProductSimplex(self.vertices[:i + 1]),
                ProductSimplex(self.vertices[i:]))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProductSimplex) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"ProductSimplex{self.vertices}"


def is_degenerate_chain(vertices: tuple[tuple[int, int], ...]) -> bool:
    """Whether a vertex chain in the product category repeats a vertex
    consecutively (i.e. contains an identity morphism)."""
    return any(u == v for u, v in zip(vertices, vertices[1:]))


def enumerate_product_simplices(max_stage: int, max_length: int,
                                stages: Iterable[int] | None = None
                                ) -> list[ProductSimplex]:
    """All nondegenerate product chains up to the given length."""
    pool = sorted(set(stages)) if stages is not None else list(range(max_stage + 1))
    verts = [(a, e) for a in pool for e in (0, 1)]
    out: list[ProductSimplex] = []

    def extend(chain: list[tuple[int, int]]):
        out.append(ProductSimplex(chain))
        if len(chain) - 1 >= max_length:
            return
        last = chain[-1]
        for v in verts:
            if v[0] >= last[0] and v != last:
                extend(chain + [v])

    for v in verts:
        extend([v])
    out.sort(key=lambda s: (s.length, s.vertices))
    return out
