"""Graded chain complexes over GF(2), chain maps, and homology.

Degrees are arbitrary integers with finitely supported dimensions; every
missing block is treated as zero.  All objects are immutable after
construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .f2 import F2Matrix


class ShapeMismatch(ValueError):
    """A block's shape disagrees with the graded dimensions around it."""


class InvalidComplex(ValueError):
    """The differential does not square to zero."""


class NotAChainMap(ValueError):
    """A degree-0 map that was required to commute with the differentials."""


class GradedComplex:
    """Finitely supported family of GF(2) spaces with a degree -1 differential.

    diff[n] maps degree n to degree n-1 and has shape dims[n-1] x dims[n].
    d^2 = 0 is not assumed at construction; use d_squared_report().
    """

    __slots__ = ("dims", "diff", "labels")

    def __init__(self, dims: Mapping[int, int],
                 diff: Mapping[int, F2Matrix] | None = None,
                 labels: Mapping[int, list[str]] | None = None):
        self.dims = {int(n): int(d) for n, d in dims.items() if d}
        self.diff = {}
        for n, m in (diff or {}).items():
            n = int(n)
            want = (self.dim(n - 1), self.dim(n))
            if m.shape != want:
                raise ShapeMismatch(
                    f"diff at degree {n}: shape {m.shape}, expected {want}")
            if not m.is_zero():
                self.diff[n] = m
        self.labels = {int(n): list(v) for n, v in (labels or {}).items()}

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def diff_at(self, n: int) -> F2Matrix:
        m = self.diff.get(n)
        if m is None:
            return F2Matrix.zeros(self.dim(n - 1), self.dim(n))
        return m

    def label(self, n: int, j: int) -> str:
        names = self.labels.get(n)
        if names and j < len(names):
            return names[j]
        return f"d{n}g{j}"

    def d_squared_report(self) -> list[tuple[int, F2Matrix]]:
        """Degrees n where diff[n-1]·diff[n] != 0, with the offending product."""
        bad = []
        for n in sorted(self.dims):
            prod = self.diff_at(n - 1) @ self.diff_at(n)
            if not prod.is_zero():
                bad.append((n, prod))
        return bad

    def is_valid(self) -> bool:
        return not self.d_squared_report()

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GradedComplex) and self.dims == other.dims
                and self.diff_at_all() == other.diff_at_all())

    def diff_at_all(self) -> dict[int, F2Matrix]:
        return {n: self.diff_at(n) for n in self.dims}

    def __repr__(self) -> str:
        return f"GradedComplex(dims={self.dims})"

    # ---- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        doc: dict = {"dims": {str(n): d for n, d in sorted(self.dims.items())}}
        doc["diff"] = {str(n): m.entries() for n, m in sorted(self.diff.items())}
        if self.labels:
            doc["labels"] = {str(n): v for n, v in sorted(self.labels.items())}
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "GradedComplex":
        dims = {int(n): d for n, d in doc.get("dims", {}).items()}
        diff = {}
        for n, entries in doc.get("diff", {}).items():
            n = int(n)
            diff[n] = F2Matrix.from_entries(dims.get(n - 1, 0), dims.get(n, 0),
                                            [tuple(e) for e in entries])
        labels = {int(n): v for n, v in doc.get("labels", {}).items()} or None
        return cls(dims, diff, labels)


EMPTY_COMPLEX = GradedComplex({})


class ChainMap:
    """Graded linear map of a fixed degree between two complexes.

    blocks[n] has shape target.dims[n + degree] x source.dims[n]; omitted
    blocks are zero.  Degree 0 maps are not assumed to commute with the
    differentials; see is_chain_map().
    """

    __slots__ = ("source", "target", "degree", "blocks")

    def __init__(self, source: GradedComplex, target: GradedComplex,
                 degree: int, blocks: Mapping[int, F2Matrix] | None = None):
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.blocks = {}
        for n, m in (blocks or {}).items():
            n = int(n)
            want = (target.dim(n + self.degree), source.dim(n))
            if m.shape != want:
                raise ShapeMismatch(
                    f"block at degree {n}: shape {m.shape}, expected {want}")
            if not m.is_zero():
                self.blocks[n] = m

    @classmethod
    def identity(cls, c: GradedComplex) -> "ChainMap":
        return cls(c, c, 0, {n: F2Matrix.identity(d) for n, d in c.dims.items()})

    @classmethod
    def zero(cls, source: GradedComplex, target: GradedComplex,
             degree: int = 0) -> "ChainMap":
        return cls(source, target, degree)

    def block_at(self, n: int) -> F2Matrix:
        m = self.blocks.get(n)
        if m is None:
            return F2Matrix.zeros(self.target.dim(n + self.degree),
                                  self.source.dim(n))
        return m

    def is_zero(self) -> bool:
        return not self.blocks

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if (self.degree != other.degree or self.source is not other.source
                and self.source.dims != other.source.dims):
            raise ShapeMismatch("cannot add maps of different degree or shape")
        degs = set(self.blocks) | set(other.blocks)
        return ChainMap(self.source, self.target, self.degree,
                        {n: self.block_at(n) + other.block_at(n) for n in degs})

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition self ∘ other; degrees add."""
        if self.source.dims != other.target.dims:
            raise ShapeMismatch("composition endpoint mismatch")
        deg = self.degree + other.degree
        blocks = {}
        for n in other.source.dims:
            m = self.block_at(n + other.degree) @ other.block_at(n)
            if not m.is_zero():
                blocks[n] = m
        return ChainMap(other.source, self.target, deg, blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainMap) or self.degree != other.degree:
            return False
        degs = set(self.blocks) | set(other.blocks)
        return all(self.block_at(n) == other.block_at(n) for n in degs)

    def __repr__(self) -> str:
        return f"ChainMap(degree={self.degree}, blocks at {sorted(self.blocks)})"

    def hom_differential(self) -> "ChainMap":
        """D(f) = ∂∘f + f∘∂, one degree below f.

        Chain maps are exactly the degree-0 kernel of D; chain homotopies
        between f and g are the h with D(h) = f + g.
        """
        deg = self.degree
        degs = set(self.source.dims)
        blocks = {}
        for n in degs:
            m = (self.target.diff_at(n + deg) @ self.block_at(n)
                 + self.block_at(n - 1) @ self.source.diff_at(n))
            if not m.is_zero():
                blocks[n] = m
        return ChainMap(self.source, self.target, deg - 1, blocks)

    # ---- serialization ---------------------------------------------------

    def blocks_to_json(self) -> dict:
        return {str(n): m.entries() for n, m in sorted(self.blocks.items())}

    @classmethod
    def blocks_from_json(cls, source: GradedComplex, target: GradedComplex,
                         degree: int, doc: Mapping) -> "ChainMap":
        blocks = {}
        for n, entries in doc.items():
            n = int(n)
            blocks[n] = F2Matrix.from_entries(target.dim(n + degree),
                                              source.dim(n),
                                              [tuple(e) for e in entries])
        return cls(source, target, degree, blocks)


def is_chain_map(f: ChainMap) -> tuple[bool, ChainMap]:
    """Whether a degree-0 map commutes with the differentials.

    Returns (ok, residual) where residual = ∂∘f + f∘∂.
    """
    if f.degree != 0:
        raise ShapeMismatch("chain-map check requires degree 0")
    residual = f.hom_differential()
    return residual.is_zero(), residual


# ---- homology -------------------------------------------------------------


@dataclass
class HomologySummary:
    """Betti numbers with the chosen cycle/boundary bases per degree."""

    betti: dict[int, int]
    cycle_basis: dict[int, list[int]] = field(default_factory=dict)
    boundary_basis: dict[int, list[int]] = field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.betti.get(n, 0)


class HomologyBasis:
    """Homology of a complex with reproducible coordinates.

    Cycle representatives come from the deterministic kernel basis of the
    differential; classes are coordinatized by solving against the chosen
    representatives modulo the boundary image basis.
    """

    def __init__(self, c: GradedComplex):
        if not c.is_valid():
            raise InvalidComplex("d^2 != 0")
        self.complex = c
        self.cycles: dict[int, list[int]] = {}
        self.boundaries: dict[int, list[int]] = {}
        self.representatives: dict[int, list[int]] = {}
        self.betti: dict[int, int] = {}
        self._coord: dict[int, F2Matrix] = {}
        degrees = set(c.dims) | {n + 1 for n in c.dims}
        for n in sorted(degrees):
            dn = c.dim(n)
            if dn == 0:
                continue
            cyc = c.diff_at(n).kernel_basis()
            bnd = c.diff_at(n + 1).image_basis()
            self.cycles[n] = cyc
            self.boundaries[n] = bnd
            reps = self._pick_representatives(cyc, bnd)
            self.representatives[n] = reps
            b = len(reps)
            if b:
                self.betti[n] = b
            # Columns: chosen representatives then boundary spanning set;
            # any cycle is a combination, and the rep part of a solution
            # gives the homology class coordinates.
            cols = reps + bnd
            self._coord[n] = F2Matrix(dn, len(cols),
                                      rows=self._cols_to_rows(cols, dn))

    @staticmethod
    def _cols_to_rows(cols: list[int], nrows: int) -> list[int]:
        rows = [0] * nrows
        for j, v in enumerate(cols):
            vv = v
            while vv:
                low = vv & -vv
                rows[low.bit_length() - 1] |= 1 << j
                vv ^= low
        return rows

    @staticmethod
    def _pick_representatives(cycles: list[int], boundaries: list[int]) -> list[int]:
        from .f2 import echelon_basis, reduce_vector
        bnd_ech = echelon_basis(boundaries)
        reps = []
        ech = list(bnd_ech)
        for z in cycles:
            r = reduce_vector(z, ech)
            if r:
                reps.append(z)
                ech = echelon_basis(ech + [r])
        return reps

    def class_vector(self, n: int, z: int) -> int:
        """Coordinates of the class [z] in the chosen degree-n basis."""
        mat = self._coord.get(n)
        nreps = len(self.representatives.get(n, []))
        if mat is None or mat.ncols == 0:
            if z:
                raise ValueError("nonzero chain in an empty degree")
            return 0
        sol = mat.solve(z)
        if sol is None:
            raise ValueError("chain is not a cycle")
        return sol & ((1 << nreps) - 1)

    def summary(self) -> HomologySummary:
        return HomologySummary(dict(self.betti),
                               {n: list(v) for n, v in self.representatives.items()},
                               {n: list(v) for n, v in self.boundaries.items()})


def check_d_squared(c: GradedComplex) -> list[tuple[int, F2Matrix]]:
    """Validity report; empty means d^2 = 0 everywhere."""
    return c.d_squared_report()


def homology(c: GradedComplex) -> HomologySummary:
    """Betti numbers: dim ker(diff[n]) - rank(diff[n+1]) per degree."""
    return HomologyBasis(c).summary()


def induced_on_homology(f: ChainMap) -> dict[int, F2Matrix]:
    """Matrices of f_* : H_n(source) -> H_n(target) in the chosen bases."""
    ok, residual = is_chain_map(f)
    if not ok:
        raise NotAChainMap(f"residual nonzero at degrees {sorted(residual.blocks)}")
    hs = HomologyBasis(f.source)
    ht = HomologyBasis(f.target)
    out = {}
    degrees = set(hs.betti) | set(ht.betti)
    for n in sorted(degrees):
        src_reps = hs.representatives.get(n, [])
        rows = ht.betti.get(n, 0)
        block = f.block_at(n)
        cols = []
        for z in src_reps:
            cols.append(ht.class_vector(n, block.mul_vec(z)))
        out[n] = F2Matrix(rows, len(src_reps),
                          HomologyBasis._cols_to_rows(cols, rows))
    return out


def hom_complex_differential(f: ChainMap) -> ChainMap:
    """The residual D(f) = ∂∘f + f∘∂ used by the coherence machinery."""
    return f.hom_differential()


# ---- the hom-space as a linear system -------------------------------------


class HomOperator:
    """The linear operator f -> D(f) on maps of a fixed degree, as one matrix.

    Unknowns are the entries of the blocks of f (degrees ascending, then
    row-major); equations are the entries of the blocks of D(f).
    """

    def __init__(self, source: GradedComplex, target: GradedComplex, degree: int):
        self.source = source
        self.target = target
        self.degree = degree
        self.var_index: dict[tuple[int, int, int], int] = {}
        self.var_layout: list[tuple[int, int, int]] = []
        for n in sorted(source.dims):
            rows = target.dim(n + degree)
            cols = source.dim(n)
            for r in range(rows):
                for c in range(cols):
                    self.var_index[(n, r, c)] = len(self.var_layout)
                    self.var_layout.append((n, r, c))
        self.eq_layout: list[tuple[int, int, int]] = []
        for n in sorted(source.dims):
            rows = target.dim(n + degree - 1)
            cols = source.dim(n)
            for r in range(rows):
                for c in range(cols):
                    self.eq_layout.append((n, r, c))
        entries = []
        for eq, (n, r, c) in enumerate(self.eq_layout):
            dt = target.diff_at(n + degree)  # rows: dim(n+deg-1), cols: dim(n+deg)
            for a in range(dt.ncols):
                if dt.entry(r, a):
                    entries.append((eq, self.var_index[(n, a, c)]))
            ds = source.diff_at(n)  # rows: dim(n-1), cols: dim(n)
            if (n - 1) in self.var_index_degrees():
                for b in range(ds.nrows):
                    if ds.entry(b, c):
                        key = (n - 1, r, b)
                        if key in self.var_index:
                            entries.append((eq, self.var_index[key]))
        self.matrix = F2Matrix.from_entries(len(self.eq_layout),
                                            len(self.var_layout), entries)

    def var_index_degrees(self) -> set[int]:
        return {n for (n, _, _) in self.var_layout}

    def map_to_vector(self, f: ChainMap) -> int:
        v = 0
        for idx, (n, r, c) in enumerate(self.var_layout):
            if f.block_at(n).entry(r, c):
                v |= 1 << idx
        return v

    def vector_to_map(self, v: int) -> ChainMap:
        entries_by_degree: dict[int, list[tuple[int, int]]] = {}
        for idx, (n, r, c) in enumerate(self.var_layout):
            if (v >> idx) & 1:
                entries_by_degree.setdefault(n, []).append((r, c))
        blocks = {}
        for n, ent in entries_by_degree.items():
            blocks[n] = F2Matrix.from_entries(self.target.dim(n + self.degree),
                                              self.source.dim(n), ent)
        return ChainMap(self.source, self.target, self.degree, blocks)

    def rhs_to_vector(self, rhs: ChainMap) -> int:
        if rhs.degree != self.degree - 1:
            raise ShapeMismatch("rhs degree must be one below the unknown's")
        v = 0
        for idx, (n, r, c) in enumerate(self.eq_layout):
            if rhs.block_at(n).entry(r, c):
                v |= 1 << idx
        return v

    def solve(self, rhs: ChainMap) -> ChainMap | None:
        """A map f with D(f) = rhs, or None when rhs is not a boundary."""
        sol = self.matrix.solve(self.rhs_to_vector(rhs))
        if sol is None:
            return None
        return self.vector_to_map(sol)

    def kernel_maps(self) -> list[ChainMap]:
        """Basis of {f : D(f) = 0}; for degree 0 these are the chain maps."""
        return [self.vector_to_map(v) for v in self.matrix.kernel_basis()]


def solve_homotopy_equation(source: GradedComplex, target: GradedComplex,
                            degree: int, rhs: ChainMap) -> ChainMap | None:
    """Solve ∂∘f + f∘∂ = rhs for f of the given degree (deterministic)."""
    return HomOperator(source, target, degree).solve(rhs)
