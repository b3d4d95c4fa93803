"""Explicit homotopy colimit complexes, mapping telescopes, direct limits.

The colimit of a coherent diagram has one generator (s; x) per nondegenerate
poset simplex s and generator x of the stage complex at the source of s,
graded by len(s) + |x|.  The differential combines the stage differential,
the interior faces of s, and transports of x along prefixes of s.  The
mapping telescope is the same construction restricted to vertices and
consecutive edges, so an edge generator (a, a+1; x) is the shifted bar copy
of x with differential x + psi(x) + (edge; dx).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .complexes import (ChainMap, GradedComplex, HomologyBasis,
                        induced_on_homology)
from .diagrams import CoherentDiagram
from .f2 import F2Matrix, echelon_basis, intersection_dim, span_rank
from .nerve import PosetSimplex


class UnknownSimplex(KeyError):
    """A simplex outside the basis of the assembled complex."""


BasisElement = tuple[PosetSimplex, int, int]  # (simplex, stage degree, index)


class _AssembledComplex:
    """Common core: total complex over a downward-closed set of simplices.

    basis[m] lists the degree-m generators (s, n, j) with m = len(s) + n,
    simplices in (length, lex) order and stage generators in index order.
    """

    def __init__(self, diagram: CoherentDiagram,
                 simplices: Iterable[PosetSimplex]):
        self.diagram = diagram
        self.simplices = sorted(simplices, key=lambda s: s.sort_key())
        simplex_set = set(self.simplices)
        self.basis: dict[int, list[BasisElement]] = {}
        self.index: dict[BasisElement, int] = {}
        labels: dict[int, list[str]] = {}
        for s in self.simplices:
            src = diagram.stages[s.source]
            for n in src.degrees():
                m = s.length + n
                slot = self.basis.setdefault(m, [])
                names = labels.setdefault(m, [])
                for j in range(src.dim(n)):
                    self.index[(s, n, j)] = len(slot)
                    slot.append((s, n, j))
                    tag = "<".join(str(v) for v in s.vertices)
                    names.append(f"({tag};{src.label(n, j)})")
        dims = {m: len(v) for m, v in self.basis.items()}
        diff: dict[int, F2Matrix] = {}
        for m in sorted(dims):
            rows_basis = self.basis.get(m - 1, [])
            entries = []
            for col, (s, n, j) in enumerate(self.basis[m]):
                for row in self._column(s, n, j, simplex_set):
                    entries.append((row, col))
            diff[m] = F2Matrix.from_entries(len(rows_basis), dims[m], entries)
        self.complex = GradedComplex(dims, diff, labels)

    def _column(self, s: PosetSimplex, n: int, j: int,
                simplex_set: set[PosetSimplex]) -> list[int]:
        """Row positions hit by the differential of the generator (s, n, j)."""
        d = self.diagram
        src = d.stages[s.source]
        rows = []
        # stage term (s; dx)
        ds = src.diff_at(n)
        for i in range(ds.nrows):
            if ds.entry(i, j):
                rows.append(self.index[(s, n - 1, i)])
        k = s.length
        for i in range(1, k + 1):
            # interior and last faces keep the source stage
            f = s.face(i)
            if f in simplex_set:
                rows.append(self.index[(f, n, j)])
            # transport x along the prefix through vertex i
            prefix, suffix = s.split(i)
            if suffix not in simplex_set:
                continue
            block = d.map_at(prefix).block_at(n)
            col = block.column(j) if block.ncols else 0
            t = col
            while t:
                low = t & -t
                rows.append(self.index[(suffix, n + i - 1, low.bit_length() - 1)])
                t ^= low
        # duplicate hits cancel over GF(2)
        out = []
        seen: dict[int, int] = {}
        for r in rows:
            seen[r] = seen.get(r, 0) ^ 1
        return [r for r, bit in seen.items() if bit]

    def position(self, s: PosetSimplex, n: int, j: int) -> int:
        try:
            return self.index[(s, n, j)]
        except KeyError:
            raise UnknownSimplex(s) from None

    def generators_of(self, m: int) -> list[BasisElement]:
        return list(self.basis.get(m, []))


class ColimitComplex(_AssembledComplex):
    """The full homotopy colimit complex of a coherent diagram."""


class TelescopeComplex(_AssembledComplex):
    """The mapping telescope of the consecutive-edge system of a diagram.

    Generators are the plain copies (a; x) together with one shifted bar
    copy (a, b; x) for each consecutive stage pair.
    """

    def psi(self, a: int) -> ChainMap:
        order = self.diagram.stage_list()
        b = order[order.index(a) + 1]
        return self.diagram.edge_map(a, b)

    def plain_positions(self, m: int) -> list[int]:
        return [i for i, (s, _, _) in enumerate(self.basis.get(m, []))
                if s.length == 0]


def _restrict_diagram(d: CoherentDiagram, max_stage: int | None) -> CoherentDiagram:
    if max_stage is None:
        return d
    stages = {a: c for a, c in d.stages.items() if a <= max_stage}
    maps = {s: f for s, f in d.maps.items() if s.target <= max_stage}
    return CoherentDiagram(stages, maps)


def build_colimit(d: CoherentDiagram, max_stage: int | None = None,
                  max_length: int | None = None) -> ColimitComplex:
    """Assemble the colimit complex over all simplices up to max_length."""
    d = _restrict_diagram(d, max_stage)
    if max_length is None:
        max_length = d.max_simplex_length()
    simplices = ([PosetSimplex((a,)) for a in d.stage_list()]
                 + d.simplices(max_length))
    return ColimitComplex(d, simplices)


def build_telescope(d: CoherentDiagram, max_stage: int | None = None) -> TelescopeComplex:
    """Assemble the telescope over vertices and consecutive stage edges."""
    d = _restrict_diagram(d, max_stage)
    order = d.stage_list()
    steps = set(zip(order, order[1:]))
    simplices = [PosetSimplex((a,)) for a in order]
    simplices += [PosetSimplex(p) for p in sorted(steps)]
    return TelescopeComplex(d, simplices)


def telescope_from_stages(complexes: list[GradedComplex],
                          edges: list[ChainMap]) -> TelescopeComplex:
    """Telescope of an explicit chain C_0 -> C_1 -> ... of chain maps."""
    from .diagrams import make_strict
    if len(edges) != len(complexes) - 1:
        raise ValueError("need exactly one edge per consecutive pair")
    stages = {i: c for i, c in enumerate(complexes)}
    d = make_strict(stages, {(i, i + 1): f for i, f in enumerate(edges)})
    return build_telescope(d)


def filtration_complex(c: ColimitComplex, n_max: int) -> GradedComplex:
    """Subcomplex spanned by generators (s; x) with len(s) <= n_max.

    Closed under the differential because no term increases the simplex
    length; n_max = 0 gives the direct sum of the stages.
    """
    if n_max < 0:
        raise ValueError("filtration level must be >= 0")
    kept = [s for s in c.simplices if s.length <= n_max]
    return _AssembledComplex(c.diagram, kept).complex


def cone_structure_map(c: _AssembledComplex, s: PosetSimplex) -> ChainMap:
    """The degree len(s) map x -> (s; x) into the assembled complex.

    For a vertex this is the inclusion of the stage complex.
    """
    if s not in set(c.simplices):
        raise UnknownSimplex(s)
    src = c.diagram.stages[s.source]
    k = s.length
    blocks = {}
    for n in src.degrees():
        entries = []
        for j in range(src.dim(n)):
            entries.append((c.position(s, n, j), j))
        blocks[n] = F2Matrix.from_entries(c.complex.dim(n + k), src.dim(n),
                                          entries)
    return ChainMap(src, c.complex, k, blocks)


def cone_relation_residual(c: _AssembledComplex, s: PosetSimplex) -> ChainMap:
    """Residual of the dg-nerve relation for the cone maps at s.

    R = D(cone(s)) + sum over i = 1..len(s) of
        cone(face_i(s)) + cone(suffix_i) o phi(prefix_i);
    always zero, which is exactly how d^2 = 0 holds on the total complex.
    """
    r = cone_structure_map(c, s).hom_differential()
    for i in range(1, s.length + 1):
        r = r + cone_structure_map(c, s.face(i))
        prefix, suffix = s.split(i)
        r = r + (cone_structure_map(c, suffix) @ c.diagram.map_at(prefix))
    return r


# ---- direct limits ----------------------------------------------------------


@dataclass
class DirectSystem:
    """Finite chain of graded GF(2) spaces with transition maps.

    spaces[i][n] is the dimension of stage i in degree n; maps[i][n] takes
    stage i to stage i+1.  The chain is an initial window of the system;
    stabilize asserts that every transition beyond stage `stabilize` is an
    isomorphism.  A repeating tail endomorphism may be supplied instead,
    meaning the system continues past the window by iterating `tail` on the
    last stage.
    """

    spaces: list[dict[int, int]]
    maps: list[dict[int, F2Matrix]]
    tail: dict[int, F2Matrix] | None = None
    stabilize: int | None = None

    def __post_init__(self):
        if len(self.maps) != len(self.spaces) - 1:
            raise ValueError("need exactly one transition map per step")
        for i, m in enumerate(self.maps):
            for n, mat in m.items():
                want = (self.spaces[i + 1].get(n, 0), self.spaces[i].get(n, 0))
                if mat.shape != want:
                    raise ValueError(f"map {i} degree {n}: shape {mat.shape}, "
                                     f"expected {want}")

    def truncated(self) -> "DirectSystem":
        if self.stabilize is None or self.stabilize >= len(self.spaces) - 1:
            return self
        n = self.stabilize
        return DirectSystem(self.spaces[:n + 1], self.maps[:n], self.tail)

    def degrees(self) -> list[int]:
        out = set()
        for sp in self.spaces:
            out |= {n for n, d in sp.items() if d}
        return sorted(out)


def direct_limit(sys: DirectSystem) -> dict[int, int]:
    """Dimension per degree of (+ H_i) / <x + psi_i(x)>.

    One rank computation per degree.  With no tail the quotient is carried
    by the last stage (the stabilization assertion makes that the honest
    limit).  With a repeating tail T the classes killed eventually, namely
    ker(T^dim), are also quotiented out.
    """
    sys = sys.truncated()
    out: dict[int, int] = {}
    nstages = len(sys.spaces)
    for n in sys.degrees():
        dims = [sp.get(n, 0) for sp in sys.spaces]
        offsets = [0]
        for d in dims:
            offsets.append(offsets[-1] + d)
        total = offsets[-1]
        relations = []
        for i in range(nstages - 1):
            mat = sys.maps[i].get(n,
                                  F2Matrix.zeros(dims[i + 1], dims[i]))
            for j in range(dims[i]):
                v = 1 << (offsets[i] + j)
                img = mat.column(j)
                relations.append(v | (img << offsets[i + 1]))
        if sys.tail is not None:
            d_last = dims[-1]
            t = sys.tail.get(n, F2Matrix.zeros(d_last, d_last))
            power = F2Matrix.identity(d_last)
            for _ in range(d_last):
                power = t @ power
            for v in power.kernel_basis():
                relations.append(v << offsets[-1])
        rank = span_rank(relations)
        if total - rank:
            out[n] = total - rank
    return out


def homology_system(d: CoherentDiagram, stabilize: int | None = None) -> DirectSystem:
    """Stage homologies with the maps induced by the consecutive edges."""
    order = d.stage_list()
    bases = [HomologyBasis(d.stages[a]) for a in order]
    spaces = [dict(hb.betti) for hb in bases]
    maps = [induced_on_homology(d.edge_map(a, b))
            for a, b in zip(order, order[1:])]
    return DirectSystem(spaces, maps, stabilize=stabilize)


# ---- the telescope lemma -----------------------------------------------------


@dataclass
class TelescopeLemmaReport:
    """Per-degree outcome of the two subspace-rank identities.

    kernel_check: dim ker(d^T) = dim(ker(d^o) + im(d^T)).
    quotient_check: dim((ker d^o meet im d^T) / im d^o) equals the span of
    the classes {[x] + [psi(x)]} inside the direct sum of stage homologies.
    """

    kernel_check: dict[int, tuple[int, int]] = field(default_factory=dict)
    quotient_check: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(a == b for a, b in self.kernel_check.values())
                and all(a == b for a, b in self.quotient_check.values()))


def verify_telescope_lemma(t: TelescopeComplex) -> TelescopeLemmaReport:
    """Check the two identities behind the telescope-to-limit comparison."""
    d = t.diagram
    order = d.stage_list()
    total = t.complex
    report = TelescopeLemmaReport()
    bases = {a: HomologyBasis(d.stages[a]) for a in order}
    degrees = set(total.dims) | {m - 1 for m in total.dims}
    for m in sorted(degrees):
        plain_m = t.plain_positions(m)
        plain_up = t.plain_positions(m + 1)
        # the inner system's differential in total coordinates
        full_up = total.diff_at(m + 1)
        full_m = total.diff_at(m)
        ker_T = full_m.kernel_basis() if total.dim(m) else []
        im_T = full_up.image_basis()
        ker_o = _restricted_kernel(full_m, plain_m)
        im_o = _restricted_image(full_up, plain_up)
        report.kernel_check[m] = (len(ker_T), span_rank(ker_o + im_T))
        lhs = intersection_dim(ker_o, im_T) - span_rank(im_o)
        rhs = _glued_class_rank(d, order, bases, m)
        report.quotient_check[m] = (lhs, rhs)
    return report


def _restricted_kernel(mat: F2Matrix, cols: list[int]) -> list[int]:
    """Kernel of the column-restricted map, embedded in full coordinates.

    Assumes the selected columns only hit the selected rows, which holds for
    the plain copies inside the telescope.
    """
    sub = F2Matrix.from_entries(
        mat.nrows, len(cols),
        [(i, jj) for jj, j in enumerate(cols) for i in range(mat.nrows)
         if mat.entry(i, j)])
    out = []
    for v in sub.kernel_basis():
        full = 0
        for jj, j in enumerate(cols):
            if (v >> jj) & 1:
                full |= 1 << j
        out.append(full)
    return out


def _restricted_image(mat: F2Matrix, cols: list[int]) -> list[int]:
    """Image of the column-restricted map in full coordinates."""
    return echelon_basis([mat.column(j) for j in cols])


def _glued_class_rank(d: CoherentDiagram, order: list[int],
                      bases: dict[int, HomologyBasis], m: int) -> int:
    """Rank of span{[x] + [psi(x)]} inside the sum of degree-m homologies."""
    offsets = {}
    pos = 0
    for a in order:
        offsets[a] = pos
        pos += bases[a].betti.get(m, 0)
    vectors = []
    for a, b in zip(order, order[1:]):
        hb_a, hb_b = bases[a], bases[b]
        psi = d.edge_map(a, b).block_at(m)
        for r, rep in enumerate(hb_a.representatives.get(m, [])):
            v = 1 << (offsets[a] + r)
            cls = hb_b.class_vector(m, psi.mul_vec(rep))
            v |= cls << offsets[b]
            vectors.append(v)
    return span_rank(vectors)


# ---- three-way comparison ----------------------------------------------------


@dataclass
class ComparisonReport:
    """Betti numbers of the colimit, the telescope, and the direct limit."""

    colimit_betti: dict[int, int]
    telescope_betti: dict[int, int]
    direct_limit: dict[int, int]

    @property
    def agree(self) -> bool:
        degrees = (set(self.colimit_betti) | set(self.telescope_betti)
                   | set(self.direct_limit))
        return all(self.colimit_betti.get(n, 0) == self.telescope_betti.get(n, 0)
                   == self.direct_limit.get(n, 0) for n in degrees)

    def to_json(self) -> dict:
        return {
            "colimit_betti": {str(n): v for n, v in sorted(self.colimit_betti.items())},
            "telescope_betti": {str(n): v for n, v in sorted(self.telescope_betti.items())},
            "direct_limit": {str(n): v for n, v in sorted(self.direct_limit.items())},
            "agree": self.agree,
        }


def compare_homologies(d: CoherentDiagram, max_length: int | None = None,
                       stabilize: int | None = None) -> ComparisonReport:
    """Betti of the colimit and telescope against the homology direct limit."""
    from .complexes import homology
    colim = homology(build_colimit(d, max_length=max_length).complex).betti
    tele = homology(build_telescope(d).complex).betti
    lim = direct_limit(homology_system(d, stabilize=stabilize))
    return ComparisonReport(colim, tele, lim)
