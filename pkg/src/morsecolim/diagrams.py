"""Homotopy coherent diagrams of GF(2) chain complexes over the stage poset.

A diagram assigns a complex to each stage and a degree (k-1) map to each
nondegenerate k-simplex of the stage-poset nerve.  Coherence of the
assignment means that for every simplex the residual

    R(s) = D(f_s) + sum of interior faces + sum of split compositions

vanishes, where D is the hom-complex differential.  For edges this is the
chain-map condition.  Missing maps are zero; completion solves for them
degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .complexes import (ChainMap, GradedComplex, HomOperator, NotAChainMap,
                        ShapeMismatch, is_chain_map, solve_homotopy_equation)
from .nerve import (PosetSimplex, ProductSimplex, enumerate_product_simplices,
                    enumerate_simplices, is_degenerate_chain)


class StageMismatch(ValueError):
    """Two diagrams that were required to share stage complexes do not."""


class Obstruction(Exception):
    """A coherence equation with no solution.

    Carries the simplex and the residual (a hom-complex cycle whose class
    witnesses the obstruction).
    """

    def __init__(self, simplex, residual: ChainMap):
        self.simplex = simplex
        self.residual = residual
        super().__init__(f"obstruction at {simplex}")


@dataclass
class ValidationReport:
    """Residual report; ok iff every checked simplex has zero residual."""

    failures: list[tuple[PosetSimplex, ChainMap]] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def failing_simplices(self) -> list[PosetSimplex]:
        return [s for s, _ in self.failures]


class CoherentDiagram:
    """Stage complexes plus one structure map per stored simplex.

    maps[s] has degree len(s) - 1, source at the first vertex and target at
    the last.  Zero maps need not be stored.
    """

    def __init__(self, stages: Mapping[int, GradedComplex],
                 maps: Mapping[PosetSimplex, ChainMap] | None = None):
        self.stages = {int(a): c for a, c in stages.items()}
        if not self.stages:
            raise ValueError("a diagram needs at least one stage")
        self.maps: dict[PosetSimplex, ChainMap] = {}
        for s, f in (maps or {}).items():
            self._check_shape(s, f)
            if not f.is_zero():
                self.maps[s] = f

    def _check_shape(self, s: PosetSimplex, f: ChainMap) -> None:
        if s.source not in self.stages or s.target not in self.stages:
            raise ShapeMismatch(f"simplex {s} leaves the stage set")
        if f.degree != s.length - 1:
            raise ShapeMismatch(
                f"map for {s} has degree {f.degree}, expected {s.length - 1}")
        if (f.source.dims != self.stages[s.source].dims
                or f.target.dims != self.stages[s.target].dims):
            raise ShapeMismatch(f"map for {s} has wrong endpoints")

    @property
    def max_stage(self) -> int:
        return max(self.stages)

    def stage_list(self) -> list[int]:
        return sorted(self.stages)

    def max_simplex_length(self) -> int:
        return len(self.stages) - 1

    def map_at(self, s: PosetSimplex) -> ChainMap:
        f = self.maps.get(s)
        if f is None:
            return ChainMap.zero(self.stages[s.source], self.stages[s.target],
                                 s.length - 1)
        return f

    def simplices(self, max_length: int | None = None) -> list[PosetSimplex]:
        if max_length is None:
            max_length = self.max_simplex_length()
        return [s for s in enumerate_simplices(self.max_stage, max_length,
                                               stages=self.stages)
                if s.length >= 1]

    def coherence_residual(self, s: PosetSimplex) -> ChainMap:
        """R(s); zero for every simplex iff the diagram is coherent.

        Both sums run over the interior split points i = 1..k-1; the two
        endpoint faces change source or target and cannot enter.
        """
        k = s.length
        r = self.map_at(s).hom_differential()
        for i in range(1, k):
            r = r + self.map_at(s.face(i))
            prefix, suffix = s.split(i)
            r = r + (self.map_at(suffix) @ self.map_at(prefix))
        return r

    def known_residual_part(self, s: PosetSimplex) -> ChainMap:
        """The part of R(s) not involving the map at s itself."""
        k = s.length
        src, tgt = self.stages[s.source], self.stages[s.target]
        r = ChainMap.zero(src, tgt, k - 2)
        for i in range(1, k):
            r = r + self.map_at(s.face(i))
            prefix, suffix = s.split(i)
            r = r + (self.map_at(suffix) @ self.map_at(prefix))
        return r

    def validate(self, max_length: int | None = None) -> ValidationReport:
        """Check the coherence relation on every simplex up to max_length."""
        for a, c in self.stages.items():
            bad = c.d_squared_report()
            if bad:
                raise ShapeMismatch(f"stage {a} fails d^2 = 0 at {bad[0][0]}")
        report = ValidationReport()
        for s in self.simplices(max_length):
            r = self.coherence_residual(s)
            report.checked += 1
            if not r.is_zero():
                report.failures.append((s, r))
        return report

    def is_strict(self) -> bool:
        """No maps above length 1 and composites commute on the nose."""
        if any(s.length >= 2 for s in self.maps):
            return False
        return self.validate().ok

    def edge_map(self, a: int, b: int) -> ChainMap:
        return self.map_at(PosetSimplex((a, b)))

    def consecutive_edges(self) -> list[ChainMap]:
        order = self.stage_list()
        return [self.edge_map(a, b) for a, b in zip(order, order[1:])]

    # ---- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "stages": {str(a): c.to_json() for a, c in sorted(self.stages.items())},
            "maps": [{"simplex": s.to_json(), "blocks": f.blocks_to_json()}
                     for s, f in sorted(self.maps.items(),
                                        key=lambda kv: kv[0].sort_key())],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "CoherentDiagram":
        stages = {int(a): GradedComplex.from_json(c)
                  for a, c in doc.get("stages", {}).items()}
        maps = {}
        for item in doc.get("maps", []):
            s = PosetSimplex(item["simplex"])
            maps[s] = ChainMap.blocks_from_json(
                stages[s.source], stages[s.target], s.length - 1,
                item.get("blocks", {}))
        return cls(stages, maps)


class PartialDiagram:
    """Stage complexes with maps for some simplices; the rest are open.

    A simplex is 'open' unless a map was provided for it, so completion
    will solve for it (provided zero maps pin a simplex to zero).
    """

    def __init__(self, stages: Mapping[int, GradedComplex],
                 maps: Mapping[PosetSimplex, ChainMap] | None = None,
                 pinned: set[PosetSimplex] | None = None):
        self.stages = {int(a): c for a, c in stages.items()}
        self.maps: dict[PosetSimplex, ChainMap] = dict(maps or {})
        self.pinned = set(self.maps) | set(pinned or ())

    def provided(self, s: PosetSimplex) -> bool:
        return s in self.pinned


def make_strict(stages: Mapping[int, GradedComplex],
                edge_maps: Mapping[tuple[int, int], ChainMap]) -> CoherentDiagram:
    """Strict diagram from chain maps on consecutive stage edges.

    Maps for arbitrary edges are the composites; all higher maps are zero,
    so coherence holds by construction.
    """
    order = sorted(int(a) for a in stages)
    step: dict[int, ChainMap] = {}
    for (a, b), f in edge_maps.items():
        if b != order[order.index(a) + 1]:
            raise ValueError(f"edge ({a},{b}) is not a consecutive step")
        ok, residual = is_chain_map(f)
        if not ok:
            raise NotAChainMap(f"edge ({a},{b}) residual at degrees "
                               f"{sorted(residual.blocks)}")
        step[a] = f
    maps: dict[PosetSimplex, ChainMap] = {}
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            f = None
            for c, d in zip(order[i:], order[i + 1:]):
                if d > b:
                    break
                g = step.get(c)
                if g is None:
                    raise ValueError(f"missing edge map for ({c},{d})")
                f = g if f is None else g @ f
            maps[PosetSimplex((a, b))] = f
    return CoherentDiagram(stages, maps)


def complete(p: PartialDiagram, up_to_length: int | None = None) -> CoherentDiagram:
    """Fill in missing structure maps by solving the coherence equations.

    Proceeds by increasing simplex length, lexicographically within a
    length.  For each open simplex the known residual part (a hom-complex
    cycle) is solved against the hom differential; the deterministic
    solution with free variables zero is taken, so the zero map is chosen
    whenever the known part already vanishes.  Raises Obstruction when the
    known part is not a boundary.
    """
    working = CoherentDiagram(p.stages, p.maps)
    if up_to_length is None:
        up_to_length = working.max_simplex_length()
    for s in working.simplices(up_to_length):
        if p.provided(s):
            continue
        known = working.known_residual_part(s)
        if known.is_zero():
            continue
        src, tgt = working.stages[s.source], working.stages[s.target]
        sol = solve_homotopy_equation(src, tgt, s.length - 1, known)
        if sol is None:
            raise Obstruction(s, known)
        working.maps[s] = sol
    return working


# ---- extension over the product with the walking isomorphism ---------------


class ProductDiagram:
    """Diagram over the doubled stage poset extending two strict diagrams.

    Vertices are (stage, marker); structure maps follow the strict-diagram
    case analysis: identities across marker flips at a fixed stage, edge
    maps along stage steps, zero above length 1.
    """

    def __init__(self, first: CoherentDiagram, second: CoherentDiagram):
        self.first = first
        self.second = second
        self.stages = {(a, e): first.stages[a]
                       for a in first.stages for e in (0, 1)}

    def stage_complex(self, v: tuple[int, int]) -> GradedComplex:
        return self.stages[v]

    def map_for(self, chain) -> ChainMap:
        """Structure map for a vertex chain, degenerate chains included.

        Degenerate chains get the dg-nerve conventions: identity for an
        identity edge, zero in length two and above.
        """
        vertices = chain.vertices if isinstance(chain, ProductSimplex) else tuple(chain)
        k = len(vertices) - 1
        src = self.stages[vertices[0]]
        tgt = self.stages[vertices[-1]]
        if k < 1:
            raise ValueError("chains of morphisms have length >= 1")
        if is_degenerate_chain(vertices):
            if k == 1:
                return ChainMap.identity(src)
            return ChainMap.zero(src, tgt, k - 1)
        if k >= 2:
            return ChainMap.zero(src, tgt, k - 1)
        (a, e), (b, f) = vertices
        if a == b:
            return ChainMap.identity(src)
        base = self.first if e == 0 else self.second
        return base.map_at(PosetSimplex((a, b)))

    def restrict(self, marker: int) -> CoherentDiagram:
        """The copy of the stage poset at a fixed marker."""
        base = self.first if marker == 0 else self.second
        return CoherentDiagram(base.stages, base.maps)

    def coherence_residual(self, chain: ProductSimplex) -> ChainMap:
        k = chain.length
        r = self.map_for(chain).hom_differential()
        for i in range(1, k):
            r = r + self.map_for(chain.face_vertices(i))
            prefix, suffix = chain.split(i)
            r = r + (self.map_for(suffix) @ self.map_for(prefix))
        return r

    def validate(self, max_length: int = 3) -> ValidationReport:
        report = ValidationReport()
        for chain in enumerate_product_simplices(
                max(a for a, _ in self.stages), max_length,
                stages={a for a, _ in self.stages}):
            if chain.length < 1:
                continue
            r = self.coherence_residual(chain)
            report.checked += 1
            if not r.is_zero():
                report.failures.append((chain, r))
        return report


def product_extension(d1: CoherentDiagram, d2: CoherentDiagram) -> ProductDiagram:
    """Extend two strict diagrams with shared stages over the doubled poset."""
    if sorted(d1.stages) != sorted(d2.stages):
        raise StageMismatch("stage index sets differ")
    for a in d1.stages:
        if d1.stages[a].dims != d2.stages[a].dims:
            raise StageMismatch(f"stage {a} complexes differ in dimensions")
        if d1.stages[a].diff_at_all() != d2.stages[a].diff_at_all():
            raise StageMismatch(f"stage {a} complexes differ in differentials")
    for d in (d1, d2):
        if any(s.length >= 2 for s in d.maps):
            raise ValueError("inputs must be strict (no higher maps)")
    return ProductDiagram(d1, d2)


# ---- interleaving comparison ------------------------------------------------


@dataclass
class InterleaveReport:
    """Per-degree direct-limit dimensions of two interleaved systems."""

    limit_first: dict[int, int]
    limit_second: dict[int, int]
    limit_doubled: dict[int, int]

    @property
    def agree(self) -> bool:
        degrees = set(self.limit_first) | set(self.limit_second)
        return all(self.limit_first.get(n, 0) == self.limit_second.get(n, 0)
                   for n in degrees)


def interleave_compare(d1: CoherentDiagram, d2: CoherentDiagram,
                       cross_maps: Mapping[str, Mapping[int, ChainMap]]
                       ) -> InterleaveReport:
    """Compare direct limits of two systems through stagewise cross maps.

    cross_maps["forward"][a] goes from the first diagram's stage a to the
    second's; cross_maps["backward"][a] goes back.  The round trips must be
    chain-homotopic to the identities and the forward maps must commute
    with the edges up to chain homotopy; each requirement is verified by
    solving for an explicit homotopy, and failure raises Obstruction.

    The two limits are tied together through the doubled system on
    homology, whose stages alternate between the two diagrams.
    """
    from .colimit import DirectSystem, direct_limit, homology_system
    from .complexes import HomologyBasis, induced_on_homology
    from .f2 import F2Matrix

    if sorted(d1.stages) != sorted(d2.stages):
        raise StageMismatch("stage index sets differ")
    order = d1.stage_list()
    fwd = {int(a): f for a, f in cross_maps.get("forward", {}).items()}
    bwd = {int(a): f for a, f in cross_maps.get("backward", {}).items()}

    def require_homotopic(f: ChainMap, g: ChainMap, what: str) -> None:
        diff = f + g
        if diff.is_zero():
            return
        h = solve_homotopy_equation(f.source, f.target, 1, diff)
        if h is None:
            raise Obstruction(what, diff)

    for a in order:
        u, v = fwd[a], bwd[a]
        require_homotopic(v @ u, ChainMap.identity(d1.stages[a]),
                          f"round trip at stage {a}")
        require_homotopic(u @ v, ChainMap.identity(d2.stages[a]),
                          f"reverse round trip at stage {a}")
    for a, b in zip(order, order[1:]):
        require_homotopic(fwd[b] @ d1.edge_map(a, b),
                          d2.edge_map(a, b) @ fwd[a],
                          f"edge naturality at ({a},{b})")

    # Doubled strict system on homology: even positions from the first
    # diagram, odd from the second, maps alternating cross and edge-after-
    # backward.
    spaces: list[dict[int, int]] = []
    maps: list[dict[int, F2Matrix]] = []
    for i, a in enumerate(order):
        h1 = HomologyBasis(d1.stages[a])
        h2 = HomologyBasis(d2.stages[a])
        spaces.append(dict(h1.betti))
        spaces.append(dict(h2.betti))
        maps.append(induced_on_homology(fwd[a]))
        if i + 1 < len(order):
            b = order[i + 1]
            maps.append(induced_on_homology(d1.edge_map(a, b) @ bwd[a]))
    doubled = DirectSystem(spaces, maps)
    return InterleaveReport(direct_limit(homology_system(d1)),
                            direct_limit(homology_system(d2)),
                            direct_limit(doubled))
