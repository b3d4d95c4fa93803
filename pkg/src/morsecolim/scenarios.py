"""Morse exhaustion scenarios: stage complexes and continuation data.

A scenario file carries, for each exhaustion stage, a chain complex whose
generators are labeled critical points graded by Morse index, together with
continuation chain maps between consecutive stages and optionally pinned
higher maps.  Everything downstream (homology limits, the colimit chain
model, vanishing bounds) is computed from the coherent diagram the scenario
induces; missing higher maps are synthesized by the completion solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .colimit import ColimitComplex, build_colimit, direct_limit, homology_system
from .complexes import ChainMap, GradedComplex, is_chain_map
from .diagrams import CoherentDiagram, PartialDiagram, complete, make_strict
from .nerve import PosetSimplex


class ParseError(ValueError):
    """The scenario file is not readable as scenario JSON."""


class ValidationError(ValueError):
    """The scenario data violates a structural invariant."""


@dataclass
class ExhaustionScenario:
    """Validated stage data for one exhaustion.

    dim_w bounds every Morse index; edges are consecutive-stage
    continuation maps; higher holds optional pinned structure maps.
    """

    dim_w: int
    stages: dict[int, GradedComplex]
    edges: dict[tuple[int, int], ChainMap]
    higher: dict[PosetSimplex, ChainMap] = field(default_factory=dict)
    inclusions: list = field(default_factory=list)

    def stage_order(self) -> list[int]:
        return sorted(self.stages)

    def validate(self) -> None:
        if self.dim_w < 0:
            raise ValidationError("dim_w must be >= 0")
        for a, c in self.stages.items():
            for n in c.dims:
                if not 0 <= n <= self.dim_w:
                    raise ValidationError(
                        f"stage {a}: Morse index {n} outside [0, {self.dim_w}]")
            bad = c.d_squared_report()
            if bad:
                raise ValidationError(f"stage {a}: d^2 != 0 at degree {bad[0][0]}")
        order = self.stage_order()
        steps = set(zip(order, order[1:]))
        for (a, b), f in self.edges.items():
            if (a, b) not in steps:
                raise ValidationError(f"edge ({a},{b}) is not a consecutive step")
            ok, residual = is_chain_map(f)
            if not ok:
                raise ValidationError(
                    f"edge ({a},{b}) is not a chain map; residual at degrees "
                    f"{sorted(residual.blocks)}")
        for a, b in steps:
            if (a, b) not in self.edges:
                raise ValidationError(f"missing continuation edge ({a},{b})")

    # ---- serialization -----------------------------------------------------

    @classmethod
    def from_json(cls, doc: Mapping) -> "ExhaustionScenario":
        try:
            dim_w = int(doc["dim_w"])
            stages = {int(item["index"]): GradedComplex.from_json(item["complex"])
                      for item in doc["stages"]}
            edges = {}
            for item in doc.get("edges", []):
                a, b = int(item["from"]), int(item["to"])
                edges[(a, b)] = ChainMap.blocks_from_json(
                    stages[a], stages[b], 0, item.get("blocks", {}))
            higher = {}
            for item in doc.get("higher", []):
                s = PosetSimplex(item["simplex"])
                higher[s] = ChainMap.blocks_from_json(
                    stages[s.source], stages[s.target], s.length - 1,
                    item.get("blocks", {}))
            inclusions = list(doc.get("inclusions", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed scenario: {exc}") from exc
        out = cls(dim_w, stages, edges, higher, inclusions)
        out.validate()
        return out

    def to_json(self) -> dict:
        doc = {
            "dim_w": self.dim_w,
            "stages": [{"index": a, "complex": c.to_json()}
                       for a, c in sorted(self.stages.items())],
            "edges": [{"from": a, "to": b, "blocks": f.blocks_to_json()}
                      for (a, b), f in sorted(self.edges.items())],
        }
        if self.higher:
            doc["higher"] = [{"simplex": s.to_json(), "blocks": f.blocks_to_json()}
                             for s, f in sorted(self.higher.items(),
                                                key=lambda kv: kv[0].sort_key())]
        if self.inclusions:
            doc["inclusions"] = self.inclusions
        return doc


def load_scenario(path) -> ExhaustionScenario:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read scenario {path}: {exc}") from exc
    return ExhaustionScenario.from_json(doc)


def strict_diagram(s: ExhaustionScenario) -> CoherentDiagram:
    """The strict diagram of the continuation edges and their composites."""
    return make_strict(s.stages, s.edges)


def scenario_diagram(s: ExhaustionScenario) -> CoherentDiagram:
    """Coherent diagram of the scenario, completing unpinned higher maps.

    Non-consecutive edges default to the composites of the continuation
    steps; pinned higher maps are kept verbatim.
    """
    base = strict_diagram(s)
    maps = dict(base.maps)
    maps.update(s.higher)
    return complete(PartialDiagram(s.stages, maps))


def morse_homology_limit(s: ExhaustionScenario,
                         stabilize: int | None = None) -> dict[int, int]:
    """Direct limit of the stage Morse homologies along the continuations."""
    return direct_limit(homology_system(strict_diagram(s), stabilize=stabilize))


def morse_chain_model(s: ExhaustionScenario) -> ColimitComplex:
    """The colimit chain model; its betti numbers match the homology limit."""
    return build_colimit(scenario_diagram(s))


@dataclass
class VanishingReport:
    """Structure maps that ought to vanish on grading grounds but do not.

    A degree (k-1) map between complexes graded inside [0, dim_w] must be
    zero once k - 1 > dim_w, so the bound on simplex lengths is 1 + dim_w.
    """

    bound: int
    violations: list[PosetSimplex] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def vanishing_check(s: ExhaustionScenario) -> VanishingReport:
    d = scenario_diagram(s)
    report = VanishingReport(bound=1 + s.dim_w)
    for simplex in d.simplices():
        if simplex.length <= report.bound:
            continue
        report.checked += 1
        if not d.map_at(simplex).is_zero():
            report.violations.append(simplex)
    return report
