"""Seeded random generators for complexes, chain maps, and diagrams.

Random complexes are direct sums of elementary pieces (a lone generator, or
a two-term piece whose differential is an isomorphism) conjugated by random
invertible degree-0 changes of basis, so d^2 = 0 holds by construction at
every size.  Coherent diagram data comes from a retraction trick: each stage
complex is thickened by a contractible cone, strict maps are chosen between
the thickenings, and the structure maps of all lengths are read off from the
explicit contracting homotopy.  Every instance produced this way is exactly
coherent, and any truncation of it is completable, which is what the solver
corpus needs.

The environment variable MT_SEED overrides the default seed.
"""

from __future__ import annotations

import os
import random

from .complexes import ChainMap, GradedComplex, HomOperator
from .diagrams import CoherentDiagram, PartialDiagram, make_strict
from .f2 import F2Matrix
from .nerve import PosetSimplex

DEFAULT_SEED = 1789


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    return int(os.environ.get("MT_SEED", default))


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


# ---- random matrices and complexes ------------------------------------------


def random_unit_triangular(rng: random.Random, n: int, upper: bool) -> F2Matrix:
    rows = []
    for i in range(n):
        r = 1 << i
        span = range(i + 1, n) if upper else range(i)
        for j in span:
            if rng.getrandbits(1):
                r |= 1 << j
        rows.append(r)
    return F2Matrix(n, n, rows)


def random_permutation(rng: random.Random, n: int) -> F2Matrix:
    perm = list(range(n))
    rng.shuffle(perm)
    return F2Matrix(n, n, [1 << perm[i] for i in range(n)])


def random_invertible(rng: random.Random, n: int) -> F2Matrix:
    return (random_unit_triangular(rng, n, upper=False)
            @ random_unit_triangular(rng, n, upper=True)
            @ random_permutation(rng, n))


def invert(m: F2Matrix) -> F2Matrix:
    """Inverse of a square invertible matrix (column-by-column solve)."""
    if m.nrows != m.ncols:
        raise ValueError("only square matrices invert")
    cols = []
    for j in range(m.nrows):
        x = m.solve(1 << j)
        if x is None:
            raise ValueError("matrix is singular")
        cols.append(x)
    rows = [0] * m.nrows
    for j, v in enumerate(cols):
        while v:
            low = v & -v
            rows[low.bit_length() - 1] |= 1 << j
            v ^= low
    return F2Matrix(m.nrows, m.nrows, rows)


def random_complex(rng: random.Random, degrees: tuple[int, ...] = (0, 1, 2),
                   max_dim: int = 4) -> GradedComplex:
    """Random complex with dims <= max_dim in the given degree window."""
    degs = sorted(degrees)
    pairs = [(n, n + 1) for n in degs if n + 1 in degs]
    intervals = {n: rng.randint(0, max_dim // 2) for n, _ in pairs}
    dims: dict[int, int] = {}
    for n in degs:
        base = intervals.get(n, 0) + intervals.get(n - 1, 0)
        points = rng.randint(0, max(0, max_dim - base))
        dims[n] = base + points
    dims = {n: d for n, d in dims.items() if d}
    # basis order per degree: interval bottoms, interval tops, lone points
    diff: dict[int, F2Matrix] = {}
    for n in degs:
        k = intervals.get(n, 0)  # pieces spanning (n, n+1)
        if not k or (n + 1) not in dims or n not in dims:
            continue
        entries = [(i, intervals.get(n + 1, 0) + i) for i in range(k)]
        diff[n + 1] = F2Matrix.from_entries(dims[n], dims[n + 1], entries)
    raw = GradedComplex(dims, diff)
    g = {n: random_invertible(rng, d) for n, d in dims.items()}
    twisted = {}
    for n in dims:
        if raw.diff_at(n).is_zero() or (n - 1) not in dims:
            continue
        twisted[n] = g[n - 1] @ raw.diff_at(n) @ invert(g[n])
    return GradedComplex(dims, twisted)


def random_chain_map(rng: random.Random, source: GradedComplex,
                     target: GradedComplex) -> ChainMap:
    """Uniformly random element of the space of chain maps."""
    op = HomOperator(source, target, 0)
    v = 0
    for b in op.matrix.kernel_basis():
        if rng.getrandbits(1):
            v ^= b
    return op.vector_to_map(v)


def random_strict_diagram(rng: random.Random, n_stages: int,
                          degrees: tuple[int, ...] = (0, 1, 2),
                          max_dim: int = 4) -> CoherentDiagram:
    stages = {a: random_complex(rng, degrees, max_dim) for a in range(n_stages)}
    edges = {(a, a + 1): random_chain_map(rng, stages[a], stages[a + 1])
             for a in range(n_stages - 1)}
    return make_strict(stages, edges)


# ---- exactly coherent diagrams via a contractible thickening -----------------


def _cone_of_identity(w: GradedComplex) -> tuple[GradedComplex, ChainMap]:
    """The contractible cone on w and its contracting homotopy.

    Degree n of the cone is w_n + w_{n-1} (a shifted copy appended);
    d(x, y) = (dx + y, dy) and the homotopy h(x, y) = (0, x) satisfies
    dh + hd = identity.
    """
    dims = {}
    degs = set(w.dims) | {n + 1 for n in w.dims}
    for n in degs:
        d = w.dim(n) + w.dim(n - 1)
        if d:
            dims[n] = d
    diff = {}
    for n in dims:
        rows = dims.get(n - 1, 0)
        cols = dims[n]
        entries = []
        dw = w.diff_at(n)
        for (i, j) in dw.entries():  # d on the plain copy
            entries.append((i, j))
        for j in range(w.dim(n - 1)):  # shifted copy feeds the plain one
            entries.append((j, w.dim(n) + j))
        dw1 = w.diff_at(n - 1)
        for (i, j) in dw1.entries():  # d on the shifted copy
            entries.append((w.dim(n - 1) + i, w.dim(n) + j))
        m = F2Matrix.from_entries(rows, cols, entries)
        if not m.is_zero():
            diff[n] = m
    cone = GradedComplex(dims, diff)
    hblocks = {}
    for n in dims:
        rows = dims.get(n + 1, 0)
        entries = [(w.dim(n + 1) + j, j) for j in range(w.dim(n))]
        m = F2Matrix.from_entries(rows, dims[n], entries)
        if not m.is_zero():
            hblocks[n] = m
    return cone, ChainMap(cone, cone, 1, hblocks)


class _Thickening:
    """One stage's complex x sitting inside y = x + cone as a retract.

    incl and proj are chain maps with proj o incl = identity on x, and eta
    is a degree 1 self-map of y with D(eta) = identity + incl o proj.
    """

    def __init__(self, rng: random.Random, x: GradedComplex,
                 degrees: tuple[int, ...], pad_dim: int):
        w = random_complex(rng, degrees, pad_dim)
        cone, h = _cone_of_identity(w)
        dims = {}
        for n in set(x.dims) | set(cone.dims):
            d = x.dim(n) + cone.dim(n)
            if d:
                dims[n] = d
        diff = {}
        for n in dims:
            rows = dims.get(n - 1, 0)
            entries = list(x.diff_at(n).entries())
            for (i, j) in cone.diff_at(n).entries():
                entries.append((x.dim(n - 1) + i, x.dim(n) + j))
            m = F2Matrix.from_entries(rows, dims[n], entries)
            if not m.is_zero():
                diff[n] = m
        self.x = x
        self.y = GradedComplex(dims, diff)
        self.incl = ChainMap(x, self.y, 0, {
            n: F2Matrix.from_entries(self.y.dim(n), x.dim(n),
                                     [(j, j) for j in range(x.dim(n))])
            for n in x.dims})
        self.proj = ChainMap(self.y, x, 0, {
            n: F2Matrix.from_entries(x.dim(n), self.y.dim(n),
                                     [(j, j) for j in range(x.dim(n))])
            for n in self.y.dims if x.dim(n)})
        eta_blocks = {}
        for n in cone.dims:
            rows = self.y.dim(n + 1)
            entries = [(x.dim(n + 1) + i, x.dim(n) + j)
                       for (i, j) in h.block_at(n).entries()]
            m = F2Matrix.from_entries(rows, self.y.dim(n), entries)
            if not m.is_zero():
                eta_blocks[n] = m
        self.eta = ChainMap(self.y, self.y, 1, eta_blocks)


class CoherentFamily:
    """Exactly coherent structure maps of all lengths over a stage chain.

    For a simplex (a_0, ..., a_k) the map is
        proj_{a_k} o c o (eta o c)^(k-1) o incl_{a_0},
    where the c are a strict system between the thickenings.  The coherence
    relation follows from D(eta) = identity + incl o proj by expanding the
    hom differential through the chain of factors.
    """

    def __init__(self, rng: random.Random, n_stages: int,
                 degrees: tuple[int, ...] = (0, 1, 2), max_dim: int = 3,
                 pad_dim: int = 2):
        if n_stages < 1:
            raise ValueError("need at least one stage")
        self.thick = [_Thickening(rng, random_complex(rng, degrees, max_dim),
                                  degrees, pad_dim)
                      for _ in range(n_stages)]
        self.step = [random_chain_map(rng, self.thick[a].y, self.thick[a + 1].y)
                     for a in range(n_stages - 1)]
        self.stages = {a: t.x for a, t in enumerate(self.thick)}

    def _carrier(self, a: int, b: int) -> ChainMap:
        f = None
        for c in range(a, b):
            f = self.step[c] if f is None else self.step[c] @ f
        if f is None:
            raise ValueError("carrier needs a < b")
        return f

    def structure_map(self, s: PosetSimplex) -> ChainMap:
        vs = s.vertices
        k = s.length
        if k < 1:
            raise ValueError("vertices carry no structure map")
        f = self.thick[vs[0]].incl
        for j in range(k):
            f = self._carrier(vs[j], vs[j + 1]) @ f
            if j < k - 1:
                f = self.thick[vs[j + 1]].eta @ f
        return self.thick[vs[-1]].proj @ f

    def full_diagram(self) -> CoherentDiagram:
        maps = {}
        for s in CoherentDiagram(self.stages).simplices():
            maps[s] = self.structure_map(s)
        return CoherentDiagram(self.stages, maps)

    def truncation(self, pin_lengths: tuple[int, ...]) -> PartialDiagram:
        """Partial diagram pinning only the given simplex lengths."""
        maps = {}
        for s in CoherentDiagram(self.stages).simplices():
            if s.length in pin_lengths:
                maps[s] = self.structure_map(s)
        return PartialDiagram(self.stages, maps)


def random_completable_truncation(rng: random.Random, n_stages: int,
                                  degrees: tuple[int, ...] = (0, 1, 2),
                                  max_dim: int = 3) -> PartialDiagram:
    """A partial diagram the greedy solver is guaranteed to complete.

    Edges are always pinned; for diagrams with tetrahedra the triangles are
    pinned too, because a bad triangle choice can strand the solver even
    when an abstract completion exists.
    """
    fam = CoherentFamily(rng, n_stages, degrees, max_dim)
    pin = (1,) if n_stages <= 3 else (1, 2)
    return fam.truncation(pin)
