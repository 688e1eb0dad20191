"""Support tau-tilting pairs, mutation, and the budgeted exchange-graph search.

Indecomposable tau-rigid modules are identified by their g-vectors; a pair is
stored as a sorted tuple of module g-vectors plus a sorted tuple of support
vertices. All module-level computations go through :class:`PairSpace`, which
owns the per-algebra caches.

Mutation at a module summand ``X`` with ``X`` outside ``Fac U`` (``U`` the other
summands) goes down: the cokernel of a minimal left ``add U``-approximation of
``X`` replaces it, or a new support vertex appears when that cokernel is zero.
Every other mutation goes up and is computed by applying the downward recipe
over the opposite algebra through the duality
``(M, P) -> (Tr M_np (+) P*, M_pr*)``, which reverses the order.
"""

from __future__ import annotations

import json
import logging
import multiprocessing as mp
import time
from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import FinDimAlgebra, compute_algebra
from .field import int_det
from .repmod import (
    Representation,
    ar_translate,
    cokernel,
    direct_sum,
    dual,
    end_radical,
    evaluation_surjective,
    g_vector,
    hom_dim,
    hom_space,
    hom_vector,
    minimal_projective_presentation,
    projective,
)

log = logging.getLogger(__name__)

GVec = tuple[int, ...]
PairKey = tuple[tuple[GVec, ...], tuple[int, ...]]

DEFAULT_BUDGET = 50_000
DEFAULT_SECONDS = 600.0
# Tau-rigid modules over wild algebras grow exponentially along the search;
# past this size a single mutation can exhaust memory before the clock runs out.
DEFAULT_MAX_MODULE_DIM = 256


class MutationError(RuntimeError):
    """A computed pair failed validation; signals a bug, not a mathematical outcome."""


class ModuleSizeExceeded(RuntimeError):
    """A mutation produced a module above the exploration's size budget."""


@dataclass
class TauRigid:
    """An indecomposable tau-rigid module with its cached data."""

    g: GVec
    rep: Representation
    tau: Representation
    projective_at: int | None  # vertex i when the module is P(i)


@dataclass(frozen=True)
class TauTiltingPair:
    """A support tau-tilting pair ``(M, P)``.

    ``modules`` holds g-vectors of the indecomposable summands of ``M`` (sorted),
    ``support`` the vertex indices of ``P`` (sorted). Positions enumerate the
    modules first, then the support vertices.
    """

    space: "PairSpace" = dc_field(compare=False, hash=False, repr=False)
    modules: tuple[GVec, ...] = ()
    support: tuple[int, ...] = ()

    @property
    def algebra(self) -> FinDimAlgebra:
        return self.space.algebra

    @property
    def size(self) -> int:
        return len(self.modules) + len(self.support)

    @property
    def module_summands(self) -> list[Representation]:
        return [self.space.modules[g].rep for g in self.modules]

    @property
    def support_projectives(self) -> list[str]:
        return [self.space.algebra.vertices[i] for i in self.support]

    def module(self) -> Representation:
        reps = self.module_summands
        if not reps:
            from .repmod import zero_rep

            return zero_rep(self.space.algebra)
        return direct_sum(reps)

    def columns(self) -> list[GVec]:
        n = len(self.space.algebra.vertices)
        cols = list(self.modules)
        for i in self.support:
            cols.append(tuple(-1 if k == i else 0 for k in range(n)))
        return cols

    def g_matrix(self) -> np.ndarray:
        return g_matrix(self)

    @property
    def key(self) -> PairKey:
        return (self.modules, self.support)

    def canonical_key(self) -> bytes:
        return canonical_key(self)

    def position_of(self, column: GVec) -> int:
        return self.columns().index(tuple(column))

    def __repr__(self) -> str:
        return f"TauTiltingPair(modules={list(self.modules)}, support={self.support_projectives})"


def _leading(col: GVec) -> tuple:
    lead = next((i for i, x in enumerate(col) if x), len(col))
    return (lead, col)


def g_matrix(pair: TauTiltingPair) -> np.ndarray:
    """Integer matrix with one column per summand (module g-vectors and ``-e_i``).

    Columns are ordered by their first nonzero entry, so the initial pair gives
    the identity and the final pair minus the identity.  Mutation positions
    refer to :meth:`TauTiltingPair.columns`, not to this order.
    """
    cols = sorted(pair.columns(), key=_leading)
    n = len(pair.space.algebra.vertices)
    if not cols:
        return np.zeros((n, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def _key_bytes(cols: list[GVec]) -> bytes:
    return ";".join(",".join(str(x) for x in c) for c in sorted(cols)).encode()


def canonical_key(pair: TauTiltingPair) -> bytes:
    return _key_bytes(pair.columns())


def g_det(pair: TauTiltingPair) -> int:
    return int_det([list(r) for r in g_matrix(pair).tolist()])


class PairSpace:
    """Per-algebra registry of tau-rigid modules and mutation machinery."""

    def __init__(self, algebra: FinDimAlgebra, seed: int = 0, opposite: "PairSpace | None" = None):
        self.algebra = algebra
        self.seed = seed
        self.n = len(algebra.vertices)
        self.modules: dict[GVec, TauRigid] = {}
        self._hom: dict[tuple[GVec, GVec], list] = {}
        self._compat: dict[tuple[GVec, GVec], bool] = {}
        self._rad: dict[GVec, list] = {}
        self._opposite = opposite
        self.max_module_dim: int | None = None
        for i in range(self.n):
            self._register(projective(algebra, i), check=False)

    # -- registry --------------------------------------------------------
    @property
    def opposite(self) -> "PairSpace":
        if self._opposite is None:
            op = compute_algebra(self.algebra.presentation.opposite())
            self._opposite = PairSpace(op, self.seed, opposite=self)
        return self._opposite

    def _register(self, rep: Representation, check: bool = True, g: GVec | None = None) -> GVec:
        if self.max_module_dim is not None and rep.dim > self.max_module_dim:
            raise ModuleSizeExceeded(f"module of dimension {rep.dim} exceeds {self.max_module_dim}")
        gv = g_vector(rep)
        if g is not None and gv != tuple(g):
            raise MutationError(f"expected g-vector {g}, computed {gv}")
        if gv in self.modules:
            return gv
        pres = minimal_projective_presentation(rep)
        if check:
            rad = end_radical(rep)
            if rad is None:
                raise MutationError(f"module with g-vector {gv} is not certified indecomposable")
            self._rad[gv] = rad
        tau = ar_translate(rep, pres)
        proj = pres.p0[0] if not pres.p1 and len(pres.p0) == 1 else None
        if check and hom_dim(rep, tau) != 0:
            raise MutationError(f"module with g-vector {gv} is not tau-rigid")
        self.modules[gv] = TauRigid(gv, rep, tau, proj)
        return gv

    def projective_g(self, i: int) -> GVec:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def hom(self, a: GVec, b: GVec) -> list:
        key = (a, b)
        out = self._hom.get(key)
        if out is None:
            out = hom_space(self.modules[a].rep, self.modules[b].rep)
            self._hom[key] = out
        return out

    def radical(self, a: GVec) -> list:
        out = self._rad.get(a)
        if out is None:
            out = end_radical(self.modules[a].rep)
            if out is None:
                raise MutationError(f"module with g-vector {a} is not certified indecomposable")
            self._rad[a] = out
        return out

    def compatible(self, a: GVec, b: GVec) -> bool:
        """``Hom(M_a, tau M_b) = 0 = Hom(M_b, tau M_a)``."""
        key = (a, b) if a <= b else (b, a)
        out = self._compat.get(key)
        if out is None:
            ma, mb = self.modules[a], self.modules[b]
            out = hom_dim(ma.rep, mb.tau) == 0 and (a == b or hom_dim(mb.rep, ma.tau) == 0)
            self._compat[key] = out
        return out

    # -- pairs -----------------------------------------------------------
    def pair(self, modules, support) -> TauTiltingPair:
        return TauTiltingPair(self, tuple(sorted(tuple(g) for g in modules)), tuple(sorted(support)))

    def initial_pair(self) -> TauTiltingPair:
        return self.pair([self.projective_g(i) for i in range(self.n)], ())

    def final_pair(self) -> TauTiltingPair:
        return self.pair((), range(self.n))

    def validate(self, p: TauTiltingPair) -> None:
        if p.size != self.n:
            raise MutationError(f"pair has {p.size} summands, expected {self.n}")
        if len(set(p.modules)) != len(p.modules) or len(set(p.support)) != len(p.support):
            raise MutationError("repeated summand")
        for k, a in enumerate(p.modules):
            for b in p.modules[k:]:
                if not self.compatible(a, b):
                    raise MutationError(f"summands {a} and {b} are not compatible")
            dims = self.modules[a].rep.dims
            if any(dims[i] for i in p.support):
                raise MutationError(f"summand {a} is supported on a support vertex")

    def in_fac(self, x: GVec, others: list[GVec]) -> bool:
        rep = self.modules[x].rep
        homs = [h for u in others for h in self.hom(u, x)]
        return evaluation_surjective(homs, rep)

    def is_down_position(self, p: TauTiltingPair, k: int) -> bool:
        if k >= len(p.modules):
            return False
        x = p.modules[k]
        others = [g for g in p.modules if g != x]
        return not self.in_fac(x, others)

    # -- mutation ----------------------------------------------------------
    def mutate(self, p: TauTiltingPair, k: int, validate: bool = True) -> TauTiltingPair:
        if not 0 <= k < p.size:
            raise IndexError(f"position {k} out of range for a pair with {p.size} summands")
        if self.is_down_position(p, k):
            out = self.mutate_down(p, k)
        else:
            out = self.mutate_up(p, k)
        if validate:
            self.validate(out)
        return out

    def mutate_down(self, p: TauTiltingPair, k: int) -> TauTiltingPair:
        fld = self.algebra.field
        x = p.modules[k]
        others = [g for g in p.modules if g != x]
        xrep = self.modules[x].rep
        chosen: list[tuple[GVec, tuple]] = []
        for uj in others:
            homs = self.hom(x, uj)
            if not homs:
                continue
            # maps X -> U_j factoring through the radical of add U
            rad_parts = []
            for uk in others:
                radk = self.radical(uj) if uk == uj else self.hom(uk, uj)
                if not radk:
                    continue
                for f in self.hom(x, uk):
                    for h in radk:
                        rad_parts.append(hom_vector(tuple(fld.matmul(hi, fi) for hi, fi in zip(h, f))))
            # a basis of Hom(X, U_j) modulo the radical part, greedily from the Hom basis
            cols = np.stack(rad_parts + [hom_vector(h) for h in homs], axis=1)
            _, piv = fld.rref(cols)
            chosen.extend((uj, homs[c - len(rad_parts)]) for c in piv if c >= len(rad_parts))
        if not chosen:
            return self._gain_support(p, others)
        tdims = [sum(self.modules[u].rep.dims[i] for u, _ in chosen) for i in range(self.n)]
        fmap = tuple(
            np.concatenate([h[i] for _, h in chosen], axis=0) if xrep.dims[i] and tdims[i]
            else fld.zeros(tdims[i], xrep.dims[i])
            for i in range(self.n)
        )
        target = direct_sum([self.modules[u].rep for u, _ in chosen])
        y, _ = cokernel(fmap, target)
        if y.is_zero():
            return self._gain_support(p, others)
        gy = self._register(y)
        return self.pair(others + [gy], p.support)

    def _gain_support(self, p: TauTiltingPair, others: list[GVec]) -> TauTiltingPair:
        used = set(p.support)
        free = [
            i for i in range(self.n)
            if i not in used and all(self.modules[g].rep.dims[i] == 0 for g in others)
        ]
        if len(free) != 1:
            raise MutationError(f"expected exactly one new support vertex, found {free}")
        return self.pair(others, list(p.support) + free)

    def mutate_up(self, p: TauTiltingPair, k: int) -> TauTiltingPair:
        dp, k2 = self.dagger(p, k)
        op = self.opposite
        if not op.is_down_position(dp, k2):
            raise MutationError("dual position is not a downward mutation")
        return op.dagger(op.mutate_down(dp, k2))[0]

    def dagger(self, p: TauTiltingPair, k: int | None = None) -> tuple[TauTiltingPair, int | None]:
        """``(Tr M_np (+) P*, M_pr*)`` over the opposite algebra; tracks position ``k``."""
        op = self.opposite
        mods, supp = [], []
        tracked = None
        for pos, g in enumerate(p.modules):
            m = self.modules[g]
            if m.projective_at is not None:
                supp.append(m.projective_at)
                col = ("s", m.projective_at)
            else:
                tr = dual(m.tau, op.algebra)
                g2 = op._register(tr, check=False, g=tuple(-x for x in g))
                mods.append(g2)
                col = ("m", g2)
            if pos == k:
                tracked = col
        for pos, i in enumerate(p.support, start=len(p.modules)):
            g2 = op.projective_g(i)
            mods.append(g2)
            if pos == k:
                tracked = ("m", g2)
        out = op.pair(mods, supp)
        if tracked is None:
            return out, None
        kind, val = tracked
        idx = out.modules.index(val) if kind == "m" else len(out.modules) + out.support.index(val)
        return out, idx

    # -- invariants --------------------------------------------------------
    def neighbours(self, p: TauTiltingPair) -> list[TauTiltingPair]:
        return [self.mutate(p, k) for k in range(p.size)]

    def leq(self, p: TauTiltingPair, q: TauTiltingPair) -> bool:
        """``p <= q``: every summand of p lies in Fac of q's module, supports nest."""
        if not set(q.support) <= set(p.support):
            return False
        return all(self.in_fac(g, list(q.modules)) for g in p.modules)


def space_for(algebra: FinDimAlgebra, seed: int = 0) -> PairSpace:
    spaces = algebra.__dict__.setdefault("_pair_spaces", {})
    sp = spaces.get(seed)
    if sp is None:
        sp = spaces[seed] = PairSpace(algebra, seed)
    return sp


def initial_pair(algebra: FinDimAlgebra) -> TauTiltingPair:
    return space_for(algebra).initial_pair()


def final_pair(algebra: FinDimAlgebra) -> TauTiltingPair:
    return space_for(algebra).final_pair()


def mutate(pair: TauTiltingPair, k: int) -> TauTiltingPair:
    return pair.space.mutate(pair, k)


def leq(p: TauTiltingPair, q: TauTiltingPair) -> bool:
    return p.space.leq(p, q)


# -- exploration ------------------------------------------------------------------

@dataclass
class ExplorationReport:
    status: str  # "Finite" or "BudgetExceeded"
    count: int
    edges: list[tuple[int, int]]
    max_depth: int | None
    frontier_size: int
    elapsed: float
    seed: int
    field: str
    budget: int
    max_seconds: float
    max_module_dim: int | None = None
    stopped_by: str | None = None  # "pairs", "seconds" or "module_dim" when not Finite
    pairs: list[TauTiltingPair] = dc_field(default_factory=list, repr=False)

    @property
    def finite(self) -> bool:
        return self.status == "Finite"

    @property
    def pairs_found(self) -> int:
        return self.count

    def keys(self) -> list[bytes]:
        return [canonical_key(p) for p in self.pairs]

    def to_json(self, include_elapsed: bool = True, include_hasse: bool = False) -> dict:
        out = {
            "status": self.status,
            "count": self.count,
            "budget": self.budget,
            "max_seconds": self.max_seconds,
            "max_module_dim": self.max_module_dim,
            "field": self.field,
            "seed": self.seed,
        }
        if self.finite:
            out["edges"] = len(self.edges)
            out["max_depth"] = self.max_depth
        else:
            out["frontier_size"] = self.frontier_size
            out["stopped_by"] = self.stopped_by
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        if include_hasse:
            out["hasse"] = hasse_json(self)
        return out

    def dumps(self, include_elapsed: bool = True, include_hasse: bool = False) -> str:
        return json.dumps(self.to_json(include_elapsed, include_hasse), sort_keys=True)


def _down_mutations(space: PairSpace, p: TauTiltingPair) -> list[TauTiltingPair]:
    out = []
    for k in range(len(p.modules)):
        if space.is_down_position(p, k):
            q = space.mutate_down(p, k)
            space.validate(q)
            out.append(q)
    return out


_WORKER_SPACE: PairSpace | None = None


def _worker(args):
    mods, support = args
    sp = _WORKER_SPACE
    p = sp.pair(mods, support)
    res = _down_mutations(sp, p)
    payload = []
    for q in res:
        new = [(g, sp.modules[g].rep) for g in q.modules]
        payload.append((q.modules, q.support, new))
    return payload


def explore(
    algebra: FinDimAlgebra,
    budget: int = DEFAULT_BUDGET,
    max_seconds: float = DEFAULT_SECONDS,
    seed: int = 0,
    workers: int = 1,
    max_module_dim: int | None = DEFAULT_MAX_MODULE_DIM,
) -> ExplorationReport:
    """Breadth-first search over downward mutations from ``(A, 0)``.

    When the search closes up, every pair has been reached (each pair below
    ``A`` has a left mutation above it), and each Hasse arrow is found exactly
    once from its upper end. The search stops with ``BudgetExceeded`` after
    ``budget`` pairs, ``max_seconds`` seconds, or on meeting a tau-rigid module
    of dimension above ``max_module_dim`` (``None`` disables that limit).
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if max_seconds <= 0:
        raise ValueError("max_seconds must be positive")
    if max_module_dim is not None and max_module_dim <= 0:
        raise ValueError("max_module_dim must be positive")
    start = time.monotonic()
    space = space_for(algebra, seed)
    space.max_module_dim = max_module_dim
    try:
        status, stopped_by, pairs, edges, frontier = _search(space, budget, max_seconds, workers, start)
    finally:
        space.max_module_dim = None
    elapsed = time.monotonic() - start
    fld = algebra.field.spec()
    if status != "Finite":
        return ExplorationReport(status, len(pairs), edges, None, len(frontier), elapsed, seed, fld,
                                 budget, max_seconds, max_module_dim, stopped_by, pairs)
    # renumber by canonical key so reports do not depend on discovery order
    order = sorted(range(len(pairs)), key=lambda i: canonical_key(pairs[i]))
    rank = {old: new for new, old in enumerate(order)}
    pairs = [pairs[i] for i in order]
    edges = sorted((rank[a], rank[b]) for a, b in edges)
    depth = _max_depth(len(pairs), edges, rank[0])
    return ExplorationReport(status, len(pairs), edges, depth, 0, elapsed, seed, fld, budget, max_seconds,
                             max_module_dim, None, pairs)


def _search(space: PairSpace, budget: int, max_seconds: float, workers: int, start: float):
    root = space.initial_pair()
    space.validate(root)
    index: dict[PairKey, int] = {root.key: 0}
    pairs = [root]
    edges: list[tuple[int, int]] = []
    frontier = [root]
    stopped_by = None
    while frontier:
        nxt = []
        results = None
        pos = 0
        if workers > 1 and len(frontier) > 1:
            try:
                results = _parallel_level(space, frontier, workers)
            except ModuleSizeExceeded:
                stopped_by = "module_dim"
        if stopped_by is None:
            for pos, p in enumerate(frontier):
                if len(pairs) > budget:
                    stopped_by = "pairs"
                elif time.monotonic() - start > max_seconds:
                    stopped_by = "seconds"
                if stopped_by:
                    break
                try:
                    res = results[pos] if results is not None else _down_mutations(space, p)
                except ModuleSizeExceeded:
                    stopped_by = "module_dim"
                    break
                for q in res:
                    j = index.get(q.key)
                    if j is None:
                        j = len(pairs)
                        index[q.key] = j
                        pairs.append(q)
                        nxt.append(q)
                    edges.append((index[p.key], j))
        if stopped_by:
            frontier = frontier[pos:] + nxt
            break
        frontier = nxt
        if len(pairs) > budget:
            stopped_by = "pairs"
            break
    status = "Finite" if stopped_by is None else "BudgetExceeded"
    return status, stopped_by, pairs, edges, frontier


def _parallel_level(space: PairSpace, frontier: list[TauTiltingPair], workers: int):
    global _WORKER_SPACE
    _WORKER_SPACE = space
    ctx = mp.get_context("fork")
    with ctx.Pool(workers) as pool:
        payloads = pool.map(_worker, [(p.modules, p.support) for p in frontier], chunksize=max(1, len(frontier) // (4 * workers)))
    _WORKER_SPACE = None
    results = []
    # merge in frontier order so the registry is filled deterministically
    for payload in payloads:
        res = []
        for mods, support, new in payload:
            for g, rep in new:
                if g not in space.modules:
                    space._register(rep, check=False, g=g)
            res.append(space.pair(mods, support))
        results.append(res)
    return results


def _max_depth(n: int, edges: list[tuple[int, int]], source: int) -> int:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    dist = [-1] * n
    dist[source] = 0
    dq = deque([source])
    while dq:
        v = dq.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                dq.append(w)
    return max(dist)


# -- Hasse exports -------------------------------------------------------------

def _label(pair: TauTiltingPair) -> str:
    return canonical_key(pair).decode()


def hasse_json(report: ExplorationReport) -> dict:
    return {
        "nodes": [{"id": i, "g_matrix": [list(c) for c in sorted(p.columns())]} for i, p in enumerate(report.pairs)],
        "edges": [list(e) for e in report.edges],
    }


def hasse_dot(report: ExplorationReport, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{"]
    for i, p in enumerate(report.pairs):
        lines.append(f'  n{i} [label="{_label(p)}"];')
    for a, b in report.edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def degree_multisets(report: ExplorationReport) -> tuple[list[int], list[int]]:
    n = report.count
    indeg, outdeg = [0] * n, [0] * n
    for a, b in report.edges:
        outdeg[a] += 1
        indeg[b] += 1
    return sorted(indeg), sorted(outdeg)
