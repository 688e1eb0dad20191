"""Bound quiver presentations and the finite-dimensional algebras they define.

Paths are pairs ``(start_vertex, arrow_names)`` with arrows read left to right
(``(a, b)`` means "a then b"). Under this convention right modules are the
covariant representations of the quiver and ``Hom(e_i A, M) = M_i``.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
import numpy as np

from .field import Field
from .quiver import (
    Arrow,
    Quiver,
    build_cyclic_quiver,
    build_linear_quiver,
    is_cyclic_shape,
    is_linear_An_shape,
)

log = logging.getLogger(__name__)

Path = tuple[str, tuple[str, ...]]  # (start vertex, arrow names)
Relation = tuple[tuple[tuple[str, ...], Fraction], ...]


class PresentationError(ValueError):
    pass


class CapWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ConstructionTag:
    """How a presentation was built. ``factors`` holds presentations."""

    kind: str  # "tensor", "triangular", "rad2", "nakayama", "local", "linear"
    factors: tuple["BoundPresentation", ...] = ()
    n: int | None = None
    params: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(sorted(tuple(self.params))))

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    def tensor_factors(self) -> tuple["BoundPresentation", ...]:
        """Flat list of tensor factors this presentation is known to split into."""
        if self.kind == "tensor":
            out = []
            for f in self.factors:
                out.extend(f.tensor_factors())
            return tuple(out)
        if self.kind == "triangular":
            base = self.factors[0]
            if self.n == 1:
                return base.tensor_factors()
            return base.tensor_factors() + (path_algebra(build_linear_quiver(self.n)),)
        return ()


@dataclass(frozen=True)
class BoundPresentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    cap: int = 10
    field: Field = dc_field(default_factory=Field)
    tag: ConstructionTag | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        rels = tuple(_normalise_relation(r) for r in self.relations)
        object.__setattr__(self, "relations", tuple(r for r in rels if r))
        if self.cap < 2:
            raise PresentationError("nilpotency cap must be at least 2")
        amap = self.quiver.arrow_map()
        for rel in self.relations:
            ends = set()
            for path, _ in rel:
                if len(path) < 2:
                    raise PresentationError(f"relation term {'.'.join(path)} has length < 2 (not admissible)")
                for a in path:
                    if a not in amap:
                        raise PresentationError(f"unknown arrow {a!r} in relation")
                for x, y in zip(path, path[1:]):
                    if amap[x].target != amap[y].source:
                        raise PresentationError(f"{'.'.join(path)} is not a path")
                ends.add((amap[path[0]].source, amap[path[-1]].target))
            if len(ends) > 1:
                raise PresentationError("relation mixes paths with different endpoints")

    def tensor_factors(self) -> tuple["BoundPresentation", ...]:
        if self.tag is not None:
            got = self.tag.tensor_factors()
            if got:
                return got
        return (self,)

    def with_tag(self, tag: ConstructionTag | None) -> "BoundPresentation":
        return BoundPresentation(self.quiver, self.relations, self.cap, self.field, tag)

    def with_field(self, fld: Field) -> "BoundPresentation":
        return BoundPresentation(self.quiver, self.relations, self.cap, fld, self.tag)

    def opposite(self) -> "BoundPresentation":
        rels = tuple(tuple((tuple(reversed(p)), c) for p, c in r) for r in self.relations)
        return BoundPresentation(self.quiver.opposite(), rels, self.cap, self.field)


def _normalise_relation(rel) -> Relation:
    if isinstance(rel, dict):
        items = rel.items()
    else:
        items = rel
    acc: dict[tuple[str, ...], Fraction] = {}
    for path, coeff in items:
        path = tuple(path)
        acc[path] = acc.get(path, Fraction(0)) + Fraction(coeff)
    return tuple(sorted((p, c) for p, c in acc.items() if c != 0))


def _path_key(p: Path):
    return (len(p[1]), p[1], p[0])


class FinDimAlgebra:
    """Basis, structure constants and graded pieces of ``KQ/I``.

    The basis consists of path classes whose representative paths are not
    leading terms of the ideal in degree-lexicographic order, so each basis
    label is the least path in its class.
    """

    def __init__(self, pres: BoundPresentation):
        self.presentation = pres
        self.field = pres.field
        q = pres.quiver
        self.quiver = q
        self.vertices = q.vertices
        self.vindex = {v: i for i, v in enumerate(q.vertices)}
        self.arrows = q.arrows
        self.aindex = {a.name: k for k, a in enumerate(q.arrows)}
        self.arrow_src = [self.vindex[a.source] for a in q.arrows]
        self.arrow_tgt = [self.vindex[a.target] for a in q.arrows]
        self._compute()

    # -- construction ----------------------------------------------------
    def _compute(self):
        pres, fld, q = self.presentation, self.field, self.quiver
        cap = pres.cap
        amap = q.arrow_map()
        for rel in pres.relations:
            # only a partially truncated relation changes meaning
            long = [len(p) >= cap for p, _ in rel]
            if any(long) and not all(long):
                warnings.warn(
                    "a relation reaches the nilpotency cap; the cap may truncate intended structure",
                    CapWarning,
                    stacklevel=3,
                )
        # all paths of length < cap
        paths: list[Path] = [(v, ()) for v in q.vertices]
        frontier = list(paths)
        for _ in range(cap - 1):
            nxt = []
            for start, arr in frontier:
                end = amap[arr[-1]].target if arr else start
                for a in q.out_arrows(end):
                    nxt.append((start, arr + (a.name,)))
            paths.extend(nxt)
            frontier = nxt
        self._cap_paths = []
        for start, arr in frontier:
            end = amap[arr[-1]].target if arr else start
            for a in q.out_arrows(end):
                self._cap_paths.append(arr + (a.name,))
        paths.sort(key=_path_key, reverse=True)
        col = {p: k for k, p in enumerate(paths)}
        ends_at: dict[str, list[Path]] = {v: [] for v in q.vertices}
        starts_at: dict[str, list[Path]] = {v: [] for v in q.vertices}
        for p in paths:
            ends_at[self._end(p, amap)].append(p)
            starts_at[p[0]].append(p)

        rows = []
        for rel in pres.relations:
            s = amap[rel[0][0][0]].source
            t = amap[rel[0][0][-1]].target
            minlen = min(len(p) for p, _ in rel)
            for u in ends_at[s]:
                if len(u[1]) + minlen >= cap:
                    continue
                for w in starts_at[t]:
                    if len(u[1]) + len(w[1]) + minlen >= cap:
                        continue
                    row = {}
                    for p, c in rel:
                        full = u[1] + p + w[1]
                        if len(full) >= cap:
                            continue
                        k = col[(u[0], full)]
                        row[k] = fld.scalar(c)
                    if row:
                        rows.append(row)
        npaths = len(paths)
        if rows:
            mat = fld.zeros(len(rows), npaths)
            for i, row in enumerate(rows):
                for k, c in row.items():
                    mat[i, k] = c
            red, pivots = fld.rref(mat)
        else:
            red, pivots = fld.zeros(0, npaths), []
        pset = set(pivots)
        free = [k for k in range(npaths) if k not in pset]
        # basis in ascending deg-lex order
        free.sort(key=lambda k: _path_key(paths[k]))
        self.basis: list[Path] = [paths[k] for k in free]
        d = len(self.basis)
        self.dim = d
        bpos = {k: i for i, k in enumerate(free)}
        self._nf: dict[Path, np.ndarray] = {}
        for k in free:
            v = fld.zeros(1, d)[0]
            v[bpos[k]] = 1
            self._nf[paths[k]] = v
        for i, pc in enumerate(pivots):
            v = fld.zeros(1, d)[0]
            for k in free:
                if red[i, k] != 0:
                    v[bpos[k]] = fld.reduce(-red[i, k])
            self._nf[paths[pc]] = v
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self.basis_src = [self.vindex[p[0]] for p in self.basis]
        self.basis_tgt = [self.vindex[self._end(p, amap)] for p in self.basis]
        self.basis_len = [len(p[1]) for p in self.basis]
        n = len(self.vertices)
        self.piece: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(n)]
        for b in range(d):
            self.piece[self.basis_src[b]][self.basis_tgt[b]].append(b)
        self.idempotents = [self.basis_index[(v, ())] for v in self.vertices]
        # structure constants: mult[a, b] = coordinates of basis[a] * basis[b]
        mult = np.zeros((d, d, d), dtype=fld.dtype) if fld.p is not None else np.empty((d, d, d), dtype=object)
        if fld.p is None:
            mult.fill(Fraction(0))
        for a in range(d):
            pa = self.basis[a]
            for b in range(d):
                if self.basis_tgt[a] != self.basis_src[b]:
                    continue
                v = self.normal_form((pa[0], pa[1] + self.basis[b][1]))
                if v is not None:
                    mult[a, b] = v
        self.mult = mult
        self._amap = amap

    @staticmethod
    def _end(p: Path, amap) -> str:
        return amap[p[1][-1]].target if p[1] else p[0]

    # -- queries ---------------------------------------------------------
    def normal_form(self, p: Path) -> np.ndarray | None:
        """Coordinates of a path; ``None`` when the path is zero."""
        if len(p[1]) >= self.presentation.cap:
            return None
        v = self._nf[p]
        return v if np.any(v != 0) else None

    def path_end(self, p: Path) -> str:
        return self._end(p, self._amap)

    def label(self, b: int) -> str:
        start, arr = self.basis[b]
        return f"e{start}" if not arr else ".".join(arr)

    def vertex_count(self) -> int:
        return len(self.vertices)

    def piece_dim(self, i: int, j: int) -> int:
        return len(self.piece[i][j])

    def cartan(self) -> np.ndarray:
        n = len(self.vertices)
        return np.array([[len(self.piece[i][j]) for j in range(n)] for i in range(n)], dtype=int)

    def cap_paths(self) -> list[tuple[str, ...]]:
        return list(self._cap_paths)

    def element(self, coords: dict[int, object]) -> np.ndarray:
        v = self.field.zeros(1, self.dim)[0]
        for k, c in coords.items():
            v[k] = self.field.scalar(c)
        return v

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        fld = self.field
        if fld.p is not None:
            t = np.tensordot(x, self.mult, axes=(0, 0)) % fld.p
            return np.tensordot(y, t, axes=(0, 0)) % fld.p
        out = fld.zeros(1, self.dim)[0]
        for a in np.nonzero(x)[0]:
            for b in np.nonzero(y)[0]:
                out = out + x[a] * y[b] * self.mult[a, b]
        return out

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x*y`` in basis coordinates (columns indexed by y)."""
        fld = self.field
        if fld.p is not None:
            return (np.tensordot(x, self.mult, axes=(0, 0)) % fld.p).T.copy()
        out = fld.zeros(self.dim, self.dim)
        for a in np.nonzero(x)[0]:
            out = out + x[a] * self.mult[a].T
        return out

    def right_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> y*x`` (columns indexed by y)."""
        fld = self.field
        if fld.p is not None:
            return (np.tensordot(self.mult, x, axes=(1, 0)) % fld.p).T.copy()
        out = fld.zeros(self.dim, self.dim)
        for b in np.nonzero(x)[0]:
            out = out + x[b] * self.mult[:, b].T
        return out

    @cached_property
    def arrow_elements(self) -> list[np.ndarray]:
        out = []
        for a in self.arrows:
            v = self.normal_form((a.source, (a.name,)))
            out.append(v if v is not None else self.field.zeros(1, self.dim)[0])
        return out

    @cached_property
    def right_arrow_mats(self) -> list[np.ndarray]:
        return [self.right_mult_matrix(x) for x in self.arrow_elements]

    @cached_property
    def left_arrow_mats(self) -> list[np.ndarray]:
        return [self.left_mult_matrix(x) for x in self.arrow_elements]

    def rad_power_dim(self, k: int) -> int:
        return sum(1 for ell in self.basis_len if ell >= k)

    def is_radical_square_zero(self) -> bool:
        return self.rad_power_dim(2) == 0

    def check_associativity(self, rng: np.random.Generator, trials: int = 200) -> bool:
        d = self.dim
        for _ in range(trials):
            a, b, c = (int(x) for x in rng.integers(0, d, size=3))
            ea = self.element({a: 1})
            eb = self.element({b: 1})
            ec = self.element({c: 1})
            lhs = self.multiply(self.multiply(ea, eb), ec)
            rhs = self.multiply(ea, self.multiply(eb, ec))
            if np.any(lhs != rhs):
                return False
        return True

    def opposite(self) -> "FinDimAlgebra":
        return compute_algebra(self.presentation.opposite())


def compute_algebra(pres: BoundPresentation) -> FinDimAlgebra:
    return FinDimAlgebra(pres)


# -- constructors ----------------------------------------------------------

def path_algebra(q: Quiver, cap: int | None = None, fld: Field | None = None) -> BoundPresentation:
    """Path algebra of an acyclic quiver (cap defaults to the vertex count)."""
    if cap is None:
        cap = max(2, len(q.vertices))
    return BoundPresentation(q, (), cap, fld or Field())


def linear_path_algebra(n: int, fld: Field | None = None) -> BoundPresentation:
    """``K A_n`` with its linear orientation."""
    p = path_algebra(build_linear_quiver(n), fld=fld)
    return p.with_tag(ConstructionTag("linear", n=n))


def _paths_of_length(q: Quiver, length: int) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = [(a.name,) for a in q.arrows]
    amap = q.arrow_map()
    for _ in range(length - 1):
        out = [p + (a.name,) for p in out for a in q.out_arrows(amap[p[-1]].target)]
    return out


def tensor_product(a: BoundPresentation, b: BoundPresentation) -> BoundPresentation:
    if a.field != b.field:
        raise PresentationError("tensor factors live over different fields")
    qa, qb = a.quiver, b.quiver
    vname = {(i, j): f"{i}_{j}" for i in qa.vertices for j in qb.vertices}
    left = {(al.name, j): f"{al.name}_{j}" for al in qa.arrows for j in qb.vertices}
    right = {(i, be.name): f"{i}_{be.name}" for i in qa.vertices for be in qb.arrows}
    used = set(left.values())
    for key, name in list(right.items()):
        while name in used:
            name = name + "r"
        right[key] = name
        used.add(name)
    arrows = [Arrow(left[(al.name, j)], vname[(al.source, j)], vname[(al.target, j)])
              for j in qb.vertices for al in qa.arrows]
    arrows += [Arrow(right[(i, be.name)], vname[(i, be.source)], vname[(i, be.target)])
               for i in qa.vertices for be in qb.arrows]
    quiver = Quiver(tuple(vname[(i, j)] for i in qa.vertices for j in qb.vertices), tuple(arrows))
    rels: list = []
    # cap-length paths are lifted as monomial relations so the factor caps survive
    a_rels = list(a.relations) + [((p, Fraction(1)),) for p in _paths_of_length(qa, a.cap)]
    b_rels = list(b.relations) + [((p, Fraction(1)),) for p in _paths_of_length(qb, b.cap)]
    for j in qb.vertices:
        for rel in a_rels:
            rels.append(tuple((tuple(left[(x, j)] for x in p), c) for p, c in rel))
    for i in qa.vertices:
        for rel in b_rels:
            rels.append(tuple((tuple(right[(i, y)] for y in p), c) for p, c in rel))
    for al in qa.arrows:
        for be in qb.arrows:
            p1 = (left[(al.name, be.source)], right[(al.target, be.name)])
            p2 = (right[(al.source, be.name)], left[(al.name, be.target)])
            rels.append(((p1, Fraction(1)), (p2, Fraction(-1))))
    tag = ConstructionTag("tensor", factors=(a, b))
    return BoundPresentation(quiver, tuple(rels), a.cap + b.cap - 1, a.field, tag)


def triangular_matrix(a: BoundPresentation, n: int) -> BoundPresentation:
    if n < 1:
        raise PresentationError("triangular matrix size must be positive")
    t = tensor_product(a, linear_path_algebra(n, a.field))
    return t.with_tag(ConstructionTag("triangular", factors=(a,), n=n))


def radical_square_truncation(a: BoundPresentation) -> BoundPresentation:
    rels = tuple(((p, Fraction(1)),) for p in _paths_of_length(a.quiver, 2))
    return BoundPresentation(a.quiver, rels, 2, a.field, ConstructionTag("rad2", factors=(a,)))


def build_nakayama(r: int, cyclic: bool, length_cap: int, fld: Field | None = None) -> BoundPresentation:
    """Nakayama algebra whose paths of length ``length_cap`` vanish."""
    if r < 1:
        raise PresentationError("Nakayama algebra needs r >= 1")
    if length_cap < 2:
        raise PresentationError("length cap below 2 is not admissible")
    q = build_cyclic_quiver(r) if cyclic else build_linear_quiver(r)
    rels = tuple(((p, Fraction(1)),) for p in _paths_of_length(q, length_cap))
    tag = ConstructionTag("nakayama", params=(("r", r), ("cyclic", cyclic), ("cap", length_cap)))
    return BoundPresentation(q, rels, length_cap, fld or Field(), tag)


def build_truncated_polynomial(m: int, fld: Field | None = None) -> BoundPresentation:
    """``K[x]/(x^m)``."""
    if m < 2:
        raise PresentationError("truncated polynomial needs m >= 2")
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    rel = (((("x",) * m), Fraction(1)),)
    return BoundPresentation(q, (rel,), m, fld or Field(), ConstructionTag("local", params=(("m", m),)))


# -- predicates ------------------------------------------------------------

def vertex_count(a: FinDimAlgebra | BoundPresentation) -> int:
    q = a.quiver
    return len(q.vertices)


def is_local(a: FinDimAlgebra | BoundPresentation) -> bool:
    return vertex_count(a) == 1


def is_nakayama(a: FinDimAlgebra | BoundPresentation) -> bool:
    return is_linear_An_shape(a.quiver) or is_cyclic_shape(a.quiver)


def _as_algebra(a) -> FinDimAlgebra:
    return a if isinstance(a, FinDimAlgebra) else compute_algebra(a)


def is_path_algebra_An(a: FinDimAlgebra | BoundPresentation) -> bool:
    if not is_linear_An_shape(a.quiver):
        return False
    n = vertex_count(a)
    return _as_algebra(a).dim == n * (n + 1) // 2


def is_radical_square_zero(a: FinDimAlgebra | BoundPresentation) -> bool:
    return _as_algebra(a).is_radical_square_zero()
