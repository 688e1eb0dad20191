"""Modules over a bound quiver algebra, realised as quiver representations.

Right modules are covariant representations: an arrow ``a: i -> j`` carries a
matrix ``M_a`` of shape ``(dim M_j, dim M_i)`` and a path ``a.b`` acts as
``M_b @ M_a``. With this convention ``Hom(P(i), M) = M_i``.

A homomorphism ``M -> N`` is a tuple of per-vertex matrices ``(N_i x M_i)``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .algebra import FinDimAlgebra
from .field import Field

Hom = tuple  # tuple of per-vertex matrices


class DecompositionUnresolved(RuntimeError):
    """Fitting splitting found neither a split nor a certificate."""


class Representation:
    """A representation: one vector space per vertex, one matrix per arrow."""

    def __init__(self, algebra: FinDimAlgebra, dims, maps, check: bool = False):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(algebra.vertices):
            raise ValueError("dimension vector has the wrong length")
        fld = algebra.field
        out = []
        for k, m in enumerate(maps):
            s, t = algebra.arrow_src[k], algebra.arrow_tgt[k]
            shape = (self.dims[t], self.dims[s])
            if m is None:
                m = fld.zeros(*shape)
            elif not isinstance(m, np.ndarray) or m.dtype != fld.dtype:
                m = fld.array(m, shape=shape) if np.size(m) else fld.zeros(*shape)
            if m.shape != shape:
                raise ValueError(f"arrow {algebra.arrows[k].name}: expected {shape}, got {m.shape}")
            out.append(m)
        if len(out) != len(algebra.arrows):
            raise ValueError("one matrix per arrow is required")
        self.maps = tuple(out)
        if check:
            self.validate()

    # -- basics ----------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def path_matrix(self, start: int, arrows: tuple[str, ...]) -> np.ndarray:
        fld = self.field
        a = self.algebra
        cur = fld.eye(self.dims[start])
        for name in arrows:
            cur = fld.matmul(self.maps[a.aindex[name]], cur)
        return cur

    @cached_property
    def basis_mats(self) -> list[np.ndarray]:
        """Action matrices of the algebra's basis paths (prefix-shared)."""
        a = self.algebra
        fld = self.field
        cache: dict = {}
        out = []
        for b, (start, arr) in enumerate(a.basis):
            s = a.vindex[start]
            if not arr:
                m = fld.eye(self.dims[s])
            else:
                prev = cache.get((start, arr[:-1]))
                if prev is None:
                    prev = self.path_matrix(s, arr[:-1])
                m = fld.matmul(self.maps[a.aindex[arr[-1]]], prev)
            cache[(start, arr)] = m
            out.append(m)
        return out

    def validate(self) -> None:
        a = self.algebra
        fld = self.field
        for rel in a.presentation.relations:
            first = rel[0][0]
            s = a.arrow_src[a.aindex[first[0]]]
            t = a.arrow_tgt[a.aindex[rel[0][0][-1]]]
            acc = fld.zeros(self.dims[t], self.dims[s])
            for path, c in rel:
                acc = fld.reduce(acc + fld.scalar(c) * self.path_matrix(s, path))
            if not fld.is_zero(acc):
                raise ValueError("relation does not vanish on the representation")
        for path in a.cap_paths():
            s = a.arrow_src[a.aindex[path[0]]]
            if not fld.is_zero(self.path_matrix(s, path)):
                raise ValueError("a path beyond the nilpotency cap acts nontrivially")

    # -- serialisation ---------------------------------------------------
    def to_json(self) -> dict:
        fld = self.field
        def conv(x):
            return str(x) if fld.p is None else int(x)
        return {
            "field": fld.spec(),
            "vertices": list(self.algebra.vertices),
            "dim_vector": list(self.dims),
            "arrows": {
                arr.name: [[conv(x) for x in row] for row in m.tolist()]
                for arr, m in zip(self.algebra.arrows, self.maps)
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, algebra: FinDimAlgebra, data: dict) -> "Representation":
        if data["field"] != algebra.field.spec():
            raise ValueError("field mismatch")
        dims = data["dim_vector"]
        maps = []
        for k, arr in enumerate(algebra.arrows):
            s, t = algebra.arrow_src[k], algebra.arrow_tgt[k]
            rows = data["arrows"][arr.name]
            maps.append(algebra.field.array(rows, shape=(dims[t], dims[s])) if dims[t] * dims[s] else None)
        return cls(algebra, dims, maps, check=True)


def zero_rep(algebra: FinDimAlgebra) -> Representation:
    return Representation(algebra, [0] * len(algebra.vertices), [None] * len(algebra.arrows))


# -- standard modules ------------------------------------------------------

def projective(algebra: FinDimAlgebra, i: int) -> Representation:
    """``P(i) = e_i A``; at vertex k its basis is the paths from i to k."""
    cache = algebra.__dict__.setdefault("_projectives", {})
    if i not in cache:
        cache[i] = _build_projective(algebra, i)
    return cache[i]


def _build_projective(algebra: FinDimAlgebra, i: int) -> Representation:
    pc = algebra.piece
    dims = [len(pc[i][k]) for k in range(len(algebra.vertices))]
    maps = []
    for k, rm in enumerate(algebra.right_arrow_mats):
        s, t = algebra.arrow_src[k], algebra.arrow_tgt[k]
        maps.append(rm[np.ix_(pc[i][t], pc[i][s])])
    return Representation(algebra, dims, maps)


def injective(algebra: FinDimAlgebra, i: int) -> Representation:
    """``I(i) = D(A e_i)``."""
    pc = algebra.piece
    dims = [len(pc[k][i]) for k in range(len(algebra.vertices))]
    maps = []
    for k, lm in enumerate(algebra.left_arrow_mats):
        s, t = algebra.arrow_src[k], algebra.arrow_tgt[k]
        maps.append(lm[np.ix_(pc[s][i], pc[t][i])].T.copy())
    return Representation(algebra, dims, maps)


def simple(algebra: FinDimAlgebra, i: int) -> Representation:
    dims = [1 if k == i else 0 for k in range(len(algebra.vertices))]
    return Representation(algebra, dims, [None] * len(algebra.arrows))


def regular_module(algebra: FinDimAlgebra) -> Representation:
    return direct_sum([projective(algebra, i) for i in range(len(algebra.vertices))])


def direct_sum(reps: list[Representation]) -> Representation:
    if not reps:
        raise ValueError("empty direct sum needs an algebra; use zero_rep")
    a = reps[0].algebra
    fld = a.field
    dims = [sum(r.dims[i] for r in reps) for i in range(len(a.vertices))]
    maps = []
    for k in range(len(a.arrows)):
        s, t = a.arrow_src[k], a.arrow_tgt[k]
        m = fld.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            m[ro:ro + r.dims[t], co:co + r.dims[s]] = r.maps[k]
            ro += r.dims[t]
            co += r.dims[s]
        maps.append(m)
    return Representation(a, dims, maps)


def dual(rep: Representation, opposite: FinDimAlgebra) -> Representation:
    """``D M`` as a representation over the opposite algebra (transposed maps)."""
    return Representation(opposite, rep.dims, [m.T.copy() for m in rep.maps])


# -- Hom spaces --------------------------------------------------------------

def _hom_system(m: Representation, n: Representation):
    a = m.algebra
    fld = a.field
    nv = len(a.vertices)
    sizes = [n.dims[i] * m.dims[i] for i in range(nv)]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    blocks = []
    for k in range(len(a.arrows)):
        s, t = a.arrow_src[k], a.arrow_tgt[k]
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        blk = fld.zeros(rows, int(offs[-1]))
        if sizes[s]:
            blk[:, offs[s]:offs[s + 1]] = np.kron(n.maps[k], fld.eye(m.dims[s]))
        if sizes[t]:
            blk[:, offs[t]:offs[t + 1]] = fld.reduce(
                blk[:, offs[t]:offs[t + 1]] - np.kron(fld.eye(n.dims[t]), m.maps[k].T)
            )
        blocks.append(blk)
    if blocks:
        system = fld.reduce(np.concatenate(blocks, axis=0))
    else:
        system = fld.zeros(0, int(offs[-1]))
    return system, offs


def _hom_system_presented(m: Representation, n: Representation):
    """Linear system for ``Hom(M, N)`` in the images of M's top generators.

    A map is fixed by where it sends the generators of ``P0``; it descends to
    ``M`` iff it kills the relations ``P1 -> P0``. Unknowns are
    ``sum_k dim N_{p0[k]}`` instead of ``sum_i dim N_i * dim M_i``.
    """
    pres = minimal_projective_presentation(m)
    a = m.algebra
    fld = m.field
    bm = n.basis_mats
    cols = [n.dims[i] for i in pres.p0]
    offs = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    rows = []
    for l, j in enumerate(pres.p1):
        if n.dims[j] == 0:
            continue
        row = fld.zeros(n.dims[j], int(offs[-1]))
        for k, i in enumerate(pres.p0):
            lam = pres.elements[k][l]
            blk = fld.zeros(n.dims[j], n.dims[i])
            for b in a.piece[i][j]:
                if lam[b] != 0:
                    blk = blk + lam[b] * bm[b]
            row[:, offs[k]:offs[k + 1]] = fld.reduce(blk)
        rows.append(row)
    system = np.concatenate(rows, axis=0) if rows else fld.zeros(0, int(offs[-1]))
    return pres, system, offs


def _presented_hom(m: Representation, n: Representation, pres, x: np.ndarray) -> Hom:
    """The map ``M -> N`` sending the k-th top generator to ``x[offs[k]:...]``."""
    fld = m.field
    gens = []
    off = 0
    for i in pres.p0:
        gens.append((i, x[off:off + n.dims[i]]))
        off += n.dims[i]
    big = map_from_projectives(n, gens)
    return tuple(fld.matmul(big[j], pres.section(fld)[j]) for j in range(len(m.dims)))


def hom_space(m: Representation, n: Representation) -> list[Hom]:
    """Basis of ``Hom(M, N)`` as tuples of per-vertex matrices."""
    if m.is_zero() or n.is_zero():
        return []
    pres, system, offs = _hom_system_presented(m, n)
    if offs[-1] == 0:
        return []
    null = m.field.nullspace(system)
    return [_presented_hom(m, n, pres, null[:, j]) for j in range(null.shape[1])]


def hom_dim(m: Representation, n: Representation) -> int:
    if m.is_zero() or n.is_zero():
        return 0
    _, system, offs = _hom_system_presented(m, n)
    if offs[-1] == 0:
        return 0
    return int(offs[-1]) - m.field.rank(system)


def hom_vector(h: Hom) -> np.ndarray:
    parts = [x.reshape(-1) for x in h]
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts)


def compose(g: Hom, f: Hom, fld: Field) -> Hom:
    """``g o f``."""
    return tuple(fld.matmul(gi, fi) for gi, fi in zip(g, f))


def identity_hom(m: Representation) -> Hom:
    return tuple(m.field.eye(d) for d in m.dims)


def is_homomorphism(h: Hom, m: Representation, n: Representation) -> bool:
    a = m.algebra
    fld = m.field
    for k in range(len(a.arrows)):
        s, t = a.arrow_src[k], a.arrow_tgt[k]
        lhs = fld.matmul(n.maps[k], h[s])
        rhs = fld.matmul(h[t], m.maps[k])
        if np.any(lhs != rhs):
            return False
    return True


def linear_combination(homs: list[Hom], coeffs, fld: Field) -> Hom:
    out = [fld.zeros(*x.shape) for x in homs[0]]
    for h, c in zip(homs, coeffs):
        if c == 0:
            continue
        for i, x in enumerate(h):
            out[i] = fld.reduce(out[i] + c * x)
    return tuple(out)


def total_matrix(h: Hom, fld: Field) -> np.ndarray:
    """Block-diagonal matrix of a per-vertex map."""
    rows = sum(x.shape[0] for x in h)
    cols = sum(x.shape[1] for x in h)
    out = fld.zeros(rows, cols)
    r = c = 0
    for x in h:
        out[r:r + x.shape[0], c:c + x.shape[1]] = x
        r += x.shape[0]
        c += x.shape[1]
    return out


# -- sub- and quotient modules ---------------------------------------------

def _left_inverse(basis: np.ndarray, fld: Field):
    """Rows selecting an invertible square block and its inverse."""
    if basis.shape[1] == 0:
        return [], fld.zeros(0, 0)
    _, rows = fld.rref(basis.T)
    return rows, fld.inverse(basis[rows, :])


def submodule(m: Representation, bases: list[np.ndarray]) -> Representation:
    """Subrepresentation spanned by arrow-stable column bases."""
    a = m.algebra
    fld = m.field
    inv = [_left_inverse(b, fld) for b in bases]
    maps = []
    for k in range(len(a.arrows)):
        s, t = a.arrow_src[k], a.arrow_tgt[k]
        if bases[s].shape[1] == 0 or bases[t].shape[1] == 0:
            maps.append(None)
            continue
        img = fld.matmul(m.maps[k], bases[s])
        rows, li = inv[t]
        maps.append(fld.matmul(li, img[rows, :]))
    return Representation(a, [b.shape[1] for b in bases], maps)


def kernel(f: Hom, m: Representation) -> tuple[Representation, list[np.ndarray]]:
    """Kernel of ``f: M -> ?`` with its inclusion bases."""
    fld = m.field
    bases = [fld.nullspace(fi) if fi.shape[0] else fld.eye(fi.shape[1]) for fi in f]
    return submodule(m, bases), bases


def image_bases(f: Hom, fld: Field) -> list[np.ndarray]:
    return [fld.colspace(fi) for fi in f]


def quotient(n: Representation, bases: list[np.ndarray]) -> tuple[Representation, list[np.ndarray]]:
    """``N / S`` for an arrow-stable subspace; returns the module and projections."""
    a = n.algebra
    fld = n.field
    proj = []
    free = []
    for b in bases:
        q, fr = fld.complement_coords(b)
        proj.append(q)
        free.append(fr)
    maps = []
    for k in range(len(a.arrows)):
        s, t = a.arrow_src[k], a.arrow_tgt[k]
        if not free[s] or not free[t]:
            maps.append(None)
            continue
        maps.append(fld.matmul(proj[t], n.maps[k][:, free[s]]))
    return Representation(a, [len(fr) for fr in free], maps), proj


def cokernel(f: Hom, n: Representation) -> tuple[Representation, list[np.ndarray]]:
    return quotient(n, image_bases(f, n.field))


# -- projective presentations ------------------------------------------------

def radical_bases(m: Representation) -> list[np.ndarray]:
    a = m.algebra
    fld = m.field
    out = []
    for i in range(len(a.vertices)):
        ims = [m.maps[k] for k in range(len(a.arrows)) if a.arrow_tgt[k] == i and m.maps[k].shape[1]]
        if ims:
            out.append(fld.colspace(np.concatenate(ims, axis=1)))
        else:
            out.append(fld.zeros(m.dims[i], 0))
    return out


def top_generators(m: Representation) -> list[tuple[int, np.ndarray]]:
    """Vectors whose images span the top ``M / rad M`` (deterministic choice)."""
    fld = m.field
    gens = []
    for i, rb in enumerate(radical_bases(m)):
        _, free = fld.complement_coords(rb)
        for f in free:
            v = fld.zeros(m.dims[i], 1)[:, 0]
            v[f] = 1
            gens.append((i, v))
    return gens


def top_dims(m: Representation) -> tuple[int, ...]:
    counts = Counter(i for i, _ in top_generators(m))
    return tuple(counts[i] for i in range(len(m.dims)))


def map_from_projectives(m: Representation, gens: list[tuple[int, np.ndarray]]) -> Hom:
    """The map ``(+) P(i_k) -> M`` sending the k-th top idempotent to ``v_k``."""
    a = m.algebra
    fld = m.field
    bm = m.basis_mats
    out = []
    for j in range(len(a.vertices)):
        cols = []
        for i, v in gens:
            for b in a.piece[i][j]:
                cols.append(fld.matmul(bm[b], v.reshape(-1, 1)))
        if cols:
            out.append(np.concatenate(cols, axis=1))
        else:
            out.append(fld.zeros(m.dims[j], 0))
    return tuple(out)


def projective_sum(algebra: FinDimAlgebra, verts: list[int]) -> Representation:
    if not verts:
        return zero_rep(algebra)
    return direct_sum([projective(algebra, i) for i in verts])


@dataclass
class Presentation:
    """``P1 --maps--> P0 --cover--> M -> 0`` with ``P0 = (+) P(p0[k])``.

    ``elements[k][l]`` is the algebra element of ``e_{p0[k]} A e_{p1[l]}``
    giving the component ``P(p1[l]) -> P(p0[k])`` (left multiplication).
    """

    p0: list[int]
    p1: list[int]
    elements: list[list[np.ndarray]]
    cover: Hom
    _section: Hom | None = dc_field(default=None, repr=False, compare=False)

    def section(self, fld: Field) -> Hom:
        """Per-vertex right inverses of the cover ``P0 -> M``."""
        if self._section is None:
            self._section = tuple(
                fld.solve(c, fld.eye(c.shape[0])) if c.shape[0] else fld.zeros(c.shape[1], 0)
                for c in self.cover
            )
        return self._section

    def g_vector(self, n: int) -> tuple[int, ...]:
        c0, c1 = Counter(self.p0), Counter(self.p1)
        return tuple(c0[i] - c1[i] for i in range(n))


def minimal_projective_presentation(m: Representation) -> Presentation:
    cached = m.__dict__.get("_presentation")
    if cached is not None:
        return cached
    if m.is_zero():
        raise ValueError("the zero module has no minimal presentation")
    a = m.algebra
    fld = m.field
    gens0 = top_generators(m)
    cover = map_from_projectives(m, gens0)
    p0 = [i for i, _ in gens0]
    big = projective_sum(a, p0)
    ker, kbases = kernel(cover, big)
    p1: list[int] = []
    elements: list[list[np.ndarray]] = [[] for _ in p0]
    if not ker.is_zero():
        # offsets of each P(p0[k]) inside P0 at every vertex
        for j, w in top_generators(ker):
            vec = fld.matmul(kbases[j], w.reshape(-1, 1))[:, 0]
            p1.append(j)
            off = 0
            for k, i in enumerate(p0):
                idx = a.piece[i][j]
                lam = fld.zeros(1, a.dim)[0]
                lam[idx] = vec[off:off + len(idx)]
                off += len(idx)
                elements[k].append(lam)
    out = Presentation(p0, p1, elements, cover)
    m._presentation = out
    return out


def g_vector(m: Representation) -> tuple[int, ...]:
    """``#P0 - #P1`` per vertex for a minimal presentation.

    Only dimensions are needed: the kernel of the projective cover is kept as
    column bases inside ``P0`` and its radical is spanned by arrow images.
    """
    a = m.algebra
    fld = m.field
    nv = len(a.vertices)
    if m.is_zero():
        return (0,) * nv
    gens0 = top_generators(m)
    p0 = [i for i, _ in gens0]
    big = projective_sum(a, p0)
    cover = map_from_projectives(m, gens0)
    kb = [fld.nullspace(c) if c.shape[0] else fld.eye(c.shape[1]) for c in cover]
    top1 = []
    for j in range(nv):
        ims = [
            fld.matmul(big.maps[k], kb[a.arrow_src[k]])
            for k in range(len(a.arrows))
            if a.arrow_tgt[k] == j and kb[a.arrow_src[k]].shape[1]
        ]
        r = fld.rank(np.concatenate(ims, axis=1)) if ims else 0
        top1.append(kb[j].shape[1] - r)
    c0 = Counter(p0)
    return tuple(c0[i] - top1[i] for i in range(nv))


def nakayama_map(algebra: FinDimAlgebra, pres: Presentation) -> tuple[Representation, Representation, Hom]:
    """``nu(P1) -> nu(P0)`` built from the presentation's algebra elements."""
    fld = algebra.field
    pc = algebra.piece
    nv = len(algebra.vertices)
    src = direct_sum([injective(algebra, j) for j in pres.p1]) if pres.p1 else zero_rep(algebra)
    tgt = direct_sum([injective(algebra, i) for i in pres.p0]) if pres.p0 else zero_rep(algebra)
    rmats = [[algebra.right_mult_matrix(lam) for lam in row] for row in pres.elements]
    out = []
    for v in range(nv):
        rows = []
        for k, i in enumerate(pres.p0):
            blocks = []
            for l, j in enumerate(pres.p1):
                # nu of left multiplication is the dual of right multiplication on e_v A
                r = rmats[k][l][np.ix_(pc[v][j], pc[v][i])]
                blocks.append(r.T)
            rows.append(np.concatenate(blocks, axis=1) if blocks else fld.zeros(len(pc[v][i]), 0))
        if rows:
            out.append(np.concatenate(rows, axis=0))
        else:
            out.append(fld.zeros(0, src.dims[v]))
    return src, tgt, tuple(out)


def ar_translate(m: Representation, pres: Presentation | None = None) -> Representation:
    """``tau M = ker(nu P1 -> nu P0)``; projective summands contribute nothing."""
    if m.is_zero():
        return m
    if pres is None:
        pres = minimal_projective_presentation(m)
    if not pres.p1:
        return zero_rep(m.algebra)
    src, _, f = nakayama_map(m.algebra, pres)
    tau, _ = kernel(f, src)
    return tau


# -- endomorphisms, Fitting splitting, isomorphism ----------------------------

def _local_certificate(m: Representation, ends: list[Hom]) -> list[np.ndarray] | None:
    """Radical basis (as total matrices) if End(M)/rad is the ground field.

    Each basis endomorphism is shifted by its would-be eigenvalue; the shifted
    maps must generate a nilpotent algebra, checked by pushing ``M`` down the
    chain ``M, JM, J^2 M, ...``.
    """
    fld = m.field
    d = m.dim
    mats = [total_matrix(h, fld) for h in ends]
    rad = []
    for x in mats:
        lam = _single_eigenvalue(x, fld, d)
        if lam is None:
            return None
        y = fld.reduce(x - lam * fld.eye(d))
        if not fld.is_zero(y):
            rad.append(y)
    span = fld.eye(d)
    for _ in range(d + 1):
        if span.shape[1] == 0 or not rad:
            return rad
        span = fld.colspace(np.concatenate([fld.matmul(y, span) for y in rad], axis=1))
    return rad if span.shape[1] == 0 else None


def _single_eigenvalue(x: np.ndarray, fld: Field, d: int):
    if fld.p is None or d % fld.p != 0:
        tr = fld.reduce(np.trace(x)) if fld.p is not None else np.trace(x)
        return fld.reduce(np.array([tr * fld.inv(d)]))[0] if fld.p is not None else tr / d
    # characteristic divides the dimension: search the small field directly
    for lam in range(fld.p):
        if fld.rank(fld.reduce(x - lam * fld.eye(d))) < d:
            return lam
    return None


def end_radical(m: Representation) -> list[Hom] | None:
    """Basis of the radical of a local endomorphism ring with residue field K."""
    ends = hom_space(m, m)
    cert = _local_certificate(m, ends)
    if cert is None:
        return None
    fld = m.field
    out = []
    for h in ends:
        x = total_matrix(h, fld)
        lam = _single_eigenvalue(x, fld, m.dim)
        if lam is None:
            return None
        y = tuple(fld.reduce(hi - lam * fld.eye(hi.shape[0])) for hi in h)
        if any(np.any(yi != 0) for yi in y):
            out.append(y)
    # drop dependent shifts (identity shifts to zero, others may coincide)
    if not out:
        return []
    vecs = np.stack([hom_vector(h) for h in out])
    _, piv = fld.rref(vecs.T)
    return [out[k] for k in piv]


def brick_quotient(m: Representation) -> Representation:
    """``M / rad(End M) M`` for an indecomposable ``M``.

    For tau-rigid ``M`` this is the brick attached to it under the
    brick / tau-rigid correspondence.
    """
    rad = end_radical(m)
    if rad is None:
        raise DecompositionUnresolved("module is not certified indecomposable")
    fld = m.field
    bases = []
    for i, d in enumerate(m.dims):
        cols = [h[i] for h in rad if d and h[i].shape[1]]
        bases.append(fld.colspace(np.concatenate(cols, axis=1)) if cols else fld.zeros(d, 0))
    return quotient(m, bases)[0]


def is_certified_indecomposable(m: Representation) -> bool:
    if m.is_zero():
        return False
    return _local_certificate(m, hom_space(m, m)) is not None


def _min_poly_roots(x: np.ndarray, v: np.ndarray, fld: Field) -> list:
    """Roots in the ground field of the minimal polynomial of ``v`` under ``x``."""
    d = x.shape[0]
    krylov = [v.reshape(-1, 1)]
    while True:
        nxt = fld.matmul(x, krylov[-1])
        mat = np.concatenate(krylov, axis=1)
        if fld.rank(np.concatenate([mat, nxt], axis=1)) == mat.shape[1] or len(krylov) > d:
            coeffs = fld.solve(mat, nxt)[:, 0]  # nxt = sum c_k x^k v
            break
        krylov.append(nxt)
    # monic: t^m - sum c_k t^k
    poly = [1] + [fld.reduce(np.array([-c]))[0] if fld.p is not None else -c for c in coeffs[::-1]]
    if fld.p is not None and fld.p < 10**6:
        xs = np.arange(fld.p, dtype=np.int64)
        val = np.zeros(fld.p, dtype=np.int64)
        for c in poly:
            val = (val * xs + int(c)) % fld.p
        return [int(r) for r in np.nonzero(val == 0)[0]]
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(str(c)) * t ** (len(poly) - 1 - k) for k, c in enumerate(poly))
    return [r for r in sympy.Poly(expr, t).ground_roots()] if fld.p is None else []


def _fitting_split(m: Representation, rng: np.random.Generator, retries: int):
    fld = m.field
    ends = hom_space(m, m)
    if _local_certificate(m, ends) is not None:
        return None
    d = m.dim
    for _ in range(retries):
        coeffs = fld.random(rng, len(ends))
        phi = linear_combination(ends, coeffs, fld)
        x = total_matrix(phi, fld)
        v = fld.random(rng, d)
        roots = _min_poly_roots(x, v, fld)
        if not roots:
            continue
        lam = roots[int(rng.integers(0, len(roots)))]
        lam = fld.scalar(lam) if fld.p is None else lam
        psi = [fld.reduce(p - lam * fld.eye(p.shape[0])) for p in phi]
        power = []
        for p in psi:
            acc = fld.eye(p.shape[0])
            base, e = p, d
            while e:
                if e & 1:
                    acc = fld.matmul(acc, base)
                base = fld.matmul(base, base)
                e >>= 1
            power.append(acc)
        kb = [fld.nullspace(p) if p.shape[0] else fld.zeros(0, 0) for p in power]
        kdim = sum(b.shape[1] for b in kb)
        if 0 < kdim < d:
            ib = [fld.colspace(p) if p.shape[0] else fld.zeros(0, 0) for p in power]
            return submodule(m, kb), submodule(m, ib)
    raise DecompositionUnresolved(
        f"no Fitting split found for a module of dimension vector {m.dims} after {retries} tries"
    )


def indecomposable_summands(m: Representation, seed: int = 0, retries: int = 40) -> list[Representation]:
    rng = np.random.default_rng(seed)
    out = []
    stack = [m]
    while stack:
        x = stack.pop()
        if x.is_zero():
            continue
        split = _fitting_split(x, rng, retries)
        if split is None:
            out.append(x)
        else:
            stack.extend(reversed(split))
    return out


def is_isomorphic(m: Representation, n: Representation, seed: int = 0, tries: int = 8) -> bool:
    if m.dims != n.dims:
        return False
    if m.is_zero():
        return True
    if top_dims(m) != top_dims(n):
        return False
    homs = hom_space(m, n)
    if not homs:
        return False
    fld = m.field
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        h = linear_combination(homs, fld.random(rng, len(homs)), fld)
        if all(fld.is_invertible(x) for x in h if x.shape[0]):
            return True
    return False


def decompose(m: Representation, seed: int = 0, retries: int = 40) -> list[tuple[Representation, int]]:
    """Indecomposable summands grouped by isomorphism class."""
    groups: list[list] = []
    for x in indecomposable_summands(m, seed, retries):
        for g in groups:
            if is_isomorphic(g[0], x, seed):
                g[1] += 1
                break
        else:
            groups.append([x, 1])
    return [(g[0], g[1]) for g in groups]


def is_brick(m: Representation) -> bool:
    if m.is_zero():
        raise ValueError("the zero module is not a brick candidate")
    return hom_dim(m, m) == 1


def in_fac(m: Representation, x: Representation, k: int | None = None) -> bool:
    """Whether ``X`` is a quotient of some ``M^k``: the evaluation map is onto.

    ``k`` is accepted for audit logs only; surjectivity of the evaluation map
    does not depend on it.
    """
    if x.is_zero():
        return True
    homs = hom_space(m, x)
    return evaluation_surjective(homs, x)


def evaluation_surjective(homs: list[Hom], x: Representation) -> bool:
    fld = x.field
    for i, d in enumerate(x.dims):
        if d == 0:
            continue
        cols = [h[i] for h in homs if h[i].shape[1]]
        if not cols or fld.rank(np.concatenate(cols, axis=1)) < d:
            return False
    return True


def is_projective(m: Representation) -> bool:
    return not m.is_zero() and not minimal_projective_presentation(m).p1
