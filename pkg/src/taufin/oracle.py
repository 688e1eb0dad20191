"""Brute-force count of support tau-tilting pairs over the field with two elements.

Deliberately independent of the main pipeline: no Hom solver, no projective
presentations, no tau. Everything is enumeration plus GF(2) elimination.

* every representation with dimension vector bounded by the regular module's is
  enumerated and checked against the relations;
* isomorphism classes are formed by exhaustive base-change orbits;
* indecomposability is decided by listing all endomorphisms and looking for a
  nontrivial idempotent;
* ``Hom(X, tau Y) = 0`` is tested as ``Ext^1(Y, Q) = 0`` for every quotient ``Q``
  of ``X`` (the image of a nonzero map ``X -> tau Y`` is such a quotient), with
  ``Ext^1`` computed from block upper-triangular extensions.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from .algebra import FinDimAlgebra

MAX_DIM = 6
MAX_ENUM = 1 << 18  # representations per dimension vector
MAX_GROUP = 1 << 20  # base-change group order per dimension vector


class OracleDomainError(ValueError):
    """The algebra lies outside the oracle's hard limits."""


# -- GF(2) linear algebra ----------------------------------------------------

def gf2_rank(a: np.ndarray) -> int:
    a = (np.asarray(a, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape if a.ndim == 2 else (0, 0)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        r += 1
    return r


def gf2_nullspace(a: np.ndarray) -> np.ndarray:
    """Rows spanning ``{x : a x = 0}``."""
    a = (np.asarray(a, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        piv.append(c)
        r += 1
    free = [c for c in range(cols) if c not in piv]
    out = np.zeros((len(free), cols), dtype=np.uint8)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = a[i, f]
    return out


def _general_linear(d: int) -> np.ndarray:
    if d == 0:
        return np.zeros((1, 0, 0), dtype=np.uint8)
    allm = ((np.arange(1 << (d * d))[:, None] >> np.arange(d * d)) & 1).astype(np.uint8)
    allm = allm.reshape(-1, d, d)
    keep = [m for m in allm if gf2_rank(m) == d]
    return np.stack(keep)


def _gf2_inverse(m: np.ndarray) -> np.ndarray:
    d = m.shape[0]
    aug = np.concatenate([m, np.eye(d, dtype=np.uint8)], axis=1)
    for c in range(d):
        k = c + np.nonzero(aug[c:, c])[0][0]
        aug[[c, k]] = aug[[k, c]]
        hit = np.nonzero(aug[:, c])[0]
        hit = hit[hit != c]
        aug[hit] ^= aug[c]
    return aug[:, d:]


def _mm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched GF(2) matrix product."""
    return (np.matmul(a.astype(np.int64), b.astype(np.int64)) & 1).astype(np.uint8)


# -- the algebra as seen by the oracle ------------------------------------------

class _Quiver2:
    def __init__(self, algebra: FinDimAlgebra):
        pres = algebra.presentation
        q = pres.quiver
        self.n = len(q.vertices)
        vi = {v: k for k, v in enumerate(q.vertices)}
        self.arrows = [(vi[a.source], vi[a.target]) for a in q.arrows]
        names = {a.name: k for k, a in enumerate(q.arrows)}
        # relations as lists of (coefficient mod 2, arrow index path)
        self.relations = []
        for rel in pres.relations:
            terms = []
            for path, c in rel:
                if c.denominator % 2 == 0:
                    raise OracleDomainError("relation coefficient is undefined modulo 2")
                if c.numerator % 2:
                    terms.append(tuple(names[x] for x in path))
            if terms:
                self.relations.append(terms)
        # every path of length cap must vanish
        cap = pres.cap
        paths = [(a,) for a in range(len(self.arrows))]
        for _ in range(cap - 1):
            paths = [p + (b,) for p in paths for b in range(len(self.arrows))
                     if self.arrows[p[-1]][1] == self.arrows[b][0]]
        self.relations.extend([p] for p in paths)
        self.bound = [sum(len(algebra.piece[i][j]) for i in range(self.n)) for j in range(self.n)]

    def eval_path(self, mats, path, dims):
        """Batched path matrix; ``mats[a]`` has shape (N, t, s)."""
        cur = None
        for a in path:
            cur = mats[a] if cur is None else _mm(mats[a], cur)
        return cur


def _satisfies(q: _Quiver2, mats, dims, batch: int) -> np.ndarray:
    ok = np.ones(batch, dtype=bool)
    for rel in q.relations:
        s = q.arrows[rel[0][0]][0]
        t = q.arrows[rel[0][-1]][1]
        if dims[s] == 0 or dims[t] == 0:
            continue
        acc = np.zeros((batch, dims[t], dims[s]), dtype=np.uint8)
        for path in rel:
            acc ^= q.eval_path(mats, path, dims)
        ok &= ~acc.reshape(batch, -1).any(axis=1)
    return ok


class _Rep:
    __slots__ = ("dims", "mats")

    def __init__(self, dims, mats):
        self.dims = tuple(dims)
        self.mats = [np.asarray(m, dtype=np.uint8) for m in mats]

    @property
    def total(self):
        return sum(self.dims)


def _enumerate_classes(q: _Quiver2, dims) -> list[_Rep]:
    shapes = [(dims[t], dims[s]) for s, t in q.arrows]
    sizes = [a * b for a, b in shapes]
    bits = sum(sizes)
    if (1 << bits) > MAX_ENUM:
        raise OracleDomainError(f"too many representations of dimension vector {tuple(dims)}")
    n = 1 << bits
    flat = ((np.arange(n, dtype=np.int64)[:, None] >> np.arange(bits)) & 1).astype(np.uint8)
    mats, off = [], 0
    for (r, c), sz in zip(shapes, sizes):
        mats.append(flat[:, off:off + sz].reshape(n, r, c))
        off += sz
    ok = _satisfies(q, mats, dims, n)
    codes = np.nonzero(ok)[0]
    groups = [_general_linear(d) for d in dims]
    order = int(np.prod([len(g) for g in groups]))
    if order > MAX_GROUP:
        raise OracleDomainError("base-change group too large")
    inverses = [np.stack([_gf2_inverse(g) for g in grp]) if grp.shape[1] else grp for grp in groups]
    combos = np.array(list(itertools.product(*[range(len(g)) for g in groups])), dtype=np.int64)
    weights = (1 << np.arange(bits, dtype=np.int64))
    seen: set[int] = set()
    reps = []
    for code in codes:
        code = int(code)
        if code in seen:
            continue
        rep = [m[code] for m in mats]
        # orbit: g_t M_a g_s^{-1} for every group element
        parts = []
        for (s, t), m in zip(q.arrows, rep):
            if m.size == 0:
                continue
            gt = groups[t][combos[:, t]]
            gs_inv = inverses[s][combos[:, s]]
            img = _mm(_mm(gt, np.broadcast_to(m, (len(combos),) + m.shape)), gs_inv)
            parts.append(img.reshape(len(combos), -1))
        if parts:
            orbit = np.concatenate(parts, axis=1).astype(np.int64) @ weights
            seen.update(int(x) for x in np.unique(orbit))
        else:
            seen.add(code)
        reps.append(_Rep(dims, rep))
    return reps


# -- Hom, End, Ext over GF(2) ---------------------------------------------------

def _hom_system(q: _Quiver2, m: _Rep, x: _Rep) -> tuple[np.ndarray, list[int]]:
    """Linear system for maps ``M -> X``; unknowns are per-vertex matrices."""
    sizes = [x.dims[i] * m.dims[i] for i in range(q.n)]
    offs = [0] + list(itertools.accumulate(sizes))
    rows = []
    for k, (s, t) in enumerate(q.arrows):
        for r in range(x.dims[t]):
            for c in range(m.dims[s]):
                eq = np.zeros(offs[-1], dtype=np.uint8)
                # (X_a phi_s)[r, c] = sum_j X_a[r, j] phi_s[j, c]
                for j in range(x.dims[s]):
                    if x.mats[k][r, j]:
                        eq[offs[s] + j * m.dims[s] + c] ^= 1
                # (phi_t M_a)[r, c] = sum_j phi_t[r, j] M_a[j, c]
                for j in range(m.dims[t]):
                    if m.mats[k][j, c]:
                        eq[offs[t] + r * m.dims[t] + j] ^= 1
                rows.append(eq)
    a = np.stack(rows) if rows else np.zeros((0, offs[-1]), dtype=np.uint8)
    return a, offs


def _endomorphisms(q: _Quiver2, m: _Rep) -> list[list[np.ndarray]]:
    a, offs = _hom_system(q, m, m)
    basis = gf2_nullspace(a) if a.shape[0] else np.eye(offs[-1], dtype=np.uint8)
    if len(basis) > 16:
        raise OracleDomainError("endomorphism ring too large to enumerate")
    out = []
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        vec = np.zeros(offs[-1], dtype=np.uint8)
        for c, b in zip(coeffs, basis):
            if c:
                vec ^= b
        out.append([vec[offs[i]:offs[i + 1]].reshape(m.dims[i], m.dims[i]) for i in range(q.n)])
    return out


def _is_indecomposable(q: _Quiver2, m: _Rep) -> bool:
    for e in _endomorphisms(q, m):
        zero = all(not x.any() for x in e)
        ident = all(np.array_equal(x, np.eye(len(x), dtype=np.uint8)) for x in e)
        if zero or ident:
            continue
        if all(np.array_equal(_mm(x, x), x) for x in e):
            return False
    return True


def _ext1_dim(q: _Quiver2, m: _Rep, x: _Rep) -> int:
    """``dim Ext^1(M, X)`` via extensions ``[[X_a, h_a], [0, M_a]]``."""
    shapes = [(x.dims[t], m.dims[s]) for s, t in q.arrows]
    sizes = [a * b for a, b in shapes]
    offs = [0] + list(itertools.accumulate(sizes))
    nvar = offs[-1]
    if nvar == 0:
        return 0

    def block(h):
        mats = []
        for k, (s, t) in enumerate(q.arrows):
            top = np.concatenate([x.mats[k], h[k]], axis=1)
            bot = np.concatenate([np.zeros((m.dims[t], x.dims[s]), dtype=np.uint8), m.mats[k]], axis=1)
            mats.append(np.concatenate([top, bot], axis=0)[None])
        return mats

    def unpack(vec):
        return [vec[offs[k]:offs[k + 1]].reshape(shapes[k]) for k in range(len(q.arrows))]

    dims_e = [x.dims[i] + m.dims[i] for i in range(q.n)]
    cols = []
    for v in range(nvar):
        vec = np.zeros(nvar, dtype=np.uint8)
        vec[v] = 1
        mats = block(unpack(vec))
        out = []
        for rel in q.relations:
            s = q.arrows[rel[0][0]][0]
            t = q.arrows[rel[0][-1]][1]
            if dims_e[s] == 0 or dims_e[t] == 0:
                continue
            acc = np.zeros((dims_e[t], dims_e[s]), dtype=np.uint8)
            for path in rel:
                acc ^= q.eval_path(mats, path, dims_e)[0]
            # off-diagonal block is linear in h; diagonal blocks vanish already
            out.append(acc[:x.dims[t], x.dims[s]:].reshape(-1))
        cols.append(np.concatenate(out) if out else np.zeros(0, dtype=np.uint8))
    cocycle_eqs = np.stack(cols, axis=1)
    z = nvar - gf2_rank(cocycle_eqs) if cocycle_eqs.shape[0] else nvar
    # coboundaries h_a = X_a phi_s + phi_t M_a
    bsz = [x.dims[i] * m.dims[i] for i in range(q.n)]
    boffs = [0] + list(itertools.accumulate(bsz))
    bcols = []
    for v in range(boffs[-1]):
        i = next(k for k in range(q.n) if boffs[k] <= v < boffs[k + 1])
        phi = np.zeros(bsz[i], dtype=np.uint8)
        phi[v - boffs[i]] = 1
        phi = phi.reshape(x.dims[i], m.dims[i])
        h = []
        for k, (s, t) in enumerate(q.arrows):
            hk = np.zeros(shapes[k], dtype=np.uint8)
            if s == i:
                hk ^= _mm(x.mats[k], phi)
            if t == i:
                hk ^= _mm(phi, m.mats[k])
            h.append(hk.reshape(-1))
        bcols.append(np.concatenate(h))
    b = gf2_rank(np.stack(bcols, axis=1)) if bcols else 0
    return z - b


def _subspaces(d: int) -> list[frozenset[int]]:
    """All subspaces of GF(2)^d as sets of bitmask vectors."""
    out = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for sp in frontier:
            for v in range(1, 1 << d):
                if v in sp:
                    continue
                new = frozenset(sp | {w ^ v for w in sp})
                if new not in out:
                    out.add(new)
                    nxt.append(new)
        frontier = nxt
    return list(out)


def _apply(mat: np.ndarray, v: int) -> int:
    cols = mat.shape[1]
    vec = np.array([(v >> k) & 1 for k in range(cols)], dtype=np.uint8)
    img = _mm(mat, vec[:, None])[:, 0]
    return int(sum(int(b) << k for k, b in enumerate(img)))


def _quotients(q: _Quiver2, m: _Rep) -> list[_Rep]:
    subs = [_subspaces(d) for d in m.dims]
    out = []
    for choice in itertools.product(*subs):
        if not all(
            all(_apply(m.mats[k], v) in choice[t] for v in choice[s])
            for k, (s, t) in enumerate(q.arrows)
        ):
            continue
        # quotient by a basis extension: pick coordinates complementary to U
        proj = []
        for i, sp in enumerate(choice):
            d = m.dims[i]
            basis = _span_basis(sp, d)
            a = np.zeros((len(basis), d), dtype=np.uint8)
            for r, b in enumerate(basis):
                a[r] = [(b >> k) & 1 for k in range(d)]
            # complement coordinates: extend the row space of a by unit vectors
            comp = []
            cur = a
            for k in range(d):
                e = np.zeros((1, d), dtype=np.uint8)
                e[0, k] = 1
                trial = np.concatenate([cur, e], axis=0)
                if gf2_rank(trial) > gf2_rank(cur):
                    cur = trial
                    comp.append(k)
            # projection F^d -> F^d / U in the complement coordinates
            full = np.concatenate([a, np.eye(d, dtype=np.uint8)[comp]], axis=0)  # rows = new basis
            inv = _gf2_inverse(full.T)  # coordinates w.r.t. the new basis
            proj.append((inv[len(basis):], comp))
        mats = []
        for k, (s, t) in enumerate(q.arrows):
            lift = np.eye(m.dims[s], dtype=np.uint8)[:, proj[s][1]]
            pt = proj[t][0]
            mats.append(_mm(pt, _mm(m.mats[k], lift)) if lift.size and pt.size
                        else np.zeros((pt.shape[0], lift.shape[1]), dtype=np.uint8))
        dims = [p.shape[0] for p, _ in proj]
        if sum(dims):
            out.append(_Rep(dims, mats))
    return out


def _span_basis(sp: frozenset[int], d: int) -> list[int]:
    basis, span = [], {0}
    for v in sorted(sp):
        if v not in span:
            basis.append(v)
            span |= {w ^ v for w in span}
    return basis


# -- the count -------------------------------------------------------------------

def tau_rigid_indecomposables(algebra: FinDimAlgebra) -> list[tuple[tuple[int, ...], list]]:
    q = _check_domain(algebra)
    return [(r.dims, r.mats) for r in _rigid(q)[0]]


def _check_domain(algebra: FinDimAlgebra) -> _Quiver2:
    if algebra.field.p != 2:
        raise OracleDomainError("the oracle only works over the field with two elements")
    if algebra.dim > MAX_DIM:
        raise OracleDomainError(f"algebra dimension {algebra.dim} exceeds {MAX_DIM}")
    return _Quiver2(algebra)


def _rigid(q: _Quiver2):
    indec = []
    for dims in itertools.product(*[range(b + 1) for b in q.bound]):
        if sum(dims) == 0:
            continue
        for rep in _enumerate_classes(q, dims):
            if _is_indecomposable(q, rep):
                indec.append(rep)
    quots = [_quotients(q, r) for r in indec]

    def hom_to_tau_zero(x_idx: int, y: _Rep) -> bool:
        # Hom(X, tau Y) = 0  iff  Ext^1(Y, Q) = 0 for every quotient Q of X
        return all(_ext1_dim(q, y, qq) == 0 for qq in quots[x_idx])

    rigid_idx = [k for k, r in enumerate(indec) if hom_to_tau_zero(k, r)]
    rigid = [indec[k] for k in rigid_idx]
    compat = np.zeros((len(rigid), len(rigid)), dtype=bool)
    for a, ka in enumerate(rigid_idx):
        compat[a, a] = True
        for b in range(a + 1, len(rigid)):
            kb = rigid_idx[b]
            ok = hom_to_tau_zero(ka, indec[kb]) and hom_to_tau_zero(kb, indec[ka])
            compat[a, b] = compat[b, a] = ok
    return rigid, compat


def brute_force_stau_count(algebra: FinDimAlgebra) -> int:
    """Number of support tau-tilting pairs, by exhaustive enumeration over GF(2)."""
    q = _check_domain(algebra)
    rigid, compat = _rigid(q)
    n = q.n
    total = 0

    def extend(clique: list[int], start: int):
        nonlocal total
        support = [i for i in range(n) if all(rigid[c].dims[i] == 0 for c in clique)]
        need = n - len(clique)
        if 0 <= need <= len(support):
            total += comb(len(support), need)
        if len(clique) == n:
            return
        for c in range(start, len(rigid)):
            if all(compat[c, d] for d in clique):
                extend(clique + [c], c + 1)

    extend([], 0)
    return total
