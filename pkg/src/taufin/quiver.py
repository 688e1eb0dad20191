"""Finite quivers, separated quivers and Dynkin/Euclidean diagram recognition."""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable

_ID = re.compile(r"^[A-Za-z0-9_']+$")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """A finite quiver. Loops and parallel arrows are allowed.

    ``characters`` is only set on separated quivers; it maps each vertex to the
    vertex of the original quiver it was made from (``i`` and ``i'`` share one).
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    characters: tuple[tuple[str, str], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self, "arrows", tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in self.arrows)
        )
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow id")
        vs = set(self.vertices)
        for tok in list(self.vertices) + names:
            if not _ID.match(tok):
                raise ValueError(f"invalid id {tok!r}")
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")

    # -- lookup ---------------------------------------------------------
    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def character(self, v: str) -> str:
        if self.characters is None:
            return v
        return dict(self.characters)[v]

    # -- structure ------------------------------------------------------
    def components(self) -> list[tuple[str, ...]]:
        """Connected components of the underlying graph, in vertex order."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a in self.arrows:
            ra, rb = find(a.source), find(a.target)
            if ra != rb:
                parent[rb] = ra
        groups: dict[str, list[str]] = defaultdict(list)
        for v in self.vertices:
            groups[find(v)].append(v)
        return [tuple(g) for g in sorted(groups.values(), key=lambda g: self.vertices.index(g[0]))]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def subquiver(self, verts: Iterable[str]) -> "Quiver":
        keep = set(verts)
        return Quiver(
            tuple(v for v in self.vertices if v in keep),
            tuple(a for a in self.arrows if a.source in keep and a.target in keep),
        )

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices):
            lines.append(f'  "{v}" [label="{v}"];')
        for a in sorted(self.arrows, key=lambda a: (a.source, a.target, a.name)):
            lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_linear_quiver(n: int) -> Quiver:
    """Linearly oriented A_n: vertices 1..n, arrows a_i: i -> i+1."""
    if n < 1:
        raise ValueError("linear quiver needs n >= 1")
    verts = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n))
    return Quiver(verts, arrows)


def build_cyclic_quiver(r: int) -> Quiver:
    if r < 1:
        raise ValueError("cyclic quiver needs r >= 1")
    verts = tuple(str(i) for i in range(1, r + 1))
    arrows = tuple(Arrow(f"c{i}", str(i), str(i % r + 1)) for i in range(1, r + 1))
    return Quiver(verts, arrows)


def prime(v: str) -> str:
    return v + "'"


def separated_quiver(q: Quiver) -> Quiver:
    verts = q.vertices + tuple(prime(v) for v in q.vertices)
    arrows = tuple(Arrow(a.name, a.source, prime(a.target)) for a in q.arrows)
    chars = tuple((v, v) for v in q.vertices) + tuple((prime(v), v) for v in q.vertices)
    return Quiver(verts, arrows, chars)


# -- diagram types -------------------------------------------------------

@dataclass(frozen=True)
class DiagramType:
    kind: str  # "A", "D", "E", "A~", "D~", "E~" or "Other"
    n: int | None = None

    @property
    def is_dynkin(self) -> bool:
        return self.kind in ("A", "D", "E")

    @property
    def is_euclidean(self) -> bool:
        return self.kind in ("A~", "D~", "E~")

    def __str__(self) -> str:
        if self.kind == "Other":
            return "Other"
        return f"{self.kind}({self.n})"


OTHER = DiagramType("Other")


def classify_graph(vertices: list[str], edges: list[tuple[str, str]]) -> DiagramType:
    """Dynkin / Euclidean type of a connected undirected multigraph."""
    nv, ne = len(vertices), len(edges)
    if any(u == v for u, v in edges):
        return OTHER
    mult = Counter(frozenset(e) for e in edges)
    if any(m > 2 for m in mult.values()):
        return OTHER
    if any(m == 2 for m in mult.values()):
        return DiagramType("A~", 1) if nv == 2 and ne == 2 else OTHER
    deg = Counter()
    adj: dict[str, list[str]] = defaultdict(list)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    if ne == nv:
        if all(deg[v] == 2 for v in vertices):
            return DiagramType("A~", nv - 1)
        return OTHER
    if ne != nv - 1:
        return OTHER
    # a tree from here on
    branch = [v for v in vertices if deg[v] >= 3]
    if not branch:
        return DiagramType("A", nv)
    if any(deg[v] > 4 for v in branch):
        return OTHER
    if len(branch) == 1:
        c = branch[0]
        arms = sorted(_arm_length(adj, c, nb) for nb in adj[c])
        if deg[c] == 4:
            return DiagramType("D~", 4) if arms == [1, 1, 1, 1] else OTHER
        a, b, k = arms
        if (a, b) == (1, 1):
            return DiagramType("D", nv)
        table = {(1, 2, 2): ("E", 6), (1, 2, 3): ("E", 7), (1, 2, 4): ("E", 8),
                 (2, 2, 2): ("E~", 6), (1, 3, 3): ("E~", 7), (1, 2, 5): ("E~", 8)}
        if (a, b, k) in table:
            return DiagramType(*table[(a, b, k)])
        return OTHER
    if len(branch) == 2 and all(deg[v] == 3 for v in branch):
        # D~: both branch points carry two leaves
        for c in branch:
            leaves = [nb for nb in adj[c] if deg[nb] == 1]
            if len(leaves) < 2:
                return OTHER
        return DiagramType("D~", nv - 1)
    return OTHER


def _arm_length(adj, centre: str, start: str) -> int:
    length, prev, cur = 1, centre, start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def component_types(q: Quiver) -> list[tuple[tuple[str, ...], DiagramType]]:
    out = []
    for comp in q.components():
        cs = set(comp)
        edges = [(a.source, a.target) for a in q.arrows if a.source in cs]
        out.append((comp, classify_graph(list(comp), edges)))
    return out


# -- shape predicates ------------------------------------------------------

def has_loop(q: Quiver) -> bool:
    return any(a.source == a.target for a in q.arrows)


def has_multiple_arrow(q: Quiver) -> bool:
    pairs = Counter((a.source, a.target) for a in q.arrows)
    return any(m > 1 for m in pairs.values())


def _degrees_at_most_one(q: Quiver) -> bool:
    outd = Counter(a.source for a in q.arrows)
    ind = Counter(a.target for a in q.arrows)
    return all(outd[v] <= 1 and ind[v] <= 1 for v in q.vertices)


def is_linear_An_shape(q: Quiver) -> bool:
    if not q.vertices or not q.is_connected() or not _degrees_at_most_one(q):
        return False
    return len(q.arrows) == len(q.vertices) - 1


def is_cyclic_shape(q: Quiver) -> bool:
    if not q.vertices or not q.is_connected() or not _degrees_at_most_one(q):
        return False
    return len(q.arrows) == len(q.vertices)
