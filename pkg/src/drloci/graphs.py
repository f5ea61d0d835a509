"""Marked dual graphs of stable curves and their level structures.

A marked dual graph has vertices labeled by geometric genus, edges for
the nodes (self-loops and parallel edges allowed), and legs for the
marked points, each leg carrying an integer order label mu.  A level
structure is a normalized map from vertices to {0,-1,...,-L}; it splits
edges into horizontal (equal levels) and vertical ones and induces the
level subcomplexes used by the evaluation machinery: the full subgraph
below a level, and the level slice in which every edge descending from
the level is cut in the middle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property


class EnumerationCapExceeded(RuntimeError):
    """Raised when level-structure enumeration would exceed the cap."""

    def __init__(self, bound: int):
        super().__init__(f"level structure enumeration exceeds cap ({bound} candidates)")
        self.bound = bound


def half_edge_id(edge_id: str, side: int) -> str:
    return f"{edge_id}.{side}"


def split_half_edge(hid: str) -> tuple[str, int]:
    edge_id, side = hid.rsplit(".", 1)
    return edge_id, int(side)


@dataclass(frozen=True)
class MarkedDualGraph:
    """Dual graph: vertices (id, genus), edges (id, (v,v)), legs (id, v, mu)."""

    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, tuple[str, str]], ...]
    legs: tuple[tuple[str, str, int], ...]

    @staticmethod
    def build(vertices, edges, legs=()) -> "MarkedDualGraph":
        return MarkedDualGraph(
            tuple((str(v), int(g)) for v, g in vertices),
            tuple((str(e), (str(a), str(b))) for e, (a, b) in edges),
            tuple((str(l), str(v), int(m)) for l, v, m in legs),
        )

    @cached_property
    def genus_of(self) -> dict[str, int]:
        return {v: g for v, g in self.vertices}

    @cached_property
    def edge_ends(self) -> dict[str, tuple[str, str]]:
        return {e: ends for e, ends in self.edges}

    @cached_property
    def leg_info(self) -> dict[str, tuple[str, int]]:
        return {l: (v, m) for l, v, m in self.legs}

    @cached_property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    def legs_of(self, v: str) -> list[tuple[str, int]]:
        return [(l, m) for l, vv, m in self.legs if vv == v]

    def edges_at(self, v: str) -> list[tuple[str, int]]:
        """(edge id, side) pairs incident to v; self-loops appear twice."""
        out = []
        for e, (a, b) in self.edges:
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out

    def valence(self, v: str) -> int:
        return len(self.edges_at(v)) + len(self.legs_of(v))

    def half_edges(self) -> list[str]:
        return [half_edge_id(e, s) for e, _ in self.edges for s in (0, 1)]

    def half_edge_vertex(self, hid: str) -> str:
        e, s = split_half_edge(hid)
        return self.edge_ends[e][s]

    @cached_property
    def mu(self) -> tuple[int, ...]:
        return tuple(m for _, _, m in self.legs)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0][0]}
        frontier = [self.vertices[0][0]]
        adj: dict[str, set[str]] = {v: set() for v, _ in self.vertices}
        for _, (a, b) in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)

    @property
    def first_betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    @property
    def total_genus(self) -> int:
        return sum(g for _, g in self.vertices) + self.first_betti

    def vertex_stable(self, v: str) -> bool:
        return 2 * self.genus_of[v] - 2 + self.valence(v) > 0

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "genus": g} for v, g in self.vertices],
            "edges": [{"id": e, "ends": list(ends)} for e, ends in self.edges],
            "legs": [{"id": l, "vertex": v, "mu": m} for l, v, m in self.legs],
        }

    @staticmethod
    def from_json(doc: dict) -> "MarkedDualGraph":
        return MarkedDualGraph.build(
            [(v["id"], v["genus"]) for v in doc.get("vertices", [])],
            [(e["id"], tuple(e["ends"])) for e in doc.get("edges", [])],
            [(l["id"], l["vertex"], l["mu"]) for l in doc.get("legs", [])],
        )


@dataclass
class GraphReport:
    errors: list[tuple[str, str]]
    connected: bool
    total_genus: int
    unstable_vertices: list[str]
    mu_sum: int

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def stable(self) -> bool:
        return not self.unstable_vertices

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "errors": [{"code": c, "where": w} for c, w in self.errors],
            "connected": self.connected,
            "genus": self.total_genus,
            "stable": self.stable,
            "unstable_vertices": self.unstable_vertices,
            "mu_sum": self.mu_sum,
        }


def validate(graph: MarkedDualGraph) -> GraphReport:
    """Structural diagnostics: ids, incidences, connectivity, genus, stability."""
    errors: list[tuple[str, str]] = []
    seen_v = set()
    for v, g in graph.vertices:
        if v in seen_v:
            errors.append(("duplicate-vertex-id", v))
        seen_v.add(v)
        if g < 0:
            errors.append(("negative-genus", v))
    seen_e = set()
    for e, (a, b) in graph.edges:
        if e in seen_e:
            errors.append(("duplicate-edge-id", e))
        seen_e.add(e)
        for end in (a, b):
            if end not in seen_v:
                errors.append(("dangling-half-edge", f"{e}->{end}"))
    seen_l = set()
    for l, v, _ in graph.legs:
        if l in seen_l:
            errors.append(("duplicate-leg-id", l))
        seen_l.add(l)
        if v not in seen_v:
            errors.append(("dangling-leg", f"{l}->{v}"))
    connected = graph.is_connected() if not errors else False
    if not connected and not errors:
        errors.append(("disconnected", "graph"))
    unstable = [v for v, _ in graph.vertices if not graph.vertex_stable(v)]
    return GraphReport(
        errors=errors,
        connected=connected,
        total_genus=graph.total_genus if not errors or connected else 0,
        unstable_vertices=unstable,
        mu_sum=sum(graph.mu),
    )


@dataclass(frozen=True)
class LevelStructure:
    """Normalized level function on the vertices: values {0,-1,...,-L}."""

    level: tuple[tuple[str, int], ...]

    @staticmethod
    def build(mapping: dict[str, int]) -> "LevelStructure":
        return LevelStructure(tuple(sorted(mapping.items())))

    @cached_property
    def of(self) -> dict[str, int]:
        return dict(self.level)

    @staticmethod
    def normalize(mapping: dict[str, int]) -> "LevelStructure":
        """Relabel attained levels order-preservingly onto {0,...,-L}."""
        attained = sorted(set(mapping.values()), reverse=True)
        relabel = {lv: -i for i, lv in enumerate(attained)}
        return LevelStructure.build({v: relabel[lv] for v, lv in mapping.items()})

    def check_normalized(self, graph: MarkedDualGraph) -> None:
        vals = {self.of[v] for v in graph.vertex_ids}
        if max(vals) != 0 or vals != set(range(0, min(vals) - 1, -1)):
            raise ValueError(f"level structure not normalized: {sorted(vals)}")
        if set(self.of) != set(graph.vertex_ids):
            raise ValueError("level structure does not match vertex set")

    @property
    def depth(self) -> int:
        return -min(v for _, v in self.level)

    def attained(self) -> list[int]:
        return sorted({lv for _, lv in self.level}, reverse=True)

    def is_horizontal(self, graph: MarkedDualGraph, edge_id: str) -> bool:
        a, b = graph.edge_ends[edge_id]
        return self.of[a] == self.of[b]

    def upper_side(self, graph: MarkedDualGraph, edge_id: str) -> int:
        """Side index of q_e^+.

        For horizontal edges the choice is arbitrary in principle; we fix
        the side at the lexicographically smaller vertex id (side 0 for
        self-loops) so that outputs are reproducible.
        """
        a, b = graph.edge_ends[edge_id]
        la, lb = self.of[a], self.of[b]
        if la > lb:
            return 0
        if lb > la:
            return 1
        return 0 if a <= b else 1

    def edge_levels(self, graph: MarkedDualGraph, edge_id: str) -> tuple[int, int]:
        """(l(e+), l(e-))."""
        up = self.upper_side(graph, edge_id)
        ends = graph.edge_ends[edge_id]
        return self.of[ends[up]], self.of[ends[1 - up]]

    def to_json(self) -> dict:
        return {v: lv for v, lv in self.level}

    @staticmethod
    def from_json(doc: dict) -> "LevelStructure":
        return LevelStructure.build({str(k): int(v) for k, v in doc.items()})


@dataclass(frozen=True)
class LevelSubcomplex:
    """A level slice or down-set of a level graph, as a cell complex fragment.

    ``half_legs`` lists the cut legs h(q_e^+) of the slice: pairs
    (edge id, side of q_e^+), one per edge descending from the level.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    legs: tuple[str, ...]
    half_legs: tuple[tuple[str, int], ...] = ()


def subcomplex_leq(graph: MarkedDualGraph, levels: LevelStructure, i: int) -> LevelSubcomplex:
    """Down-set: vertices of level <= i, edges between them, their legs."""
    vs = tuple(v for v in graph.vertex_ids if levels.of[v] <= i)
    vset = set(vs)
    es = tuple(e for e, (a, b) in graph.edges if a in vset and b in vset)
    ls = tuple(l for l, v, _ in graph.legs if v in vset)
    return LevelSubcomplex(vs, es, ls)


def subcomplex_eq(graph: MarkedDualGraph, levels: LevelStructure, i: int) -> LevelSubcomplex:
    """Level slice: level-i vertices, horizontal edges among them, legs,
    plus one cut half-leg per edge from level i down to a lower level."""
    vs = tuple(v for v in graph.vertex_ids if levels.of[v] == i)
    vset = set(vs)
    es = []
    half = []
    for e, (a, b) in graph.edges:
        la, lb = levels.of[a], levels.of[b]
        if la == i and lb == i:
            es.append(e)
        elif la == i and lb < i:
            half.append((e, 0))
        elif lb == i and la < i:
            half.append((e, 1))
    ls = tuple(l for l, v, _ in graph.legs if v in vset)
    return LevelSubcomplex(vs, tuple(es), ls, tuple(half))


# ---------------------------------------------------------------------------
# colored isomorphism / canonical labeling


def _vertex_colors(graph: MarkedDualGraph, levels: LevelStructure | None,
                   extra: dict[str, tuple] | None) -> dict[str, tuple]:
    colors = {}
    for v, g in graph.vertices:
        mus = tuple(sorted(m for _, m in graph.legs_of(v)))
        lv = levels.of[v] if levels else 0
        colors[v] = (g, lv, mus, len(graph.edges_at(v)),
                     extra.get(v, ()) if extra else ())
    return colors


def _refine(graph: MarkedDualGraph, colors: dict[str, tuple]) -> dict[str, tuple]:
    for _ in range(len(graph.vertices)):
        new = {}
        for v in graph.vertex_ids:
            nb = sorted(colors[graph.edge_ends[e][1 - s]] for e, s in graph.edges_at(v))
            new[v] = (colors[v], tuple(nb))
        if len(set(new.values())) == len(set(colors.values())) and all(
                (new[a] == new[b]) == (colors[a] == colors[b])
                for a in graph.vertex_ids for b in graph.vertex_ids):
            break
        colors = new
    return colors


def canonical_key(graph: MarkedDualGraph, levels: LevelStructure | None = None,
                  edge_data=None, vertex_data=None) -> tuple:
    """Canonical form of the (colored, leveled, decorated) graph.

    ``edge_data(edge_id, side) -> hashable`` attaches per-half-edge data
    (decorations) to the key; ``vertex_data(v) -> hashable`` likewise.
    Brute force over color-respecting labelings; dual graphs in scope are
    small, and color refinement collapses most symmetry up front.
    """
    extra = {v: (vertex_data(v),) for v in graph.vertex_ids} if vertex_data else None
    colors = _refine(graph, _vertex_colors(graph, levels, extra))
    classes: dict[tuple, list[str]] = {}
    for v in graph.vertex_ids:
        classes.setdefault(colors[v], []).append(v)
    ordered_classes = [sorted(classes[c]) for c in sorted(classes)]

    best = None
    for perms in itertools.product(*[itertools.permutations(c) for c in ordered_classes]):
        label: dict[str, int] = {}
        for cls in perms:
            for v in cls:
                label[v] = len(label)
        vrow = tuple(sorted((label[v], colors[v]) for v in graph.vertex_ids))
        erow = []
        for e, (a, b) in graph.edges:
            d0 = edge_data(e, 0) if edge_data else ()
            d1 = edge_data(e, 1) if edge_data else ()
            s0 = (label[a], d0)
            s1 = (label[b], d1)
            erow.append(tuple(sorted((s0, s1))))
        lrow = tuple(sorted((label[v], m) for _, v, m in graph.legs))
        key = (vrow, tuple(sorted(erow)), lrow)
        if best is None or key < best:
            best = key
    return best


def isomorphic(a: MarkedDualGraph, b: MarkedDualGraph,
               levels_a: LevelStructure | None = None,
               levels_b: LevelStructure | None = None) -> bool:
    """Bijection of vertices/edges/legs preserving genus, mu, incidence, levels."""
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges) \
            or len(a.legs) != len(b.legs):
        return False
    return canonical_key(a, levels_a) == canonical_key(b, levels_b)


def enumerate_level_structures(graph: MarkedDualGraph, max_levels: int | None = None,
                               cap: int = 200_000) -> list[LevelStructure]:
    """All normalized level structures up to levelled-graph isomorphism.

    Candidates are the ordered set partitions of the vertex set (top class
    first); deduplication is by canonical labeling respecting genus,
    mu-labels and levels.  Deterministic order: sorted canonical keys.
    """
    vs = list(graph.vertex_ids)
    limit = max_levels if max_levels is not None else len(vs)

    seen: dict[tuple, LevelStructure] = {}
    count = 0

    def assign(remaining: list[str], classes: list[tuple[str, ...]]):
        nonlocal count
        if not remaining:
            if not classes:
                return
            mapping = {}
            for depth, cls in enumerate(classes):
                for v in cls:
                    mapping[v] = -depth
            count += 1
            if count > cap:
                raise EnumerationCapExceeded(cap)
            ls = LevelStructure.build(mapping)
            key = canonical_key(graph, ls)
            if key not in seen:
                seen[key] = ls
            return
        if len(classes) == limit:
            return
        for r in range(1, len(remaining) + 1):
            for subset in itertools.combinations(remaining, r):
                chosen = set(subset)
                rest = [x for x in remaining if x not in chosen]
                assign(rest, classes + [subset])

    assign(vs, [])
    return [seen[k] for k in sorted(seen)]
