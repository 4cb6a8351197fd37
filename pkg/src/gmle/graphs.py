"""Loopless mixed graphs: validation, the U/W vertex partition, orderings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "MixedGraph",
    "Partition",
    "GraphError",
    "OrderingError",
    "PartitionInfeasibleError",
    "is_loopless",
    "is_directed_cyclic",
    "partition_lmg",
    "topological_check",
]


class GraphError(ValueError):
    """Structurally invalid graph input."""


class OrderingError(GraphError):
    """The declared vertex order violates the U-before-W / i<j conventions."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class PartitionInfeasibleError(GraphError):
    """Some vertex is forced into both U and W."""

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


def _upair(a, b):
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class MixedGraph:
    """A mixed graph over positive-integer vertex labels.

    ``vertices`` keeps the declared order.  Undirected and bidirected edges are
    stored as sorted pairs, directed edges as ``(tail, head)``.  Build through
    :meth:`from_edges` (or :meth:`lmg`) to get validation; the raw constructor
    only checks that endpoints are declared.
    """

    vertices: tuple
    undirected: frozenset = frozenset()
    directed: frozenset = frozenset()
    bidirected: frozenset = frozenset()

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(set(vs)) != len(vs):
            raise GraphError("vertex labels must be distinct")
        for v in vs:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise GraphError(f"vertex labels must be positive integers, got {v!r}")
        object.__setattr__(self, "vertices", vs)
        declared = set(vs)
        for name in ("undirected", "directed", "bidirected"):
            edges = getattr(self, name)
            for e in edges:
                for x in e:
                    if x not in declared:
                        raise GraphError(f"{name} edge {tuple(e)} references undeclared vertex {x}")

    @classmethod
    def from_edges(
        cls,
        vertices=None,
        undirected=(),
        directed=(),
        bidirected=(),
        strict: bool = True,
    ) -> MixedGraph:
        """Build a graph from edge lists.

        With ``strict`` (the default) the graph must be a loopless mixed graph
        with no repeated same-type edges and no directed cycles.  ``vertices``
        defaults to the sorted set of edge endpoints.
        """
        undirected = [tuple(e) for e in undirected]
        directed = [tuple(e) for e in directed]
        bidirected = [tuple(e) for e in bidirected]
        for name, edges in (("undirected", undirected), ("directed", directed), ("bidirected", bidirected)):
            for e in edges:
                if len(e) != 2:
                    raise GraphError(f"{name} edge {e} must have two endpoints")
        if vertices is None:
            vertices = sorted({x for e in undirected + directed + bidirected for x in e})
        u = [_upair(*e) for e in undirected]
        b = [_upair(*e) for e in bidirected]
        if strict:
            for name, edges in (("undirected", u), ("directed", directed), ("bidirected", b)):
                if len(set(edges)) != len(edges):
                    raise GraphError(f"repeated {name} edge")
            if set(u) & set(b):
                raise GraphError("a pair may not carry both an undirected and a bidirected edge")
        g = cls(tuple(vertices), frozenset(u), frozenset(directed), frozenset(b))
        if strict:
            if not is_loopless(g):
                raise GraphError("graph has a loop")
            if is_directed_cyclic(g):
                raise GraphError("graph has a directed cycle")
        return g

    lmg = from_edges

    @classmethod
    def from_dict(cls, data: dict, strict: bool = True) -> MixedGraph:
        """Parse the JSON graph schema; missing edge keys mean no edges."""
        unknown = set(data) - {"vertices", "undirected", "directed", "bidirected"}
        if unknown:
            raise GraphError(f"unknown graph keys: {sorted(unknown)}")
        return cls.from_edges(
            data.get("vertices"),
            data.get("undirected", ()),
            data.get("directed", ()),
            data.get("bidirected", ()),
            strict=strict,
        )

    @classmethod
    def from_json(cls, text: str, strict: bool = True) -> MixedGraph:
        return cls.from_dict(json.loads(text), strict=strict)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "undirected": sorted(list(e) for e in self.undirected),
            "directed": sorted(list(e) for e in self.directed),
            "bidirected": sorted(list(e) for e in self.bidirected),
        }

    @property
    def m(self) -> int:
        return len(self.vertices)

    def position(self, v: int) -> int:
        """0-based position of a label in the declared order."""
        return self.vertices.index(v)

    def relabel(self) -> tuple[MixedGraph, dict]:
        """Renumber vertices to 1..m in declared order; return the map old -> new."""
        mapping = {v: k + 1 for k, v in enumerate(self.vertices)}
        g = MixedGraph(
            tuple(range(1, self.m + 1)),
            frozenset(_upair(mapping[a], mapping[b]) for a, b in self.undirected),
            frozenset((mapping[a], mapping[b]) for a, b in self.directed),
            frozenset(_upair(mapping[a], mapping[b]) for a, b in self.bidirected),
        )
        return g, mapping

    def quotient(self) -> MixedGraph:
        """Contract undirected/bidirected components, keep directed edges.

        Each component is represented by its first declared vertex.  Arrows
        inside a component are dropped: they are the permitted
        directed-undirected and directed-bidirected double edges.
        """
        rep = _components(self)
        verts = tuple(v for v in self.vertices if rep[v] == v)
        directed = frozenset(
            (rep[a], rep[b]) for a, b in self.directed if rep[a] != rep[b]
        )
        return MixedGraph(verts, frozenset(), directed, frozenset())


def _components(g: MixedGraph) -> dict:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = {v: k for k, v in enumerate(g.vertices)}
    for a, b in list(g.undirected) + list(g.bidirected):
        ra, rb = find(a), find(b)
        if ra != rb:
            if order[ra] < order[rb]:
                parent[rb] = ra
            else:
                parent[ra] = rb
    return {v: find(v) for v in g.vertices}


@dataclass(frozen=True)
class Partition:
    U: tuple
    W: tuple

    def to_dict(self) -> dict:
        return {"U": list(self.U), "W": list(self.W)}


def is_loopless(g: MixedGraph) -> bool:
    """True iff no edge of any type joins a vertex to itself."""
    return not any(a == b for edges in (g.undirected, g.directed, g.bidirected) for a, b in edges)


def is_directed_cyclic(g: MixedGraph) -> bool:
    """Directed cycle test after contracting undirected/bidirected components.

    Arrows both ways between two contracted components count as a 2-cycle.
    """
    q = g.quotient()
    adj: dict = {v: [] for v in q.vertices}
    for a, b in q.directed:
        adj[a].append(b)
    white, grey, black = 0, 1, 2
    color = {v: white for v in q.vertices}
    for root in q.vertices:
        if color[root] != white:
            continue
        stack = [(root, iter(adj[root]))]
        color[root] = grey
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = black
                stack.pop()
            elif color[nxt] == grey:
                return True
            elif color[nxt] == white:
                color[nxt] = grey
                stack.append((nxt, iter(adj[nxt])))
    return False


def topological_check(g: MixedGraph) -> bool:
    """True iff every directed edge i->j has i before j in the declared order."""
    pos = {v: k for k, v in enumerate(g.vertices)}
    return all(pos[a] < pos[b] for a, b in g.directed)


def partition_lmg(g: MixedGraph) -> Partition:
    """Split the vertices into U (undirected part) and W (bidirected part).

    Vertices on undirected edges go to U, vertices on bidirected edges to W.
    A vertex touching neither goes to W exactly when some W vertex reaches it
    along directed edges, otherwise to U.  The declared order must list U
    before W and respect every arrow.
    """
    in_u = {v for e in g.undirected for v in e}
    in_w = {v for e in g.bidirected for v in e}
    both = in_u & in_w
    if both:
        v = min(both, key=g.position)
        raise PartitionInfeasibleError(
            f"vertex {v} lies on both an undirected and a bidirected edge", vertex=v
        )
    for a, b in sorted(g.directed, key=lambda e: (g.position(e[0]), g.position(e[1]))):
        if g.position(a) >= g.position(b):
            raise OrderingError(
                f"directed edge {a}->{b} points backwards in the vertex order", edge=(a, b)
            )
    children: dict = {v: [] for v in g.vertices}
    for a, b in g.directed:
        children[a].append(b)
    reached = set()
    stack = list(in_w)
    while stack:
        v = stack.pop()
        for c in children[v]:
            if c not in reached:
                reached.add(c)
                stack.append(c)
    W = set(in_w)
    for v in g.vertices:
        if v not in in_u and v not in in_w and v in reached:
            W.add(v)
    bad = in_u & reached
    if bad:
        v = min(bad, key=g.position)
        raise PartitionInfeasibleError(
            f"undirected vertex {v} is reached by an arrow out of the bidirected part", vertex=v
        )
    U = tuple(v for v in g.vertices if v not in W)
    Wt = tuple(v for v in g.vertices if v in W)
    seen_w = False
    for v in g.vertices:
        if v in W:
            seen_w = True
        elif seen_w:
            first_w = next(x for x in g.vertices if x in W)
            raise OrderingError(
                f"vertex {v} of U is listed after vertex {first_w} of W", edge=(first_w, v)
            )
    return Partition(U, Wt)


def undirected_graph(edges, vertices=None) -> MixedGraph:
    return MixedGraph.from_edges(vertices, undirected=edges)


def random_undirected_graph(m: int, rng, p: float = 0.5) -> MixedGraph:
    """Erdos-Renyi style undirected graph on 1..m (used by tests and demos)."""
    edges = [e for e in combinations(range(1, m + 1), 2) if rng.random() < p]
    return MixedGraph.from_edges(list(range(1, m + 1)), undirected=edges)
