"""Simple undirected graphs, vertex paths, and subdivision certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class Graph:
    """Immutable simple undirected graph on non-negative integer vertex ids.

    Vertex ids are stable: deleting vertices never renumbers the survivors.
    Every derived graph is a fresh value, so instances can be shared freely.
    """

    __slots__ = ("_adj",)

    def __init__(self, adjacency: Mapping[int, Iterable[int]]):
        adj: dict[int, frozenset[int]] = {}
        for v, nbrs in adjacency.items():
            ns = frozenset(nbrs)
            if v in ns:
                raise ValueError(f"self-loop at vertex {v}")
            adj[int(v)] = ns
        for v, ns in adj.items():
            for u in ns:
                if u not in adj or v not in adj[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        self._adj = adj

    @classmethod
    def _trusted(cls, adj: dict[int, frozenset[int]]) -> "Graph":
        g = object.__new__(cls)
        g._adj = adj
        return g

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]],
                   vertices: Iterable[int] = ()) -> "Graph":
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls._trusted({v: frozenset(ns) for v, ns in adj.items()})

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._adj)

    @property
    def order(self) -> int:
        return len(self._adj)

    @property
    def size(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in sorted(self._adj):
            for u in self._adj[v]:
                if v < u:
                    out.append((v, u))
        out.sort()
        return out

    def min_degree(self) -> tuple[int, int]:
        """Return (degree, vertex) for a minimum-degree vertex, smallest id first."""
        if not self._adj:
            raise ValueError("empty graph has no minimum degree")
        v = min(self._adj, key=lambda x: (len(self._adj[x]), x))
        return len(self._adj[v]), v

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        adj = dict(self._adj)
        adj[u] = adj.get(u, frozenset()) | {v}
        adj[v] = adj.get(v, frozenset()) | {u}
        return Graph._trusted(adj)

    def with_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        g = self
        for u, v in pairs:
            g = g.with_edge(u, v)
        return g

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(frozenset((v, ns) for v, ns in self._adj.items()))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


def induced_delete(g: Graph, s: Iterable[int]) -> Graph:
    """Return g minus the vertex set s (and all edges touching s)."""
    dead = set(s)
    unknown = dead - g.vertices
    if unknown:
        raise ValueError(f"unknown vertex ids: {sorted(unknown)}")
    if not dead:
        return g
    adj = {v: ns - dead for v, ns in g._adj.items() if v not in dead}
    return Graph._trusted({v: frozenset(ns) for v, ns in adj.items()})


@dataclass(frozen=True)
class VertexPath:
    """A sequence of distinct vertices; consecutive entries must be host edges."""

    vertices: tuple[int, ...]

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def edge_pairs(self) -> Iterator[tuple[int, int]]:
        for a, b in zip(self.vertices, self.vertices[1:]):
            yield a, b

    def reversed(self) -> "VertexPath":
        return VertexPath(tuple(reversed(self.vertices)))

    def oriented_from(self, v: int) -> "VertexPath":
        if self.first == v:
            return self
        if self.last == v:
            return self.reversed()
        raise ValueError(f"{v} is not an endpoint of this path")

    def __len__(self) -> int:
        return len(self.vertices)


def join_paths_at_end(p: VertexPath, q: VertexPath) -> VertexPath:
    """Concatenate two paths that share only their final vertex."""
    if p.last != q.last:
        raise ValueError("paths do not share a final vertex")
    return VertexPath(p.vertices + tuple(reversed(q.vertices[:-1])))


def verify_path(g: Graph, p: VertexPath) -> bool:
    """True iff p is a path of length >= 1 in g with all vertices distinct."""
    vs = p.vertices
    if len(vs) < 2 or len(set(vs)) != len(vs):
        return False
    if not all(g.has_vertex(v) for v in vs):
        return False
    return all(g.has_edge(a, b) for a, b in p.edge_pairs())


@dataclass(frozen=True)
class PatternGraph:
    """A target graph, optionally with an ordered list of distinguished terminals."""

    graph: Graph
    terminal_labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.terminal_labels is not None:
            ts = self.terminal_labels
            if len(set(ts)) != len(ts):
                raise ValueError("terminal labels must be distinct")
            missing = [t for t in ts if not self.graph.has_vertex(t)]
            if missing:
                raise ValueError(f"terminal labels not in pattern: {missing}")


@dataclass(frozen=True)
class SubdivisionCertificate:
    """An explicit embedding of a pattern as a topological minor of a host graph.

    branch_map sends pattern vertices to distinct host vertices; edge_paths
    realizes each pattern edge as a host path between the mapped endpoints,
    with all paths internally disjoint and avoiding branch vertices inside.
    """

    pattern: PatternGraph
    branch_map: dict[int, int]
    edge_paths: dict[tuple[int, int], VertexPath]

    def __post_init__(self) -> None:
        # canonical storage: keys sorted, paths oriented from the smaller
        # pattern endpoint, so equal certificates compare equal
        fixed: dict[tuple[int, int], VertexPath] = {}
        for (u, v), p in sorted(self.edge_paths.items()):
            key = (u, v) if u < v else (v, u)
            start = self.branch_map.get(key[0])
            if start is not None and p.last == start and p.first != start:
                p = p.reversed()
            fixed[key] = p
        object.__setattr__(self, "edge_paths", fixed)

    def branch_vertices(self) -> frozenset[int]:
        return frozenset(self.branch_map.values())

    def host_vertices(self) -> frozenset[int]:
        used: set[int] = set(self.branch_map.values())
        for p in self.edge_paths.values():
            used.update(p.vertices)
        return frozenset(used)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural check; falsy results carry a reason code."""

    ok: bool
    reason: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "CheckResult":
        return cls(True)

    @classmethod
    def failed(cls, reason: str, detail: str = "") -> "CheckResult":
        return cls(False, reason, detail)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def verify_certificate(g: Graph, cert: SubdivisionCertificate,
                       expected_terminals: Iterable[int] | None = None) -> CheckResult:
    """Check every certificate invariant against the host graph g.

    Returns a truthy CheckResult, or a falsy one whose reason code names the
    first violation found: branch-domain, branch-collision, branch-missing,
    edge-set-mismatch, bad-path, endpoint-mismatch, internal-branch-hit,
    internal-overlap, or terminal-mismatch.
    """
    pat = cert.pattern.graph
    bm = cert.branch_map
    if set(bm) != pat.vertices:
        return CheckResult.failed("branch-domain", "branch map keys differ from pattern vertices")
    hosts = list(bm.values())
    if len(set(hosts)) != len(hosts):
        return CheckResult.failed("branch-collision", "branch map is not injective")
    for h in hosts:
        if not g.has_vertex(h):
            return CheckResult.failed("branch-missing", f"host vertex {h} absent")
    want_edges = {_edge_key(u, v) for u, v in pat.edges()}
    got_edges = {_edge_key(u, v) for u, v in cert.edge_paths}
    if want_edges != got_edges:
        return CheckResult.failed("edge-set-mismatch",
                                  f"pattern has {len(want_edges)} edges, paths cover {len(got_edges)}")
    branch_set = set(hosts)
    seen_internal: set[int] = set()
    for (u, v), p in sorted(cert.edge_paths.items()):
        if not verify_path(g, p):
            return CheckResult.failed("bad-path", f"edge {u}-{v}")
        if {p.first, p.last} != {bm[u], bm[v]}:
            return CheckResult.failed("endpoint-mismatch", f"edge {u}-{v}")
        inner = set(p.internal)
        if inner & branch_set:
            return CheckResult.failed("internal-branch-hit", f"edge {u}-{v}")
        if inner & seen_internal:
            return CheckResult.failed("internal-overlap", f"edge {u}-{v}")
        seen_internal |= inner
    if expected_terminals is not None:
        want = list(expected_terminals)
        labels = cert.pattern.terminal_labels
        if labels is None or [bm[t] for t in labels] != want:
            return CheckResult.failed("terminal-mismatch", f"expected hosts {want}")
    return CheckResult.passed()
