"""Builders, recognizers, and small-scale enumeration for target pattern graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, PatternGraph

ISO_VERTEX_LIMIT = 12


def path_cube(n: int) -> PatternGraph:
    """Third power of the path on n vertices: i adjacent to j iff 1 <= |i-j| <= 3.

    For n >= 3 the result is maximal 3-degenerate with 3n-6 edges; n=4 gives
    the complete graph on 4 vertices and n=5 the complete graph on 5 minus
    one edge.
    """
    if n < 2:
        raise ValueError("path cube needs at least 2 vertices")
    edges = [(i, j) for i in range(n) for j in range(i + 1, min(i + 4, n))]
    return PatternGraph(Graph.from_edges(edges, vertices=range(n)))


def complete_graph(n: int) -> PatternGraph:
    if n < 1:
        raise ValueError("complete graph needs at least 1 vertex")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return PatternGraph(Graph.from_edges(edges, vertices=range(n)))


def k5_minus() -> PatternGraph:
    """Complete graph on 5 vertices with the edge 0-1 removed."""
    edges = [(i, j) for i in range(5) for j in range(i + 1, 5) if (i, j) != (0, 1)]
    return PatternGraph(Graph.from_edges(edges))


def complete_bipartite_2d(d: int) -> PatternGraph:
    """K_{2,d}; the two vertices 0,1 on the small side are the terminals."""
    if d < 1:
        raise ValueError("need d >= 1")
    edges = [(s, 2 + i) for s in (0, 1) for i in range(d)]
    return PatternGraph(Graph.from_edges(edges), terminal_labels=(0, 1))


def wheel(d: int) -> PatternGraph:
    """Hub vertex 0 joined to a cycle on vertices 1..d."""
    if d < 3:
        raise ValueError("wheel needs a rim of length >= 3")
    edges = [(0, i) for i in range(1, d + 1)]
    edges += [(i, i % d + 1) for i in range(1, d + 1)]
    return PatternGraph(Graph.from_edges(edges))


def octahedron() -> PatternGraph:
    """Complete graph on 6 vertices minus the perfect matching 0-3, 1-4, 2-5."""
    skip = {(0, 3), (1, 4), (2, 5)}
    edges = [(i, j) for i in range(6) for j in range(i + 1, 6) if (i, j) not in skip]
    return PatternGraph(Graph.from_edges(edges))


def build_named(name: str) -> PatternGraph:
    """Construct a pattern from a short name, e.g. complete:4 or k2d:3.

    Accepted forms: complete:N, k5minus, k2d:D, wheel:D, octahedron, pn3:N,
    and the aliases k4, k5, k33, p6, p7.
    """
    base, _, arg = name.strip().lower().partition(":")
    fixed = {
        "k5minus": k5_minus,
        "octahedron": octahedron,
        "k4": lambda: complete_graph(4),
        "k5": lambda: complete_graph(5),
        "k33": lambda: PatternGraph(Graph.from_edges(
            [(i, j) for i in range(3) for j in range(3, 6)])),
        "p6": lambda: path_cube(6),
        "p7": lambda: path_cube(7),
    }
    if base in fixed:
        if arg:
            raise ValueError(f"pattern {base!r} takes no parameter")
        return fixed[base]()
    param = {"complete": complete_graph, "k2d": complete_bipartite_2d,
             "wheel": wheel, "pn3": path_cube}
    if base in param:
        if not arg or not arg.isdigit():
            raise ValueError(f"pattern {base!r} needs an integer parameter, e.g. {base}:4")
        return param[base](int(arg))
    raise ValueError(f"unknown pattern name {name!r}")


@dataclass(frozen=True)
class EliminationOrder:
    """A construction order certifying maximal 3-degeneracy.

    order[0:3] induce a triangle; every later vertex is adjacent to exactly
    the 3 earlier vertices recorded in attachments.
    """

    order: tuple[int, ...]
    attachments: dict[int, frozenset[int]]


def is_maximal_3_degenerate(g: Graph) -> EliminationOrder | None:
    """Return a witnessing elimination order, or None.

    A graph qualifies iff it has >= 3 vertices, exactly 3n-6 edges, and
    repeatedly removing a minimum-degree vertex always removes degree exactly
    3 until a triangle remains.  The edge count makes any minimum-degree
    vertex work, so one greedy pass decides the question.
    """
    n = g.order
    if n < 3 or g.size != 3 * n - 6:
        return None
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    peeled: list[int] = []
    attachments: dict[int, frozenset[int]] = {}
    while len(adj) > 3:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        if len(adj[v]) != 3:
            return None
        attachments[v] = frozenset(adj[v])
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]
        peeled.append(v)
    base = sorted(adj)
    if any(len(adj[v]) != 2 for v in base):
        return None
    order = tuple(base) + tuple(reversed(peeled))
    return EliminationOrder(order, attachments)


def canonical_form(g: Graph) -> tuple:
    """A label-invariant key: two graphs compare equal iff they are isomorphic.

    Branch-and-bound over vertex orderings compatible with the ascending
    degree partition, minimizing the concatenated lower-triangle adjacency
    rows.  Intended for small graphs only.
    """
    verts = g.sorted_vertices()
    n = len(verts)
    degs = sorted(g.degree(v) for v in verts)
    best: list[tuple[int, ...]] | None = None
    order: list[int] = []

    def extend(pos: int, rows: list[tuple[int, ...]]) -> None:
        nonlocal best
        if pos == n:
            if best is None or rows < best:
                best = list(rows)
            return
        placed = set(order)
        for v in verts:
            if v in placed or g.degree(v) != degs[pos]:
                continue
            row = tuple(1 if g.has_edge(v, u) else 0 for u in order)
            if best is not None:
                prefix = rows + [row]
                if prefix > best[:len(prefix)]:
                    continue
            order.append(v)
            extend(pos + 1, rows + [row])
            order.pop()
        return

    extend(0, [])
    assert best is not None or n == 0
    return (n, tuple(degs), tuple(best or []))


def are_isomorphic(p1: PatternGraph, p2: PatternGraph) -> bool:
    """Exact isomorphism decision for patterns with at most 12 vertices."""
    g1, g2 = p1.graph, p2.graph
    if g1.order > ISO_VERTEX_LIMIT or g2.order > ISO_VERTEX_LIMIT:
        raise ValueError(f"isomorphism check limited to {ISO_VERTEX_LIMIT} vertices")
    if g1.order != g2.order or g1.size != g2.size:
        return False
    if sorted(g1.degree(v) for v in g1.vertices) != sorted(g2.degree(v) for v in g2.vertices):
        return False
    return canonical_form(g1) == canonical_form(g2)


def enumerate_maximal_3_degenerate(n: int, planar_only: bool = False,
                                   reverse_subsets: bool = False) -> list[PatternGraph]:
    """All isomorphism classes of maximal 3-degenerate graphs of order n.

    Builds order k+1 from order k by attaching a new vertex to every 3-subset
    and deduplicating by canonical form; reverse_subsets only changes the
    iteration order, for order-independence checks.  planar_only keeps the
    graphs with no K5 or K3,3 subdivision per the search oracle.
    """
    if not 3 <= n <= 8:
        raise ValueError("enumeration supported for orders 3..8")
    triangle = complete_graph(3).graph
    classes: dict[tuple, Graph] = {canonical_form(triangle): triangle}
    for k in range(4, n + 1):
        grown: dict[tuple, Graph] = {}
        for g in classes.values():
            triples = list(combinations(g.sorted_vertices(), 3))
            if reverse_subsets:
                triples.reverse()
            for triple in triples:
                h = g.with_edges((k - 1, t) for t in triple)
                grown.setdefault(canonical_form(h), h)
        classes = grown
    result = [g for _, g in sorted(classes.items())]
    if planar_only:
        from .oracle import is_planar_small

        result = [g for g in result if is_planar_small(g)]
    return [PatternGraph(g) for g in result]
