"""Configuration catalog and the recursive extraction of subdivision
certificates from reduction traces.

A configuration is a family of target graphs sharing an ordered list of
weighted terminals.  Whenever terminals are joined to the clique of some
derived pair with the configuration's weights, the original graph contains a
subdivision of one family member with the terminals as prescribed branch
vertices.  The extractor realizes that guarantee constructively: it walks the
trace downward, lifting the witness across delete steps and across add steps
that at most one path hits, and when two or more paths converge on a freshly
added clique vertex it splits them off, recurses on a smaller configuration
one level down, and reattaches the split paths to the recursive certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .graphs import (Graph, PatternGraph, SubdivisionCertificate, VertexPath,
                     induced_delete, join_paths_at_end, verify_certificate)
from .joins import (JoinWitness, lift_through_add_single, lift_through_delete,
                    split_at_added, validate_witness)
from .patterns import complete_bipartite_2d, complete_graph
from .reduction import AddStep, DeleteStep, ReductionTrace, run_trace

_ADDED = "added"

_KINDS = ("k2", "k2d", "pair", "triple", "triple_edge", "star",
          "hex_pair", "hex_triple", "quint_triple", "quint_triple_edge",
          "quint_quad", "k3", "k4_minus", "k4")


class ExtractionError(AssertionError):
    """An internal guarantee of the extraction failed; indicates a bug."""


class MinDegreeError(ValueError):
    """Input graph misses the minimum-degree precondition of a target."""

    def __init__(self, degree: int, required: int, vertex: int):
        self.degree, self.required, self.vertex = degree, required, vertex
        super().__init__(f"minimum degree {degree} < {required} at vertex {vertex}")


@dataclass(frozen=True)
class ConfigId:
    """Identifier of one configuration in the catalog.

    Parametric kinds: k2(d) a single edge with two weight-d terminals, k2d(d)
    the complete bipartite graph on 2+d vertices, pair(d)/triple(d) two or
    three terminals plus d growth vertices each attached to 3 predecessors,
    triple_edge(d) like triple with the first two terminals adjacent, star(d,t)
    a t-terminal star base plus d growth vertices, k3(d)/k4(d) the triangle and
    complete 4-vertex graph with weight-d terminals, k4_minus(d) the 4-vertex
    complete graph minus the edge between the first and third terminal.  The
    fixed five-member catalog hex_pair .. quint_quad drives the 6-vertex
    path-cube extraction.
    """

    kind: str
    d: int | None = None
    t: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown configuration kind {self.kind!r}")
        parametric = {"k2", "k2d", "pair", "triple", "triple_edge", "k3", "k4_minus", "k4"}
        if self.kind in parametric:
            if self.d is None or self.d < 1:
                raise ValueError(f"{self.kind} needs d >= 1")
            if self.t is not None:
                raise ValueError(f"{self.kind} takes no t parameter")
        elif self.kind == "star":
            if self.d is None or self.d < 0:
                raise ValueError("star needs d >= 0")
            if self.t is None or self.t < 3:
                raise ValueError("star needs t >= 3")
        elif self.d is not None or self.t is not None:
            raise ValueError(f"{self.kind} takes no parameters")

    def weights(self) -> tuple[int, ...]:
        k, d, t = self.kind, self.d, self.t
        if k in ("k2", "k2d", "pair"):
            return (d, d)
        if k in ("triple", "k3"):
            return (d, d, d)
        if k == "triple_edge":
            return (d + 1, d + 1, d)
        if k == "star":
            return (d + t - 1,) + tuple(d + i - 1 for i in range(2, t + 1))
        if k == "k4_minus":
            return (d + 1, d, d + 1)
        if k == "k4":
            return (d, d, d)
        return {"hex_pair": (4, 4), "hex_triple": (3, 3, 3),
                "quint_triple": (2, 2, 2), "quint_triple_edge": (3, 3, 2),
                "quint_quad": (1, 1, 2, 2)}[k]


def k2(d: int) -> ConfigId:
    return ConfigId("k2", d)


def k2d(d: int) -> ConfigId:
    return ConfigId("k2d", d)


def pair(d: int) -> ConfigId:
    return ConfigId("pair", d)


def triple(d: int) -> ConfigId:
    return ConfigId("triple", d)


def triple_edge(d: int) -> ConfigId:
    return ConfigId("triple_edge", d)


def star(d: int, t: int) -> ConfigId:
    return ConfigId("star", d, t)


HEX_PAIR = ConfigId("hex_pair")
HEX_TRIPLE = ConfigId("hex_triple")
QUINT_TRIPLE = ConfigId("quint_triple")
QUINT_TRIPLE_EDGE = ConfigId("quint_triple_edge")
QUINT_QUAD = ConfigId("quint_quad")

# Fixed member edge lists over vertices a1,a2,... = 0,1,... then b1,b2,... .
_FIXED_MEMBERS: dict[str, tuple[tuple[tuple[int, int], ...], ...]] = {
    # 2 terminals, growth vertices b1..b4 = 2..5
    "hex_pair": (
        ((0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (3, 4), (0, 5), (3, 5), (4, 5)),
        ((0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)),
        ((0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
    ),
    # 3 terminals, b1..b3 = 3..5
    "hex_triple": (
        ((0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (3, 4), (0, 5), (3, 5), (4, 5)),
        ((0, 3), (1, 3), (2, 3), (0, 4), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)),
        ((0, 3), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
    ),
    # 3 terminals, b1,b2 = 3,4
    "quint_triple": (
        ((0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (3, 4)),
    ),
    "quint_triple_edge": (
        ((0, 1), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (3, 4)),
    ),
    # 4 terminals, b1 = 4
    "quint_quad": (
        ((0, 4), (1, 4), (2, 4), (3, 4)),
        ((0, 4), (1, 4), (2, 3), (2, 4)),
    ),
}


@dataclass(frozen=True)
class Configuration:
    """A materialized configuration: weighted terminals plus member patterns."""

    id: ConfigId
    weights: tuple[int, ...]
    members: tuple[PatternGraph, ...]


def _growth_members(base_edges: list[tuple[int, int]], t: int, d: int,
                    first_fixed: tuple[int, ...] | None, limit: int) -> list[Graph]:
    """All ways to attach d growth vertices, each to 3 earlier vertices."""
    out: list[Graph] = []

    def grow(g: Graph, placed: int) -> None:
        if len(out) > limit:
            raise ValueError("too many members to enumerate; raise the limit")
        if placed == d:
            out.append(g)
            return
        new = t + placed
        earlier = list(range(new))
        if placed == 0 and first_fixed is not None:
            choices = [first_fixed]
        else:
            choices = combinations(earlier, 3)
        for triple_ in choices:
            grow(g.with_edges((new, x) for x in triple_), placed + 1)

    grow(Graph.from_edges(base_edges, vertices=range(t)), 0)
    return out


def config_members(cid: ConfigId, limit: int = 5000) -> Configuration:
    """Materialize a configuration's member list.

    Growth families are enumerated on demand and guarded by limit, since the
    extractor itself never needs the full list; it builds one member
    bottom-up.
    """
    k, d, t = cid.kind, cid.d, cid.t
    if k in _FIXED_MEMBERS:
        nterm = len(cid.weights())
        members = tuple(PatternGraph(Graph.from_edges(es), tuple(range(nterm)))
                        for es in _FIXED_MEMBERS[k])
        return Configuration(cid, cid.weights(), members)
    if k == "k2":
        graphs = [Graph.from_edges([(0, 1)])]
        nterm = 2
    elif k == "k2d":
        graphs = [complete_bipartite_2d(d).graph]
        nterm = 2
    elif k == "k3":
        graphs = [complete_graph(3).graph]
        nterm = 3
    elif k == "k4":
        graphs = [complete_graph(4).graph]
        nterm = 3
    elif k == "k4_minus":
        graphs = [Graph.from_edges([(0, 1), (1, 2), (0, 3), (1, 3), (2, 3)])]
        nterm = 3
    elif k == "pair":
        graphs = _growth_members([], 2, d, first_fixed=(0, 1), limit=limit)
        nterm = 2
    elif k == "triple":
        graphs = _growth_members([], 3, d, None, limit)
        nterm = 3
    elif k == "triple_edge":
        graphs = _growth_members([(0, 1)], 3, d, None, limit)
        nterm = 3
    else:
        graphs = _growth_members([(0, i) for i in range(1, t)], t, d, None, limit)
        nterm = t
    members = tuple(PatternGraph(g, tuple(range(nterm))) for g in graphs)
    return Configuration(cid, cid.weights(), members)


def _eliminate_growth(adj: dict[int, set[int]], terminals: set[int],
                      stop_at: int, final_ok=None) -> bool:
    """Backtracking reverse elimination of degree-3 growth vertices, down to
    stop_at non-terminals; final_ok, if given, judges the residue."""
    rest = set(adj) - terminals
    if len(rest) == stop_at:
        return final_ok(adj) if final_ok is not None else True
    for v in sorted(rest):
        if len(adj[v]) != 3:
            continue
        sub = {u: ns - {v} for u, ns in adj.items() if u != v}
        if _eliminate_growth(sub, terminals, stop_at, final_ok):
            return True
    return False


def is_config_member(cid: ConfigId, pattern: Graph, terminals: tuple[int, ...]) -> bool:
    """Does the pattern, with these terminal vertices in order, belong to the
    configuration's member family?"""
    k, d, t = cid.kind, cid.d, cid.t
    nterm = len(cid.weights())
    if len(terminals) != nterm or not all(pattern.has_vertex(x) for x in terminals):
        return False
    rest = sorted(pattern.vertices - set(terminals))
    if k in _FIXED_MEMBERS:
        for member in _FIXED_MEMBERS[k]:
            mg = Graph.from_edges(member)
            bcount = mg.order - nterm
            if len(rest) != bcount:
                continue
            for perm in permutations(rest):
                relabel = dict(zip(range(nterm), terminals))
                relabel.update(zip(range(nterm, nterm + bcount), perm))
                if {tuple(sorted((relabel[a], relabel[b]))) for a, b in member} \
                        == {tuple(sorted(e)) for e in pattern.edges()}:
                    return True
        return False
    term_set = set(terminals)
    term_edges = {e for e in pattern.edges() if e[0] in term_set and e[1] in term_set}

    def pairkey(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    adj = {v: set(pattern.neighbors(v)) for v in pattern.vertices}
    if k == "k2":
        return len(rest) == 0 and term_edges == {pairkey(*terminals)}
    if k == "k2d":
        return (len(rest) == d and not term_edges
                and all(set(pattern.neighbors(b)) == term_set for b in rest))
    if k == "k3":
        return len(rest) == 0 and len(term_edges) == 3
    if k == "k4":
        return (len(rest) == 1 and len(term_edges) == 3
                and set(pattern.neighbors(rest[0])) == term_set)
    if k == "k4_minus":
        a1, a2, a3 = terminals
        want = {pairkey(a1, a2), pairkey(a2, a3)}
        return (len(rest) == 1 and term_edges == want
                and set(pattern.neighbors(rest[0])) == term_set)
    if k == "pair":
        if len(rest) != d or term_edges:
            return False

        def first_growth_ok(residue: dict[int, set[int]]) -> bool:
            (b,) = set(residue) - term_set
            return residue[b] == term_set

        return _eliminate_growth(adj, term_set, 1, first_growth_ok)
    if k == "triple":
        return len(rest) == d and not term_edges and _eliminate_growth(adj, term_set, 0)
    if k == "triple_edge":
        want = {pairkey(terminals[0], terminals[1])}
        return len(rest) == d and term_edges == want and _eliminate_growth(adj, term_set, 0)
    if k == "star":
        want = {pairkey(terminals[0], x) for x in terminals[1:]}
        return len(rest) == d and term_edges == want and _eliminate_growth(adj, term_set, 0)
    raise AssertionError(k)


def _ek(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _assemble(edge_paths: dict[tuple[int, int], VertexPath],
              terminals: tuple[int, ...]) -> SubdivisionCertificate:
    """Certificate whose pattern lives directly on its host branch vertices."""
    pattern = Graph.from_edges(edge_paths.keys())
    return SubdivisionCertificate(PatternGraph(pattern, tuple(terminals)),
                                  {v: v for v in pattern.vertices},
                                  dict(edge_paths))


def _merge(cert: SubdivisionCertificate, additions, terminals) -> SubdivisionCertificate:
    paths = dict(cert.edge_paths)
    for a, b, p in additions:
        key = _ek(a, b)
        if key in paths:
            raise ExtractionError(f"pattern edge {key} reattached twice")
        paths[key] = p
    return _assemble(paths, tuple(terminals))


def _child_witness(w: JoinWitness, added: int, clique: tuple[int, ...],
                   keep, drop_added: bool,
                   extra_removed: frozenset[int] = frozenset()) -> JoinWitness:
    """Build the witness one level down after splitting off the added vertex.

    keep lists the child terminals in order as (source, weight) pairs, where a
    source is an old terminal vertex or _ADDED; weights beyond a source's
    remaining fan are an internal error, weights below it discard the paths
    with the latest clique endpoints.  Paths of old terminals not kept are
    discarded; the split-off paths' internal vertices are always removed, the
    added vertex itself only when drop_added is set.
    """
    pre = clique[1:]
    pos = {c: i for i, c in enumerate(pre)}
    prime, uprime = split_at_added(w, added)
    weight_of = dict(w.terminals)
    reduced = {v: n - (1 if v in uprime else 0) for v, n in weight_of.items()}
    m = max(reduced.values())
    terminals: list[tuple[int, int]] = []
    paths: list[VertexPath] = []
    for src, wt in keep:
        if src is _ADDED:
            if wt > m or wt > len(pre):
                raise ExtractionError(f"detached fan of {wt} exceeds bound {min(m, len(pre))}")
            terminals.append((added, wt))
            paths.extend(VertexPath((added, pre[i])) for i in range(wt))
        else:
            avail = sorted((p for p in w.fan(src) if p.last != added),
                           key=lambda p: pos[p.last])
            if wt > len(avail):
                raise ExtractionError(f"terminal {src} has {len(avail)} paths, case needs {wt}")
            terminals.append((src, wt))
            paths.extend(avail[:wt])
    removed = set(w.removed) | {v for p in prime for v in p.internal} | set(extra_removed)
    if drop_added:
        removed.add(added)
    return JoinWitness(tuple(terminals), tuple(paths), w.level - 1, frozenset(removed))


def _descend(w: JoinWitness, trace: ReductionTrace):
    """Lift the witness level by level until the step below it is an add step
    that two or more witness paths end on."""
    while True:
        if w.level < 1:
            raise ExtractionError("witness reached the empty-clique level")
        state = trace.state_at(w.level, w.removed)
        chk = validate_witness(w, state)
        if not chk:
            raise ExtractionError(
                f"invalid witness at level {w.level}: {chk.reason} {chk.detail}")
        step = trace.steps[w.level - 1]
        if isinstance(step, DeleteStep):
            w = lift_through_delete(w, step, state.clique)
            continue
        added = step.vertex
        prime, _ = split_at_added(w, added)
        if len(prime) <= 1:
            w = lift_through_add_single(w, added, state.clique)
            continue
        return w, added, state.clique


def extract(cid: ConfigId, w: JoinWitness, trace: ReductionTrace) -> SubdivisionCertificate:
    """Turn a joined witness into a certificate for one configuration member.

    The certificate lives in the initial graph minus the witness's removed
    set, its pattern sits directly on host vertices, and its terminal labels
    are the witness terminals in order.
    """
    if w.weights() != cid.weights():
        raise ValueError(f"witness weights {w.weights()} do not match {cid.weights()}")
    if cid.kind == "k2" and cid.d != 1:
        raise ValueError("only the weight-1 single-edge configuration is extractable")
    return _extract(cid, w, trace)


def _extract(cid: ConfigId, w: JoinWitness, trace: ReductionTrace) -> SubdivisionCertificate:
    w, added, clique = _descend(w, trace)
    cert = _dispatch(cid, w, added, clique, trace)
    host = induced_delete(trace.initial, w.removed)
    chk = verify_certificate(host, cert, expected_terminals=w.terminal_vertices())
    if not chk:
        raise ExtractionError(f"{cid.kind} reassembly broke the certificate: {chk.reason} {chk.detail}")
    if not is_config_member(cid, cert.pattern.graph, w.terminal_vertices()):
        raise ExtractionError(f"{cid.kind} reassembly left the member family")
    return cert


def _recurse(child: ConfigId, w, added, clique, trace, keep, drop_added,
             extra_removed: frozenset[int] = frozenset()) -> SubdivisionCertificate:
    cw = _child_witness(w, added, clique, keep, drop_added, extra_removed)
    if cw.weights() != child.weights():
        raise ExtractionError(f"child witness weights {cw.weights()} != {child.weights()}")
    return _extract(child, cw, trace)


def _dispatch(cid, w, added, clique, trace) -> SubdivisionCertificate:
    prime_list, uset = split_at_added(w, added)
    prime = {p.first: p for p in prime_list}
    ts = w.terminal_vertices()
    k, d = cid.kind, cid.d
    args = (w, added, clique, trace)

    if k == "k2":
        t1, t2 = ts
        return _assemble({_ek(t1, t2): join_paths_at_end(prime[t1], prime[t2])}, ts)

    if k in ("k2d", "pair"):
        t1, t2 = ts
        if d == 1:
            return _assemble({_ek(t1, added): prime[t1], _ek(t2, added): prime[t2]}, ts)
        if k == "k2d":
            sub = _recurse(k2d(d - 1), *args, [(t1, d - 1), (t2, d - 1)], True)
        else:
            sub = _recurse(triple(d - 1), *args,
                           [(t1, d - 1), (t2, d - 1), (_ADDED, d - 1)], False)
        return _merge(sub, [(t1, added, prime[t1]), (t2, added, prime[t2])], ts)

    if k == "triple":
        t1, t2, t3 = ts
        if len(prime) == 3:
            if d == 1:
                return _assemble({_ek(x, added): prime[x] for x in ts}, ts)
            sub = _recurse(triple(d - 1), *args,
                           [(t1, d - 1), (t2, d - 1), (t3, d - 1)], True)
            return _merge(sub, [(x, added, prime[x]) for x in ts], ts)
        ti, tj = sorted(uset, key=ts.index)
        tk = next(x for x in ts if x not in uset)
        if d == 1:
            sub = _recurse(k2(1), *args, [(tk, 1), (_ADDED, 1)], False)
        else:
            sub = _recurse(triple_edge(d - 1), *args,
                           [(tk, d), (_ADDED, d), (ti, d - 1)], False)
        return _merge(sub, [(ti, added, prime[ti]), (tj, added, prime[tj])], ts)

    if k == "triple_edge":
        t1, t2, t3 = ts
        if len(prime) == 3:
            if d == 1:
                sub = _recurse(k2(1), *args, [(t1, 1), (t2, 1)], True)
            else:
                sub = _recurse(triple_edge(d - 1), *args,
                               [(t1, d), (t2, d), (t3, d - 1)], True)
            return _merge(sub, [(x, added, prime[x]) for x in ts], ts)
        if uset == {t1, t2}:
            sub = _recurse(triple(d), *args, [(t1, d), (t2, d), (t3, d)], True)
            return _merge(sub, [(t1, t2, join_paths_at_end(prime[t1], prime[t2]))], ts)
        (ti,) = uset - {t3}
        to = t2 if ti == t1 else t1
        sub = _recurse(star(d - 1, 3), *args,
                       [(to, d + 1), (ti, d), (_ADDED, d + 1)], False)
        return _merge(sub, [(ti, added, prime[ti]), (t3, added, prime[t3])], ts)

    if k == "star":
        return _dispatch_star(cid, w, added, clique, trace, prime, uset)

    if k == "hex_pair":
        t1, t2 = ts
        sub = _recurse(HEX_TRIPLE, *args, [(t1, 3), (t2, 3), (_ADDED, 3)], False)
        return _merge(sub, [(t1, added, prime[t1]), (t2, added, prime[t2])], ts)

    if k == "hex_triple":
        t1, t2, t3 = ts
        if len(prime) == 3:
            sub = _recurse(QUINT_TRIPLE, *args, [(t1, 2), (_ADDED, 2), (t2, 2)], False)
            return _merge(sub, [(x, added, prime[x]) for x in ts], ts)
        tk = next(x for x in ts if x not in uset)
        succ = ts[(ts.index(tk) + 1) % 3]
        sub = _recurse(QUINT_TRIPLE_EDGE, *args, [(tk, 3), (_ADDED, 3), (succ, 2)], False)
        ui, uj = sorted(uset, key=ts.index)
        return _merge(sub, [(ui, added, prime[ui]), (uj, added, prime[uj])], ts)

    if k == "quint_triple":
        t1, t2, t3 = ts
        if len(prime) == 3:
            sub = _recurse(triple(1), *args, [(t1, 1), (t2, 1), (_ADDED, 1)], False)
            return _merge(sub, [(x, added, prime[x]) for x in ts], ts)
        if uset == {t1, t2}:
            sub = _recurse(QUINT_QUAD, *args,
                           [(t1, 1), (t2, 1), (_ADDED, 2), (t3, 2)], False)
            return _merge(sub, [(t1, added, prime[t1]), (t2, added, prime[t2])], ts)
        (ti,) = uset - {t3}
        to = t2 if ti == t1 else t1
        sub = _recurse(triple_edge(1), *args, [(to, 2), (_ADDED, 2), (ti, 1)], False)
        return _merge(sub, [(ti, added, prime[ti]), (t3, added, prime[t3])], ts)

    if k == "quint_triple_edge":
        t1, t2, t3 = ts
        if len(prime) == 3:
            sub = _recurse(triple_edge(1), *args, [(t1, 2), (t2, 2), (_ADDED, 1)], False)
            return _merge(sub, [(x, added, prime[x]) for x in ts], ts)
        if uset == {t1, t2}:
            sub = _recurse(QUINT_TRIPLE, *args, [(t1, 2), (t2, 2), (t3, 2)], True)
            return _merge(sub, [(t1, t2, join_paths_at_end(prime[t1], prime[t2]))], ts)
        (ti,) = uset - {t3}
        to = t2 if ti == t1 else t1
        sub = _recurse(star(1, 3), *args, [(to, 3), (ti, 2), (_ADDED, 3)], False)
        return _merge(sub, [(ti, added, prime[ti]), (t3, added, prime[t3])], ts)

    if k == "quint_quad":
        t1, t2, t3, t4 = ts
        if len(prime) == 4:
            return _assemble({_ek(x, added): prime[x] for x in ts}, ts)
        if len(prime) == 3:
            tk = next(x for x in ts if x not in uset)
            sub = _recurse(k2(1), *args, [(tk, 1), (_ADDED, 1)], False)
            return _merge(sub, [(x, added, prime[x]) for x in sorted(uset, key=ts.index)], ts)
        if uset == {t3, t4}:
            sub = _recurse(triple(1), *args, [(t1, 1), (t2, 1), (t3, 1)], True)
            return _merge(sub, [(t3, t4, join_paths_at_end(prime[t3], prime[t4]))], ts)
        ti, tj = [x for x in ts if x not in uset]
        sub = _recurse(star(0, 3), *args, [(_ADDED, 2), (ti, 1), (tj, 2)], False)
        ua, ub = sorted(uset, key=ts.index)
        return _merge(sub, [(ua, added, prime[ua]), (ub, added, prime[ub])], ts)

    raise ExtractionError(f"no extraction rules for {k}")


def _dispatch_star(cid, w, added, clique, trace, prime, uset) -> SubdivisionCertificate:
    d, t = cid.d, cid.t
    ts = w.terminal_vertices()
    t1 = ts[0]
    args = (w, added, clique, trace)

    if d == 0:
        if t1 in uset:
            i0 = next(i for i in range(1, t) if ts[i] in uset)
            link = join_paths_at_end(prime[t1], prime[ts[i0]])
            if t == 3:
                other = ts[3 - i0]
                sub = _recurse(k2(1), *args, [(t1, 1), (other, 1)], True)
            else:
                keep = [(t1, t - 2)]
                keep += [(ts[j], j) for j in range(1, i0)]
                keep += [(ts[j], j - 1) for j in range(i0 + 1, t)]
                sub = _recurse(star(0, t - 1), *args, keep, True)
            return _merge(sub, [(t1, ts[i0], link)], ts)
        i0 = next(i for i in range(1, t) if ts[i] in uset)
        keep = [(t1, t - 1)]
        keep += [(ts[j], j) for j in range(1, i0)]
        keep += [(ts[j], j - 1) for j in range(i0 + 1, t)]
        keep += [(_ADDED, t - 1)]
        sub = _recurse(star(0, t), *args, keep, False)
        key = _ek(t1, added)
        spoke = sub.edge_paths[key].oriented_from(t1)
        link = join_paths_at_end(spoke, prime[ts[i0]])
        paths = {kk: pp for kk, pp in sub.edge_paths.items() if kk != key}
        paths[_ek(t1, ts[i0])] = link
        return _assemble(paths, ts)

    if len(prime) >= 3:
        keep = [(t1, d + t - 2)] + [(ts[j], d + j - 1) for j in range(1, t)]
        sub = _recurse(star(d - 1, t), *args, keep, True)
        attach = sorted(uset, key=ts.index)[:3]
        return _merge(sub, [(x, added, prime[x]) for x in attach], ts)

    if t1 in uset:
        i0 = next(i for i in range(1, t) if ts[i] in uset)
        link = join_paths_at_end(prime[t1], prime[ts[i0]])
        if t == 3:
            other = ts[3 - i0]
            sub = _recurse(triple_edge(d), *args,
                           [(t1, d + 1), (other, d + 1), (ts[i0], d)], True)
        else:
            keep = [(t1, d + t - 2)]
            keep += [(ts[j], d + j) for j in range(1, i0)]
            keep += [(ts[j], d + j - 1) for j in range(i0 + 1, t)]
            sub = _recurse(star(d, t - 1), *args, keep, True)
        return _merge(sub, [(t1, ts[i0], link)], ts)

    u_i0, u_j0 = sorted(uset, key=ts.index)
    keep = [(t1, d + t - 1)]
    keep += [(ts[j], d + j - 1) for j in range(1, t)]
    keep += [(_ADDED, d + t - 1)]
    sub = _recurse(star(d - 1, t + 1), *args, keep, False)
    return _merge(sub, [(u_i0, added, prime[u_i0]), (u_j0, added, prime[u_j0])], ts)


@dataclass(frozen=True)
class SeedEdge:
    """An edge outside the clique of a derived pair, with both endpoints
    (d-1,d-1)-joined to that clique by single edges."""

    level: int
    u1: int
    u2: int
    witness: JoinWitness


def find_seed_edge(trace: ReductionTrace, d: int) -> SeedEdge:
    """Locate the last level whose non-clique part still has an edge.

    The step leaving that level must add one endpoint of every such edge; that
    endpoint sees the whole clique and the other endpoint keeps its original
    degree, so both reach d-1 clique vertices by single edges.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    deg, vtx = trace.initial.min_degree()
    if deg < d:
        raise MinDegreeError(deg, d, vtx)
    for level in range(trace.terminal_level, -1, -1):
        state = trace.levels[level]
        cs = state.clique_set()
        if any(state.graph.neighbors(a) - cs for a in state.outside()):
            break
    else:
        raise ExtractionError("no level with an edge outside the clique")
    step = trace.steps[level]
    if not isinstance(step, AddStep):
        raise ExtractionError("edge-bearing level not followed by an add step")
    u1 = step.vertex
    state = trace.levels[level]
    cs = state.clique_set()
    outside_nbrs = sorted(state.graph.neighbors(u1) - cs)
    if not outside_nbrs:
        raise ExtractionError("added vertex has no neighbor outside the clique")
    u2 = outside_nbrs[0]
    clique = state.clique
    u2_reach = [c for c in clique if state.graph.has_edge(u2, c)]
    if len(u2_reach) < d - 1 or len(clique) < d - 1:
        raise ExtractionError("clique too small for the seed fans")
    paths = [VertexPath((u1, c)) for c in clique[:d - 1]]
    paths += [VertexPath((u2, c)) for c in u2_reach[:d - 1]]
    wit = JoinWitness(((u1, d - 1), (u2, d - 1)), tuple(paths), level)
    return SeedEdge(level, u1, u2, wit)


@dataclass(frozen=True)
class ContainmentWitness:
    """A subdivision certificate in some level's non-clique part whose
    terminal branch vertices are jointly joined to that level's clique, in the
    level graph minus the certificate's non-terminal vertices."""

    certificate: SubdivisionCertificate
    join: JoinWitness


def _check_containment(cw: ContainmentWitness, trace: ReductionTrace) -> None:
    cert, join = cw.certificate, cw.join
    terms = join.terminal_vertices()
    labels = cert.pattern.terminal_labels
    if labels is None or tuple(cert.branch_map[x] for x in labels) != terms:
        raise ExtractionError("containment terminals disagree")
    hidden = cert.host_vertices() - set(terms)
    if not hidden <= join.removed:
        raise ExtractionError("certificate body not removed from the join host")
    state = trace.state_at(join.level, join.removed)
    chk = validate_witness(join, state)
    if not chk:
        raise ExtractionError(f"containment join invalid: {chk.reason} {chk.detail}")
    if cert.host_vertices() & trace.levels[join.level].clique_set():
        raise ExtractionError("certificate touches the clique")
    host = induced_delete(trace.initial, join.removed - cert.host_vertices())
    chk = verify_certificate(host, cert)
    if not chk:
        raise ExtractionError(f"containment certificate invalid: {chk.reason} {chk.detail}")


def find_k4_seed(trace: ReductionTrace, d: int) -> ContainmentWitness:
    """Descend from the seed edge to a pair containing a complete 4-vertex
    subdivision whose three terminals are (d-3)-joined each.

    The walk keeps a growing certificate alongside the join: edge, then
    triangle, then either the complete 4-vertex graph directly or its
    one-edge-short form whose missing edge is later closed through the spare
    branch vertex.  Every iteration drops at least one level, so the walk
    terminates; the case analysis below is exhaustive.
    """
    if d < 4:
        raise ValueError("need d >= 4")
    deg, vtx = trace.initial.min_degree()
    if deg < d:
        raise MinDegreeError(deg, d, vtx)
    seed = find_seed_edge(trace, d)
    cert = _assemble({_ek(seed.u1, seed.u2): VertexPath((seed.u1, seed.u2))},
                     (seed.u1, seed.u2))
    join = seed.witness
    kind = "k2"
    while True:
        join, added, clique = _descend(join, trace)
        prime_list, uset = split_at_added(join, added)
        prime = {p.first: p for p in prime_list}
        ts = join.terminal_vertices()
        if kind == "k2":
            t1, t2 = ts
            cert = _merge(cert, [(t1, added, prime[t1]), (t2, added, prime[t2])],
                          (t1, t2, added))
            join = _child_witness(join, added, clique,
                                  [(t1, d - 2), (t2, d - 2), (_ADDED, d - 2)], False)
            kind = "k3"
        elif kind == "k3":
            t1, t2, t3 = ts
            if len(prime) == 3:
                cert = _merge(cert, [(x, added, prime[x]) for x in ts], ts)
                join = _child_witness(join, added, clique,
                                      [(t1, d - 3), (t2, d - 3), (t3, d - 3)], True)
                out = ContainmentWitness(cert, join)
                _check_containment(out, trace)
                return out
            s, q = sorted(uset, key=ts.index)
            r = next(x for x in ts if x not in uset)
            cert = _merge(cert, [(s, added, prime[s]), (q, added, prime[q])],
                          (r, s, added))
            join = _child_witness(join, added, clique,
                                  [(r, d - 2), (s, d - 3), (_ADDED, d - 2)], False,
                                  extra_removed=frozenset({q}))
            kind = "k4_minus"
        else:
            a1, a2, a3 = ts
            y = next(x for x in cert.pattern.graph.vertices if x not in ts)
            thru_y = lambda p, q: join_paths_at_end(
                cert.edge_paths[_ek(p, y)].oriented_from(p),
                cert.edge_paths[_ek(q, y)].oriented_from(q))
            if len(prime) == 3:
                paths = {_ek(a1, a2): cert.edge_paths[_ek(a1, a2)],
                         _ek(a2, a3): cert.edge_paths[_ek(a2, a3)],
                         _ek(a1, a3): thru_y(a1, a3),
                         _ek(a1, added): prime[a1],
                         _ek(a2, added): prime[a2],
                         _ek(a3, added): prime[a3]}
                cert = _assemble(paths, (a1, a3, added))
                join = _child_witness(join, added, clique,
                                      [(a1, d - 3), (a3, d - 3), (_ADDED, d - 3)], False,
                                      extra_removed=frozenset({a2}))
                out = ContainmentWitness(cert, join)
                _check_containment(out, trace)
                return out
            if uset == {a1, a3}:
                link = join_paths_at_end(prime[a1], prime[a3])
                cert = _merge(cert, [(a1, a3, link)], (a1, a2, a3))
                join = _child_witness(join, added, clique,
                                      [(a1, d - 3), (a2, d - 3), (a3, d - 3)], True)
                out = ContainmentWitness(cert, join)
                _check_containment(out, trace)
                return out
            (s,) = uset - {a2}
            r = a3 if s == a1 else a1
            paths = {_ek(r, s): thru_y(r, s),
                     _ek(r, a2): cert.edge_paths[_ek(r, a2)],
                     _ek(s, a2): cert.edge_paths[_ek(s, a2)],
                     _ek(s, added): prime[s],
                     _ek(a2, added): prime[a2]}
            cert = _assemble(paths, (r, s, added))
            join = _child_witness(join, added, clique,
                                  [(r, d - 2), (s, d - 3), (_ADDED, d - 2)], False,
                                  extra_removed=frozenset({a2}))
            kind = "k4_minus"


_TARGET_DEGREE = {"k4": 3, "k5minus": 4, "p6": 5, "p7": 6}


def extract_target(g: Graph, target: str, d: int | None = None) -> SubdivisionCertificate:
    """Run the full pipeline for one named target.

    auto3deg emits a maximal 3-degenerate pattern of order d+1 (k4 and k5minus
    are its forced d=3 and d=4 shapes); p6 and p7 emit the 6- and 7-vertex
    path cubes; k2d emits the complete bipartite K_{2,d-1}.  Every certificate
    is re-verified against g before being returned.
    """
    if target in ("auto3deg", "k2d"):
        if d is None or d < 2:
            raise ValueError(f"target {target!r} needs a degree parameter d >= 2")
        need = d
    elif target in _TARGET_DEGREE:
        need = _TARGET_DEGREE[target]
    else:
        raise ValueError(f"unknown target {target!r}")
    if g.order == 0:
        raise ValueError("empty input graph")
    deg, vtx = g.min_degree()
    if deg < need:
        raise MinDegreeError(deg, need, vtx)
    trace = run_trace(g)

    from .patterns import are_isomorphic, complete_graph as build_complete
    from .patterns import is_maximal_3_degenerate, k5_minus, path_cube

    if target == "k2d":
        seed = find_seed_edge(trace, need)
        cert = extract(k2d(need - 1), seed.witness, trace)
    elif target == "p7":
        cont = find_k4_seed(trace, 6)
        body = extract(HEX_TRIPLE, cont.join, trace)
        paths = dict(cont.certificate.edge_paths)
        for key, p in body.edge_paths.items():
            if key in paths:
                raise ExtractionError(f"pattern edge {key} present in both halves")
            paths[key] = p
        cert = _assemble(paths, cont.join.terminal_vertices())
        if not are_isomorphic(PatternGraph(cert.pattern.graph), path_cube(7)):
            raise ExtractionError("combined pattern is not the 7-vertex path cube")
    elif target == "p6":
        seed = find_seed_edge(trace, 5)
        body = extract(HEX_PAIR, seed.witness, trace)
        cert = _merge(body, [(seed.u1, seed.u2, VertexPath((seed.u1, seed.u2)))],
                      (seed.u1, seed.u2))
        if not are_isomorphic(PatternGraph(cert.pattern.graph), path_cube(6)):
            raise ExtractionError("combined pattern is not the 6-vertex path cube")
    else:
        dd = need
        seed = find_seed_edge(trace, dd)
        body = extract(pair(dd - 1), seed.witness, trace)
        cert = _merge(body, [(seed.u1, seed.u2, VertexPath((seed.u1, seed.u2)))],
                      (seed.u1, seed.u2))
        pat = cert.pattern.graph
        if pat.order != dd + 1 or pat.size != 3 * dd - 3:
            raise ExtractionError(
                f"pattern has {pat.order} vertices and {pat.size} edges, "
                f"wanted {dd + 1} and {3 * dd - 3}")
        if is_maximal_3_degenerate(pat) is None:
            raise ExtractionError("pattern is not maximal 3-degenerate")
        if target == "k4" and not are_isomorphic(PatternGraph(pat), build_complete(4)):
            raise ExtractionError("d=3 pattern must be the complete 4-vertex graph")
        if target == "k5minus" and not are_isomorphic(PatternGraph(pat), k5_minus()):
            raise ExtractionError("d=4 pattern must be one edge short of complete")
    chk = verify_certificate(g, cert)
    if not chk:
        raise ExtractionError(f"final self-verification failed: {chk.reason} {chk.detail}")
    return cert
