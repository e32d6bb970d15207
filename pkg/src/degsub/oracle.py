"""Exhaustive subdivision search, planarity via forbidden subdivisions, and
sampled probing of which patterns every high-minimum-degree graph contains.

This module is an independent check on the constructive extraction engine:
the two share only the graph types, never search logic.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .graphs import (Graph, PatternGraph, SubdivisionCertificate, VertexPath,
                     verify_certificate)


class BudgetExceeded(RuntimeError):
    """A search ran out of nodes or time before completing."""


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 5_000_000
    time_limit: float = 120.0

    def __post_init__(self) -> None:
        if self.max_nodes <= 0 or self.time_limit <= 0:
            raise ValueError("budget values must be positive")


@dataclass
class SearchOutcome:
    """Result of a subdivision search.

    status is "found", "none" (search completed, nothing exists), or
    "exhausted" (budget ran out; existence undecided).  Only a completed
    search may be read as non-existence.
    """

    status: str
    certificate: SubdivisionCertificate | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def complete(self) -> bool:
        return self.status in ("found", "none")


class _SearchState:
    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.max_nodes = budget.max_nodes
        self.deadline = time.monotonic() + budget.time_limit

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded("node budget exhausted")
        if self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


def find_subdivision(g: Graph, h: PatternGraph,
                     fixed_branches: dict[int, int] | None = None,
                     budget: SearchBudget | None = None) -> SearchOutcome:
    """Backtracking search for a subdivision of h inside g.

    Branch vertices are assigned injectively with degree pruning, most
    constrained pattern vertex first; pattern edges are then routed as
    internally disjoint paths, hardest edge first, candidate paths enumerated
    shortest first.  fixed_branches pins chosen pattern vertices to hosts.
    The search is exhaustive: a "none" outcome means no subdivision exists.
    """
    budget = budget or SearchBudget()
    hg = h.graph
    if hg.order == 0:
        raise ValueError("empty pattern")
    if hg.order > g.order or hg.size > g.size:
        return SearchOutcome("none")

    hosts = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(hosts)}
    bit = [1 << i for i in range(len(hosts))]
    adj_mask = [0] * len(hosts)
    for v in hosts:
        m = 0
        for u in g.neighbors(v):
            m |= bit[idx[u]]
        adj_mask[idx[v]] = m

    pvs = sorted(hg.vertices, key=lambda v: (-hg.degree(v), v))
    fixed = dict(fixed_branches or {})
    for pv, hv in fixed.items():
        if not hg.has_vertex(pv) or not g.has_vertex(hv):
            raise ValueError(f"bad fixed branch {pv} -> {hv}")
    candidates = {}
    for pv in pvs:
        if pv in fixed:
            candidates[pv] = [idx[fixed[pv]]]
        else:
            cand = [idx[v] for v in hosts if g.degree(v) >= hg.degree(pv)]
            cand.sort(key=lambda i: (-len(g.neighbors(hosts[i])), hosts[i]))
            candidates[pv] = cand

    # Interchangeable pattern vertices (pairwise twins) get increasing host
    # indices; swapping twins is an automorphism, so this loses no solutions.
    twin_prev: dict[int, int] = {}
    classes: list[list[int]] = []
    for v in sorted(hg.vertices):
        for cls in classes:
            if all(hg.neighbors(v) - {u} == hg.neighbors(u) - {v} for u in cls):
                cls.append(v)
                break
        else:
            classes.append([v])
    for cls in classes:
        if any(v in fixed for v in cls):
            continue
        ranked = sorted(cls, key=pvs.index)
        for prev, nxt in zip(ranked, ranked[1:]):
            twin_prev[nxt] = prev

    pedges = sorted(hg.edges(), key=lambda e: (-(hg.degree(e[0]) + hg.degree(e[1])), e))
    state = _SearchState(budget)
    nverts = len(hosts)
    full_mask = (1 << nverts) - 1

    def paths_between(s: int, t: int, blocked: int, max_len: int):
        """Yield paths (as index tuples) from s to t of at most max_len edges,
        internally avoiding blocked vertices, in order of non-decreasing
        length."""
        allowed = full_mask & ~blocked | bit[s] | bit[t]
        dist = {t: 0}
        frontier = [t]
        while frontier:
            nxt = []
            for v in frontier:
                for u in range(nverts):
                    if adj_mask[v] >> u & 1 and bit[u] & allowed and u not in dist:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        if s not in dist:
            return
        for limit in range(dist[s], min(max_len, nverts - 1) + 1):
            stack = [(s, bit[s], (s,))]
            while stack:
                v, used, trail = stack.pop()
                state.tick()
                steps_left = limit - len(trail) + 1
                if v == t:
                    if steps_left == 0:
                        yield trail
                    continue
                if steps_left <= 0:
                    continue
                for u in range(nverts - 1, -1, -1):
                    if not (adj_mask[v] >> u & 1):
                        continue
                    if not (bit[u] & allowed) or bit[u] & used:
                        continue
                    if dist.get(u, nverts + 1) > steps_left - 1:
                        continue
                    stack.append((u, used | bit[u], trail + (u,)))

    def bfs_dist(s: int, t: int, blocked: int) -> int | None:
        if s == t:
            return 0
        seen = bit[s]
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for v in frontier:
                reach = adj_mask[v] & ~seen & ~blocked
                if reach >> t & 1:
                    return d
                seen |= reach
                while reach:
                    low = reach & -reach
                    nxt.append(low.bit_length() - 1)
                    reach ^= low
            frontier = nxt
        return None

    def route(assignment: dict[int, int]) -> dict[tuple[int, int], VertexPath] | None:
        branch_mask = 0
        for i in assignment.values():
            branch_mask |= bit[i]
        chosen: dict[tuple[int, int], VertexPath] = {}

        def route_edge(j: int, internal_mask: int) -> bool:
            if j == len(pedges):
                return True
            state.tick()
            # Remaining paths pairwise share no inner vertex, so their summed
            # shortest-path slack is capped by the untouched vertex pool;
            # rechecking after every placement prunes dead branches early.
            free = nverts - (branch_mask | internal_mask).bit_count()
            need = 0
            dist_here = 0
            for jj in range(j, len(pedges)):
                uu, vv = pedges[jj]
                ss, tt = assignment[uu], assignment[vv]
                dd = bfs_dist(ss, tt, (branch_mask & ~bit[ss] & ~bit[tt]) | internal_mask)
                if dd is None:
                    return False
                if jj == j:
                    dist_here = dd
                need += dd - 1
            if need > free:
                return False
            slack = free - need
            u, v = pedges[j]
            s, t = assignment[u], assignment[v]
            blocked = (branch_mask & ~bit[s] & ~bit[t]) | internal_mask
            for trail in paths_between(s, t, blocked, dist_here + slack):
                inner = 0
                for i in trail[1:-1]:
                    inner |= bit[i]
                key = (u, v) if u < v else (v, u)
                chosen[key] = VertexPath(tuple(hosts[i] for i in trail))
                if route_edge(j + 1, internal_mask | inner):
                    return True
                del chosen[key]
            return False

        return dict(chosen) if route_edge(0, 0) else None

    def assign(k: int, used: int, assignment: dict[int, int]) -> dict | None:
        if k == len(pvs):
            paths = route(assignment)
            if paths is None:
                return None
            bm = {pv: hosts[i] for pv, i in assignment.items()}
            return {"branch": bm, "paths": paths}
        pv = pvs[k]
        floor = assignment.get(twin_prev[pv], -1) if pv in twin_prev else -1
        for i in candidates[pv]:
            if bit[i] & used or i <= floor:
                continue
            state.tick()
            assignment[pv] = i
            hit = assign(k + 1, used | bit[i], assignment)
            if hit:
                return hit
            del assignment[pv]
        return None

    try:
        hit = assign(0, 0, {})
    except BudgetExceeded:
        return SearchOutcome("exhausted", nodes=state.nodes)
    if hit is None:
        return SearchOutcome("none", nodes=state.nodes)
    cert = SubdivisionCertificate(h, hit["branch"], hit["paths"])
    check = verify_certificate(g, cert)
    if not check:
        raise AssertionError(f"oracle produced an invalid certificate: {check.reason}")
    return SearchOutcome("found", cert, nodes=state.nodes)


def is_planar_small(g: Graph, budget: SearchBudget | None = None) -> bool:
    """Planarity for small graphs: no K5 and no K3,3 subdivision.

    Raises BudgetExceeded if either search fails to complete, so an
    inconclusive search is never read as planar.
    """
    from .patterns import build_named

    for name in ("k5", "k33"):
        out = find_subdivision(g, build_named(name), budget=budget)
        if out.status == "exhausted":
            raise BudgetExceeded(f"{name} search incomplete")
        if out.found:
            return False
    return True


def random_min_degree_graph(n: int, min_degree: int, rng: random.Random) -> Graph:
    """A random simple graph on vertices 0..n-1 with minimum degree at least
    min_degree: roughly regular matching rounds, then uniform patch edges.

    Deterministic given the Random instance's state.
    """
    if min_degree < 0 or min_degree >= n:
        raise ValueError("need 0 <= min_degree < n")
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for _ in range(min_degree):
        perm = rng.sample(range(n), n)
        for i in range(0, n - 1, 2):
            u, v = perm[i], perm[i + 1]
            if v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
    while True:
        deficient = [v for v in range(n) if len(adj[v]) < min_degree]
        if not deficient:
            break
        v = deficient[0]
        others = [u for u in deficient if u != v and u not in adj[v]]
        if not others:
            others = [u for u in range(n) if u != v and u not in adj[v]]
        u = rng.choice(others)
        adj[v].add(u)
        adj[u].add(v)
    return Graph.from_edges([(u, v) for u in adj for v in adj[u] if u < v],
                            vertices=range(n))


@dataclass(frozen=True)
class ProbeRow:
    order: int
    samples: int
    found: int
    counterexamples: int
    exhausted: int


@dataclass
class GoodnessReport:
    """Sampled evidence about whether every graph of minimum degree
    pattern-order - 1 contains a subdivision of the pattern.

    Evidence only: a clean sweep proves nothing, and exhausted searches are
    flagged rather than counted either way.  counterexample_graphs hold any
    sampled graph in which a completed search found no subdivision.
    """

    pattern_order: int
    min_degree: int
    seed: int
    rows: list[ProbeRow] = field(default_factory=list)
    counterexample_graphs: list[Graph] = field(default_factory=list)
    conclusive: bool = False

    @property
    def inconclusive_searches(self) -> int:
        return sum(r.exhausted for r in self.rows)

    @property
    def counterexamples(self) -> int:
        return sum(r.counterexamples for r in self.rows)


def probe_goodness(h: PatternGraph, n_max: int, samples: int, rng_seed: int,
                   budget: SearchBudget | None = None,
                   max_workers: int = 1) -> GoodnessReport:
    """Sample random graphs of minimum degree |h|-1 at each order up to n_max
    and search each for a subdivision of h.

    Worker count only parallelizes the searches; results are merged by sample
    index, so the report is identical at any worker count.
    """
    need = h.graph.order - 1
    if h.graph.order > 8:
        raise ValueError("probe patterns limited to 8 vertices")
    report = GoodnessReport(h.graph.order, need, rng_seed)
    jobs = [(order, k) for order in range(h.graph.order, n_max + 1)
            for k in range(samples)]

    def run(job: tuple[int, int]) -> tuple[int, int, str, Graph]:
        order, k = job
        rng = random.Random(rng_seed * 1_000_003 + order * 1_009 + k)
        g = random_min_degree_graph(order, need, rng)
        out = find_subdivision(g, h, budget=budget)
        return order, k, out.status, g

    if max_workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    by_order: dict[int, dict[str, int]] = {}
    for order, _, status, g in results:
        tally = by_order.setdefault(order, {"found": 0, "none": 0, "exhausted": 0})
        tally[status] += 1
        if status == "none":
            report.counterexample_graphs.append(g)
    for order in sorted(by_order):
        tally = by_order[order]
        report.rows.append(ProbeRow(order, samples, tally["found"],
                                    tally["none"], tally["exhausted"]))
    return report
