"""Weighted terminal-to-clique path systems and the lifts that move them
across reduction steps."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .graphs import CheckResult, VertexPath, verify_path
from .reduction import DeleteStep, PairState


@dataclass(frozen=True)
class JoinWitness:
    """A system of internally disjoint paths joining weighted terminals to an
    ordered clique.

    Paths are stored oriented terminal-first and sorted canonically.  Exactly
    weight-many paths leave each terminal, no two paths share an endpoint
    pair, and no path passes through a terminal or clique vertex internally.
    level and removed locate the host: the trace's graph at that level minus
    the removed vertices.
    """

    terminals: tuple[tuple[int, int], ...]
    paths: tuple[VertexPath, ...]
    level: int
    removed: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        index = {v: i for i, (v, _) in enumerate(self.terminals)}
        ordered = tuple(sorted(self.paths, key=lambda p: (index.get(p.first, len(index)), p.vertices)))
        object.__setattr__(self, "paths", ordered)

    def terminal_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.terminals)

    def weights(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.terminals)

    def fan(self, terminal: int) -> list[VertexPath]:
        return [p for p in self.paths if p.first == terminal]


def validate_witness(w: JoinWitness, state: PairState) -> CheckResult:
    """Check every witness invariant against an already-restricted pair state."""
    g = state.graph
    cs = state.clique_set()
    terms = w.terminal_vertices()
    if len(set(terms)) != len(terms):
        return CheckResult.failed("terminal-repeat")
    if any(n < 1 for n in w.weights()):
        return CheckResult.failed("zero-weight")
    for t in terms:
        if not g.has_vertex(t):
            return CheckResult.failed("terminal-missing", f"vertex {t}")
        if t in cs:
            return CheckResult.failed("terminal-in-clique", f"vertex {t}")
    term_set = set(terms)
    counts = {t: 0 for t in terms}
    pairs: set[tuple[int, int]] = set()
    seen_internal: set[int] = set()
    for p in w.paths:
        if not verify_path(g, p):
            return CheckResult.failed("bad-path", str(p.vertices))
        if p.first not in term_set:
            return CheckResult.failed("stray-path", f"starts at {p.first}")
        if p.last not in cs:
            return CheckResult.failed("endpoint-outside-clique", f"ends at {p.last}")
        if (p.first, p.last) in pairs:
            return CheckResult.failed("duplicate-endpoints", f"{p.first}-{p.last}")
        pairs.add((p.first, p.last))
        inner = set(p.internal)
        if inner & (term_set | cs):
            return CheckResult.failed("internal-endpoint-hit", str(p.vertices))
        if inner & seen_internal:
            return CheckResult.failed("internal-overlap", str(p.vertices))
        if inner & w.removed:
            return CheckResult.failed("removed-vertex-used", str(p.vertices))
        seen_internal |= inner
        counts[p.first] += 1
    for t, n in w.terminals:
        if counts[t] != n:
            return CheckResult.failed("weight-mismatch", f"terminal {t}: {counts[t]} != {n}")
    return CheckResult.passed()


def lift_through_delete(w: JoinWitness, step: DeleteStep,
                        clique: tuple[int, ...]) -> JoinWitness:
    """Move a witness from just after a delete step to just before it.

    clique is the ordered clique at the witness's level.  A path is affected
    only when its final edge is one of the step's rewired edges; within each
    terminal's fan those edges, taken in clique order, are shifted one slot
    earlier, the first dropping onto the deleted vertex itself.  Internal
    vertices are untouched.
    """
    pre_clique = (step.vertex, *clique)
    pos = {c: i for i, c in enumerate(pre_clique)}
    rewired = dict(step.rewires)
    out: list[VertexPath] = []
    for t in w.terminal_vertices():
        fan = w.fan(t)
        bad = [p for p in fan if rewired.get(p.vertices[-2]) == p.last]
        bad.sort(key=lambda p: pos[p.last])
        targets = [step.vertex] + [p.last for p in bad[:-1]]
        fixed = {p: VertexPath(p.vertices[:-1] + (nt,)) for p, nt in zip(bad, targets)}
        out.extend(fixed.get(p, p) for p in fan)
    return replace(w, paths=tuple(out), level=w.level - 1)


def _has_unique_maximum(weights: tuple[int, ...]) -> bool:
    top = max(weights)
    return weights.count(top) == 1


def lift_through_add_single(w: JoinWitness, added: int,
                            clique: tuple[int, ...]) -> JoinWitness:
    """Move a witness from just after an add step to just before it, when at
    most one path ends at the added vertex.

    With no path at the added vertex the system is simply reread against the
    smaller clique.  A single path ending there is extended by one edge from
    the added vertex to the first clique vertex its terminal does not already
    reach; this needs the weight sequence to have no unique maximum.
    """
    if clique[0] != added:
        raise ValueError("clique does not start with the added vertex")
    if _has_unique_maximum(w.weights()):
        raise ValueError("weight sequence has a unique maximum")
    pre_clique = clique[1:]
    ending = [p for p in w.paths if p.last == added]
    if len(ending) > 1:
        raise ValueError(f"{len(ending)} paths end at the added vertex; detach instead")
    if not ending:
        return replace(w, level=w.level - 1)
    p = ending[0]
    taken = {q.last for q in w.fan(p.first)}
    free = next((c for c in pre_clique if c not in taken), None)
    if free is None:
        raise AssertionError("no free clique vertex to extend onto")
    extended = VertexPath(p.vertices + (free,))
    paths = tuple(extended if q == p else q for q in w.paths)
    return replace(w, paths=paths, level=w.level - 1)


def split_at_added(w: JoinWitness, added: int) -> tuple[list[VertexPath], frozenset[int]]:
    """The paths ending at the added vertex and the set of their terminals."""
    prime = [p for p in w.paths if p.last == added]
    return prime, frozenset(p.first for p in prime)


def detach(w: JoinWitness, added: int,
           clique: tuple[int, ...]) -> tuple[JoinWitness, tuple[VertexPath, ...], frozenset[int]]:
    """Split off the paths ending at a freshly added clique vertex.

    Returns the witness one level down in which the added vertex has become a
    terminal: each old terminal with a path to it loses one unit of weight,
    the added vertex gets weight m = the largest remaining weight realized by
    single edges to the first m clique vertices, and the internal vertices of
    the split-off paths are removed from the host.  Also returns those paths
    and their terminal set for reassembly.

    Callers must arrange that no remaining weight reaches zero; dropping
    exhausted terminals is the caller's job, not this function's.
    """
    if clique[0] != added:
        raise ValueError("clique does not start with the added vertex")
    prime, uprime = split_at_added(w, added)
    if len(prime) < 2:
        raise ValueError("fewer than two paths end at the added vertex")
    pre_clique = clique[1:]
    reduced = tuple((v, n - 1 if v in uprime else n) for v, n in w.terminals)
    if any(n == 0 for _, n in reduced):
        raise ValueError("detach would zero a terminal weight; drop that terminal first")
    m = max(n for _, n in reduced)
    if m > len(pre_clique):
        raise AssertionError("clique too small for the detached fan")
    new_paths = [p for p in w.paths if p.last != added]
    new_paths += [VertexPath((added, pre_clique[i])) for i in range(m)]
    internals = frozenset(v for p in prime for v in p.internal)
    out = JoinWitness(reduced + ((added, m),), tuple(new_paths),
                      w.level - 1, w.removed | internals)
    return out, tuple(prime), uprime
