"""The ordered-clique reduction calculus: single steps, full traces, and replay."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, induced_delete


@dataclass(frozen=True)
class PairState:
    """A graph together with an ordered clique inside it.

    The clique tuple stores the ordering explicitly; position 0 is the first
    vertex of the order (the most recently added one), never the smallest id.
    """

    graph: Graph
    clique: tuple[int, ...] = ()

    def clique_set(self) -> frozenset[int]:
        return frozenset(self.clique)

    def outside(self) -> list[int]:
        cs = set(self.clique)
        return [v for v in self.graph.sorted_vertices() if v not in cs]

    def is_terminal(self) -> bool:
        return len(self.clique) == self.graph.order

    def measure(self) -> int:
        return self.graph.order + (self.graph.order - len(self.clique))


@dataclass(frozen=True)
class AddStep:
    """Move a vertex adjacent to the whole clique to the front of the order."""

    vertex: int


@dataclass(frozen=True)
class DeleteStep:
    """Drop the clique's first vertex, rejoining each outside neighbor u to the
    first clique vertex u misses (the rewire target)."""

    vertex: int
    neighbors: tuple[int, ...]
    rewires: tuple[tuple[int, int], ...]


ReductionStep = AddStep | DeleteStep


def apply_step(state: PairState) -> tuple[PairState, ReductionStep]:
    """Perform the one applicable reduction step on a non-terminal pair.

    If some outside vertex sees the whole clique, the smallest such id is
    added at the front of the order.  Otherwise the clique's first vertex is
    deleted and every outside neighbor u gains an edge to the first clique
    vertex not adjacent to u.
    """
    if state.is_terminal():
        raise ValueError("pair is terminal: the clique covers the whole graph")
    g, clique = state.graph, state.clique
    cs = set(clique)
    candidates = [v for v in state.outside() if cs <= g.neighbors(v)]
    if candidates:
        w = min(candidates)
        return PairState(g, (w, *clique)), AddStep(w)
    v1 = clique[0]
    rewires = []
    for u in sorted(g.neighbors(v1) - cs):
        target = next(c for c in clique if not g.has_edge(u, c))
        rewires.append((u, target))
    newg = induced_delete(g, {v1}).with_edges(rewires)
    step = DeleteStep(v1, tuple(sorted(g.neighbors(v1))), tuple(rewires))
    return PairState(newg, clique[1:]), step


@dataclass(frozen=True)
class ReductionTrace:
    """A full reduction run from (g, empty clique) to a terminal pair.

    Per-level states are cached; restricted replays are computed on demand
    from the cached level.  Traces are immutable and safe to share.
    """

    initial: Graph
    steps: tuple[ReductionStep, ...]
    levels: tuple[PairState, ...] = field(repr=False)
    first_clique_level: dict[int, int] = field(repr=False)

    @property
    def terminal_level(self) -> int:
        return len(self.steps)

    def state_at(self, level: int, removed: frozenset[int] = frozenset()) -> PairState:
        """The pair at a level, optionally minus a set of never-clique vertices.

        removed may only contain vertices that are outside the clique at every
        level up to the requested one; rewires are unaffected by such removals,
        so restriction commutes with replay.
        """
        if not 0 <= level <= self.terminal_level:
            raise ValueError(f"level {level} outside 0..{self.terminal_level}")
        base = self.levels[level]
        if not removed:
            return base
        for v in removed:
            if not self.initial.has_vertex(v):
                raise ValueError(f"unknown vertex id {v}")
            first = self.first_clique_level.get(v)
            if first is not None and first <= level:
                raise ValueError(f"vertex {v} is a clique vertex by level {first}")
        return PairState(induced_delete(base.graph, removed), base.clique)


def run_trace(g: Graph) -> ReductionTrace:
    """Reduce (g, empty clique) to a terminal pair, recording every step."""
    if g.order == 0:
        raise ValueError("cannot reduce an empty graph")
    state = PairState(g, ())
    levels = [state]
    steps: list[ReductionStep] = []
    first_clique: dict[int, int] = {}
    while not state.is_terminal():
        before = state.measure()
        state, step = apply_step(state)
        if state.measure() >= before:
            raise AssertionError("reduction measure failed to decrease")
        steps.append(step)
        levels.append(state)
        if isinstance(step, AddStep) and step.vertex not in first_clique:
            first_clique[step.vertex] = len(steps)
    return ReductionTrace(g, tuple(steps), tuple(levels), first_clique)
