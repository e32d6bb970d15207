import random

import pytest

from degsub.graphs import Graph


def icosahedron_graph() -> Graph:
    edges = []
    upper = [1, 2, 3, 4, 5]
    lower = [6, 7, 8, 9, 10]
    for i in range(5):
        edges.append((0, upper[i]))
        edges.append((upper[i], upper[(i + 1) % 5]))
        edges.append((lower[i], lower[(i + 1) % 5]))
        edges.append((11, lower[i]))
        edges.append((upper[i], lower[i]))
        edges.append((upper[i], lower[(i + 1) % 5]))
    return Graph.from_edges(edges)


def petersen_graph() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(edges)


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(edges, vertices=range(n))


@pytest.fixture
def icosahedron():
    return icosahedron_graph()


@pytest.fixture
def petersen():
    return petersen_graph()
