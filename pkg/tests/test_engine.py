import random

import pytest

from degsub.engine import (HEX_PAIR, HEX_TRIPLE, QUINT_QUAD, QUINT_TRIPLE,
                           QUINT_TRIPLE_EDGE, ConfigId,
                           MinDegreeError, config_members, extract,
                           extract_target, find_k4_seed, find_seed_edge,
                           is_config_member, k2, k2d, pair, star, triple,
                           triple_edge)
from degsub.graphs import Graph, PatternGraph, VertexPath, verify_certificate
from degsub.joins import JoinWitness, validate_witness
from degsub.oracle import find_subdivision, random_min_degree_graph
from degsub.patterns import (are_isomorphic, complete_bipartite_2d,
                             complete_graph, is_maximal_3_degenerate, k5_minus,
                             path_cube)
from degsub.reduction import run_trace

from conftest import icosahedron_graph, petersen_graph


def test_config_weights():
    assert k2(1).weights() == (1, 1)
    assert k2d(4).weights() == (4, 4)
    assert pair(3).weights() == (3, 3)
    assert triple_edge(2).weights() == (3, 3, 2)
    assert star(0, 3).weights() == (2, 1, 2)
    assert star(2, 4).weights() == (5, 3, 4, 5)
    assert ConfigId("k4_minus", 1).weights() == (2, 1, 2)
    assert HEX_PAIR.weights() == (4, 4)
    assert QUINT_QUAD.weights() == (1, 1, 2, 2)


def test_config_id_validation():
    with pytest.raises(ValueError):
        ConfigId("pair")
    with pytest.raises(ValueError):
        ConfigId("star", 1)
    with pytest.raises(ValueError):
        ConfigId("hex_pair", 2)
    with pytest.raises(ValueError):
        ConfigId("mystery")


def test_quint_triple_single_member():
    conf = config_members(QUINT_TRIPLE)
    assert len(conf.members) == 1
    m = conf.members[0].graph
    assert m.order == 5 and m.size == 6
    assert conf.weights == (2, 2, 2)


def test_quint_quad_two_members():
    conf = config_members(QUINT_QUAD)
    assert len(conf.members) == 2
    assert conf.weights == (1, 1, 2, 2)
    star_member = conf.members[0].graph
    assert sorted(star_member.degree(v) for v in star_member.vertices) == [1, 1, 1, 1, 4]


def test_k2_weighted_member_is_single_edge():
    conf = config_members(k2(5))
    assert len(conf.members) == 1
    assert conf.members[0].graph.edges() == [(0, 1)]
    assert conf.weights == (5, 5)


def test_hex_pair_members_have_eleven_edges():
    conf = config_members(HEX_PAIR)
    assert len(conf.members) == 3
    first = {tuple(sorted(e)) for e in conf.members[0].graph.edges()}
    assert first == {(0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4),
                     (3, 4), (0, 5), (3, 5), (4, 5)}
    for m in conf.members:
        assert m.graph.size == 11
        assert is_config_member(pair(4), m.graph, (0, 1))


def test_hex_triple_members_embed_in_growth_family():
    conf = config_members(HEX_TRIPLE)
    assert len(conf.members) == 3
    for m in conf.members:
        assert m.graph.size == 9
        assert is_config_member(triple(3), m.graph, (0, 1, 2))


def test_quint_members_embed_in_growth_families():
    assert is_config_member(triple(2), config_members(QUINT_TRIPLE).members[0].graph, (0, 1, 2))
    assert is_config_member(triple_edge(2),
                            config_members(QUINT_TRIPLE_EDGE).members[0].graph, (0, 1, 2))


def test_hex_pair_plus_terminal_edge_is_path_cube_6():
    for m in config_members(HEX_PAIR).members:
        closed = m.graph.with_edge(0, 1)
        assert are_isomorphic(PatternGraph(closed), path_cube(6))


def test_hex_triple_plus_k4_is_path_cube_7():
    for m in config_members(HEX_TRIPLE).members:
        g = m.graph
        for extra in ((0, 1), (0, 2), (1, 2), (0, 6), (1, 6), (2, 6)):
            g = g.with_edge(*extra)
        assert are_isomorphic(PatternGraph(g), path_cube(7))


def test_pair_members_close_to_maximal_3_degenerate():
    for d in (2, 3):
        for m in config_members(pair(d)).members:
            closed = m.graph.with_edge(0, 1)
            assert is_maximal_3_degenerate(closed) is not None
    assert len(config_members(pair(2)).members) == 1
    assert are_isomorphic(PatternGraph(config_members(pair(2)).members[0].graph.with_edge(0, 1)),
                          complete_graph(4))


def test_growth_member_enumeration_limit():
    with pytest.raises(ValueError, match="limit"):
        config_members(triple(6), limit=10)


def test_find_seed_edge_k4():
    trace = run_trace(complete_graph(4).graph)
    seed = find_seed_edge(trace, 3)
    assert (seed.level, seed.u1, seed.u2) == (2, 2, 3)
    assert set(seed.witness.paths) == {VertexPath((2, 1)), VertexPath((2, 0)),
                                       VertexPath((3, 1)), VertexPath((3, 0))}
    assert validate_witness(seed.witness, trace.state_at(2))


def test_find_seed_edge_complete_graphs_pick_last_two():
    for d in (3, 4, 5):
        trace = run_trace(complete_graph(d + 1).graph)
        seed = find_seed_edge(trace, d)
        assert {seed.u1, seed.u2} == {d - 1, d}


def test_find_seed_edge_requires_degree():
    trace = run_trace(complete_graph(3).graph)
    with pytest.raises(MinDegreeError):
        find_seed_edge(trace, 4)


def test_extract_path_configuration_on_triangle():
    trace = run_trace(complete_graph(3).graph)
    seed = find_seed_edge(trace, 2)
    cert = extract(k2(1), seed.witness, trace)
    assert cert.edge_paths == {(1, 2): VertexPath((1, 0, 2))}
    assert cert.pattern.terminal_labels == (1, 2)


def test_extract_k2d_gives_bipartite_pattern():
    g = random_min_degree_graph(12, 4, random.Random(7))
    trace = run_trace(g)
    seed = find_seed_edge(trace, 4)
    cert = extract(k2d(3), seed.witness, trace)
    assert are_isomorphic(PatternGraph(cert.pattern.graph), complete_bipartite_2d(3))
    assert verify_certificate(g, cert, expected_terminals=[seed.u1, seed.u2])


def test_extract_rejects_weight_mismatch():
    trace = run_trace(complete_graph(4).graph)
    seed = find_seed_edge(trace, 3)
    with pytest.raises(ValueError, match="weights"):
        extract(k2(1), seed.witness, trace)


def test_extract_rejects_weighted_single_edge_config():
    trace = run_trace(complete_graph(4).graph)
    seed = find_seed_edge(trace, 3)
    with pytest.raises(ValueError, match="single-edge"):
        extract(k2(2), seed.witness, trace)


def test_find_k4_seed_on_k5():
    trace = run_trace(complete_graph(5).graph)
    cont = find_k4_seed(trace, 4)
    pat = cont.certificate.pattern.graph
    assert pat.order == 4 and pat.size == 6
    assert cont.join.weights() == (1, 1, 1)


def test_find_k4_seed_on_k7():
    trace = run_trace(complete_graph(7).graph)
    cont = find_k4_seed(trace, 6)
    assert cont.join.weights() == (3, 3, 3)
    assert cont.certificate.pattern.graph.size == 6


def test_find_k4_seed_on_random_graphs():
    for seed in range(6):
        g = random_min_degree_graph(14 + seed, 6, random.Random(seed))
        cont = find_k4_seed(run_trace(g), 6)
        assert cont.certificate.pattern.graph.order == 4


def test_extract_target_p6_on_k6():
    g = complete_graph(6).graph
    cert = extract_target(g, "p6")
    assert are_isomorphic(PatternGraph(cert.pattern.graph), path_cube(6))
    assert verify_certificate(g, cert)


def test_extract_target_k4_on_petersen():
    g = petersen_graph()
    cert = extract_target(g, "k4")
    assert are_isomorphic(PatternGraph(cert.pattern.graph), complete_graph(4))
    assert verify_certificate(g, cert)
    assert find_subdivision(g, complete_graph(4)).found


def test_extract_target_p6_on_icosahedron():
    g = icosahedron_graph()
    cert = extract_target(g, "p6")
    assert verify_certificate(g, cert)
    assert are_isomorphic(PatternGraph(cert.pattern.graph), path_cube(6))
    assert find_subdivision(g, path_cube(6)).found


def test_extract_target_triangle_at_degree_2():
    cycle = Graph.from_edges([(i, (i + 1) % 5) for i in range(5)])
    cert = extract_target(cycle, "auto3deg", 2)
    pat = cert.pattern.graph
    assert pat.order == 3 and pat.size == 3


def test_extract_target_k2d_small():
    cert = extract_target(complete_graph(4).graph, "k2d", 2)
    assert are_isomorphic(PatternGraph(cert.pattern.graph), complete_bipartite_2d(1))


def test_extract_target_forced_patterns():
    for seed in range(5):
        g = random_min_degree_graph(11, 4, random.Random(100 + seed))
        c3 = extract_target(g, "k4")
        assert are_isomorphic(PatternGraph(c3.pattern.graph), complete_graph(4))
        c4 = extract_target(g, "k5minus")
        assert are_isomorphic(PatternGraph(c4.pattern.graph), k5_minus())


def test_extract_target_p7_small_battery():
    for seed in range(5):
        g = random_min_degree_graph(10 + 2 * seed, 6, random.Random(200 + seed))
        cert = extract_target(g, "p7")
        assert are_isomorphic(PatternGraph(cert.pattern.graph), path_cube(7))
        assert verify_certificate(g, cert)


def test_extract_target_min_degree_message():
    with pytest.raises(MinDegreeError) as info:
        extract_target(complete_graph(6).graph, "p7")
    assert str(info.value) == "minimum degree 5 < 6 at vertex 0"


def test_extract_target_needs_d_for_auto3deg():
    with pytest.raises(ValueError):
        extract_target(complete_graph(6).graph, "auto3deg")
    with pytest.raises(ValueError):
        extract_target(complete_graph(6).graph, "bogus")


def test_extract_target_terminals_recorded():
    g = complete_graph(6).graph
    cert = extract_target(g, "auto3deg", 5)
    labels = cert.pattern.terminal_labels
    assert labels is not None and len(labels) == 2
    assert verify_certificate(g, cert, expected_terminals=list(labels))
    # the terminal pair is the seed edge, present in the host
    assert g.has_edge(*labels)


def test_extraction_deterministic():
    g = random_min_degree_graph(17, 5, random.Random(42))
    a = extract_target(g, "p6")
    b = extract_target(g, "p6")
    assert a == b


def test_extract_quint_quad_star_base_direct():
    # witness placed by hand on the complete-graph trace so that all four
    # terminals' paths converge on the vertex added below their level
    trace = run_trace(complete_graph(10).graph)
    w = JoinWitness(((6, 1), (7, 1), (8, 2), (9, 2)),
                    (VertexPath((6, 5)), VertexPath((7, 5)),
                     VertexPath((8, 5)), VertexPath((8, 4)),
                     VertexPath((9, 5)), VertexPath((9, 3))), level=6)
    cert = extract(QUINT_QUAD, w, trace)
    assert set(cert.edge_paths) == {(5, 6), (5, 7), (5, 8), (5, 9)}
    assert all(len(p) == 2 for p in cert.edge_paths.values())
    assert cert.pattern.terminal_labels == (6, 7, 8, 9)


def test_extract_quint_quad_pair_union_member():
    # only the two weight-2 terminals reach the added vertex: the union path
    # becomes the pattern edge between them
    trace = run_trace(complete_graph(10).graph)
    w = JoinWitness(((6, 1), (7, 1), (8, 2), (9, 2)),
                    (VertexPath((6, 4)), VertexPath((7, 3)),
                     VertexPath((8, 5)), VertexPath((8, 2)),
                     VertexPath((9, 5)), VertexPath((9, 1))), level=6)
    cert = extract(QUINT_QUAD, w, trace)
    assert (8, 9) in cert.edge_paths
    assert cert.edge_paths[(8, 9)] == VertexPath((8, 5, 9))
    host = complete_graph(10).graph
    assert verify_certificate(host, cert, expected_terminals=[6, 7, 8, 9])
