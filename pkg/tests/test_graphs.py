from collections import Counter

import networkx as nx
import pytest
from networkx.algorithms.approximation import treewidth_min_degree

from lombardikit.errors import BadParameter, ConstructionInfeasible
from lombardikit.graphs import (
    BLUE,
    FAMILIES,
    RED,
    YELLOW,
    EmbeddedGraph,
    build_apex_tree,
    build_B,
    build_S,
    build_S_bipartite,
    build_S_maximal,
    degeneracy_empties,
    is_bipartite,
    is_tree,
    is_two_tree,
    maximal_chain_lengths,
    quad_faces,
    series_parallel_reduces,
)


def to_nx(g: EmbeddedGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def to_embedding(g: EmbeddedGraph) -> nx.PlanarEmbedding:
    # networkx wants clockwise neighbor lists
    emb = nx.PlanarEmbedding()
    emb.set_data({v: list(reversed(rot)) for v, rot in enumerate(g.rotation)})
    return emb


def nx_face_count(g: EmbeddedGraph) -> int:
    emb = to_embedding(g)
    seen, faces = set(), 0
    for u, v in emb.edges():
        if (u, v) not in seen:
            emb.traverse_face(u, v, mark_half_edges=seen)
            faces += 1
    return faces


def degree_hist(g):
    return Counter(g.degree(v) for v in range(g.n))


# -- counts ------------------------------------------------------------------


@pytest.mark.parametrize("k", range(2, 13))
def test_B_counts(k):
    g = build_B(k)
    assert g.n == 2 * k * k + 2
    assert degree_hist(g) == Counter({2 * k: 2 * k + 2, 2: 2 * k * k - 2 * k})
    assert len(g.by_color(YELLOW)) == 2 and len(g.by_color(BLUE)) == 2 * k
    assert all(g.degree(v) == 2 for v in g.by_color(RED))


@pytest.mark.parametrize("k", range(2, 11))
def test_S_counts(k):
    g = build_S(k)
    assert g.n == 8 * k * k - 2 * k + 2
    assert all(g.degree(v) == 4 * k for v in g.by_color(YELLOW) + g.by_color(BLUE))
    assert {g.degree(v) for v in g.by_color(RED)} == {2, 3}


def test_S3_histogram():
    h = degree_hist(build_S(3))
    assert h[12] == 8 and set(h) == {2, 3, 12}
    assert build_S(3).n == 68


def test_B5_example():
    g = build_B(5)
    assert (g.n, len(g.by_color(RED))) == (52, 40)


@pytest.mark.parametrize("builder", list(FAMILIES.values()))
def test_small_k_is_rejected(builder):
    with pytest.raises(BadParameter):
        builder(1)


# -- structure ---------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(FAMILIES))
@pytest.mark.parametrize("k", [2, 3, 5])
def test_rotation_is_a_planar_embedding(name, k):
    g = FAMILIES[name](k)
    emb = to_embedding(g)
    emb.check_structure()  # raises unless the rotation system is planar
    assert g.euler_ok()
    assert len(g.faces) == nx_face_count(g)
    assert g.n - len(g.edges) + len(g.faces) == 2


@pytest.mark.parametrize("k", [2, 3, 5, 8])
def test_B_is_bipartite_and_planar(k):
    g = build_B(k)
    assert is_bipartite(g) and nx.is_bipartite(to_nx(g))
    assert nx.check_planarity(to_nx(g))[0]
    colors = g.colors
    assert all({colors[u], colors[v]} & {BLUE} and colors[u] != colors[v] for u, v in g.edges)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_B_blue_pairs_share_faces(k):
    g = build_B(k)
    faces = [set(f) for f in g.faces]
    for i in range(k):
        assert any({2 + 2 * i, 3 + 2 * i} <= f for f in faces)


@pytest.mark.parametrize("k", [2, 3, 6])
def test_B_and_S_reduce_by_low_degree_deletion(k):
    assert degeneracy_empties(build_B(k), 2)
    assert degeneracy_empties(build_S(k), 2)


@pytest.mark.parametrize("k", [2, 3, 6])
def test_S_is_series_parallel(k):
    g = build_S(k)
    assert series_parallel_reduces(g)
    assert treewidth_min_degree(to_nx(g))[0] <= 2


def test_B_is_not_series_parallel():
    # K_{2,2k} with 2k >= 3 contains a K4 minor once the red paths are added
    g = build_B(3)
    assert not series_parallel_reduces(g)


def test_reduction_rejects_K4():
    k4 = EmbeddedGraph("K4", 0, (RED,) * 4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
                       ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)))
    assert not series_parallel_reduces(k4)
    assert not degeneracy_empties(k4, 2)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_S_maximal_is_a_two_tree(k):
    g = build_S_maximal(k)
    G = to_nx(g)
    assert is_two_tree(g)
    assert nx.is_chordal(G) and max(len(c) for c in nx.chordal_graph_cliques(G)) == 3
    assert G.number_of_edges() == 2 * G.number_of_nodes() - 3
    assert G.has_edge(0, 1)
    for u, v in g.edges:
        assert set(g.neighbors(u)) & set(g.neighbors(v))
    assert {g.degree(v) for v in g.by_color(YELLOW) + g.by_color(BLUE)} == {4 * k + 1}


def test_S_maximal_chain_rule():
    assert maximal_chain_lengths(3) == (6, 5)
    with pytest.raises(ConstructionInfeasible):
        build_S_maximal(3, equal_chains=True)


def test_two_tree_recognizer_negative():
    assert not is_two_tree(build_S(2))


@pytest.mark.parametrize("k", [2, 3, 5])
def test_S_bipartite(k):
    g = build_S_bipartite(k)
    assert is_bipartite(g) and nx.is_bipartite(to_nx(g))
    assert series_parallel_reduces(g)
    assert not is_bipartite(build_S(k))


@pytest.mark.parametrize("k", [2, 3, 5])
def test_apex_tree(k):
    g = build_apex_tree(k)
    for y in (0, 1):
        assert is_tree(g, removed=[y])
        G = to_nx(g)
        G.remove_node(y)
        assert nx.is_tree(G)
    assert {g.degree(v) for v in g.by_color(YELLOW) + g.by_color(BLUE)} == {2 * k}
    assert not is_tree(g)


# -- quadrilateral faces ------------------------------------------------------


@pytest.mark.parametrize("builder,k", [(build_B, 5), (build_S, 3), (build_B, 2), (build_S, 2)])
def test_quad_faces(builder, k):
    g = builder(k)
    faces = quad_faces(g)
    assert len(faces) == k
    for s, p, t, q in faces:
        assert (s, t) == (0, 1)
        assert g.colors[p] == g.colors[q] == BLUE
    # fan order: faces advance counterclockwise around yellow 0 and wind once
    rot0 = g.rotation[0]
    deg = len(rot0)
    starts = [rot0.index(f[1]) for f in faces]
    steps = [(starts[(i + 1) % k] - starts[i]) % deg for i in range(k)]
    assert all(x > 0 for x in steps) and sum(steps) == deg
    assert len({v for f in faces for v in f[1::2]}) == 2 * k


def test_B3_faces_explicit():
    assert quad_faces(build_B(3)) == [(0, 3, 1, 4), (0, 5, 1, 6), (0, 7, 1, 2)]


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_builders_are_deterministic(name):
    assert FAMILIES[name](4) == FAMILIES[name](4)


def test_invalid_rotation_is_rejected():
    with pytest.raises(ValueError):
        EmbeddedGraph("bad", 0, (RED, RED), ((0, 1),), ((1,), ()))
    with pytest.raises(ValueError):
        EmbeddedGraph("loop", 0, (RED,), ((0, 0),), ((0,),))
