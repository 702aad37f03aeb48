"""Tests for the colored-graph automorphism engine."""

import numpy as np
import pytest

from plinth.autgq import ColoredGraph, graph_automorphism_group, incidence_graph
from plinth.algebra import symplectic_gq
from plinth.graphs import Graph, is_automorphism
from plinth.perm import PermGroup, Permutation


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_k4_automorphisms():
    k4 = Graph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    aut = graph_automorphism_group(ColoredGraph(k4))
    assert aut.order() == 24


def test_cycle_automorphisms_dihedral():
    for n in (5, 6, 8):
        aut = graph_automorphism_group(ColoredGraph(cycle_graph(n)))
        assert aut.order() == 2 * n


def test_every_generator_is_an_automorphism():
    g = cycle_graph(7)
    aut = graph_automorphism_group(ColoredGraph(g))
    for gen in aut.generators:
        assert is_automorphism(g, gen)


def test_colors_restrict_automorphisms():
    g = cycle_graph(6)
    colors = np.array([0, 1, 0, 1, 0, 1], dtype=np.int64)
    aut = graph_automorphism_group(ColoredGraph(g, colors=colors))
    # color classes alternate: only the rotations by even steps and the
    # reflections fixing the classes survive: order 6
    assert aut.order() == 6
    for gen in aut.generators:
        assert (colors[gen.images] == colors).all()


def test_asymmetric_graph():
    # smallest asymmetric tree on 7 vertices
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6)])
    aut = graph_automorphism_group(ColoredGraph(g))
    assert aut.order() == 1


def test_relabeling_invariance():
    g = cycle_graph(8)
    rng = np.random.default_rng(4)
    relabel = rng.permutation(8)
    edges = []
    for v in range(8):
        for u in g.neighbors(v):
            if v < int(u):
                edges.append((int(relabel[v]), int(relabel[int(u)])))
    h = Graph.from_edges(8, edges)
    assert graph_automorphism_group(ColoredGraph(g)).order() == (
        graph_automorphism_group(ColoredGraph(h)).order()
    )


def test_petersen_automorphism_order():
    from itertools import combinations

    pairs = list(combinations(range(5), 2))
    index = {p: i for i, p in enumerate(pairs)}
    edges = [
        (index[a], index[b])
        for a in pairs
        for b in pairs
        if a < b and not set(a) & set(b)
    ]
    pet = Graph.from_edges(10, edges)
    aut = graph_automorphism_group(ColoredGraph(pet))
    assert aut.order() == 120


def test_symplectic_gq2_incidence_aut():
    # W(2) incidence graph is the Tutte-Coxeter graph: S6 of order 720
    # extended by the point-line duality, order 1440
    geom = symplectic_gq(2)
    cg = incidence_graph(geom)
    aut = graph_automorphism_group(cg)
    assert aut.order() == 1440


def test_symplectic_gq4_incidence_aut():
    geom = symplectic_gq(4)
    cg = incidence_graph(geom)
    aut = graph_automorphism_group(cg)
    assert aut.order() == 3916800
