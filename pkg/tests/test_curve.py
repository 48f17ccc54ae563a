from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from tropfay.curve import (Segment, abel_jacobi, build_graph, chain_length, congruent, curve_data,
                           embed, lattice_coordinates, locate, pairing, pairing_matrix, point,
                           shortest_chain, tilde_T, tilde_cycles, vertex_point)
from tropfay.errors import InvalidChain, NotGeneric, NotOnCurve
from tropfay.sampling import generic_invariants, graph_point
from tropfay.udtoda import SpectralInvariants

from oracles import tropical_F

EX = SpectralInvariants.of((11, 5, 2, 0))
G1 = SpectralInvariants.of((6, 1, 0))


def test_curve_data_examples():
    cd = curve_data(EX)
    assert (cd.L, cd.lam, cd.p) == (11, (0, 2, 3), (3, 1))
    assert cd.K == ((18, -3), (-3, 6))
    assert cd.lambda_vec == (2, 1)
    cd = curve_data(G1)
    assert (cd.L, cd.lam, cd.p, cd.K) == (6, (0, 1), (4,), ((12,),))
    with pytest.raises(NotGeneric):
        curve_data(SpectralInvariants.of((4, 2, 0)))


def test_genus_one_graph():
    G = build_graph(curve_data(G1))
    assert len(G.vertices) == 4
    assert sorted(e.length for e in G.edges) == [1, 1, 4, 6]
    assert pairing(G, G.cycles[0], G.cycles[0]) == 12


def test_genus_two_pairings():
    G = build_graph(curve_data(EX))
    B1, B2 = G.cycles
    assert pairing(G, B1, B1) == 18 and pairing(G, B2, B2) == 6
    assert pairing(G, B1, B2) == pairing(G, B2, B1) == -3
    assert pairing(G, (), B1) == 0


def test_locate_examples():
    cd = curve_data(EX)
    G = build_graph(cd)
    P = locate(cd, 0, 0)
    assert embed(G, P) == (0, 0) and G.vertices[G.edges[P.edge].tail].name.startswith("bottom")
    P = locate(cd, 3, 6)
    e = G.edges[P.edge]
    assert e.name == "v2" and P.offset == e.length
    with pytest.raises(NotOnCurve):
        locate(cd, 50, 50)


def test_abel_jacobi_examples():
    cd = curve_data(EX)
    G = build_graph(cd)
    P1, P2, P3 = locate(cd, 3, 6), locate(cd, 0, 0), locate(cd, 0, 11)
    # straight up the left vertical edge gives the universal-cover value
    up = (Segment(G.edge_by_name("v0").id, Fraction(0), Fraction(11)),)
    assert abel_jacobi(cd, P2, P3, up) == (-11, 0)
    # the shortest path is a different lift of the same class
    assert congruent(cd.K, abel_jacobi(cd, P2, P3), (-11, 0))
    assert congruent(cd.K, abel_jacobi(cd, P1, P3), (2, 1))
    assert abel_jacobi(cd, P1, P1) == (0, 0)


def test_invalid_chain():
    G = build_graph(curve_data(EX))
    with pytest.raises(InvalidChain):
        pairing(G, (Segment(99, Fraction(0), Fraction(1)),), G.cycles[0])
    with pytest.raises(NotOnCurve):
        point(G, "v0", 100)


def test_basis_change_pairings():
    cd = curve_data(EX)
    G = build_graph(cd)
    assert tilde_T(2) == ((0, 1), (1, 1))
    assert pairing_matrix(G, tilde_cycles(G)) == ((6, 3), (3, 18))
    assert tilde_T(1) == ((1,),)


@given(st.integers(0, 10**6), st.integers(1, 5))
def test_graph_is_the_corner_locus(seed, g):
    inv = generic_invariants(random.Random(seed), g)
    cd = curve_data(inv)
    G = build_graph(cd)
    assert len(G.cycles) == g
    assert pairing_matrix(G, G.cycles) == cd.K
    for v in G.vertices:
        assert tropical_F(inv.C, v.X, v.Y)[1] >= 3
    for e in G.edges:
        a, b = G.vertices[e.tail], G.vertices[e.head]
        assert tropical_F(inv.C, (a.X + b.X) / 2, (a.Y + b.Y) / 2)[1] == 2
    # the graph is symmetric about Y = C_{-1}/2
    ys = sorted(v.Y for v in G.vertices)
    assert all(a + b == inv.c(-1) for a, b in zip(ys, reversed(ys)))


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_abel_jacobi_is_additive_mod_K(seed, g):
    rng = random.Random(seed)
    cd = curve_data(generic_invariants(rng, g))
    G = build_graph(cd)
    P, Q, R = (graph_point(rng, G) for _ in range(3))
    total = tuple(a + b for a, b in zip(abel_jacobi(cd, P, Q), abel_jacobi(cd, Q, R)))
    assert congruent(cd.K, total, abel_jacobi(cd, P, R))
    assert chain_length(shortest_chain(G, P, R)) <= chain_length(shortest_chain(G, P, Q)) \
        + chain_length(shortest_chain(G, Q, R))


def test_lattice_coordinates_of_rows():
    K = curve_data(EX).K
    assert lattice_coordinates(K, K[0]) == (1, 0)
    assert lattice_coordinates(K, (0, 0)) == (0, 0)


def test_vertex_points_embed_exactly():
    G = build_graph(curve_data(EX))
    for v in G.vertices:
        assert embed(G, vertex_point(G, v.id)) == (v.X, v.Y)


def test_exports():
    G = build_graph(curve_data(G1))
    csv_text = G.corner_locus_csv()
    assert csv_text.splitlines()[0] == "edge,name,X0,Y0,X1,Y1,length"
    assert len(csv_text.splitlines()) == len(G.edges) + 1
    assert set(G.to_json()) == {"vertices", "edges", "cycles"}
