import random

import networkx as nx
import pytest

from nerve_bounds.arrangement import build_arrangement, furedi_palasti_lines, select_infinity_line
from nerve_bounds.construction import (CellComplex, build_four_set_example, build_theorem4_family,
                                       family_from_cells, stellar_subdivide)
from nerve_bounds.families import dual_cell_family, grid_triangulation
from nerve_bounds.geometry import Line, projective_map_line_to_infinity
from nerve_bounds.nerve import compute_nerve
from nerve_bounds.witness import (SearchSpaceExceeded, TooManyComponents, WitnessGraph, build_union_graph,
                                  choose_witnesses, edge_identity_check, multiedge_analysis,
                                  planar_choice, planarity_test, search_planar_tree_choice,
                                  triangle_label_analysis, upper_chain, witness_lemma_check)


def fp_family(n):
    lines = furedi_palasti_lines(n)
    rest = projective_map_line_to_infinity(lines, select_infinity_line(lines))
    return build_theorem4_family(stellar_subdivide(build_arrangement(rest)), len(rest))


def setup(family, k=2, b=1, strategy="path"):
    nerve = compute_nerve(family, k + 2)
    w = choose_witnesses(nerve, k, b, family)
    return nerve, w, build_union_graph(w, nerve, strategy, family)


def test_four_set_graph():
    nerve, w, g = setup(build_four_set_example())
    assert len(w) == 4
    assert len(g.edges) == 6 == 3 * 4 - 6
    assert edge_identity_check(g, nerve).passed
    tri = triangle_label_analysis(g)
    assert tri.triangles == 4 and tri.passed
    assert all(len(nu) == 4 for nu in tri.labels)
    assert planarity_test(g)[0]
    chain = upper_chain(g, nerve)
    assert chain["f_k_bound"] == 4 == chain["f_k"] and chain["chain_ok"]


def test_four_set_search_unique_choice():
    fam = build_four_set_example()
    nerve, w, g = setup(fam)
    assert all(len(c[0]) <= 2 for c in g.classes.values())
    found = search_planar_tree_choice(w, nerve)
    assert found is not None and sorted(found.edges) == sorted(g.edges)


def test_empty_level():
    cx = CellComplex()
    v = [cx.add(0) for _ in range(2)]
    fam = family_from_cells(cx, list("ABC"), [[v[0]], [v[0]], [v[1]]])
    nerve, w, g = setup(fam)
    assert len(w) == 0 and g.edges == []
    rep = edge_identity_check(g, nerve)
    assert rep.edges == rep.expected == 0 and rep.passed


def test_singleton_classes_give_no_edges():
    lines = [Line(1, 0, 0), Line(0, 1, 0)]
    fam = build_theorem4_family(stellar_subdivide(build_arrangement(lines)), 2)
    nerve, w, g = setup(fam)
    assert len(w) == 1 and g.edges == []
    assert edge_identity_check(g, nerve).passed


@pytest.mark.parametrize("n", [6, 7, 8])
@pytest.mark.parametrize("strategy", ["path", "star"])
def test_construction_identities(n, strategy):
    nerve, w, g = setup(fp_family(n), strategy=strategy)
    rep = edge_identity_check(g, nerve)
    assert rep.passed and rep.simple
    assert triangle_label_analysis(g).passed
    assert max(g.multiplicities().values()) == 1


def test_search_cap():
    nerve, w, _ = setup(fp_family(8))
    with pytest.raises(SearchSpaceExceeded):
        search_planar_tree_choice(w, nerve, cap=10)
    g, how = planar_choice(w, nerve, cap=10)
    assert how in ("path", "strategy-nonplanar")


def test_planarity():
    assert planarity_test(nx.complete_graph(4))[0]
    assert not planarity_test(nx.complete_graph(5))[0]


def two_triangle_family():
    cx = CellComplex()
    tris = []
    for _ in range(2):
        v = [cx.add(0) for _ in range(3)]
        e = [cx.add(1, (v[0], v[1])), cx.add(1, (v[1], v[2])), cx.add(1, (v[0], v[2]))]
        tris.append(cx.add(2, e))
    return family_from_cells(cx, list("ABC"), [tris, tris, tris])


def test_b2_witnesses_hit_both_components():
    fam = two_triangle_family()
    nerve = compute_nerve(fam, 3)
    w = choose_witnesses(nerve, 2, 2, fam)
    assert len(w) == 2
    assert w.points[0].component != w.points[1].component
    with pytest.raises(TooManyComponents):
        choose_witnesses(nerve, 2, 1, fam)


def test_b2_triple_edge():
    fam = build_four_set_example()
    nerve, w, g = setup(fam, k=2, b=2)
    a1, a2 = w.groups[(0, 1, 2)]
    assert g.multiplicities()[(a1, a2)] == 3
    rep = multiedge_analysis(g, nerve.f_k(2))
    assert rep.max_multiplicity == 3 and rep.multiplicity_ok
    ident = edge_identity_check(g, nerve)
    assert ident.passed and not ident.simple


def test_excess_multiplicity_flagged():
    fam = build_four_set_example()
    nerve, w, g = setup(fam, k=2, b=2)
    a1, a2 = w.groups[(0, 1, 2)]
    bad = WitnessGraph(g.k, g.b, g.witnesses, g.edges + [(a1, a2, (0, 1))], g.gamma, g.classes)
    assert multiedge_analysis(bad, nerve.f_k(2)).max_multiplicity == 4
    assert not multiedge_analysis(bad, nerve.f_k(2)).passed


def test_b1_multiplicities_one():
    nerve, w, g = setup(build_four_set_example())
    assert set(g.multiplicities().values()) == {1}


def test_dual_family_lemma_on_witness_graph():
    # the witness graph of a dual-cell family is the dual graph of the triangulation: planar
    tri = grid_triangulation(3, 3, random.Random(5))
    fam = dual_cell_family(tri)
    nerve, w, g = setup(fam)
    assert planarity_test(g)[0]
    assert len(g.edges) > 6
    verdict = witness_lemma_check(g)
    assert verdict is not None and verdict.holds
    assert upper_chain(g, nerve)["chain_ok"]


def test_to_dict_and_dot():
    _, _, g = setup(build_four_set_example())
    d = g.to_dict()
    assert d["vertices"] == ["a_1,2,3", "a_1,2,4", "a_1,3,4", "a_2,3,4"]
    assert len(d["edges"]) == 6
    assert g.to_dot().startswith("graph G {")
