import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nerve_bounds.arrangement import build_arrangement, furedi_palasti_lines, select_infinity_line
from nerve_bounds.construction import (CellComplex, build_four_set_example, build_theorem4_family,
                                       family_from_cells, stellar_subdivide)
from nerve_bounds.families import grid_triangulation, grouped_family, random_clusters
from nerve_bounds.geometry import projective_map_line_to_infinity
from nerve_bounds.nerve import (CapTooLow, ParameterRange, check_hypotheses, check_main_bounds,
                                component_count, compute_nerve, downward_closed, f_ind, induced_faces,
                                kalai_eckhoff_bound, proof_chain_bound, surface_bound_terms,
                                theorem_constant)


def brute_nerve(family):
    sets = [set(s) for s in family.sets]
    faces = []
    for r in range(1, family.n + 1):
        for sigma in combinations(range(family.n), r):
            if set.intersection(*(sets[i] for i in sigma)):
                faces.append(sigma)
    return faces


def fp_family(n):
    lines = furedi_palasti_lines(n)
    rest = projective_map_line_to_infinity(lines, select_infinity_line(lines))
    return build_theorem4_family(stellar_subdivide(build_arrangement(rest)), len(rest))


def two_triangles():
    """Complex with two disjoint closed triangles; returns it and their 2-cells."""
    cx = CellComplex()
    tris = []
    for _ in range(2):
        v = [cx.add(0) for _ in range(3)]
        e = [cx.add(1, (v[0], v[1])), cx.add(1, (v[1], v[2])), cx.add(1, (v[0], v[2]))]
        tris.append(cx.add(2, e))
    return cx, tris


def test_four_set_nerve():
    fam = build_four_set_example()
    nerve = compute_nerve(fam, 3)
    assert nerve.faces() == brute_nerve(fam)
    assert (0, 1, 2, 3) not in nerve and not nerve.truncated
    assert f_ind(nerve, 1) == 6


def test_single_set():
    fam = build_four_set_example()
    one = family_from_cells(fam.complex, ["A"], [[0]])
    nerve = compute_nerve(one, 2)
    assert nerve.faces() == [(0,)] and nerve.f_k(0) == 1


def test_truncation_flag():
    nerve = compute_nerve(build_four_set_example(), 1)
    assert nerve.truncated and nerve.f == [4, 6]
    with pytest.raises(CapTooLow):
        nerve.f_k(2)
    with pytest.raises(CapTooLow):
        f_ind(nerve, 1)


def test_f_ind_zero_without_higher_faces():
    fam = fp_family(6)
    nerve = compute_nerve(fam, 4)
    assert f_ind(nerve, 2) == 0


def test_f_ind_fp6_matches_enumeration():
    fam = fp_family(6)
    nerve = compute_nerve(fam, 3)
    faces = set(brute_nerve(fam))
    pairs = {p for p in faces if len(p) == 2 and any(len(s) == 3 and set(p) <= set(s) for s in faces)}
    assert f_ind(nerve, 1) == len(pairs)


def test_component_count_examples():
    fam = build_four_set_example()
    assert component_count(fam, (0, 1, 2)) == 1
    assert component_count(fam, (0, 1, 2, 3)) == 0
    fam7 = fp_family(7)
    nerve = compute_nerve(fam7, 3)
    assert all(component_count(fam7, s) == 1 for s in nerve.faces())


def test_hypotheses_pass_for_construction():
    for n in (6, 7, 8):
        assert check_hypotheses(fp_family(n), 2, 1).passed


def test_hypothesis_i_fails_on_four_wise():
    fam = build_four_set_example()
    v = [c.id for c in fam.complex.cells if c.dim == 0][0]
    same = family_from_cells(fam.complex, list("ABCD"), [[v]] * 4)
    report = check_hypotheses(same, 2, 1)
    assert not report.no_higher_faces and not report.passed


def test_hypothesis_ii_fails_on_two_components():
    cx, (t1, t2) = two_triangles()
    fam = family_from_cells(cx, ["A", "B", "C"], [[t1, t2], [t1, t2], [t1]])
    report = check_hypotheses(fam, 2, 1)
    assert report.no_higher_faces
    assert ((0, 1), 2) in report.component_violations
    assert not report.passed
    assert check_hypotheses(fam, 2, 2).passed


def test_kalai_eckhoff():
    for n in range(3, 12):
        assert kalai_eckhoff_bound(n, 2, 1, 2) == comb(n - 1, 2)
    assert kalai_eckhoff_bound(6, 2, 1, 2) == 10
    # independent loop for (n=7, d=2, r=2, k=3): j runs over 3 only
    total = 0
    for j in range(3, 2 + 2):
        total += comb(j - 2, 3 - 2) * comb(7 - j + 2 - 1, 2)
    assert kalai_eckhoff_bound(7, 2, 2, 3) == total == 10
    with pytest.raises(ParameterRange):
        kalai_eckhoff_bound(5, 2, 1, 3)


def test_theorem_constants():
    assert theorem_constant(2) == 3
    assert theorem_constant(3) == Fraction(13, 16)
    assert theorem_constant(5, 2) == 2
    with pytest.raises(ParameterRange):
        theorem_constant(4, 2)
    with pytest.raises(ParameterRange):
        theorem_constant(1)


def test_main_bound_on_construction():
    nerve = compute_nerve(fp_family(6), 4)
    rep = check_main_bounds(nerve, 2, 1)
    assert rep.satisfied
    assert rep.margin == 3 * rep.f_ind_km1 - rep.f_k > 0


def test_main_bound_empty_level():
    cx, (t1, t2) = two_triangles()
    fam = family_from_cells(cx, ["A", "B", "C"], [[t1], [t2], [t1]])
    nerve = compute_nerve(fam, 3)
    rep = check_main_bounds(nerve, 2, 1)
    assert rep.f_k == 0 and rep.satisfied


def test_surface_bound_b2():
    terms = surface_bound_terms(5, 2, 2)
    assert terms == {"forest": (Fraction(2), Fraction(-6))}
    # (k=6, b=2): k - 2b = 2 divides the chi term too
    assert surface_bound_terms(6, 2, 0)["forest"] == (Fraction(1), Fraction(0))
    assert surface_bound_terms(6, 2, -2)["forest"] == (Fraction(1), Fraction(3))


def test_surface_bound_b1_sphere_matches_chain():
    # with chi = 2, t = 3k and the many-edges branch is the proof-chain bound
    for k in (2, 3, 4):
        for find in (0, 5, 40):
            slope, add = surface_bound_terms(k, 1, 2)["many_edges"]
            assert slope * find + add == proof_chain_bound(find, k, 3 * k + 1)
            slope, add = surface_bound_terms(k, 1, 2)["few_edges"]
            assert slope * find + add == proof_chain_bound(find, k, 3 * k)


def test_check_main_bounds_with_chi():
    nerve = compute_nerve(build_four_set_example(), 3)
    rep = check_main_bounds(nerve, 2, 1, chi=2)
    assert rep.constants_origin == "proof-derived"
    assert rep.bound == max(rep.branches.values())
    assert rep.bound == 4 and rep.satisfied  # (6 + 6)/3


@st.composite
def grouped(draw):
    seed = draw(st.integers(0, 10_000))
    rng = random.Random(seed)
    tri = grid_triangulation(rng.randint(1, 3), rng.randint(1, 3), rng, drop=0.2)
    groups = random_clusters(tri, rng.randint(1, 7), rng.randint(1, 4), rng)
    return grouped_family(tri, groups)


@settings(max_examples=40, deadline=None)
@given(grouped())
def test_nerve_properties(fam):
    d_max = fam.n - 1 if fam.n > 1 else 1
    nerve = compute_nerve(fam, d_max)
    assert downward_closed(nerve)
    assert nerve.faces() == brute_nerve(fam)
    for k in range(d_max):
        assert len(induced_faces(nerve, k)) <= nerve.f_k(k) <= comb(fam.n, k + 1)
