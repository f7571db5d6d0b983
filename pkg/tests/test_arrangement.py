import random
from math import comb

import pytest

from nerve_bounds.arrangement import (ArrangementError, NotSimple, bounded_triangles, build_arrangement,
                                      census, furedi_palasti_lines, line_triangle_incidence,
                                      projective_faces, projective_triangle_count, projective_triangles,
                                      select_infinity_line, verify_simple)
from nerve_bounds.families import random_simple_lines
from nerve_bounds.geometry import Line, projective_map_line_to_infinity

from oracles import bounded_triangles_oracle, projective_triangles_oracle

TRIANGLE = [Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, 1)]


def test_verify_simple_examples():
    assert verify_simple(TRIANGLE).ok
    pencil = verify_simple([Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, 0)])
    assert not pencil.ok and pencil.concurrencies
    par = verify_simple([Line(0, 1, 0), Line(0, 1, 1), Line(1, 0, 0)])
    assert not par.ok and par.parallels


def test_build_rejects_non_simple():
    with pytest.raises(NotSimple):
        build_arrangement([Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, 0)])


def test_three_generic_lines():
    arr = build_arrangement(TRIANGLE)
    assert arr.n_crossings == 3
    assert bounded_triangles(arr) == 1
    assert len(arr.bounded_faces()) == 1
    assert arr.euler() == 2
    assert projective_triangle_count(TRIANGLE) == 4
    assert projective_faces(arr) == comb(3, 2) + 1
    assert set(line_triangle_incidence(TRIANGLE).values()) == {4}


def test_two_lines():
    lines = [Line(1, 0, 0), Line(0, 1, 0)]
    arr = build_arrangement(lines)
    assert len(arr.bounded_faces()) == 0
    assert bounded_triangles(arr) == 0
    assert set(line_triangle_incidence(lines).values()) == {0}


def test_four_lines_every_line_meets_n_minus_1():
    # every simple arrangement of four lines has four triangles, each line on three
    lines = [Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, 1), Line(1, -2, 3)]
    counts = line_triangle_incidence(lines)
    assert set(counts.values()) == {3}
    assert select_infinity_line(lines) == min(lines, key=Line.sort_key)


def test_select_tie_broken_by_canonical_order():
    assert select_infinity_line(TRIANGLE) == min(TRIANGLE, key=Line.sort_key)
    with pytest.raises(ArrangementError):
        select_infinity_line(TRIANGLE[:2])


@pytest.mark.parametrize("seed", range(12))
def test_random_arrangements_match_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    lines = random_simple_lines(n, rng)
    arr = build_arrangement(lines)
    assert arr.n_crossings == comb(n, 2)
    assert arr.euler() == 2
    assert bounded_triangles(arr) == bounded_triangles_oracle(lines)
    p3, inc = projective_triangles_oracle(lines)
    assert len(projective_triangles(arr)) == p3
    assert [line_triangle_incidence(lines, arr)[ln] for ln in arr.lines] == inc
    assert projective_faces(arr) == comb(n, 2) + 1
    if n >= 4:
        assert 3 * p3 <= n * (n - 1)


def test_crossings_inside_frame_once_per_pair():
    lines = random_simple_lines(6, random.Random(7))
    arr = build_arrangement(lines)
    pairs = [vl for vl in arr.vertex_lines if len(vl) == 2]
    assert sorted(pairs) == [(i, j) for i in range(6) for j in range(i + 1, 6)]


@pytest.mark.parametrize("n", range(5, 13))
def test_furedi_palasti(n):
    lines = furedi_palasti_lines(n)
    assert len(lines) == n
    assert verify_simple(lines).ok
    p3, inc = projective_triangles_oracle(lines)
    assert 3 * p3 >= n * (n - 3)
    assert projective_triangle_count(lines) == p3
    ell = select_infinity_line(lines)
    assert line_triangle_incidence(lines)[ell] <= n - 1


def test_furedi_palasti_small_n_rejected():
    with pytest.raises(ArrangementError):
        furedi_palasti_lines(4)


def test_fp_remainder_triangles():
    lines = furedi_palasti_lines(6)
    ell = select_infinity_line(lines)
    rest = projective_map_line_to_infinity(lines, ell)
    arr = build_arrangement(rest)
    t = bounded_triangles(arr)
    assert t >= 1
    assert t == bounded_triangles_oracle(rest)
    # the removed line touched at most n-1 of the projective triangles; the rest stay bounded
    assert t >= projective_triangle_count(lines) - line_triangle_incidence(lines)[ell]


def test_fp_five_remainder_census():
    lines = furedi_palasti_lines(5)
    rest = projective_map_line_to_infinity(lines, select_infinity_line(lines))
    c = census(build_arrangement(rest))
    assert c["bounded_triangles"] == bounded_triangles_oracle(rest)
    assert c["projective_faces"] == comb(4, 2) + 1
