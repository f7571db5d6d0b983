"""Acceptance criteria 1-7, each reported as one PASS/FAIL line."""
import random
import time
from collections import Counter
from fractions import Fraction
from math import comb

import pytest

from nerve_bounds.arrangement import (build_arrangement, furedi_palasti_lines, line_triangle_incidence,
                                      projective_faces, projective_triangle_count, select_infinity_line)
from nerve_bounds.construction import build_four_set_example
from nerve_bounds.families import generated_families, random_simple_lines
from nerve_bounds.geometry import projective_map_line_to_infinity
from nerve_bounds.graph_bounds import run_corpus, surface_lemma_params
from nerve_bounds.nerve import (check_hypotheses, check_main_bounds, compute_nerve, f_ind,
                                proof_chain_bound, theorem_constant)
from nerve_bounds.report import construct_report
from nerve_bounds.witness import (build_union_graph, choose_witnesses, edge_identity_check,
                                  multiedge_analysis, planarity_test, triangle_label_analysis)

SEED = 20261014
N_FAMILIES = 240


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


@pytest.fixture(scope="module")
def generated():
    out = []
    for g in generated_families(SEED, N_FAMILIES):
        out.append((g, compute_nerve(g.family, g.k + 2)))
    return out


def test_criterion_1_construction_separation(capsys):
    bad = []
    slowest = 0.0
    summary = []
    for n in (6, 7, 8, 9, 10):
        start = time.perf_counter()
        body, _, _ = construct_report(n)
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        f2, f3, t = body["f_2"], body["f_3"], body["triangles_T"]
        floor = -(-(n * n - 6 * n + 3) // 3)
        ok = (f3 == 0 and f2 == comb(n - 1, 2) + t and t >= floor and f2 > comb(n - 1, 2)
              and elapsed < 10)
        summary.append(f"n={n}: f2={f2}=C({n - 1},2)+{t}, T>={floor}")
        if not ok:
            bad.append(n)
    announce(capsys, 1, not bad, "; ".join(summary) + f"; slowest {slowest:.2f}s")
    assert not bad


def test_criterion_2_four_set_example(capsys):
    start = time.perf_counter()
    fam = build_four_set_example()
    nerve = compute_nerve(fam, 3)
    w = choose_witnesses(nerve, 2, 1, fam)
    g = build_union_graph(w, nerve)
    find = f_ind(nerve, 1)
    bound = proof_chain_bound(find, 2, len(g.edges))
    elapsed = time.perf_counter() - start
    ok = (nerve.f == [4, 6, 4, 0] and len(g.edges) == 3 * 4 - 6 == 6
          and bound == Fraction(find, 3) + 2 == 4 and nerve.f_k(2) == bound and elapsed < 1)
    announce(capsys, 2, ok, f"f={tuple(nerve.f)}, |E|={len(g.edges)}, f_2 <= {bound} (met), {elapsed:.3f}s")
    assert ok


def test_criterion_3_bound_inequalities(capsys, generated):
    per = Counter()
    violations = []
    for g, nerve in generated:
        assert check_hypotheses(g.family, g.k, g.b, nerve).passed and nerve.f_k(g.k + 1) == 0
        rep = check_main_bounds(nerve, g.k, g.b)
        per[(g.k, g.b)] += 1
        if not (rep.satisfied and rep.constant == theorem_constant(g.k, g.b)):
            violations.append(g.label)
    kinds = Counter(g.label.split("-")[0] for g, _ in generated)
    ok = len(generated) >= 200 and not violations
    detail = (f"{len(generated)} families, {len(violations)} violations; by (k,b): "
              + ", ".join(f"{k}: {v}" for k, v in sorted(per.items()))
              + "; sources: " + ", ".join(f"{k}={v}" for k, v in sorted(kinds.items())))
    announce(capsys, 3, ok, detail)
    assert ok, violations


def test_criterion_4_witness_identities(capsys, generated):
    violations = []
    planar = 0
    for g, nerve in generated:
        w = choose_witnesses(nerve, g.k, g.b, g.family)
        graph = build_union_graph(w, nerve, "path", g.family)
        ident = edge_identity_check(graph, nerve)
        lower = (g.k + 1) * len(w) - g.b * f_ind(nerve, g.k - 1)
        ok = ident.passed and (len(graph.edges) == lower if g.b == 1 else len(graph.edges) >= lower)
        if g.b == 1:
            tri = triangle_label_analysis(graph)
            ok = ok and not tri.bad_label_sizes and tri.edge_disjoint and tri.max_edges <= 3 * g.k
        else:
            ok = ok and multiedge_analysis(graph, nerve.f_k(g.k)).max_multiplicity <= g.k + 1
        planar += planarity_test(graph)[0]
        if not ok:
            violations.append(g.label)
    announce(capsys, 4, not violations,
             f"{len(generated)} instances, {len(violations)} violations "
             f"(path-strategy G planar in {planar})")
    assert not violations, violations


def test_criterion_5_planar_lemma_corpus(capsys):
    start = time.perf_counter()
    summary, _ = run_corpus(7)
    elapsed = time.perf_counter() - start
    checks = summary.checks
    ok = summary.passed and summary.graphs > 0
    announce(capsys, 5, ok,
             f"{summary.graphs} graphs (v<=7), obs_planar={checks['obs_planar']}, "
             f"lemma_edges={checks['lemma_edges']}, lemma_t3={checks['lemma_t3']}, "
             f"{len(summary.failures)} failures, {elapsed:.1f}s")
    assert ok, summary.failures[:5]


def _arrangement_ok(lines):
    n = len(lines)
    arr = build_arrangement(lines)
    ok = arr.n_crossings == comb(n, 2) and arr.euler() == 2 and projective_faces(arr) == comb(n, 2) + 1
    if n >= 4:
        ok = ok and 3 * projective_triangle_count(lines, arr) <= n * (n - 1)
        ell = select_infinity_line(lines, arr)
        ok = ok and line_triangle_incidence(lines, arr)[ell] <= n - 1
    return ok


def test_criterion_6_arrangement_identities(capsys):
    built = []
    for n in range(5, 13):
        lines = furedi_palasti_lines(n)
        built.append(lines)
        built.append(projective_map_line_to_infinity(lines, select_infinity_line(lines)))
    rng = random.Random(SEED)
    for _ in range(40):
        built.append(random_simple_lines(rng.randint(2, 9), rng))
    failed = [i for i, lines in enumerate(built) if not _arrangement_ok(lines)]
    announce(capsys, 6, not failed, f"{len(built)} simple arrangements, {len(failed)} failures")
    assert not failed


def test_criterion_7_constants(capsys):
    ok = theorem_constant(2) == 3 and theorem_constant(3) == Fraction(13, 16)
    for b, k in ((2, 5), (2, 6), (3, 7)):
        ok = ok and theorem_constant(k, b) == Fraction(b, k - 2 * b)
    for k in range(2, 9):
        for chi in (2, 1, 0, -1, -2, -5):
            t, ct = surface_lemma_params(k, chi)
            ok = ok and t == 3 * (k + 2 - chi) and ct == Fraction(12 * t, 4 * t + 3)
        ok = ok and surface_lemma_params(k, 2)[0] == 3 * k
    announce(capsys, 7, ok, "c(2)=3, c(3)=13/16, c(b,k)=b/(k-2b) at (2,5),(2,6),(3,7); t, c_t at chi=2..-5")
    assert ok
