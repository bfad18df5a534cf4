"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every check is exact (no numeric tolerances); the stated wall-clock budgets
are asserted on the timed region of each criterion.
"""

import functools
import json
import sys
import time

import pytest
from click.testing import CliRunner

from quiverfold.cli import main as cli_main
from quiverfold.engine import normal_form_engine
from quiverfold.ideals import (
    invariant_submonoid,
    monoid_closure,
    quotient_dimension,
    theta_prime,
    vertex_ideal,
)
from quiverfold.linalg import PrimeField
from quiverfold.oracle import graded_dimension_oracle
from quiverfold.presentations import generalized_preprojective_presentation, preprojective_presentation
from quiverfold.quiver import fold, symmetric_triple_of_quiver
from quiverfold.skew import graded_part, induced_ideal, induced_monoid_map, skew_group_algebra
from quiverfold.verify import run_prop_a
from quiverfold.weyl import (
    all_reduced_words,
    demazure_fold,
    demazure_product,
    enumerate_weyl,
    fixed_subgroup,
    folding_map,
    weyl_of_quiver,
    weyl_of_triple,
)

A2_CARTAN = ((2, -1), (-1, 2))
B2_CARTAN = ((2, -1), (-2, 2))
G2_CARTAN = ((2, -1), (-3, 2))


def criterion(number, title, budget_seconds=None):
    """Print one pass/fail line per criterion, enforcing the time budget."""

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {number:2d} [{title}]: FAIL", file=sys.__stdout__)
                raise
            elapsed = time.perf_counter() - start
            print(
                f"criterion {number:2d} [{title}]: PASS ({elapsed:.2f}s)",
                file=sys.__stdout__,
            )
            if budget_seconds is not None:
                assert elapsed < budget_seconds, (
                    f"criterion {number} took {elapsed:.2f}s, budget {budget_seconds}s"
                )

        return wrapper

    return decorate


@pytest.fixture(scope="module")
def f2():
    return PrimeField(2)


@pytest.fixture(scope="module")
def f3():
    return PrimeField(3)


@pytest.fixture(scope="module")
def instances(f2, f3):
    """Shared heavyweight objects for the criteria that do not time the build."""
    runner = CliRunner()
    out = {}
    for preset in ("a3_swap", "d4_rot3"):
        res = runner.invoke(cli_main, ["fold", "--preset", preset, "--json"])
        assert res.exit_code == 0
        out[preset] = json.loads(res.output)
    return out


@criterion(1, "folding exactness", budget_seconds=1.0)
def test_criterion_01_folding_exactness():
    runner = CliRunner()
    res = runner.invoke(cli_main, ["fold", "--preset", "a3_swap", "--json"])
    assert res.exit_code == 0
    assert json.loads(res.output) == {
        "index": ["o_1", "o_2"],
        "C": [[2, -1], [-2, 2]],
        "D": [2, 1],
        "Omega": [["o_1", "o_2"]],
    }


@criterion(2, "vanishing identities", budget_seconds=5.0)
def test_criterion_02_vanishing_identities(a3_quiver, a3_swap, f2):
    triple = fold(a3_quiver, a3_swap).triple
    pi_c = normal_form_engine(generalized_preprojective_presentation(triple, f2))
    gens_c = {v: vertex_ideal(pi_c, v) for v in triple.index}
    assert theta_prime(gens_c, ["o_1", "o_2", "o_1", "o_2"], pi_c).is_zero
    pi_q = normal_form_engine(preprojective_presentation(a3_quiver, f2))
    gens_q = {v: vertex_ideal(pi_q, v) for v in a3_quiver.vertices}
    assert theta_prime(gens_q, ["1", "2", "2p", "1", "2", "2p"], pi_q).is_zero


@criterion(3, "bijection cardinalities", budget_seconds=30.0)
def test_criterion_03_bijection_cardinalities(a2_quiver, a3_quiver, b2_triple, g2_triple, f2, f3):
    pi_a2 = normal_form_engine(preprojective_presentation(a2_quiver, f2))
    m = monoid_closure(pi_a2, [(v, vertex_ideal(pi_a2, v)) for v in a2_quiver.vertices])
    assert m.size == enumerate_weyl(A2_CARTAN).order == 6

    pi_a3 = normal_form_engine(preprojective_presentation(a3_quiver, f2))
    m = monoid_closure(pi_a3, [(v, vertex_ideal(pi_a3, v)) for v in a3_quiver.vertices])
    assert m.size == weyl_of_quiver(a3_quiver).order == 24

    pi_b2 = normal_form_engine(generalized_preprojective_presentation(b2_triple, f2))
    m = monoid_closure(pi_b2, [(v, vertex_ideal(pi_b2, v)) for v in b2_triple.index])
    assert m.size == enumerate_weyl(B2_CARTAN).order == 8

    pi_g2 = normal_form_engine(generalized_preprojective_presentation(g2_triple, f3))
    m = monoid_closure(pi_g2, [(v, vertex_ideal(pi_g2, v)) for v in g2_triple.index])
    assert m.size == enumerate_weyl(G2_CARTAN).order == 12


@criterion(4, "reduced-word independence", budget_seconds=60.0)
def test_criterion_04_reduced_word_independence(a2_quiver, a3_quiver, b2_triple, f2):
    cases = []
    pi_a2 = normal_form_engine(preprojective_presentation(a2_quiver, f2))
    cases.append((pi_a2, enumerate_weyl(A2_CARTAN), tuple(a2_quiver.vertices)))
    pi_a3 = normal_form_engine(preprojective_presentation(a3_quiver, f2))
    cases.append((pi_a3, weyl_of_quiver(a3_quiver), tuple(a3_quiver.vertices)))
    pi_b2 = normal_form_engine(generalized_preprojective_presentation(b2_triple, f2))
    cases.append((pi_b2, enumerate_weyl(B2_CARTAN), tuple(b2_triple.index)))
    for alg, W, labels in cases:
        gens = {v: vertex_ideal(alg, v) for v in labels}
        for w in range(W.order):
            keys = {
                theta_prime(gens, [labels[i] for i in word], alg).key
                for word in all_reduced_words(W, w)
            }
            assert len(keys) == 1


@criterion(5, "Demazure monoid relations")
def test_criterion_05_demazure_relations():
    a3_cartan = ((2, -1, -1), (-1, 2, 0), (-1, 0, 2))
    patterns = {0: 2, 1: 3, 2: 4, 3: 6}
    for cartan in (A2_CARTAN, a3_cartan, B2_CARTAN, G2_CARTAN):
        W = enumerate_weyl(cartan)
        # idempotence on every element
        for i in range(W.rank):
            for u in range(W.order):
                once = demazure_fold(W, [i], start=u)
                assert demazure_fold(W, [i], start=once) == once
        # pairwise relations, as transformations of the whole group
        for i in range(W.rank):
            for j in range(W.rank):
                if i == j:
                    continue
                half = patterns[int(W.cartan[i, j] * W.cartan[j, i])]
                lhs = ([i, j] * half)[:half]
                rhs = ([j, i] * half)[:half]
                for u in range(W.order):
                    assert demazure_fold(W, lhs, start=u) == demazure_fold(W, rhs, start=u)
        # products are independent of the reduced word of the right factor
        for u in range(W.order):
            for v in range(W.order):
                expected = demazure_product(W, u, v)
                for word in all_reduced_words(W, v):
                    assert demazure_fold(W, word, start=u) == expected


@criterion(6, "folding map and reduced images")
def test_criterion_06_folding_map(a3_quiver, a3_swap, d4_quiver, d4_rot):
    for quiver, action, expected_order in (
        (a3_quiver, a3_swap, 8),
        (d4_quiver, d4_rot, 12),
    ):
        folded = fold(quiver, action)
        WC = weyl_of_triple(folded.triple)
        WQ = weyl_of_quiver(quiver)
        fm = folding_map(
            WC,
            WQ,
            [
                tuple(quiver.vertex_index[v] for v in folded.orbit_members[name])
                for name in folded.triple.index
            ],
        )
        perms = [
            [quiver.vertex_index[g.vertex_map[v]] for v in quiver.vertices]
            for g in action.generators
        ]
        fixed = set(fixed_subgroup(WQ, perms))
        images = [fm.psi(w) for w in range(WC.order)]
        assert len(set(images)) == WC.order == expected_order
        assert set(images) == fixed
        for u in range(WC.order):
            for v in range(WC.order):
                assert fm.psi(WC.multiply(u, v)) == WQ.multiply(fm.psi(u), fm.psi(v))
            for word in all_reduced_words(WC, u):
                assert fm.check_reduced_image(word)


@criterion(7, "commuting square of bijections", budget_seconds=120.0)
def test_criterion_07_prop_a_diagram(a3_quiver, a3_swap, d4_quiver, d4_rot, f2, f3):
    rep_a3 = run_prop_a(a3_quiver, a3_swap, f2, instance_name="a3_swap/f2")
    assert rep_a3.passed, rep_a3.to_text()
    rep_d4 = run_prop_a(d4_quiver, d4_rot, f3, instance_name="d4_rot3/f3")
    assert rep_d4.passed, rep_d4.to_text()
    for rep in (rep_a3, rep_d4):
        names = {c.name for c in rep.checks}
        assert "diagram/elementwise-commutes" in names
        assert "skew/remark-square" in names


@criterion(8, "quotient dimensions")
def test_criterion_08_quotient_dimensions(a3_quiver, d4_quiver, b2_triple, g2_triple, f2, f3):
    pi_b2 = normal_form_engine(generalized_preprojective_presentation(b2_triple, f2))
    assert [quotient_dimension(vertex_ideal(pi_b2, v)) for v in b2_triple.index] == [2, 1]
    pi_g2 = normal_form_engine(generalized_preprojective_presentation(g2_triple, f3))
    assert [quotient_dimension(vertex_ideal(pi_g2, v)) for v in g2_triple.index] == [3, 1]
    for quiver, field in ((a3_quiver, f2), (d4_quiver, f3)):
        alg = normal_form_engine(preprojective_presentation(quiver, field))
        for v in quiver.vertices:
            assert quotient_dimension(vertex_ideal(alg, v)) == 1


@criterion(9, "skew group structure")
def test_criterion_09_skew_structure(a3_quiver, a3_swap, f2):
    base = normal_form_engine(preprojective_presentation(a3_quiver, f2))
    skew = skew_group_algebra(base, a3_swap)
    assert skew.dim == 2 * base.dim
    assert skew.check_conjugation()
    gens = [(v, vertex_ideal(base, v)) for v in a3_quiver.vertices]
    sub = invariant_submonoid(monoid_closure(base, gens), skew.matrices)
    pushed = induced_monoid_map(sub, skew)
    assert pushed.size == sub.size
    for el, img in zip(sub.elements, pushed.elements):
        graded, back = graded_part(img)
        assert graded and back == el
        assert induced_ideal(back, skew) == img


@criterion(10, "engine cross-validation", budget_seconds=60.0)
def test_criterion_10_engine_cross_validation(a2_quiver, a3_quiver, d4_quiver, f2):
    for quiver in (a2_quiver, a3_quiver, d4_quiver):
        pres = preprojective_presentation(quiver, f2)
        engine_dim = normal_form_engine(pres).dim
        assert engine_dim == graded_dimension_oracle(pres)
        sym = symmetric_triple_of_quiver(quiver)
        folded_dim = normal_form_engine(generalized_preprojective_presentation(sym, f2)).dim
        assert folded_dim == engine_dim
