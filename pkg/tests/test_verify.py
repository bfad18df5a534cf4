"""End-to-end pipeline runs beyond the bundled instances."""

import pytest

from quiverfold.errors import InputError
from quiverfold.linalg import PrimeField
from quiverfold.quiver import GroupAction, QuiverAutomorphism, fold, make_quiver
from quiverfold.verify import check_theorem_b_hypotheses, run_prop_a, run_theorem_b


@pytest.fixture(scope="module")
def d4_leaf_swap(d4_quiver):
    swap = QuiverAutomorphism(
        d4_quiver,
        {"c": "c", "1": "1", "2": "3", "3": "2"},
        {"a1": "a1", "a2": "a3", "a3": "a2"},
    )
    return GroupAction(d4_quiver, [swap])


@pytest.fixture(scope="module")
def d4_s3(d4_quiver):
    rot = QuiverAutomorphism(
        d4_quiver,
        {"c": "c", "1": "2", "2": "3", "3": "1"},
        {"a1": "a2", "a2": "a3", "a3": "a1"},
    )
    swap = QuiverAutomorphism(
        d4_quiver,
        {"c": "c", "1": "1", "2": "3", "3": "2"},
        {"a1": "a1", "a2": "a3", "a3": "a2"},
    )
    return GroupAction(d4_quiver, [rot, swap])


def test_prop_a_trivial_action(a2_quiver, f2):
    # with no identifications both sides of the square coincide
    rep = run_prop_a(a2_quiver, GroupAction(a2_quiver, []), f2)
    assert rep.passed, rep.to_text()


@pytest.mark.parametrize("p", [3, 5])
def test_prop_a_field_independent(a3_quiver, a3_swap, p):
    # the commuting square needs no characteristic hypothesis; odd primes
    # exercise the signed mesh relations end to end
    rep = run_prop_a(a3_quiver, a3_swap, PrimeField(p))
    assert rep.passed, rep.to_text()


def test_theorem_b_rank_three_fold(d4_quiver, d4_leaf_swap, f2):
    # swapping two arms folds to a rank-3 triple with symmetrizer (2, 2, 1)
    triple = fold(d4_quiver, d4_leaf_swap).triple
    assert triple.C == ((2, -1, -1), (-1, 2, 0), (-2, 0, 2))
    assert triple.D == (2, 2, 1)
    rep = run_theorem_b(d4_quiver, d4_leaf_swap, f2, instance_name="d4_swap/f2")
    assert rep.passed, rep.to_text()


def test_prop_a_non_cyclic_group(d4_quiver, d4_s3, f2):
    # the full symmetric group on the arms: order 6, not cyclic, and the
    # fold doubles the symmetrizer; the square still commutes
    assert d4_s3.order == 6 and not d4_s3.is_cyclic
    triple = fold(d4_quiver, d4_s3).triple
    assert triple.C == ((2, -1), (-3, 2))
    assert triple.D == (6, 2)
    rep = run_prop_a(d4_quiver, d4_s3, f2, instance_name="d4_s3/f2")
    assert rep.passed, rep.to_text()


def test_theorem_b_gate_rejects_non_cyclic(d4_quiver, d4_s3, f2):
    with pytest.raises(InputError, match="cyclic"):
        check_theorem_b_hypotheses(d4_quiver, d4_s3, f2)


def test_theorem_b_gate_rejects_char_zero(a3_quiver, a3_swap):
    from quiverfold.linalg import RationalField

    with pytest.raises(InputError, match="characteristic"):
        check_theorem_b_hypotheses(a3_quiver, a3_swap, RationalField())


def test_theorem_b_gate_rejects_broken_star_condition(f2):
    q = make_quiver(["v", "w"], [("a", "w", "v"), ("b", "w", "v")])
    sigma = QuiverAutomorphism(q, {"v": "v", "w": "w"}, {"a": "b", "b": "a"})
    action = GroupAction(q, [sigma])
    with pytest.raises(InputError, match="stabilizer"):
        check_theorem_b_hypotheses(q, action, f2)
