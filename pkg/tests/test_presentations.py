"""Relation generation for the three presented families."""

import pytest

from quiverfold.errors import NotAcyclic
from quiverfold.paths import AlgebraElement, Path, path_from_arrow_names
from quiverfold.presentations import (
    weighted_path_presentation,
    generalized_preprojective_presentation,
    preprojective_presentation,
    presentation_from_json,
    presentation_to_json,
)
from quiverfold.quiver import CartanTriple, make_quiver


def _term_words(presentation):
    """Relations as sets of (coeff, arrow-name tuple) term sets."""
    out = []
    for rel in presentation.relations:
        terms = frozenset(
            (coeff, tuple(presentation.quiver.arrows[i].name for i in path.arrows))
            for path, coeff in rel.terms.items()
        )
        out.append(terms)
    return out


def test_preprojective_a2(a2_quiver, f2):
    pres = preprojective_presentation(a2_quiver, f2)
    words = _term_words(pres)
    # one relation per vertex: a*a at the source, aa* at the target
    assert frozenset({(1, ("a", "a*"))}) in words
    assert frozenset({(1, ("a*", "a"))}) in words
    assert len(words) == 2


def test_preprojective_a3(a3_quiver, f3):
    pres = preprojective_presentation(a3_quiver, f3)
    words = _term_words(pres)
    # the relation at the sink mixes both arrow pairs with matching signs
    assert frozenset({(1, ("a*", "a")), (1, ("ap*", "ap"))}) in words
    assert frozenset({(2, ("a", "a*"))}) in words  # -1 over F3
    assert frozenset({(2, ("ap", "ap*"))}) in words
    assert len(words) == 3


def test_preprojective_point_is_trivial(f2):
    pres = preprojective_presentation(make_quiver(["v"], []), f2)
    assert pres.relations == ()


def test_preprojective_needs_acyclic(f2):
    q = make_quiver(["1"], [("e", "1", "1")])
    with pytest.raises(NotAcyclic):
        preprojective_presentation(q, f2)


def test_weighted_path_b2(b2_triple, f2):
    pres = weighted_path_presentation(b2_triple, f2)
    words = _term_words(pres)
    assert frozenset({(1, ("eps_o_1", "eps_o_1"))}) in words
    assert frozenset({(1, ("eps_o_2",))}) in words
    assert (
        frozenset(
            {
                (1, ("a_o_1_o_2_1", "eps_o_1", "eps_o_1")),
                (1, ("eps_o_2", "a_o_1_o_2_1")),  # -1 == 1 over F2
            }
        )
        in words
    )
    assert len(words) == 3


def test_weighted_path_symmetric_identity_symmetrizer(f2):
    t = CartanTriple(("1", "2"), ((2, -1), (-1, 2)), (1, 1), (("1", "2"),))
    pres = weighted_path_presentation(t, f2)
    words = _term_words(pres)
    # loops are killed outright, leaving the path algebra of the orientation
    assert frozenset({(1, ("eps_1",))}) in words
    assert frozenset({(1, ("eps_2",))}) in words


def test_generalized_preprojective_b2_relations(b2_triple, f3):
    pres = generalized_preprojective_presentation(b2_triple, f3)
    words = _term_words(pres)
    assert frozenset({(1, ("eps_o_1", "eps_o_1"))}) in words
    assert frozenset({(1, ("eps_o_2",))}) in words
    # mesh at the heavy vertex spreads the loop over both sides
    assert (
        frozenset(
            {
                (1, ("eps_o_1", "a_o_2_o_1_1", "a_o_1_o_2_1")),
                (1, ("a_o_2_o_1_1", "a_o_1_o_2_1", "eps_o_1")),
            }
        )
        in words
    )
    # mesh at the light vertex carries the opposite sign
    assert frozenset({(2, ("a_o_1_o_2_1", "a_o_2_o_1_1"))}) in words


def test_generalized_preprojective_g2_nilpotency(g2_triple, f3):
    pres = generalized_preprojective_presentation(g2_triple, f3)
    words = _term_words(pres)
    assert frozenset({(1, ("eps_o_c",) * 3)}) in words


def test_generalized_preprojective_rank_one(f2):
    t = CartanTriple(("x",), ((2,),), (4,), ())
    pres = generalized_preprojective_presentation(t, f2)
    words = _term_words(pres)
    assert words == [frozenset({(1, ("eps_x",) * 4)})]


def test_weighted_path_g2_cubed_loop(g2_triple, f3):
    pres = weighted_path_presentation(g2_triple, f3)
    words = _term_words(pres)
    assert frozenset({(1, ("eps_o_c",) * 3)}) in words


def test_presentation_json_round_trip(a3_quiver, f2):
    pres = preprojective_presentation(a3_quiver, f2)
    data = presentation_to_json(pres)
    back = presentation_from_json(data, f2)
    assert back.quiver == pres.quiver
    assert {frozenset(r.terms.items()) for r in back.relations} == {
        frozenset(r.terms.items()) for r in pres.relations
    }


def test_path_from_arrow_names(a2_quiver):
    p = path_from_arrow_names(a2_quiver, ["a"])
    assert (p.source, p.target) == (0, 1)
    e = path_from_arrow_names(a2_quiver, [], source="2")
    assert e == Path(1, 1, ())


def test_element_product_respects_composition(a2_quiver, f2):
    a = AlgebraElement.from_path(a2_quiver, f2, path_from_arrow_names(a2_quiver, ["a"]))
    e1 = AlgebraElement.from_path(a2_quiver, f2, Path(0, 0, ()))
    e2 = AlgebraElement.from_path(a2_quiver, f2, Path(1, 1, ()))
    assert (a * e1).terms == a.terms  # a ends where e_1 sits: a * e_1 = a
    assert (e2 * a).terms == a.terms
    assert (e1 * a).is_zero()
    assert (a * a).is_zero()  # not composable
