"""Weyl groups, Demazure products, and folding maps."""

import pytest

from quiverfold.errors import CapExceeded, InvalidCartan, NotReduced
from quiverfold.weyl import (
    WeylElement,
    WeylMonoidElement,
    all_reduced_words,
    demazure_fold,
    demazure_product,
    enumerate_weyl,
    fixed_subgroup,
    folding_map,
    reduced_word,
    rho,
    simple_reflection_matrix,
    validate_cartan,
    weyl_of_quiver,
    weyl_relation_report,
    weyl_report_json,
)

A2 = ((2, -1), (-1, 2))
B2 = ((2, -1), (-2, 2))
G2 = ((2, -1), (-3, 2))
A3 = ((2, -1, -1), (-1, 2, 0), (-1, 0, 2))

CARTANS = {"A2": A2, "B2": B2, "G2": G2, "A3": A3}
ORDERS = {"A2": 6, "B2": 8, "G2": 12, "A3": 24}


def test_validate_cartan_symmetrizer():
    assert validate_cartan(B2) == (2, 1)
    assert validate_cartan(G2) == (3, 1)
    with pytest.raises(InvalidCartan):
        validate_cartan(((2, -1), (0, 2)))
    with pytest.raises(InvalidCartan):
        validate_cartan(((2, 1), (1, 2)))


def test_reflection_matrix_rank_one():
    assert simple_reflection_matrix(((2,),), 0).tolist() == [[-1]]


def test_reflection_matrix_a2():
    assert simple_reflection_matrix(A2, 0).tolist() == [[-1, 1], [0, 1]]


def test_reflection_matrix_b2_action():
    r1 = simple_reflection_matrix(B2, 0)
    # r_1(alpha_2) = alpha_2 + alpha_1 because c_12 = -1
    assert r1[:, 1].tolist() == [1, 1]


@pytest.mark.parametrize("name", sorted(CARTANS))
def test_orders(name):
    assert enumerate_weyl(CARTANS[name]).order == ORDERS[name]


def test_lengths_and_longest():
    W = enumerate_weyl(B2)
    assert int(W.lengths.max()) == 4
    assert reduced_word(W, W.identity) == []
    w0 = W.longest
    word = reduced_word(W, w0)
    assert len(word) == 4
    # the word multiplies back to the longest element
    u = W.identity
    for i in word:
        u = int(W.right[u, i])
    assert u == w0


def test_infinite_type_hits_cap():
    affine = ((2, -2), (-2, 2))
    with pytest.raises(CapExceeded):
        enumerate_weyl(affine, element_cap=500)


def test_reduced_word_counts_a3():
    W = enumerate_weyl(A3)
    # the longest element of the star-shaped rank-3 group has 16 reduced words...
    # derived independently below by brute force over all words of its length
    w0 = W.longest
    words = all_reduced_words(W, w0)
    target = int(W.lengths[w0])
    brute = 0
    import itertools

    for cand in itertools.product(range(3), repeat=target):
        u = W.identity
        ok = True
        for i in cand:
            v = int(W.right[u, i])
            if W.lengths[v] != W.lengths[u] + 1:
                ok = False
                break
            u = v
        if ok and u == w0:
            brute += 1
    assert len(words) == brute
    assert all(len(w) == target for w in words)


def test_demazure_idempotent():
    W = enumerate_weyl(A2)
    r0 = int(W.right[W.identity, 0])
    assert demazure_product(W, r0, r0) == r0


def test_demazure_braid_fold():
    W = enumerate_weyl(A2)
    assert demazure_fold(W, [0, 1, 0]) == demazure_fold(W, [1, 0, 1])


def test_demazure_absorbs_at_longest():
    W = enumerate_weyl(B2)
    w0 = W.longest
    for v in range(W.order):
        assert demazure_product(W, w0, v) == w0


def test_rho_fold_examples():
    W = enumerate_weyl(A2)
    assert rho(W, []).element.idx == W.identity
    r0 = int(W.right[W.identity, 0])
    assert rho(W, [0, 0]).element.idx == r0
    m = rho(W, [0, 1, 0, 1])
    assert m.element.length == 3  # non-reduced word folds onto the longest element


def test_monoid_relations_all_types():
    for name, cartan in CARTANS.items():
        W = enumerate_weyl(cartan)
        n = W.rank
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                prod = int(W.cartan[i, j] * W.cartan[j, i])
                if prod == 0:
                    lhs, rhs = [i, j], [j, i]
                elif prod == 1:
                    lhs, rhs = [i, j, i], [j, i, j]
                elif prod == 2:
                    lhs, rhs = [i, j] * 2, [j, i] * 2
                elif prod == 3:
                    lhs, rhs = [i, j] * 3, [j, i] * 3
                else:
                    continue
                for u in range(W.order):
                    assert demazure_fold(W, lhs, start=u) == demazure_fold(
                        W, rhs, start=u
                    ), f"{name}: relation {lhs} vs {rhs} fails at {u}"


def test_fold_well_defined_on_all_reduced_words():
    for cartan in (A2, B2):
        W = enumerate_weyl(cartan)
        for u in range(W.order):
            for v in range(W.order):
                expected = demazure_product(W, u, v)
                for word in all_reduced_words(W, v):
                    assert demazure_fold(W, word, start=u) == expected


def test_relation_report():
    rep = weyl_relation_report(enumerate_weyl(G2))
    assert all(rep["involutions"])
    assert all(entry["ok"] for entry in rep["braid"])
    assert rep["braid"][0]["order"] == 6


def test_weyl_report_json():
    data = weyl_report_json(enumerate_weyl(B2))
    assert data["order"] == 8
    assert data["length_histogram"] == {"0": 1, "1": 2, "2": 2, "3": 2, "4": 1}
    assert len(data["longest_reduced_word"]) == 4


# -- folding ------------------------------------------------------------------


@pytest.fixture(scope="module")
def b2_to_a3(a3_quiver):
    WC = enumerate_weyl(B2)
    WQ = weyl_of_quiver(a3_quiver)
    # orbits ordered as in the fold of the swap action: {1}, {2, 2p}
    return folding_map(WC, WQ, [(0,), (1, 2)]), WC, WQ


def test_psi_generator_images(b2_to_a3, a3_quiver):
    F, WC, WQ = b2_to_a3
    r2 = int(WC.right[WC.identity, 1])
    s2 = int(WQ.right[WQ.identity, 1])
    s2s2p = int(WQ.right[s2, 2])
    s2ps2 = int(WQ.right[int(WQ.right[WQ.identity, 2]), 1])
    assert F.psi(r2) == s2s2p == s2ps2
    r1 = int(WC.right[WC.identity, 0])
    assert F.psi(r1) == int(WQ.right[WQ.identity, 0])


def test_psi_injective_onto_fixed(b2_to_a3):
    F, WC, WQ = b2_to_a3
    fixed = set(fixed_subgroup(WQ, [[0, 2, 1]]))
    images = {F.psi(w) for w in range(WC.order)}
    assert len(images) == WC.order == 8
    assert images == fixed


def test_psi_longest_to_longest(b2_to_a3):
    F, WC, WQ = b2_to_a3
    assert F.psi(WC.longest) == WQ.longest
    assert int(WQ.lengths[WQ.longest]) == 6


def test_check_reduced_image(b2_to_a3):
    F, WC, _ = b2_to_a3
    assert F.check_reduced_image([])
    assert F.check_reduced_image([0, 1])
    for w in range(WC.order):
        for word in all_reduced_words(WC, w):
            assert F.check_reduced_image(word)
    with pytest.raises(NotReduced):
        F.check_reduced_image([0, 0])


def test_psi_prime_multiplicative(b2_to_a3):
    F, WC, WQ = b2_to_a3
    for u in range(WC.order):
        for v in range(WC.order):
            mu = WeylMonoidElement(WeylElement(WC, u))
            mv = WeylMonoidElement(WeylElement(WC, v))
            lhs = F.psi_prime(mu * mv)
            rhs = F.psi_prime(mu) * F.psi_prime(mv)
            assert lhs.element.idx == rhs.element.idx


def test_folding_map_rejects_entangled_orbits():
    W = enumerate_weyl(A2)
    WQ = enumerate_weyl(A3)
    with pytest.raises(InvalidCartan):
        folding_map(W, WQ, [(0, 1), (2,)])  # positions 0, 1 do not commute


def test_fixed_subgroup_trivial_group():
    W = enumerate_weyl(A3)
    assert len(fixed_subgroup(W, [])) == W.order


def test_fixed_subgroup_d4(d4_quiver):
    W = weyl_of_quiver(d4_quiver)
    assert len(fixed_subgroup(W, [[0, 2, 3, 1]])) == 12
