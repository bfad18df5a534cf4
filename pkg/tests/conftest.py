import pytest

from quiverfold.engine import normal_form_engine
from quiverfold.linalg import PrimeField, RationalField
from quiverfold.presentations import generalized_preprojective_presentation, preprojective_presentation
from quiverfold.quiver import GroupAction, QuiverAutomorphism, fold, make_quiver


@pytest.fixture(scope="session")
def f2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def f3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def qq():
    return RationalField()


@pytest.fixture(scope="session")
def a2_quiver():
    return make_quiver(["1", "2"], [("a", "1", "2")])


@pytest.fixture(scope="session")
def a3_quiver():
    # two outer vertices mapping onto a shared sink
    return make_quiver(["1", "2", "2p"], [("a", "2", "1"), ("ap", "2p", "1")])


@pytest.fixture(scope="session")
def a3_swap(a3_quiver):
    sigma = QuiverAutomorphism(
        a3_quiver, {"1": "1", "2": "2p", "2p": "2"}, {"a": "ap", "ap": "a"}
    )
    return GroupAction(a3_quiver, [sigma])


@pytest.fixture(scope="session")
def d4_quiver():
    return make_quiver(
        ["c", "1", "2", "3"], [("a1", "1", "c"), ("a2", "2", "c"), ("a3", "3", "c")]
    )


@pytest.fixture(scope="session")
def d4_rot(d4_quiver):
    rho = QuiverAutomorphism(
        d4_quiver,
        {"c": "c", "1": "2", "2": "3", "3": "1"},
        {"a1": "a2", "a2": "a3", "a3": "a1"},
    )
    return GroupAction(d4_quiver, [rho])


@pytest.fixture(scope="session")
def b2_triple(a3_quiver, a3_swap):
    return fold(a3_quiver, a3_swap).triple


@pytest.fixture(scope="session")
def g2_triple(d4_quiver, d4_rot):
    return fold(d4_quiver, d4_rot).triple


@pytest.fixture(scope="session")
def pi_a2(a2_quiver, f2):
    return normal_form_engine(preprojective_presentation(a2_quiver, f2))


@pytest.fixture(scope="session")
def pi_a3(a3_quiver, f2):
    return normal_form_engine(preprojective_presentation(a3_quiver, f2))


@pytest.fixture(scope="session")
def pi_b2(b2_triple, f2):
    return normal_form_engine(generalized_preprojective_presentation(b2_triple, f2))
