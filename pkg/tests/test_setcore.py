import pytest
from hypothesis import given, strategies as st

from primaltop.setcore import (
    CapacityError, GroundSet, InvalidCodeError, MAX_N, complement, describe_code, family,
    is_downward_closed, powerset,
)


@pytest.mark.parametrize("a, expected", [(0b000, 0b111), (0b101, 0b010), (0b111, 0b000)])
def test_complement_examples(a, expected):
    assert complement(a, GroundSet(3)) == expected


def test_complement_rejects_stray_bits():
    with pytest.raises(InvalidCodeError):
        complement(0b1000, GroundSet(3))
    with pytest.raises(InvalidCodeError):
        complement(-1, GroundSet(3))


@given(st.integers(1, MAX_N).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_complement_involutive(na):
    n, a = na
    g = GroundSet(n)
    assert complement(complement(a, g), g) == a


@pytest.mark.parametrize("n, expected", [(1, (0, 1)), (2, (0, 1, 2, 3)), (3, tuple(range(8)))])
def test_powerset_examples(n, expected):
    assert powerset(GroundSet(n)) == expected


@pytest.mark.parametrize("n", range(1, MAX_N + 1))
def test_powerset_length_and_order(n):
    ps = powerset(GroundSet(n))
    assert len(ps) == 2 ** n
    assert all(a < b for a, b in zip(ps, ps[1:]))


def test_capacity_bound():
    with pytest.raises(CapacityError):
        GroundSet(MAX_N + 1)
    with pytest.raises(ValueError):
        GroundSet(0)


def test_full_has_low_bits():
    assert GroundSet(4).full == 0b1111


def _downward_oracle(F):
    fs = set(F)
    return all(b in fs for a in fs for b in range(a + 1) if b & a == b)


@pytest.mark.parametrize("F, expected", [((0, 1, 2, 3), True), ((0, 3), False), ((0,), True)])
def test_is_downward_closed_examples(F, expected):
    assert _downward_oracle(F) == expected
    assert is_downward_closed(F, GroundSet(3)) == expected


@pytest.mark.parametrize("n", range(1, MAX_N + 1))
def test_maximal_primal_carrier_is_downward_closed(n):
    g = GroundSet(n)
    assert is_downward_closed([a for a in powerset(g) if a != g.full], g)


def test_family_is_canonical():
    g = GroundSet(3)
    assert family([5, 1, 5, 0], g) == (0, 1, 5)
    with pytest.raises(InvalidCodeError):
        family([9], g)


def test_describe_code():
    assert describe_code(0b110, GroundSet(3)) == "0b110 = {1,2}"
    assert describe_code(0, GroundSet(3)) == "0b000 = {}"
