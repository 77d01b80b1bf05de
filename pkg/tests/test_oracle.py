"""
Tests for the integer-feasibility oracle.
"""

import pytest

from frobtwist.corpus import load, load_all
from frobtwist.diagram import State, parse_pd
from frobtwist.oracle import SizeGuardError, build_system, oracle_solve
from frobtwist.weights import (
    DomainMismatchError,
    PartialAssignment,
    check_weight,
    construct,
)

TREFOIL = "X 1 5 2 4 / X 3 1 4 6 / X 5 3 6 2"

# Labels on every state of size at most two that admit no extension to 111.
UNFORTUNATE = {
    "000": {1: 0, 2: 0},
    "100": {1: 0},
    "010": {1: 0},
    "001": {1: 0},
    "110": {1: 1, 2: 0},
    "101": {2: 1, 1: 0},
    "011": {3: 1, 1: 0},
}


def pins_from(table):
    values = {
        (State.from_string(bits), cid): value
        for bits, labels in table.items()
        for cid, value in labels.items()
    }
    return PartialAssignment(3, values)


def test_unpinned_trefoil_is_feasible():
    d = parse_pd(TREFOIL)
    weight = oracle_solve(d)
    assert weight is not None
    assert check_weight(d, weight).ok


def test_unfortunate_pins_are_infeasible():
    assert oracle_solve(parse_pd(TREFOIL), pins_from(UNFORTUNATE)) is None


def test_swapped_pins_are_feasible():
    table = dict(UNFORTUNATE)
    table["110"] = {1: 0, 2: 1}
    d = parse_pd(TREFOIL)
    weight = oracle_solve(d, pins_from(table))
    assert weight is not None
    assert weight.on_state(State.from_string("111")) == {1: 0, 2: 1, 3: 1}


@pytest.mark.parametrize("name", sorted(load_all()))
def test_unpinned_oracle_finds_a_weight(name):
    d = load(name)
    weight = oracle_solve(d)
    assert weight is not None
    assert check_weight(d, weight).ok


@pytest.mark.parametrize("name", sorted(load_all()))
def test_oracle_reproduces_constructed_weight(name):
    d = load(name)
    weight = construct(d)
    assert oracle_solve(d, PartialAssignment(d.n, dict(weight.values))) == weight


def test_single_pin_is_honoured():
    d = parse_pd(TREFOIL)
    pin = {(State.from_string("111"), 1): 5}
    weight = oracle_solve(d, PartialAssignment(3, pin))
    assert weight.get(State.from_string("111"), 1) == 5


def test_size_guard():
    with pytest.raises(SizeGuardError):
        oracle_solve(load("granny"), cap=5)


def test_pin_on_missing_circle():
    pins = PartialAssignment(3, {(State.from_string("100"), 2): 0})
    with pytest.raises(DomainMismatchError):
        oracle_solve(parse_pd(TREFOIL), pins)


def test_pin_with_wrong_length():
    with pytest.raises(DomainMismatchError):
        oracle_solve(parse_pd(TREFOIL), PartialAssignment(2, {}))


def test_system_shape():
    system = build_system(parse_pd(TREFOIL))
    # 14 labels; 12 saddle equations plus 3 untouched identities
    assert system.shape == (15, 14)
    assert all(value in (0, -1) for value in system.rhs)
