"""
Tests for the twisting-weight checker and constructor.
"""

import random
from unittest.mock import patch

import pytest

from frobtwist.corpus import load, load_all
from frobtwist.diagram import State, all_states, crossing_change, parse_pd, resolve
from frobtwist.weights import (
    DomainMismatchError,
    InvalidWeightError,
    TwistingWeight,
    Violation,
    chain_compatible,
    check_weight,
    compatible_pair,
    construct,
    construct_connected,
    transfer,
)

TREFOIL = "X 1 5 2 4 / X 3 1 4 6 / X 5 3 6 2"
DOUBLE_KINK = "X 1 2 2 3 / X 3 4 4 1"


def s(bits):
    return State.from_string(bits)


class TestCheckWeight:
    """Exhaustive checking of the saddle conditions."""

    def setup_method(self):
        self.trefoil = parse_pd(TREFOIL)

    def test_zero_weight_fails_at_first_split(self):
        report = check_weight(self.trefoil, TwistingWeight.zero(self.trefoil))
        assert not report.ok
        assert report.violations[0] == Violation(s("100"), 1, "split", 0, -1)
        assert set(report.kinds()) == {"split"}

    def test_constructed_weight_passes(self):
        report = check_weight(self.trefoil, construct(self.trefoil))
        assert report.ok
        assert len(report) == 0

    def test_single_perturbation_is_caught(self):
        weight = construct(self.trefoil)
        for key in list(weight.values):
            bumped = weight.updated({key: weight[key] + 1})
            assert not check_weight(self.trefoil, bumped).ok, key

    def test_global_shift_breaks_every_saddle(self):
        weight = construct(self.trefoil)
        shifted = TwistingWeight(3, {k: v + 1 for k, v in weight.values.items()})
        report = check_weight(self.trefoil, shifted)
        # 3 * 2^2 edges in the cube, none of them identity-only
        assert len(report) == 12
        assert "identity" not in report.kinds()

    def test_untouched_mismatch_is_an_identity_violation(self):
        weight = construct(self.trefoil)
        # {1,4} is carried unchanged by the saddle 110 -> 111
        bumped = weight.updated({(s("111"), 1): weight.get(s("111"), 1) + 1})
        kinds = check_weight(self.trefoil, bumped).kinds()
        assert "identity" in kinds

    def test_domain_mismatch(self):
        hopf = parse_pd("X 1 3 2 4 / X 2 4 1 3")
        with pytest.raises(DomainMismatchError):
            check_weight(self.trefoil, TwistingWeight.zero(hopf))

        values = dict(TwistingWeight.zero(self.trefoil).values)
        del values[(s("000"), 2)]
        with pytest.raises(DomainMismatchError):
            check_weight(self.trefoil, TwistingWeight(3, values))

        values[(s("000"), 2)] = 0
        values[(s("000"), 4)] = 0
        with pytest.raises(DomainMismatchError):
            check_weight(self.trefoil, TwistingWeight(3, values))

    def test_weight_accessors(self):
        weight = construct(self.trefoil)
        assert set(weight.on_state(s("111"))) == {1, 2, 3}
        assert len(weight.by_state()) == 8
        assert len(weight) == 2 + 1 + 1 + 1 + 2 + 2 + 2 + 3
        assert weight == TwistingWeight(3, dict(weight.values))


def test_compatible_pair_on_kink():
    kink = parse_pd("X 1 2 2 1")
    empty = s("0")
    assert compatible_pair(kink, empty, 0, {1: 0}, {1: 1, 2: 0})
    assert compatible_pair(kink, empty, 0, {1: 0}, {1: 0, 2: 1})
    assert not compatible_pair(kink, empty, 0, {1: 0}, {1: 0, 2: 0})
    with pytest.raises(DomainMismatchError):
        compatible_pair(kink, empty, 0, {1: 0}, {1: 1})


def test_construct_connected_on_kink():
    kink = load("kink")
    weight = construct_connected(kink)
    assert weight.on_state(s("0")) == {1: 0}
    assert weight.on_state(s("1")) == {1: 1, 2: 0}


def test_construct_connected_on_double_kink():
    d = parse_pd(DOUBLE_KINK)
    weight = construct_connected(d)
    assert weight.on_state(s("00")) == {1: 0}
    assert weight.on_state(s("10")) == {1: 1, 2: 0}
    assert weight.on_state(s("01")) == {1: 1, 4: 0}
    assert weight.on_state(s("11")) == {1: 2, 2: 0, 4: 0}


def test_construct_connected_rejects_two_circle_start():
    with pytest.raises(ValueError):
        construct_connected(parse_pd(TREFOIL))


def test_construct_connected_after_crossing_change():
    changed = crossing_change(parse_pd(TREFOIL), 0)
    assert len(resolve(changed, s("000"))) == 1
    weight = construct_connected(changed)
    assert check_weight(changed, weight).ok
    assert weight.get(s("000"), 1) == 0


@pytest.mark.parametrize("name", sorted(load_all()))
def test_construct_on_corpus(name):
    diagram = load(name)
    weight = construct(diagram)
    assert weight.n_crossings == diagram.n
    assert check_weight(diagram, weight).ok


def test_construct_gives_free_loops_zero():
    d = load("trefoil_unknot")
    weight = construct(d)
    plain = construct(parse_pd(TREFOIL))
    for state in all_states(d.n):
        assert weight.get(state, 7) == 0
        for cid, value in plain.on_state(state).items():
            assert weight.get(state, cid) == value


def test_construct_on_split_diagram():
    d = parse_pd("X 1 2 2 1 / X 3 4 4 3")
    weight = construct(d)
    assert check_weight(d, weight).ok
    # each kink keeps its own split labels
    assert weight.on_state(s("11")) == {1: 1, 2: 0, 3: 1, 4: 0}


def test_construct_unknot():
    weight = construct(load("unknot"))
    assert dict(weight.values) == {(State.empty(0), 1): 0}


class TestTransfer:
    """Crossing changes carry weights across."""

    def setup_method(self):
        self.trefoil = parse_pd(TREFOIL)
        self.weight = construct(self.trefoil)

    def test_transfer_is_valid(self):
        changed = crossing_change(self.trefoil, 0)
        moved = transfer(self.trefoil, self.weight, 0, 1)
        assert check_weight(changed, moved).ok

    def test_transfer_twice_is_identity(self):
        changed = crossing_change(self.trefoil, 0)
        moved = transfer(self.trefoil, self.weight, 0, 1)
        back = transfer(changed, moved, 0, 1)
        assert back == self.weight

    def test_random_transfers_stay_valid(self):
        rng = random.Random(7)
        diagram, weight = self.trefoil, self.weight
        for _ in range(10):
            c = rng.randrange(diagram.n)
            edge = rng.choice(diagram.crossings[c].slots)
            weight = transfer(diagram, weight, c, edge)
            diagram = crossing_change(diagram, c)
            assert check_weight(diagram, weight).ok

    def test_transfer_rejects_foreign_edge(self):
        with pytest.raises(ValueError):
            transfer(self.trefoil, self.weight, 0, 3)

    def test_transfer_rejects_invalid_weight(self):
        with pytest.raises(InvalidWeightError):
            transfer(self.trefoil, TwistingWeight.zero(self.trefoil), 0, 1)

    def test_unvalidated_transfer_skips_the_checker(self):
        zero = TwistingWeight.zero(self.trefoil)
        with patch("frobtwist.weights.check_weight", wraps=check_weight) as checker:
            moved = transfer(self.trefoil, zero, 0, 1, validate=False)
        assert checker.call_count == 0
        assert moved.n_crossings == 3


@pytest.mark.parametrize("name", sorted(load_all()))
def test_corpus_transfers_are_valid_and_cancel(name):
    d = load(name)
    if d.n == 0:
        return
    weight = construct(d)
    rng = random.Random(f"transfer-{name}")
    for _ in range(5):
        c0 = rng.randrange(d.n)
        edge = rng.choice(d.crossings[c0].slots)
        changed = crossing_change(d, c0)
        moved = transfer(d, weight, c0, edge)
        assert check_weight(changed, moved).ok, (c0, edge)
        assert transfer(changed, moved, c0, edge) == weight, (c0, edge)


def test_construct_checks_the_result_once():
    d = parse_pd(TREFOIL)
    with patch("frobtwist.weights.check_weight", wraps=check_weight) as checker:
        weight = construct(d)
    assert checker.call_count == 1
    assert check_weight(d, weight).ok


def test_shifted_along_edge_stays_valid():
    d = parse_pd(TREFOIL)
    weight = construct(d)
    for edge in range(1, 7):
        shifted = weight.shifted_along_edge(d, edge)
        assert shifted != weight
        assert check_weight(d, shifted).ok


def test_chain_compatible():
    d = parse_pd(TREFOIL)
    weight = construct(d)
    start = s("000")
    chain = [start]
    for c in (2, 0, 1):
        chain.append(chain[-1].with_(c))
    labels = [weight.on_state(state) for state in chain]
    assert chain_compatible(d, start, [2, 0, 1], labels)

    last = dict(labels[-1])
    last[3] += 1
    assert not chain_compatible(d, start, [2, 0, 1], labels[:-1] + [last])

    with pytest.raises(ValueError):
        chain_compatible(d, start, [2, 0, 1], labels[:2])


@pytest.mark.parametrize("name", sorted(n for n, d in load_all().items() if d.n >= 2))
def test_random_faces_compose(name):
    d = load(name)
    weight = construct(d)
    rng = random.Random(f"faces-{name}")
    for _ in range(10):
        c, c2 = rng.sample(range(d.n), 2)
        rest = [i for i in range(d.n) if i not in (c, c2) and rng.random() < 0.5]
        state = State.from_members(d.n, rest)
        middle, top = state.with_(c), state.with_(c).with_(c2)
        labels = [weight.on_state(x) for x in (state, middle, top)]
        assert compatible_pair(d, state, c, labels[0], labels[1])
        assert compatible_pair(d, middle, c2, labels[1], labels[2])
        assert chain_compatible(d, state, [c, c2], labels)

        other = [labels[0], weight.on_state(state.with_(c2)), labels[2]]
        assert chain_compatible(d, state, [c2, c], other)
