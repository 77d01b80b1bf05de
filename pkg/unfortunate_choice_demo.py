#!/usr/bin/env python3
"""
Unfortunate Choice Demo script for frobtwist.

Labels that satisfy every saddle condition on the states with at most two
crossings can still fail to extend to the full state. This script shows one
such choice on the trefoil, proves it infeasible with the oracle, and fixes it
by swapping the two labels at state 110.
"""

from frobtwist import PartialAssignment, State, oracle_solve
from frobtwist.corpus import load

CHOICE = {
    "000": {1: 0, 2: 0},
    "100": {1: 0},
    "010": {1: 0},
    "001": {1: 0},
    "110": {1: 1, 2: 0},
    "101": {1: 0, 2: 1},
    "011": {1: 0, 3: 1},
}


def as_pins(table):
    return PartialAssignment(
        3,
        {
            (State.from_string(bits), cid): value
            for bits, labels in table.items()
            for cid, value in labels.items()
        },
    )


def report(title, trefoil, table):
    weight = oracle_solve(trefoil, as_pins(table))
    if weight is None:
        print(f"{title}: no twisting weight extends these labels")
    else:
        print(f"{title}: extends, state 111 gets {weight.on_state(State.from_string('111'))}")


def main():
    trefoil = load("trefoil")
    report("Original choice", trefoil, CHOICE)

    swapped = dict(CHOICE)
    swapped["110"] = {1: 0, 2: 1}
    report("Swapped at 110", trefoil, swapped)


if __name__ == "__main__":
    main()
