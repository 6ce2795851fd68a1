import random
from fractions import Fraction

import pytest

from linfkit.graded import GradedSpace
from linfkit.nr import TableMap, canonical_tuples

SPACES = [
    GradedSpace([("a", 0), ("b", 1), ("c", -1)]),
    GradedSpace([("a", 0), ("b", 1), ("c", 1), ("e", 2)]),
    GradedSpace([("u", -1), ("v", 0), ("w", 0), ("z", 1)]),
    GradedSpace([("p", 0), ("q", 0)]),
]

# every degree reachable by small maps is populated, so products rarely vanish
DENSE_SPACES = [
    GradedSpace([("a", 0), ("b", 0), ("c", 1), ("d", 1)]),
    GradedSpace([("x", 0), ("y", 1), ("z", -1)]),
    GradedSpace([("p", 0), ("q", 0), ("r", 1)]),
]


def random_element(space, degree, rng, density=0.7):
    labels = space.labels_in_degree(degree)
    terms = {l: Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))
             for l in labels if rng.random() < density}
    return space.element(terms)


def random_map(space, arity, degree, tag, rng, density=0.6):
    """A random multilinear map with entries in the degree dictated by the inputs."""
    m = TableMap(space, space, arity, degree, tag, name=f"r{arity}")
    for t in canonical_tuples(space, arity, tag):
        out = sum(space.degree_of(l) for l in t) + degree
        if rng.random() < density:
            val = random_element(space, out, rng)
            if val:
                m.table[t] = val
    return m


def all_tuples(space, arity):
    from itertools import product
    return [tuple(space.basis_element(l) for l in t) for t in product(space.labels, repeat=arity)]


@pytest.fixture
def rng():
    return random.Random(20240601)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
