import random
from fractions import Fraction

import pytest

from ratquiver.documents import fixture_path, load_json, parse_quiver_document
from ratquiver.linalg import Matrix
from ratquiver.quiver import Quiver, validate

ACCEPTANCE_LINES = []


def load_rq(name):
    q, gens = parse_quiver_document(load_json(fixture_path(name)))
    return validate(q, gens)


@pytest.fixture
def d4_s3():
    return load_rq("d4_s3.quiver")


@pytest.fixture
def kronecker_swap():
    return load_rq("kronecker_swap.quiver")


@pytest.fixture
def two_loop():
    return load_rq("two_loop.quiver")


def chain_quiver(n, prefix="v"):
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Quiver.from_arrows(vs, [(f"e{i}", vs[i - 1], vs[i]) for i in range(1, n)])


def d_quiver(n):
    """D_n: a chain v1..v_{n-1} with an extra leaf v_n on v_{n-2}."""
    vs = [f"v{i}" for i in range(1, n + 1)]
    arrows = [(f"e{i}", vs[i - 1], vs[i]) for i in range(1, n - 1)]
    arrows.append((f"e{n - 1}", vs[n - 3], vs[n - 1]))
    return Quiver.from_arrows(vs, arrows)


def e_quiver(n):
    """E_n: chain v1..v_{n-1} with v_n attached to v3."""
    vs = [f"v{i}" for i in range(1, n + 1)]
    arrows = [(f"e{i}", vs[i - 1], vs[i]) for i in range(1, n - 1)]
    arrows.append((f"e{n - 1}", vs[2], vs[n - 1]))
    return Quiver.from_arrows(vs, arrows)


D4_OUT = Quiver.from_arrows(["v0", "v1", "v2", "v3"], [("e1", "v0", "v1"), ("e2", "v0", "v2"), ("e3", "v0", "v3")])


def random_rational(rng, height=5):
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_matrix(rng, rows, cols, height=5):
    return Matrix(rows, cols, [random_rational(rng, height) for _ in range(rows * cols)])


def random_invertible(rng, n, height=5):
    while True:
        g = random_matrix(rng, n, n, height)
        if n == 0 or g.det() != 0:
            return g


@pytest.fixture
def rng():
    return random.Random(20261017)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
