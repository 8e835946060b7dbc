import re

import pytest
from hypothesis import HealthCheck, settings

from lscolor.algebra import GradedAlgebra, GradedLinOp
from lscolor.catalog import a_alpha, example37
from lscolor.exactnum import CycScalar
from lscolor.grading import AbelianGroup, Bicharacter

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def unital_color_algebra() -> GradedAlgebra:
    """Unital associative Z3 x Z3-graded algebra with a genuinely colored eps.

    Basis 1, a, b, c with ab = c, ba = z3*c. Associative algebras satisfy the
    left-symmetric color identity for every eps, and the unit keeps the
    coboundary maps far from zero.
    """
    z3 = CycScalar.zeta(3)
    G = AbelianGroup([3, 3])
    eps = Bicharacter(G, [[1, z3], [z3 ** -1, 1]])
    products = {
        (0, 0): {0: 1},
        (0, 1): {1: 1}, (1, 0): {1: 1},
        (0, 2): {2: 1}, (2, 0): {2: 1},
        (0, 3): {3: 1}, (3, 0): {3: 1},
        (1, 2): {3: 1}, (2, 1): {3: z3},
    }
    return GradedAlgebra([G(0, 0), G(1, 0), G(0, 1), G(1, 1)], eps, products, labels=("1", "a", "b", "c"))


def _block(A, a, m):
    (p, q), (r, s) = m
    return GradedLinOp(A, A.group.zero(), [[a, 0, 0], [0, p, q], [0, r, s]])


def square_families():
    """Degree-0 operators with P^2 = 0, P^2 = P and P^2 = I over a_alpha(1) and example37."""
    A, B = a_alpha(1), example37()
    diag = lambda vals: GradedLinOp.diagonal(A, vals)
    out = {"P^2=0": [], "P^2=P": [], "P^2=I": []}
    out["P^2=0"].append(diag([0, 0]))
    out["P^2=P"] += [diag(v) for v in ([0, 0], [1, 0], [0, 1], [1, 1])]
    out["P^2=I"] += [diag(v) for v in ([1, 1], [1, -1], [-1, 1], [-1, -1])]
    for s in (1, 2, -1, 3):
        out["P^2=0"] += [_block(B, 0, [[0, s], [0, 0]]), _block(B, 0, [[0, 0], [s, 0]])]
        out["P^2=0"].append(_block(B, 0, [[s, s * s], [-1, -s]]))
        for a in (0, 1):
            out["P^2=P"] += [_block(B, a, [[1, s], [0, 0]]), _block(B, a, [[0, 0], [s, 1]])]
        for a in (1, -1):
            out["P^2=I"] += [_block(B, a, [[1, s], [0, -1]]), _block(B, a, [[-1, 0], [s, 1]])]
    for a in (0, 1):
        out["P^2=P"] += [_block(B, a, [[0, 0], [0, 0]]), _block(B, a, [[1, 0], [0, 1]])]
    for a in (1, -1):
        out["P^2=I"] += [_block(B, a, [[0, 1], [1, 0]]), _block(B, a, [[1, 0], [0, 1]])]
    return out


@pytest.fixture(scope="session")
def ex37():
    return example37()


@pytest.fixture(scope="session")
def colored():
    return unital_color_algebra()


_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and rep.when == "call":
                lines.append((int(m.group(1)), "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for n, verdict in sorted(lines):
            terminalreporter.write_line(f"criterion {n:2d}: {verdict}")
