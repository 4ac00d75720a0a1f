import random

import pytest

from qchar.series import QPoly, QSeries
from qchar.symfunc import SymPoly

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def perturb(table: SymPoly, key: tuple, k: int, delta: int) -> SymPoly:
    """Copy of ``table`` with ``delta * q^k`` added to the coefficient at ``key``."""
    out = SymPoly(dict(table.terms), table.n_x, table.n_y, table.ring)
    old = out.terms.get(key, 0)
    if isinstance(old, QSeries):
        bump = QSeries([0] * k + [delta], old.order)
    elif isinstance(old, QPoly) or k > 0:
        bump = QPoly.q(k) * delta
    else:
        bump = delta
    new = old + bump
    if new:
        out.terms[key] = new
    else:
        out.terms.pop(key, None)
    return out


def random_site(rng: random.Random, lhs: SymPoly, rhs: SymPoly, q_order: int | None):
    keys = sorted(lhs.terms.keys() | rhs.terms.keys())
    key = rng.choice(keys)
    top = q_order if q_order is not None else 3
    return key, rng.randint(0, top), rng.choice([-3, -2, -1, 1, 2, 3])


@pytest.fixture
def rng():
    return random.Random(20261016)
