from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from ordanova import ContingencyTable, load_example

DATA = Path(__file__).resolve().parents[1] / "src" / "ordanova" / "data"

TABLE3 = [[0, 0, 0, 5, 0], [0, 0, 1, 4, 0], [0, 3, 2, 0, 0], [0, 0, 5, 0, 0], [0, 2, 2, 1, 0]]
TABLE4 = [[0, 0, 1, 4, 0], [3, 0, 1, 1, 0], [3, 2, 0, 0, 0], [1, 0, 4, 0, 0], [3, 1, 1, 0, 0]]


def make_table(rows):
    return ContingencyTable(tuple(f"L{i}" for i in range(len(rows))), np.array(rows))


@pytest.fixture
def table3():
    return load_example("table3")


@pytest.fixture
def table4():
    return load_example("table4")


def oracle_decomposition(rows):
    """Exact rational decomposition by plain loops, no numpy.

    Returns (total, within, between, within_by_lab, between_by_k) as Fractions.
    """
    M, K = len(rows), len(rows[0])
    n = sum(rows[0])
    scale = Fraction(4, K - 1)
    cum = []
    for row in rows:
        acc, c = 0, []
        for k in range(K - 1):
            acc += row[k]
            c.append(Fraction(acc, n))
        cum.append(c)
    fbar = [sum(cum[m][k] for m in range(M)) / M for k in range(K - 1)]
    total = scale * sum(f * (1 - f) for f in fbar)
    by_lab = [scale * sum(f * (1 - f) for f in c) for c in cum]
    within = sum(by_lab) / M
    by_k = [sum((cum[m][k] - fbar[k]) ** 2 for m in range(M)) / M for k in range(K - 1)]
    between = scale * sum(by_k)
    return total, within, between, by_lab, by_k


@st.composite
def count_tables(draw, max_labs=20, max_k=7, max_n=50, min_n=2):
    M = draw(st.integers(2, max_labs))
    K = draw(st.integers(2, max_k))
    n = draw(st.integers(min_n, max_n))
    rows = []
    for _ in range(M):
        cuts = sorted(draw(st.lists(st.integers(0, n), min_size=K - 1, max_size=K - 1)))
        edges = [0, *cuts, n]
        rows.append([edges[i + 1] - edges[i] for i in range(K)])
    return rows
