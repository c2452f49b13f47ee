import itertools
import random

import pytest

from tablesense.errors import DegenerateTable, TooFewColumns, TooFewRows
from tablesense.extraction import CellGrid
from tablesense.heuristics import (
    avg_sim_hor,
    avg_sim_vert,
    compute_trace,
    max_sim_hor,
    max_sim_vert,
)
from tablesense.similarity import MetricConfig, MetricKind, similarity

LEV = MetricConfig()


def oracle(rows, cfg):
    """Plain double loops over ordered pairs; no caching, no symmetry shortcuts."""
    n, m = len(rows), len(rows[0])

    def line(cells):
        k = len(cells)
        return sum(similarity(x, y, cfg) for x in cells for y in cells) / (k * k)

    hor = [line(rows[i]) for i in range(1, n)]
    vert = [line([rows[i][j] for i in range(n)]) for j in range(1, m)]
    return max(hor), max(vert), sum(hor) / n, sum(vert) / m


def grid(rows):
    return CellGrid.from_rows(rows)


def test_constant_row_saturates():
    g = grid([["h", "i", "j"], ["a", "a", "a"], ["x", "y", "z"]])
    assert max_sim_hor(g, LEV) == 1.0


def test_two_by_two_hand_expansion():
    g = grid([["h1", "h2"], ["x", "y"]])
    s = similarity("x", "y", LEV)
    assert max_sim_hor(g, LEV) == pytest.approx((2 + 2 * s) / 4)
    assert avg_sim_hor(g, LEV) == pytest.approx((2 + 2 * s) / 4 / 2)
    s2 = similarity("h2", "y", LEV)
    assert avg_sim_vert(g, LEV) == pytest.approx((2 + 2 * s2) / 4 / 2)


def test_all_identical_two_by_two():
    t = compute_trace(grid([["a", "a"], ["a", "a"]]), LEV)
    assert t.values() == (1.0, 1.0, 0.5, 0.5)


@pytest.mark.parametrize("n,m", [(3, 2), (4, 5), (2, 4)])
def test_constant_grid_averages(n, m):
    g = grid([["q"] * m for _ in range(n)])
    assert avg_sim_hor(g, LEV) == pytest.approx((n - 1) / n)
    assert avg_sim_vert(g, LEV) == pytest.approx((m - 1) / m)
    assert max_sim_vert(g, LEV) == 1.0


def test_contacts_table(contacts_grid):
    t = compute_trace(contacts_grid, LEV)
    assert t.values() == pytest.approx(oracle(contacts_grid.cells, LEV), abs=1e-12)
    # a column of repeated city names beats any mixed-type row
    assert t.max_sim_vert > t.max_sim_hor
    # frozen from the brute-force oracle
    assert t.values() == pytest.approx(
        (0.35535714285714287, 0.48010342598577893, 0.2607207498383969, 0.27716871363930184), abs=1e-12
    )


ALPHABET = ["Berlin", "Bern", "42"]


def test_exhaustive_three_by_three_against_oracle():
    cfgs = [LEV, MetricConfig(kind=MetricKind.JARO_WINKLER), MetricConfig(kind=MetricKind.NGRAM, modified=True)]
    for cfg in cfgs:
        for cells in itertools.product(ALPHABET, repeat=9):
            rows = [list(cells[0:3]), list(cells[3:6]), list(cells[6:9])]
            got = compute_trace(grid(rows), cfg).values()
            want = oracle(rows, cfg)
            assert max(abs(x - y) for x, y in zip(got, want)) <= 1e-12


def test_sampled_small_grids_against_oracle():
    rng = random.Random(5)
    for _ in range(1500):
        n, m = rng.randint(2, 4), rng.randint(2, 4)
        rows = [[rng.choice(ALPHABET) for _ in range(m)] for _ in range(n)]
        got = compute_trace(grid(rows), LEV).values()
        assert got == pytest.approx(oracle(rows, LEV), abs=1e-12)


def test_transpose_duality():
    rng = random.Random(9)
    words = ["a", "ab", "abc", "12", "x y", ""]
    for _ in range(300):
        n, m = rng.randint(2, 5), rng.randint(2, 5)
        g = grid([[rng.choice(words) for _ in range(m)] for _ in range(n)])
        gt = g.transpose()
        assert max_sim_vert(g, LEV) == max_sim_hor(gt, LEV)
        assert avg_sim_vert(g, LEV) == avg_sim_hor(gt, LEV)
        assert avg_sim_hor(g, LEV) <= max_sim_hor(g, LEV) * (g.n - 1) / g.n + 1e-12


def test_degenerate_shapes():
    with pytest.raises(TooFewRows):
        max_sim_hor(grid([["a", "b", "c"]]), LEV)
    with pytest.raises(TooFewColumns):
        avg_sim_vert(grid([["a"], ["b"]]), LEV)
    with pytest.raises(DegenerateTable):
        CellGrid.from_rows([])


def test_trace_is_deterministic(contacts_grid):
    cfg = MetricConfig(kind=MetricKind.NGRAM, modified=True)
    assert compute_trace(contacts_grid, cfg) == compute_trace(contacts_grid, cfg)
