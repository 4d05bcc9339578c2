import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from novikov import _accel
from novikov.errors import InconsistentSystem, RankDeficient
from novikov.linalg import (
    EchelonBasis,
    RowSpaceSolver,
    SparseMatrix,
    bareiss_dense,
    certified_rank_lower_bound,
    det_exact,
    rank_exact,
    rank_modular,
    rank_sparse,
)


def fraction_rank(rows):
    """Plain Gauss-Jordan over Fraction; the reference for every exact routine."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def random_low_rank(rng, nrows, ncols, rank, lo=-3, hi=3):
    left = [[rng.randint(lo, hi) for _ in range(rank)] for _ in range(nrows)]
    right = [[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(rank)]
    return [[sum(left[i][k] * right[k][j] for k in range(rank)) for j in range(ncols)] for i in range(nrows)]


def test_identity_and_zero():
    assert rank_exact(np.eye(5, dtype=int)) == 5
    assert rank_exact([[0] * 4 for _ in range(3)]) == 0
    assert rank_exact(SparseMatrix([], 0)) == 0


@pytest.mark.parametrize("seed", range(40))
def test_rank_routes_agree(seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 14), rng.randint(1, 14)
    r = rng.randint(0, min(nrows, ncols))
    m = random_low_rank(rng, nrows, ncols, r)
    expected = fraction_rank(m)
    assert bareiss_dense(m)[0] == expected
    assert rank_sparse(m) == expected
    assert rank_exact(m) == expected
    assert rank_modular(m) <= expected


def test_large_entries_stay_exact():
    rng = random.Random(1)
    m = random_low_rank(rng, 12, 12, 9, lo=-10**12, hi=10**12)
    assert rank_sparse(m) == fraction_rank(m) == 9


@pytest.mark.parametrize("seed", range(15))
def test_det_vs_sympy(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 7)
    m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
    assert det_exact(m) == sympy.Matrix(m).det()


def test_det_singular_and_empty():
    assert det_exact([[1, 2], [2, 4]]) == 0
    assert det_exact([]) == 1


def test_echelon_leading_columns_distinct():
    ech = EchelonBasis()
    for row in ({0: 2, 3: 4}, {0: 1, 1: 1}, {1: 1, 3: -2}, {0: 3, 1: 1, 3: 6}):
        ech.add(row)
    for lead, row in ech.pivots.items():
        assert min(row) == lead and row[lead] > 0


def test_row_space_solver():
    rows = [{0: 1, 1: 2}, {1: 3, 2: 1}, {0: 2, 2: 5}]
    solver = RowSpaceSolver(rows)
    x = solver.solve({0: 3, 1: 11, 2: 7})
    dense = SparseMatrix(rows, 3).to_dense()
    combo = [sum(x[i] * dense[i][j] for i in range(3)) for j in range(3)]
    assert combo == [3, 11, 7]
    assert all(isinstance(v, Fraction) for v in x)


def test_row_space_solver_errors():
    solver = RowSpaceSolver([{0: 1}, {1: 1}])
    with pytest.raises(InconsistentSystem):
        solver.solve({2: 1})
    with pytest.raises(RankDeficient):
        RowSpaceSolver([{0: 1}, {0: 2}]).solve({0: 1})


@pytest.mark.parametrize("backend", ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else []))
def test_modular_backends(backend):
    rng = random.Random(7)
    for _ in range(20):
        nrows, ncols = rng.randint(1, 12), rng.randint(1, 12)
        m = random_low_rank(rng, nrows, ncols, rng.randint(0, min(nrows, ncols)))
        assert rank_modular(m, backend=backend) == fraction_rank(m)


def test_modular_rank_can_drop_below_rational_rank():
    p = 7
    m = [[1, 0], [0, p]]
    assert rank_modular(m, p=p) == 1 < rank_exact(m) == 2
    r, certified = certified_rank_lower_bound(m, p=p)
    assert (r, certified) == (1, False)
    assert certified_rank_lower_bound(np.eye(3, dtype=int)) == (3, True)
