import os
import subprocess
import sys

import numpy as np
import pytest

from novikov import _accel
from novikov.diffreal import basis_matrix
from novikov.linalg import rank_modular


def test_backends_agree_on_basis_matrices():
    for n in range(1, 7):
        m = basis_matrix(n)
        assert rank_modular(m, backend="numpy") == len(m.rows)
        if _accel.HAVE_NUMBA:
            assert rank_modular(m, backend="numba") == len(m.rows)


def test_singular_matrix():
    m = np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert _accel.rank_mod_p_numpy(m) == 2
    if _accel.HAVE_NUMBA:
        assert _accel.rank_mod_p_numba(m) == 2


def test_unknown_backend():
    with pytest.raises(ValueError):
        _accel.rank_mod_p(np.eye(2, dtype=np.int64), backend="cuda")


@pytest.mark.parametrize("flag, expected", [("1", "numpy"), ("0", "numba" if _accel.HAVE_NUMBA else "numpy")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, NOVIKOV_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from novikov import _accel; print(_accel.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected
