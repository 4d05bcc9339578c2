"""Exact linear algebra over the rationals for integer matrices.

Rank and solving use fraction-free elimination: every intermediate value is an
integer, and echelon rows are kept primitive (content divided out) so entries
stay small. Dense Bareiss elimination handles small matrices and determinants.
A certified modular rank is available as a fast cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _accel
from .errors import InconsistentSystem, RankDeficient

DENSE_THRESHOLD = 400  # rows * cols at or below this use dense Bareiss


@dataclass
class SparseMatrix:
    """Integer matrix stored as a list of {column: value} rows."""

    rows: list[dict[int, int]]
    ncols: int
    row_labels: list = field(default_factory=list)
    col_labels: list = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "SparseMatrix":
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        return cls([{j: int(v) for j, v in enumerate(r) if v} for r in dense], ncols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in self.rows]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def to_numpy(self, dtype=object) -> np.ndarray:
        return np.array(self.to_dense(), dtype=dtype).reshape(len(self.rows), self.ncols)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.rows == other.rows


def _as_sparse(m) -> SparseMatrix:
    if isinstance(m, SparseMatrix):
        return m
    if isinstance(m, np.ndarray):
        if m.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        return SparseMatrix([{j: int(v) for j, v in enumerate(r) if v} for r in m.tolist()], m.shape[1])
    return SparseMatrix.from_dense(m)


def _primitive(row: dict[int, int], extra: dict | None = None) -> None:
    """Divide row (and the tracked combination) by their common content, in place."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if extra:
        for v in extra.values():
            g = gcd(g, v)
            if g == 1:
                return
    if g > 1:
        for k in row:
            row[k] //= g
        if extra:
            for k in extra:
                extra[k] //= g


def _axpy(a: int, x: dict, b: int, y: dict) -> dict:
    """a*x - b*y with zeros dropped."""
    out = {k: a * v for k, v in x.items()} if a != 1 else dict(x)
    for k, v in y.items():
        w = out.get(k, 0) - b * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class EchelonBasis:
    """Incremental row echelon form with fraction-free updates.

    Each stored row has a distinct leading (smallest) column. With
    ``track=True`` every stored row also keeps its integer combination of the
    inserted rows, so targets can be expressed in terms of the originals.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict[int, dict[int, int]] = {}
        self.combos: dict[int, dict[Hashable, int]] = {}
        self.inserted = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict[int, int], combo: dict | None):
        while row:
            lead = min(row)
            prow = self.pivots.get(lead)
            if prow is None:
                return lead, row, combo
            a, b = prow[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            if a < 0:
                a, b = -a, -b
            row = _axpy(a, row, b, prow)
            if combo is not None:
                combo = _axpy(a, combo, b, self.combos[lead])
            _primitive(row, combo)
        return None, row, combo

    def add(self, row: dict[int, int], label: Hashable | None = None) -> bool:
        """Insert a row; True when it raised the rank."""
        combo = None
        if self.track:
            combo = {self.inserted if label is None else label: 1}
        self.inserted += 1
        row = {k: int(v) for k, v in row.items() if v}
        lead, row, combo = self._reduce(row, combo)
        if lead is None:
            return False
        if row[lead] < 0:
            row = {k: -v for k, v in row.items()}
            if combo is not None:
                combo = {k: -v for k, v in combo.items()}
        _primitive(row, combo)
        self.pivots[lead] = row
        if combo is not None:
            self.combos[lead] = combo
        return True

    def express(self, target: dict[int, int | Fraction]) -> dict[Hashable, Fraction]:
        """Coefficients c with sum c[label] * original_row[label] == target."""
        if not self.track:
            raise ValueError("express() needs an EchelonBasis built with track=True")
        v = {k: Fraction(x) for k, x in target.items() if x}
        coeffs: dict[Hashable, Fraction] = {}
        while v:
            lead = min(v)
            prow = self.pivots.get(lead)
            if prow is None:
                raise InconsistentSystem(f"target has a component outside the row space (column {lead})")
            c = v[lead] / prow[lead]
            for k, x in prow.items():
                w = v.get(k, 0) - c * x
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
            for label, t in self.combos[lead].items():
                coeffs[label] = coeffs.get(label, 0) + c * t
        return {k: Fraction(x) for k, x in coeffs.items() if x}


def rank_sparse(m) -> int:
    m = _as_sparse(m)
    basis = EchelonBasis()
    full = min(m.shape)
    for r in m.rows:
        basis.add(r)
        if basis.rank == full:
            break
    return basis.rank


def bareiss_dense(rows: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Bareiss elimination with row/column pivoting; returns (rank, signed last pivot).

    For a square nonsingular matrix the second value is the determinant.
    """
    a = [[int(x) for x in r] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    sign = 1
    prev = 1
    rank = 0
    cols = list(range(ncols))
    for k in range(min(nrows, ncols)):
        piv = None
        for j in range(k, ncols):
            for i in range(k, nrows):
                if a[i][cols[j]]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        if i != k:
            a[i], a[k] = a[k], a[i]
            sign = -sign
        if j != k:
            cols[j], cols[k] = cols[k], cols[j]
            sign = -sign
        pk = a[k][cols[k]]
        for r in range(k + 1, nrows):
            ar = a[r][cols[k]]
            row_r, row_k = a[r], a[k]
            for jj in range(k + 1, ncols):
                c = cols[jj]
                row_r[c] = (pk * row_r[c] - ar * row_k[c]) // prev
            row_r[cols[k]] = 0
        prev = pk
        rank += 1
    return rank, sign * prev if rank else 0


def det_exact(m) -> int:
    dense = _as_sparse(m).to_dense() if not isinstance(m, list) else m
    n = len(dense)
    if any(len(r) != n for r in dense):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    rank, d = bareiss_dense(dense)
    return d if rank == n else 0


def rank_exact(m) -> int:
    """Rank over Q; dense Bareiss for small inputs, sparse echelon otherwise."""
    sp = _as_sparse(m)
    nrows, ncols = sp.shape
    if nrows == 0 or ncols == 0:
        return 0
    if nrows * ncols <= DENSE_THRESHOLD:
        return bareiss_dense(sp.to_dense())[0]
    return rank_sparse(sp)


def rank_modular(m, p: int = _accel.DEFAULT_PRIME, backend: str | None = None) -> int:
    """Rank over GF(p); a lower bound for the rank over Q, equal to it when full."""
    sp = _as_sparse(m)
    arr = np.zeros(sp.shape, dtype=np.int64)
    for i, r in enumerate(sp.rows):
        for j, v in r.items():
            arr[i, j] = v % p
    return _accel.rank_mod_p(arr, p, backend)


def certified_rank_lower_bound(m, p: int = _accel.DEFAULT_PRIME, backend: str | None = None) -> tuple[int, bool]:
    """(modular rank, whether it certifies the exact rank because it is full)."""
    sp = _as_sparse(m)
    r = rank_modular(sp, p, backend)
    return r, r == min(sp.shape)


class RowSpaceSolver:
    """Express vectors in the row space of a fixed integer matrix."""

    def __init__(self, rows: Iterable[dict[int, int]]):
        self.basis = EchelonBasis(track=True)
        self.nrows = 0
        for i, r in enumerate(rows):
            self.basis.add(r, label=i)
            self.nrows += 1

    @property
    def rank(self) -> int:
        return self.basis.rank

    @property
    def full_row_rank(self) -> bool:
        return self.basis.rank == self.nrows

    def solve(self, target: dict[int, int | Fraction]) -> list[Fraction]:
        """Unique x with x . rows == target."""
        if not self.full_row_rank:
            raise RankDeficient(f"rows have rank {self.rank} < {self.nrows}; coordinates are not unique")
        coeffs = self.basis.express(target)
        return [coeffs.get(i, Fraction(0)) for i in range(self.nrows)]
