"""Young shapes, Novikov diagrams (a shape plus a nose box) and Novikov tableaux.

A tableau stores the rows of its Young shape and, separately, the nose letter
that sits at the end of the first row. Filling rules:

* block rule: a[i][0] >= a[i+1][0] whenever rows i and i+1 have equal length;
* tail rule: reading the non-first-column boxes from the bottom row upwards,
  each row left to right, and finishing with the nose, gives a
  non-decreasing word.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .combinatorics import binomial, multinomial, partitions_desc
from .errors import DegreeMismatch, ShapeMismatch
from .terms import Alphabet


@dataclass(frozen=True, order=True)
class YoungShape:
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(r < 1 for r in rows):
            raise ValueError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing: {rows}")

    @property
    def degree(self) -> int:
        return sum(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def blocks(self) -> list[tuple[int, int, int]]:
        """Maximal runs of equal rows as (row_length, first_row_index, count)."""
        out = []
        i = 0
        while i < len(self.rows):
            j = i
            while j < len(self.rows) and self.rows[j] == self.rows[i]:
                j += 1
            out.append((self.rows[i], i, j - i))
            i = j
        return out

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")"


@dataclass(frozen=True)
class NovikovDiagram:
    shape: YoungShape

    @property
    def degree(self) -> int:
        return self.shape.degree + 1

    @property
    def nose_position(self) -> tuple[int, int]:
        """1-based (row, column) of the nose box."""
        first = self.shape.rows[0] if self.shape.rows else 0
        return (1, first + 1)


def enumerate_young_shapes(d: int) -> list[YoungShape]:
    """Partitions of d in lexicographically decreasing order."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return [YoungShape(p) for p in partitions_desc(d)]


@dataclass(frozen=True)
class NovikovTableau:
    shape: YoungShape
    rows: tuple[tuple[str, ...], ...]
    nose: str

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if not isinstance(self.shape, YoungShape):
            object.__setattr__(self, "shape", YoungShape(self.shape))
        lengths = tuple(len(r) for r in self.rows)
        if lengths != self.shape.rows:
            raise ShapeMismatch(f"row lengths {lengths} disagree with shape {self.shape.rows}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[str]]) -> "NovikovTableau":
        """Build from rows where the first row ends with the nose letter."""
        rows = [tuple(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeMismatch("the first row must contain at least the nose")
        first = rows[0]
        body = [first[:-1]] + rows[1:] if len(first) > 1 else rows[1:]
        if len(first) == 1 and rows[1:]:
            raise ShapeMismatch("rows below an empty first row")
        try:
            shape = YoungShape(tuple(len(r) for r in body))
        except ValueError as exc:
            raise ShapeMismatch(str(exc)) from None
        return cls(shape, tuple(body), first[-1])

    @property
    def degree(self) -> int:
        return self.shape.degree + 1

    def rows_with_nose(self) -> tuple[tuple[str, ...], ...]:
        if not self.rows:
            return ((self.nose,),)
        return (self.rows[0] + (self.nose,),) + self.rows[1:]

    def first_column(self) -> tuple[str, ...]:
        return tuple(r[0] for r in self.rows)

    def reading_word(self) -> list[tuple[tuple[int, int], str]]:
        """Tail-rule word with 1-based cell coordinates."""
        word = []
        for i in range(len(self.rows) - 1, -1, -1):
            for j in range(1, len(self.rows[i])):
                word.append(((i + 1, j + 1), self.rows[i][j]))
        word.append((self.nose_cell, self.nose))
        return word

    @property
    def nose_cell(self) -> tuple[int, int]:
        return (1, (self.shape.rows[0] if self.shape.rows else 0) + 1)

    def entries(self) -> list[str]:
        return [x for row in self.rows_with_nose() for x in row]

    def relabel(self, mapping) -> "NovikovTableau":
        return NovikovTableau(
            self.shape, tuple(tuple(mapping[x] for x in r) for r in self.rows), mapping[self.nose]
        )

    def to_json(self) -> dict:
        return {"shape": list(self.shape.rows), "rows": [list(r) for r in self.rows], "nose": self.nose}

    @classmethod
    def from_json(cls, data) -> "NovikovTableau":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(YoungShape(tuple(data["shape"])), tuple(tuple(r) for r in data["rows"]), data["nose"])

    def __str__(self) -> str:
        return " / ".join(" ".join(r) for r in self.rows_with_nose())


@dataclass(frozen=True)
class Violation:
    rule: str  # "block" or "tail"
    cells: tuple[tuple[int, int], tuple[int, int]]
    letters: tuple[str, str]

    def __str__(self) -> str:
        (i1, j1), (i2, j2) = self.cells
        x, y = self.letters
        if self.rule == "block":
            return f"block rule: a[{i1},{j1}]={x} < a[{i2},{j2}]={y} in equal-length rows {i1},{i2}"
        return f"tail rule: a[{i1},{j1}]={x} > a[{i2},{j2}]={y} in the reading word"


@dataclass(frozen=True)
class Validation:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


def _order(alphabet: Alphabet | None, t: NovikovTableau) -> Alphabet:
    return alphabet if alphabet is not None else Alphabet.covering(t.entries())


def validate_tableau(t: NovikovTableau, alphabet: Alphabet | None = None) -> Validation:
    """Check both filling rules; violations are listed block rule first, top to bottom."""
    lengths = tuple(len(r) for r in t.rows)
    if lengths != t.shape.rows:
        raise ShapeMismatch(f"row lengths {lengths} disagree with shape {t.shape.rows}")
    order = _order(alphabet, t)
    key = order.key
    found = []
    for i in range(len(t.rows) - 1):
        if t.shape.rows[i] == t.shape.rows[i + 1]:
            x, y = t.rows[i][0], t.rows[i + 1][0]
            if key(x) < key(y):
                found.append(Violation("block", ((i + 1, 1), (i + 2, 1)), (x, y)))
    word = t.reading_word()
    for (c1, x), (c2, y) in zip(word, word[1:]):
        if key(x) > key(y):
            found.append(Violation("tail", (c1, c2), (x, y)))
    return Validation(tuple(found))


def count_fillings_per_shape(shape: YoungShape, n: int) -> int:
    """Tableaux of this shape filled with n distinct letters: C(n, m) m!/prod(m_i!)."""
    if shape.degree + 1 != n:
        raise DegreeMismatch(f"shape of degree {shape.degree} cannot carry {n} letters")
    mults = [count for _, _, count in shape.blocks()]
    m = len(shape)
    return binomial(n, m) * multinomial(m, mults)


def _sub_multisets(counts: list[tuple[str, int]], size: int) -> Iterator[list[tuple[str, int]]]:
    """Sub-multisets of given size, as (letter, multiplicity) lists."""
    if size == 0:
        yield []
        return
    if not counts:
        return
    (letter, avail), rest = counts[0], counts[1:]
    remaining = sum(c for _, c in rest)
    for take in range(min(avail, size), -1, -1):
        if size - take > remaining:
            break
        for tail in _sub_multisets(rest, size - take):
            yield ([(letter, take)] if take else []) + tail


def _tableaux_of_shape(shape: YoungShape, pool: Counter, order: Alphabet) -> Iterator[NovikovTableau]:
    blocks = shape.blocks()

    def choose(b: int, pool: Counter, column: list[str]):
        if b == len(blocks):
            yield column, pool
            return
        _, _, size = blocks[b]
        counts = sorted(((x, c) for x, c in pool.items() if c), key=lambda kv: order.key(kv[0]))
        for sub in _sub_multisets(counts, size):
            picked = sorted(
                (x for x, c in sub for _ in range(c)), key=order.key, reverse=True
            )
            left = pool.copy()
            left.subtract(dict(sub))
            yield from choose(b + 1, left, column + picked)

    for column, left in choose(0, pool, []):
        tail = sorted(left.elements(), key=order.key)
        it = iter(tail)
        rows = [[x] for x in column]
        for i in range(len(rows) - 1, -1, -1):
            rows[i].extend(next(it) for _ in range(shape.rows[i] - 1))
        nose = next(it)
        yield NovikovTableau(shape, tuple(tuple(r) for r in rows), nose)


def enumerate_tableaux(
    n: int,
    letters: Iterable[str],
    alphabet: Alphabet | None = None,
    shape: YoungShape | None = None,
) -> list[NovikovTableau]:
    """All tableaux of degree n whose entries are exactly the multiset ``letters``.

    Shapes come in ``enumerate_young_shapes`` order; within a shape tableaux are
    sorted by their row-major entries. The first column is chosen block by block
    (each block a sub-multiset written in decreasing order) and the remaining
    letters fill the reading word in sorted order, so nothing is filtered out.
    """
    letters = list(letters)
    if len(letters) != n:
        raise DegreeMismatch(f"{len(letters)} letters given for degree {n}")
    if n < 1:
        raise DegreeMismatch("degree must be positive")
    order = alphabet if alphabet is not None else Alphabet.covering(letters)
    for x in letters:
        order.index(x)
    shapes = enumerate_young_shapes(n - 1)
    if shape is not None:
        if shape.degree != n - 1:
            raise DegreeMismatch(f"shape degree {shape.degree} does not match n-1={n - 1}")
        shapes = [shape]
    pool = Counter(letters)
    out = []
    for sh in shapes:
        found = list(_tableaux_of_shape(sh, pool, order))
        found.sort(key=lambda t: [order.key(x) for x in t.entries()])
        out.extend(found)
    return out


def tableaux_to_csv(tableaux: Iterable[NovikovTableau], terms: Iterable[str] | None = None) -> str:
    """One tableau per line: shape, rows ('|' between rows), nose[, term]."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    terms = list(terms) if terms is not None else None
    header = ["shape", "rows", "nose"] + (["term"] if terms is not None else [])
    writer.writerow(header)
    for i, t in enumerate(tableaux):
        row = [
            " ".join(map(str, t.shape.rows)),
            "|".join(" ".join(r) for r in t.rows),
            t.nose,
        ]
        if terms is not None:
            row.append(terms[i])
        writer.writerow(row)
    return buf.getvalue()


def tableaux_from_csv(text: str) -> list[NovikovTableau]:
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        shape = tuple(int(x) for x in rec["shape"].split())
        rows = tuple(tuple(r.split()) for r in rec["rows"].split("|")) if rec["rows"] else ()
        out.append(NovikovTableau(YoungShape(shape), rows, rec["nose"]))
    return out
