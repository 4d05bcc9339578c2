"""Differential realization of Novikov algebras.

Each letter x becomes a differential indeterminate u_x in a commutative ring
with derivation d, and a product of terms is realized as ``l * r -> d(l) r``.
A monomial is a multiset of factors u_x^(k), stored as a sorted tuple of
``(letter, k)`` pairs. All coefficients are exact.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .basis import BasisElement, basis_of_multidegree, dim_polylinear
from .errors import CapExceeded, IdentityViolation, InconsistentSystem, RankDeficient
from .linalg import EchelonBasis, RowSpaceSolver, SparseMatrix, rank_exact, rank_modular
from .terms import (
    Alphabet,
    Leaf,
    Term,
    TermPolynomial,
    as_polynomial,
    enumerate_all_polylinear_terms,
    novikov_identity_defects,
    print_term,
    random_polylinear_term,
    random_term,
)

DiffMonomial = tuple  # tuple[tuple[str, int], ...], sorted


class ExperimentalMultidegreeWarning(UserWarning):
    """Coordinates in a multidegree with repeated letters."""


def monomial_degree(m: DiffMonomial) -> tuple[int, int]:
    """(number of factors, total derivative order)."""
    return len(m), sum(k for _, k in m)


def format_monomial(m: DiffMonomial) -> str:
    parts = []
    for letter, k in m:
        parts.append(f"u_{letter}" if k == 0 else f"u_{letter}^({k})")
    return "*".join(parts) if parts else "1"


class DiffPolynomial:
    """Linear combination of differential monomials with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for m, c in dict(terms or {}).items():
            if c:
                clean[tuple(sorted(m))] = clean.get(tuple(sorted(m)), 0) + c
        self._terms = {m: _canon(c) for m, c in clean.items() if c}

    @classmethod
    def variable(cls, letter: str) -> "DiffPolynomial":
        return cls({((letter, 0),): 1})

    def items(self) -> list:
        return sorted(self._terms.items())

    def monomials(self) -> list[DiffMonomial]:
        return sorted(self._terms)

    def coefficient(self, m: DiffMonomial):
        return self._terms.get(tuple(sorted(m)), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, DiffPolynomial) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return DiffPolynomial._raw(out)

    def __neg__(self):
        return DiffPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffPolynomial":
        return DiffPolynomial._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return DiffPolynomial._raw(out)

    __rmul__ = scale

    def derivative(self) -> "DiffPolynomial":
        """Leibniz rule: raise the order of one factor at a time."""
        out: dict = {}
        for m, c in self._terms.items():
            for i, (letter, k) in enumerate(m):
                if i and m[i - 1] == (letter, k):
                    continue  # equal factors handled together below
                mult = 1
                j = i + 1
                while j < len(m) and m[j] == (letter, k):
                    mult += 1
                    j += 1
                new = tuple(sorted(m[:i] + ((letter, k + 1),) + m[i + 1 :]))
                out[new] = out.get(new, 0) + mult * c
        return DiffPolynomial._raw(out)

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = {m: _canon(c) for m, c in terms.items() if c}
        return obj

    def relabel(self, mapping) -> "DiffPolynomial":
        return DiffPolynomial({tuple((mapping.get(x, x), k) for x, k in m): c for m, c in self._terms.items()})

    def to_json(self) -> list:
        return [
            {"factors": [[x, k] for x, k in m], "coeff": str(c)}
            for m, c in self.items()
        ]

    @classmethod
    def from_json(cls, data) -> "DiffPolynomial":
        return cls({tuple((x, int(k)) for x, k in item["factors"]): Fraction(item["coeff"]) for item in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = format_monomial(m) if mag == 1 else f"{mag}*{format_monomial(m)}"
            out.append(f"{sign} {body}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"DiffPolynomial({self})"


def _canon(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@lru_cache(maxsize=200_000)
def _expand_term(t: Term) -> DiffPolynomial:
    if isinstance(t, Leaf):
        return DiffPolynomial.variable(t.letter)
    return _expand_term(t.left).derivative() * _expand_term(t.right)


def expand(t) -> DiffPolynomial:
    """Realize a term or term polynomial as a differential polynomial."""
    if isinstance(t, Term):
        return _expand_term(t)
    poly = as_polynomial(t)
    acc = DiffPolynomial()
    for term, c in poly.items():
        acc = acc + _expand_term(term).scale(c)
    return acc


# -- identities -----------------------------------------------------------------


@dataclass
class IdentityReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_identities_under_realization(
    samples: Iterable[tuple[Term, Term, Term]], raise_on_failure: bool = True
) -> IdentityReport:
    """Both Novikov defects of every triple must realize to zero."""
    report = IdentityReport()
    for a, b, c in samples:
        report.checked += 1
        rs, lc = novikov_identity_defects(a, b, c)
        for name, defect in (("right-symmetry", rs), ("left-commutativity", lc)):
            if not expand(defect).is_zero():
                if raise_on_failure:
                    raise IdentityViolation((a, b, c), name)
                report.failures.append(((a, b, c), name))
    return report


def leaf_triples(n: int, alphabet: Alphabet | None = None) -> list[tuple[Term, Term, Term]]:
    letters = (alphabet or Alphabet.default(n)).first(n)
    return [tuple(Leaf(x) for x in trip) for trip in itertools.product(letters, repeat=3)]


def random_triples(count: int, max_degree: int = 7, seed: int = 0, letters: Sequence[str] = "abcdefg"):
    """Seeded triples of random terms whose degrees sum to at most ``max_degree``.

    Total degree is at least 4, so every triple has a compound slot.
    """
    if max_degree < 4:
        raise ValueError("compound triples need total degree at least 4")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        total = rng.randint(4, max_degree)
        d1 = rng.randint(1, total - 2)
        d2 = rng.randint(1, total - d1 - 1)
        d3 = total - d1 - d2
        out.append(tuple(random_term(rng, d, letters) for d in (d1, d2, d3)))
    return out


# -- matrices --------------------------------------------------------------------


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` entries, lexicographic."""
    if parts == 0:
        return [()] if total == 0 else []
    if parts == 1:
        return [(total,)]
    return [(k,) + rest for k in range(total + 1) for rest in compositions(total - k, parts - 1)]


def _column_key(m: DiffMonomial, order: Alphabet):
    per_letter: dict[str, list[int]] = {}
    for x, k in m:
        per_letter.setdefault(x, []).append(k)
    return tuple(tuple(sorted(per_letter.get(x, ()))) for x in order.letters)


def polylinear_columns(letters: Sequence[str]) -> list[DiffMonomial]:
    """Monomials using each letter once with total order n-1, sorted by order vector."""
    n = len(letters)
    return [tuple(sorted(zip(letters, ks))) for ks in compositions(n - 1, n)]


def multidegree_columns(letters: Sequence[str], order: Alphabet) -> list[DiffMonomial]:
    """All monomials with the given letter multiset and total order n-1."""
    letters = sorted(letters, key=order.key)
    n = len(letters)
    cols = set()
    for ks in compositions(n - 1, n):
        cols.add(tuple(sorted(zip(letters, ks))))
    return sorted(cols, key=lambda m: _column_key(m, order))


def expansion_matrix(terms: Sequence[Term], columns: Sequence[DiffMonomial]) -> SparseMatrix:
    index = {m: j for j, m in enumerate(columns)}
    rows = []
    for t in terms:
        row = {}
        for m, c in expand(t).items():
            try:
                row[index[m]] = c
            except KeyError:
                raise InconsistentSystem(
                    f"{print_term(t)} expands to {format_monomial(m)}, outside the column set"
                ) from None
        rows.append(row)
    return SparseMatrix(rows, len(columns), list(terms), list(columns))


def basis_matrix(n: int, alphabet: Alphabet | None = None) -> SparseMatrix:
    """Expansions of the degree-n polylinear basis, one row per basis element."""
    order = alphabet or Alphabet.default(n)
    letters = order.first(n)
    basis = basis_of_multidegree(letters, order)
    m = expansion_matrix([b.term for b in basis], polylinear_columns(letters))
    m.row_labels = basis
    return m


@dataclass
class IndependenceReport:
    n: int
    size: int
    rank: int
    expected: int
    method: str

    @property
    def ok(self) -> bool:
        return self.rank == self.expected == self.size


MAX_INDEPENDENCE_N = 7
MAX_INDEPENDENCE_N_OPT_IN = 8


def independence_check(n: int, method: str = "exact", allow_large: bool = False) -> IndependenceReport:
    """Rank of basis_matrix(n). ``method='modular'`` uses the accelerated GF(p) kernel,
    which certifies full rank whenever it finds it."""
    cap = MAX_INDEPENDENCE_N_OPT_IN if allow_large else MAX_INDEPENDENCE_N
    if n > cap:
        raise CapExceeded(f"independence check capped at n={cap}")
    m = basis_matrix(n)
    if method == "exact":
        r = rank_exact(m)
    elif method == "modular":
        r = rank_modular(m)
    else:
        raise ValueError(f"unknown method {method!r}")
    return IndependenceReport(n, len(m.rows), r, dim_polylinear(n), method)


@dataclass
class SpanningReport:
    n: int
    monomials: int
    rank: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.rank == self.expected


DEFAULT_SPANNING_CAP = 6


def spanning_check(n: int, cap: int = DEFAULT_SPANNING_CAP) -> SpanningReport:
    """Rank of the expansions of every polylinear monomial of degree n.

    Every expansion is checked to land in the C(2n-2, n-1) admissible monomials.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceeded(f"spanning check capped at n={cap}")
    letters = Alphabet.default(n).first(n)
    terms = enumerate_all_polylinear_terms(n, letters)
    columns = polylinear_columns(letters)
    m = expansion_matrix(terms, columns)
    ech = EchelonBasis()
    for row in m.rows:
        ech.add(row)
    return SpanningReport(n, len(terms), ech.rank, dim_polylinear(n))


# -- normal form -----------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateVector:
    basis: tuple[BasisElement, ...]
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.basis) != len(self.coords):
            raise ValueError("basis and coordinates differ in length")

    def reconstruct(self) -> DiffPolynomial:
        acc = DiffPolynomial()
        for b, c in zip(self.basis, self.coords):
            if c:
                acc = acc + expand(b.term).scale(c)
        return acc

    def as_polynomial(self) -> TermPolynomial:
        return TermPolynomial({b.term: c for b, c in zip(self.basis, self.coords)})

    def nonzero(self) -> list[tuple[BasisElement, Fraction]]:
        return [(b, c) for b, c in zip(self.basis, self.coords) if c]

    def to_json(self) -> list:
        return [{"term": print_term(b.term), "coeff": str(c)} for b, c in self.nonzero()]


class _MultidegreeSolver:
    def __init__(self, letters: tuple[str, ...], order: Alphabet):
        self.basis = tuple(basis_of_multidegree(letters, order))
        self.columns = multidegree_columns(letters, order)
        self.index = {m: j for j, m in enumerate(self.columns)}
        mat = expansion_matrix([b.term for b in self.basis], self.columns)
        self.solver = RowSpaceSolver(mat.rows)


@lru_cache(maxsize=64)
def _solver_for(letters: tuple[str, ...], order: Alphabet) -> _MultidegreeSolver:
    return _MultidegreeSolver(letters, order)


def normalize(t, alphabet: Alphabet | None = None) -> CoordinateVector:
    """Exact coordinates of a term (or homogeneous polynomial) in the tableau basis."""
    poly = as_polynomial(t)
    if poly.is_zero():
        raise ValueError("the zero polynomial has no multidegree")
    letters = poly.multidegree
    order = alphabet if alphabet is not None else Alphabet.covering(letters)
    if len(set(letters)) != len(letters):
        warnings.warn(
            "coordinates for a multidegree with repeated letters rely on an unproven "
            "independence; the rank is checked before solving",
            ExperimentalMultidegreeWarning,
            stacklevel=2,
        )
    ctx = _solver_for(tuple(sorted(letters, key=order.key)), order)
    if not ctx.solver.full_row_rank:
        raise RankDeficient(
            f"basis of multidegree {letters} has rank {ctx.solver.rank} < {len(ctx.basis)} under the realization"
        )
    target = {}
    for m, c in expand(poly).items():
        if m not in ctx.index:
            raise InconsistentSystem(f"monomial {format_monomial(m)} is outside the multidegree")
        target[ctx.index[m]] = c
    coords = ctx.solver.solve(target)
    return CoordinateVector(ctx.basis, tuple(coords))


def random_polylinear_terms(count: int, max_degree: int = 6, seed: int = 0, alphabet: Alphabet | None = None):
    rng = random.Random(seed)
    order = alphabet or Alphabet.default(max_degree)
    out = []
    for _ in range(count):
        d = rng.randint(1, max_degree)
        out.append(random_polylinear_term(rng, order.first(d)))
    return out
