"""Bracketing of Novikov tableaux into monomials, and the resulting basis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .combinatorics import central_binomial
from .diagrams import NovikovTableau, enumerate_tableaux, validate_tableau
from .errors import InvalidTableau
from .terms import Alphabet, Term, left_normed, right_normed


@dataclass(frozen=True)
class BasisElement:
    tableau: NovikovTableau
    term: Term

    def to_json(self) -> dict:
        from .terms import print_term, term_to_json

        return {"tableau": self.tableau.to_json(), "term": print_term(self.term), "tree": term_to_json(self.term)}


def tableau_to_term(t: NovikovTableau, alphabet: Alphabet | None = None, check: bool = True) -> Term:
    """X_k * (X_{k-1} * (... * (X_2 * X_1))), each X_i left-normed over row i.

    The first row carries the nose as its last factor; a one-row tableau maps
    to X_1 itself and the bare nose maps to a leaf.
    """
    if check:
        report = validate_tableau(t, alphabet)
        if not report:
            raise InvalidTableau(str(report.first))
    rows = t.rows_with_nose()
    factors = [left_normed(r) for r in reversed(rows)]
    return right_normed(factors)


def basis_of_multidegree(letters: Iterable[str], alphabet: Alphabet | None = None) -> list[BasisElement]:
    letters = list(letters)
    if not letters:
        raise ValueError("need at least one letter")
    order = alphabet if alphabet is not None else Alphabet.covering(letters)
    return [
        BasisElement(t, tableau_to_term(t, order, check=False))
        for t in enumerate_tableaux(len(letters), letters, order)
    ]


def polylinear_basis(n: int, alphabet: Alphabet | None = None) -> list[BasisElement]:
    order = alphabet if alphabet is not None else Alphabet.default(n)
    return basis_of_multidegree(order.first(n), order)


def dim_polylinear(n: int) -> int:
    """C(2n-2, n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return central_binomial(n)
