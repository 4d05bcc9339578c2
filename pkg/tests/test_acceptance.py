"""Exit criteria. All arithmetic is exact; the only tolerances are wall-clock limits."""

import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

from novikov.basis import dim_polylinear, polylinear_basis
from novikov.combinatorics import (
    exponent_bracket,
    exponent_estimate,
    gf_coefficients,
    lemma1_lhs,
    lemma2_bounds,
)
from novikov.diagrams import YoungShape, count_fillings_per_shape, enumerate_tableaux, enumerate_young_shapes
from novikov.diffreal import (
    basis_matrix,
    expand,
    leaf_triples,
    normalize,
    random_polylinear_terms,
    random_triples,
    spanning_check,
    verify_identities_under_realization,
)
from novikov.linalg import rank_exact
from novikov.terms import Alphabet, parse_term, print_term

GOLDEN = Path(__file__).parent / "golden"

DIMENSIONS = [1, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620]


def pascal_central(n):
    row = [1]
    for _ in range(2 * n - 2):
        row = [x + y for x, y in zip([0] + row, row + [0])]
    return row[n - 1]


def partition_count_dp(d):
    """Coin-change count of partitions, independent of the package's enumerators."""
    ways = [1] + [0] * d
    for part in range(1, d + 1):
        for total in range(part, d + 1):
            ways[total] += ways[total - part]
    return ways[d]


@pytest.mark.criterion(1, "tableau count = C(2n-2,n-1) for n=1..10 in < 30 s")
def test_c01_dimension_vs_enumeration():
    assert DIMENSIONS == [pascal_central(n) for n in range(1, 11)]
    start = time.perf_counter()
    counts = [len(enumerate_tableaux(n, Alphabet.default(n).first(n))) for n in range(1, 11)]
    elapsed = time.perf_counter() - start
    assert counts == DIMENSIONS
    assert [dim_polylinear(n) for n in range(1, 11)] == DIMENSIONS
    assert elapsed < 30


@pytest.mark.criterion(2, "n=4 basis equals the published list of 20 monomials")
def test_c02_golden_n4_basis():
    golden = {print_term(parse_term(line)) for line in (GOLDEN / "basis_n4.txt").read_text().split()}
    printed = [print_term(b.term) for b in polylinear_basis(4)]
    assert len(golden) == len(printed) == 20
    assert set(printed) == golden


@pytest.mark.criterion(3, "n=4 shape counts 4/12/4; closed-form per-shape counts match for n<=9")
def test_c03_shape_counts():
    per_shape = Counter(t.shape for t in enumerate_tableaux(4, "abcd"))
    assert per_shape[YoungShape((1, 1, 1))] == 4
    assert per_shape[YoungShape((2, 1))] == 12
    assert per_shape[YoungShape((3,))] == 4
    for n in range(1, 10):
        per_shape = Counter(t.shape for t in enumerate_tableaux(n, Alphabet.default(n).first(n)))
        for shape in enumerate_young_shapes(n - 1):
            assert per_shape[shape] == count_fillings_per_shape(shape, n), (n, shape)


@pytest.mark.criterion(4, "both defects realize to zero: all leaf triples n<=4, 1000 random triples deg<=7")
def test_c04_identity_expansion():
    triples = [t for n in range(1, 5) for t in leaf_triples(n)]
    assert len(triples) == 1 + 8 + 27 + 64
    report = verify_identities_under_realization(triples, raise_on_failure=False)
    assert report.ok
    samples = random_triples(1000, max_degree=7, seed=0)
    assert all(sum(x.degree for x in trip) <= 7 for trip in samples)
    assert all(any(x.degree > 1 for x in trip) for trip in samples)
    report = verify_identities_under_realization(samples, raise_on_failure=False)
    assert report.checked == 1000 and len(report.failures) == 0


@pytest.mark.criterion(5, "rank_exact(basis_matrix(n)) = C(2n-2,n-1) for n=1..7 in < 5 min")
def test_c05_independence():
    start = time.perf_counter()
    for n in range(1, 8):
        m = basis_matrix(n)
        assert m.shape == (DIMENSIONS[n - 1], DIMENSIONS[n - 1])
        assert rank_exact(m) == DIMENSIONS[n - 1]
    assert time.perf_counter() - start < 300


@pytest.mark.criterion(6, "rank of all n!*Catalan(n-1) monomial expansions = C(2n-2,n-1), n=2..6, < 10 min")
def test_c06_spanning():
    start = time.perf_counter()
    expected_rows = {2: 2, 3: 12, 4: 120, 5: 1680, 6: 30240}
    for n in range(2, 7):
        rep = spanning_check(n)
        assert rep.monomials == expected_rows[n]
        assert rep.rank == DIMENSIONS[n - 1]
    assert time.perf_counter() - start < 600


@pytest.mark.criterion(7, "convolution sum over partitions = C(2n-2,n-1) for n=1..30")
def test_c07_lemma1():
    for n in range(1, 31):
        assert lemma1_lhs(n) == pascal_central(n)


@pytest.mark.criterion(8, "2^(2n-3)/(n-1) <= C(2n-2,n-1) <= 2^(2n-2) for n=2..500")
def test_c08_lemma2():
    for n in range(2, 501):
        lower, value, upper = lemma2_bounds(n)
        assert isinstance(lower, Fraction) and isinstance(upper, int)
        assert lower <= value <= upper


@pytest.mark.criterion(9, "estimate at n=200 in (3.8, 4.0) and bracketed by the exact growth bounds")
def test_c09_exponent():
    est = exponent_estimate(200)
    assert Fraction(38, 10) < est < Fraction(4)
    br = exponent_bracket(200)
    assert br.brackets
    assert br.lower_root <= est <= br.upper_root
    assert br.width < Fraction(1, 4)


@pytest.mark.criterion(10, "first 30 coefficients of x(1-4x)^(-1/2) equal the dimensions")
def test_c10_generating_function():
    gf = gf_coefficients(30)
    assert gf[0] == 0
    assert gf[4] == 20
    for n in range(1, 31):
        assert gf[n] == dim_polylinear(n) == pascal_central(n)


@pytest.mark.criterion(11, "unit vectors on basis elements n<=5; exact reconstruction for 200 random terms deg<=6")
def test_c11_normal_form():
    for n in range(1, 6):
        basis = polylinear_basis(n)
        for i, b in enumerate(basis):
            coords = normalize(b.term).coords
            assert coords == tuple(Fraction(int(i == j)) for j in range(len(basis)))
    terms = random_polylinear_terms(200, max_degree=6, seed=0)
    assert len(terms) == 200 and max(t.degree for t in terms) == 6
    for t in terms:
        assert normalize(t).reconstruct() == expand(t)


@pytest.mark.criterion(12, "single-letter tableau counts equal p(n-1) for n<=12")
def test_c12_one_letter():
    for n in range(1, 13):
        assert len(enumerate_tableaux(n, ["a"] * n)) == partition_count_dp(n - 1)
