"""The verification suite behind ``novikov verify``.

Each check returns a ``Check`` record; ``run_all`` aggregates them. Structural
checks (enumeration, ranks, normal forms) respect ``max_n``; the purely
arithmetic ones always run over their full default ranges because they are
cheap.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import combinatorics as comb
from .basis import dim_polylinear, polylinear_basis
from .diagrams import count_fillings_per_shape, enumerate_tableaux, enumerate_young_shapes, validate_tableau
from .diffreal import (
    MAX_INDEPENDENCE_N,
    DEFAULT_SPANNING_CAP,
    expand,
    independence_check,
    leaf_triples,
    normalize,
    random_polylinear_terms,
    random_triples,
    spanning_check,
    verify_identities_under_realization,
)
from .terms import Alphabet


@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "status": "PASS" if self.passed else "FAIL", "details": self.details}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _timed(name, fn, *args, **kwargs) -> Check:
    start = time.perf_counter()
    passed, details = fn(*args, **kwargs)
    return Check(name, passed, details, time.perf_counter() - start)


def check_identities(max_leaf_letters: int = 4, samples: int = 1000, max_degree: int = 7, seed: int = 0):
    triples = []
    for n in range(1, max_leaf_letters + 1):
        triples.extend(leaf_triples(n))
    triples.extend(random_triples(samples, max_degree, seed))
    report = verify_identities_under_realization(triples, raise_on_failure=False)
    return report.ok, {"triples": report.checked, "failures": len(report.failures)}


def check_tableau_counts(max_n: int):
    rows = []
    ok = True
    for n in range(1, max_n + 1):
        letters = Alphabet.default(n).first(n)
        tabs = enumerate_tableaux(n, letters)
        count = len(tabs)
        distinct = len(set(tabs)) == count
        good = count == dim_polylinear(n) and distinct
        ok &= good
        rows.append({"n": n, "tableaux": count, "formula": dim_polylinear(n), "ok": good})
    return ok, {"rows": rows}


def check_shape_counts(max_n: int):
    ok = True
    mismatches = []
    for n in range(1, max_n + 1):
        letters = Alphabet.default(n).first(n)
        per_shape = Counter(t.shape for t in enumerate_tableaux(n, letters))
        for shape in enumerate_young_shapes(n - 1):
            if per_shape[shape] != count_fillings_per_shape(shape, n):
                ok = False
                mismatches.append({"n": n, "shape": list(shape.rows)})
    n4 = {}
    if max_n >= 4:
        counts = Counter(t.shape.rows for t in enumerate_tableaux(4, "abcd"))
        n4 = {"(1,1,1)": counts[(1, 1, 1)], "(2,1)": counts[(2, 1)], "(3)": counts[(3,)]}
        ok &= (n4["(1,1,1)"], n4["(2,1)"], n4["(3)"]) == (4, 12, 4)
    return ok, {"max_n": max_n, "mismatches": mismatches, "n4": n4}


def check_tableaux_valid(max_n: int):
    bad = 0
    total = 0
    for n in range(1, max_n + 1):
        for t in enumerate_tableaux(n, Alphabet.default(n).first(n)):
            total += 1
            bad += not validate_tableau(t).ok
    return bad == 0, {"tableaux": total, "invalid": bad}


def check_one_letter(max_n: int = 12):
    rows = []
    ok = True
    for n in range(1, max_n + 1):
        count = len(enumerate_tableaux(n, ["a"] * n))
        good = count == comb.partition_count(n - 1)
        ok &= good
        rows.append({"n": n, "tableaux": count, "partitions": comb.partition_count(n - 1)})
    return ok, {"rows": rows}


def check_independence(max_n: int):
    rows = []
    ok = True
    for n in range(1, max_n + 1):
        exact = independence_check(n, "exact")
        modular = independence_check(n, "modular")
        good = exact.ok and modular.rank == exact.rank
        ok &= good
        rows.append({"n": n, "size": exact.size, "rank": exact.rank, "modular_rank": modular.rank})
    return ok, {"rows": rows}


def check_spanning(max_n: int):
    rows = []
    ok = True
    for n in range(2, max_n + 1):
        rep = spanning_check(n)
        ok &= rep.ok
        rows.append({"n": n, "monomials": rep.monomials, "rank": rep.rank, "expected": rep.expected})
    return ok, {"rows": rows}


def check_normal_form(unit_max_n: int, random_max_degree: int, samples: int, seed: int):
    unit_failures = 0
    checked = 0
    for n in range(1, unit_max_n + 1):
        for i, b in enumerate(polylinear_basis(n)):
            checked += 1
            coords = normalize(b.term).coords
            if any(c != (1 if j == i else 0) for j, c in enumerate(coords)):
                unit_failures += 1
    recon_failures = 0
    terms = random_polylinear_terms(samples, random_max_degree, seed) if random_max_degree >= 1 else []
    for t in terms:
        if normalize(t).reconstruct() != expand(t):
            recon_failures += 1
    ok = unit_failures == 0 and recon_failures == 0
    return ok, {
        "basis_elements": checked,
        "unit_failures": unit_failures,
        "random_terms": len(terms),
        "reconstruction_failures": recon_failures,
    }


def check_lemma1(max_n: int = 30):
    bad = [n for n in range(1, max_n + 1) if comb.lemma1_lhs(n) != comb.central_binomial(n)]
    sums = [
        (n, s)
        for n in range(2, min(max_n, 20) + 1)
        for s in range(1, n)
        if len(set(comb.multinomial_sum_identity(n, s))) != 1
    ]
    return not bad and not sums, {"max_n": max_n, "failures": bad, "multinomial_sum_failures": sums}


def check_lemma2(max_n: int = 500):
    bad = []
    for n in range(2, max_n + 1):
        lower, value, upper = comb.lemma2_bounds(n)
        if not lower <= value <= upper:
            bad.append(n)
    return not bad, {"max_n": max_n, "failures": bad}


def check_exponent(n: int = 200):
    br = comb.exponent_bracket(n)
    ok = Fraction(38, 10) < br.estimate < 4 and br.brackets and br.width < Fraction(1, 4)
    return ok, {
        "n": n,
        "estimate": format_fixed(br.estimate),
        "lower_root": format_fixed(br.lower_root),
        "upper_root": format_fixed(br.upper_root),
        "width": format_fixed(br.width),
    }


def check_generating_function(order: int = 30):
    gf = comb.gf_coefficients(order)
    bad = [n for n in range(1, order + 1) if gf[n] != dim_polylinear(n)]
    return gf[0] == 0 and not bad, {"order": order, "failures": bad}


def format_fixed(x: Fraction, digits: int = 6) -> str:
    scale = 10**digits
    y = x * scale
    q = y.numerator // y.denominator
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // scale}.{q % scale:0{digits}d}"


def run_all(max_n: int = 5, samples: int = 1000, seed: int = 0, normal_form_samples: int = 200) -> list[Check]:
    if max_n < 1:
        raise ValueError("max_n must be positive")
    return [
        _timed("identities", check_identities, min(max_n, 4), samples, 7, seed),
        _timed("tableau-count", check_tableau_counts, max_n),
        _timed("tableau-validity", check_tableaux_valid, max_n),
        _timed("shape-counts", check_shape_counts, min(max_n, 9)),
        _timed("one-letter", check_one_letter, max(12, max_n)),
        _timed("independence", check_independence, min(max_n, MAX_INDEPENDENCE_N)),
        _timed("spanning", check_spanning, min(max_n, DEFAULT_SPANNING_CAP)),
        _timed("normal-form", check_normal_form, min(max_n, 5), min(max_n, 6), normal_form_samples, seed),
        _timed("lemma1", check_lemma1, max(30, max_n)),
        _timed("lemma2", check_lemma2, max(500, max_n)),
        _timed("exponent", check_exponent, 200),
        _timed("generating-function", check_generating_function, max(30, max_n)),
    ]
