"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from fractions import Fraction

from . import combinatorics as comb
from .basis import basis_of_multidegree, dim_polylinear
from .checks import _timed, format_fixed, run_all
from .diagrams import enumerate_tableaux, tableaux_to_csv
from .diffreal import MAX_INDEPENDENCE_N_OPT_IN, expand, independence_check, normalize
from .errors import NovikovError, TermParseError
from .terms import Alphabet, parse_term, print_term, term_to_json

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _alphabet(text: str) -> Alphabet:
    try:
        return Alphabet.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _csv(header, rows) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _letters_for(args, n: int) -> tuple[Alphabet, list[str]]:
    alphabet = args.alphabet or Alphabet.default(max(n, 1))
    if getattr(args, "letters", None):
        letters = [x.strip() for x in args.letters.split(",") if x.strip()]
        for x in letters:
            if x not in alphabet:
                raise UsageError(f"letter {x!r} is not in the alphabet")
        if len(letters) != n:
            raise UsageError(f"--letters has {len(letters)} entries, expected {n}")
        return alphabet, letters
    if len(alphabet) < n:
        raise UsageError(f"alphabet has {len(alphabet)} letters, need {n}")
    return alphabet, list(alphabet.first(n))


def _parse_input_term(args):
    try:
        return parse_term(args.term, args.alphabet)
    except TermParseError as exc:
        raise UsageError(str(exc)) from None


# -- commands -----------------------------------------------------------------


def cmd_dim(args) -> tuple[str, int]:
    d = dim_polylinear(args.n)
    if args.format == "json":
        return _dump_json({"n": args.n, "dim": str(d)}), EXIT_OK
    if args.format == "csv":
        return _csv(["n", "dim"], [[args.n, d]]), EXIT_OK
    return f"{d}\n", EXIT_OK


def cmd_basis(args) -> tuple[str, int]:
    alphabet, letters = _letters_for(args, args.n)
    basis = basis_of_multidegree(letters, alphabet)
    if args.json or args.format == "json":
        return _dump_json(
            [{"tableau": b.tableau.to_json(), "term": term_to_json(b.term)} for b in basis]
        ), EXIT_OK
    if args.format == "csv":
        return tableaux_to_csv([b.tableau for b in basis], [print_term(b.term) for b in basis]), EXIT_OK
    return "".join(print_term(b.term) + "\n" for b in basis), EXIT_OK


def cmd_tableaux(args) -> tuple[str, int]:
    alphabet, letters = _letters_for(args, args.n)
    tabs = enumerate_tableaux(args.n, letters, alphabet)
    if args.format == "json":
        return _dump_json([t.to_json() for t in tabs]), EXIT_OK
    if args.format == "csv":
        return tableaux_to_csv(tabs), EXIT_OK
    return "".join(str(t) + "\n" for t in tabs), EXIT_OK


def cmd_expand(args) -> tuple[str, int]:
    poly = expand(_parse_input_term(args))
    if args.format == "json":
        return _dump_json(poly.to_json()), EXIT_OK
    if args.format == "csv":
        rows = [[" ".join(f"{x}:{k}" for x, k in m), str(c)] for m, c in poly.items()]
        return _csv(["factors", "coeff"], rows), EXIT_OK
    return f"{poly}\n", EXIT_OK


def cmd_normalize(args) -> tuple[str, int]:
    term = _parse_input_term(args)
    vec = normalize(term, args.alphabet)
    ok = vec.reconstruct() == expand(term)
    code = EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.format == "json":
        return _dump_json(
            {
                "input": print_term(term),
                "basis_size": len(vec.basis),
                "coordinates": vec.to_json(),
                "reconstruction": "PASS" if ok else "FAIL",
            }
        ), code
    if args.format == "csv":
        return _csv(["coeff", "term"], [[str(c), print_term(b.term)] for b, c in vec.nonzero()]), code
    lines = [f"{c}\t{print_term(b.term)}" for b, c in vec.nonzero()]
    return "\n".join(lines) + "\n", code


def cmd_verify(args) -> tuple[str, int]:
    checks = run_all(args.max_n, samples=args.samples, seed=args.seed)
    extra = []
    if args.allow_large and args.max_n >= MAX_INDEPENDENCE_N_OPT_IN:
        def large():
            rep = independence_check(MAX_INDEPENDENCE_N_OPT_IN, "modular", allow_large=True)
            return rep.ok, {"n": rep.n, "size": rep.size, "rank": rep.rank, "method": rep.method}

        extra.append(_timed("independence-n8", large))
    checks += extra
    passed = all(c.passed for c in checks)
    code = EXIT_OK if passed else EXIT_CHECK_FAILED
    if args.format == "json":
        return _dump_json(
            {
                "max_n": args.max_n,
                "seed": args.seed,
                "samples": args.samples,
                "status": "PASS" if passed else "FAIL",
                "checks": [c.to_json(args.timings) for c in checks],
            }
        ), code
    if args.format == "csv":
        return _csv(["check", "status"], [[c.name, "PASS" if c.passed else "FAIL"] for c in checks]), code
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        summary = ", ".join(f"{k}={v}" for k, v in c.details.items() if not isinstance(v, (list, dict)))
        timing = f" [{c.seconds:.2f}s]" if args.timings else ""
        lines.append(f"{status}  {c.name:<20} {summary}{timing}".rstrip())
    lines.append(f"{'PASS' if passed else 'FAIL'}  overall")
    return "\n".join(lines) + "\n", code


def cmd_gf(args) -> tuple[str, int]:
    gf = comb.gf_coefficients(args.N)
    coeffs = [gf[i] for i in range(args.N + 1)]
    ok = all(coeffs[i] == dim_polylinear(i) for i in range(1, args.N + 1)) and coeffs[0] == 0
    code = EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.format == "json":
        return _dump_json({"order": args.N, "coefficients": [str(c) for c in coeffs], "matches_dim": ok}), code
    if args.format == "csv":
        return _csv(["n", "coefficient"], [[i, str(c)] for i, c in enumerate(coeffs)]), code
    return "".join(f"{i}\t{c}\n" for i, c in enumerate(coeffs)), code


def _lemma_rows(max_n: int):
    rows = []
    for n in range(1, max_n + 1):
        dim = dim_polylinear(n)
        row = {
            "n": n,
            "dim": str(dim),
            "lemma1_lhs": str(comb.lemma1_lhs(n)),
            "lower": "",
            "upper": "",
            "root_estimate": format_fixed(comb.exponent_estimate(n)),
        }
        if n >= 2:
            lower, _, upper = comb.lemma2_bounds(n)
            row["lower"] = str(lower)
            row["upper"] = str(upper)
            row["sandwich"] = lower <= dim <= upper
        row["lemma1"] = comb.lemma1_lhs(n) == dim
        rows.append(row)
    return rows


def cmd_lemmas(args) -> tuple[str, int]:
    rows = _lemma_rows(args.max_n)
    ok = all(r["lemma1"] and r.get("sandwich", True) for r in rows)
    code = EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.format == "json":
        return _dump_json({"rows": rows, "status": "PASS" if ok else "FAIL"}), code
    header = ["n", "dim", "lower", "upper", "root_estimate"]
    if args.format == "csv":
        return _csv(header + ["lemma1"], [[r[h] for h in header] + [r["lemma1"]] for r in rows]), code
    lines = ["\t".join(header)] + ["\t".join(str(r[h]) for h in header) for r in rows]
    lines.append(f"{'PASS' if ok else 'FAIL'}  lemma checks")
    return "\n".join(lines) + "\n", code


def cmd_exp(args) -> tuple[str, int]:
    n = args.n
    est = comb.exponent_estimate(n)
    out = {"n": n, "estimate": format_fixed(est), "estimate_fraction": str(est)}
    if n >= 2:
        br = comb.exponent_bracket(n)
        out.update(
            lower_root=format_fixed(br.lower_root),
            upper_root=format_fixed(br.upper_root),
            brackets=br.brackets,
        )
    if args.format == "json":
        return _dump_json(out), EXIT_OK
    if args.format == "csv":
        keys = list(out)
        return _csv(keys, [[out[k] for k in keys]]), EXIT_OK
    return f"{out['estimate']}\n", EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    common.add_argument("--alphabet", type=_alphabet, default=None, help="comma-separated letter names")

    parser = argparse.ArgumentParser(prog="novikov", description="Free Novikov algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="dimension C(2n-2, n-1) of the degree-n polylinear part")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("basis", parents=[common], help="tableau basis monomials")
    p.add_argument("n", type=_positive)
    p.add_argument("--letters", help="comma-separated multiset of letters (default: first n)")
    p.add_argument("--json", action="store_true", help="emit {tableau, term} pairs")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("tableaux", parents=[common], help="Novikov tableaux of degree n")
    p.add_argument("n", type=_positive)
    p.add_argument("--letters", help="comma-separated multiset of letters (default: first n)")
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("expand", parents=[common], help="differential realization of a term")
    p.add_argument("term")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("normalize", parents=[common], help="coordinates of a term in the tableau basis")
    p.add_argument("term")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--max-n", type=_positive, default=5)
    p.add_argument("--samples", type=_nonnegative, default=1000, help="random identity triples")
    p.add_argument("--allow-large", action="store_true", help="add the n=8 independence check (modular)")
    p.add_argument("--timings", action="store_true", help="report per-check wall time")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gf", parents=[common], help="coefficients of x(1-4x)^(-1/2)")
    p.add_argument("N", type=_nonnegative)
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("lemmas", parents=[common], help="table of dimension, bounds and root estimates")
    p.add_argument("--max-n", type=_positive, default=10)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("exp", parents=[common], help="n-th root of the n-th codimension")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_exp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text, code = args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except NovikovError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_CHECK_FAILED
    except Exception as exc:  # noqa: BLE001
        print(
            json.dumps({"error": "internal", "type": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        traceback.print_exc(file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
