"""Command-line front end.

Exit codes: 0 ok, 1 a verification failed, 2 bad input document or
arguments, 3 input breaks a structural rule (or a size cap), 4 the
presentation cannot provide the requested invariant, 5 no invariant exists
at the requested level.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from math import gcd

from . import __version__
from .category import CategoryZn, verify_ribbon_axioms
from .errors import AbinvError, InvariantViolation, NoInvariantAtLevel, NonIntegralInvariant, \
    SchemaError, UnsupportedPresentation
from .manifolds import SurgeryLink, cell_complex, connected_sum, homology_data, lens_space, \
    parse_manifold, rp3_heegaard, s1_x_s2, sphere3, surgery_link
from .partition import bf_partition_bruteforce, bf_partition_closed, cs_abs_squared_closed, \
    cs_partition, verify_lemma2
from .rt import kirby_blowup_check, rt_at_level, tau_abs_squared_closed, tau_odd_abs_squared_closed, \
    verify_lemma3_part1
from .topology import HomologyProfile
from .tv import ENUMERATION_CAP, tv_algebraic, tv_bruteforce, verify_lemma3_tv

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_INVARIANT, EXIT_UNSUPPORTED, EXIT_NO_LEVEL = range(6)

_SHORTHAND = {"s3": sphere3, "s1xs2": s1_x_s2, "rp3": rp3_heegaard, "rp3-heegaard": rp3_heegaard}
_LENS = re.compile(r"^lens\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error(getattr(self, "_json_mode", True), "usage", message)
        sys.exit(EXIT_PARSE)


def load_manifold(source: str):
    """Resolve a ``--manifold`` value: shorthand, ``lens(p,q)``, inline JSON or a file path."""
    s = source.strip()
    if s in _SHORTHAND:
        return _SHORTHAND[s]()
    match = _LENS.match(s)
    if match:
        return lens_space(int(match.group(1)), int(match.group(2)))
    if s.startswith("{"):
        return parse_manifold(s)
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_manifold(fh.read())
    raise SchemaError(f"{source!r} is not a shorthand, inline JSON, or an existing file")


def _complex(z: complex, exact=None) -> dict:
    out = {"re": z.real, "im": z.imag}
    if exact is not None:
        out["exact"] = exact
    return out


def _integer(value: int) -> dict:
    return {"re": float(value), "im": 0.0, "exact": {"kind": "integer", "value": value}}


def _emit(payload: dict, mode: str, table_rows=None) -> None:
    if mode == "json":
        print(json.dumps(payload, indent=2))
        return
    for key, val in (table_rows or _flatten(payload)):
        print(f"{key:<32} {val}")


def _flatten(payload: dict, prefix=""):
    for key, val in payload.items():
        if isinstance(val, dict) and not {"re", "im"} <= set(val):
            yield from _flatten(val, f"{prefix}{key}.")
        elif isinstance(val, dict):
            yield prefix + key, f"{val['re']:.12g}{val['im']:+.12g}i"
        else:
            yield prefix + key, val


def _emit_error(json_mode: bool, kind: str, message: str, **extra) -> None:
    if json_mode:
        print(json.dumps({"error": {"kind": kind, "message": message, **extra}}), file=sys.stderr)
    else:
        print(f"error ({kind}): {message}", file=sys.stderr)


# subcommands

def run_homology(args) -> int:
    m = load_manifold(args.manifold)
    hd = homology_data(m)
    payload = {"b1": hd.profile.b1, "torsion": list(hd.profile.torsion)}
    if hd.linking is not None:
        payload["q_matrix"] = hd.linking.q.tolist()
        payload["Q"] = [[str(x) for x in row] for row in hd.linking.matrix()]
    _emit(payload, args.output)
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise SchemaError(f"{flag} is required for this invariant", "/args")
    if value < 1:
        raise InvariantViolation(f"{flag} must be a positive integer", rule="positive")
    return value


def run_invariant(args) -> int:
    m = load_manifold(args.manifold)
    which = args.which
    if which == "cs":
        k = _need(args.k, "--k")
        res = cs_partition(m, k)
        h = homology_data(m).profile
        payload = {"invariant": "cs", "k": k, "value": _complex(res.value),
                   "abs_squared": abs(res.value) ** 2,
                   "closed_form": {"abs_squared": cs_abs_squared_closed(HomologyProfile(0, h.torsion), k)},
                   "formula": "sum over torsion of exp(2 pi i k Q(x,x)); |Z|^2 = 2^gamma prod gcd(k,p)p if beta=0"}
    elif which == "bf":
        k = _need(args.k, "--k")
        h = homology_data(m).profile
        closed = bf_partition_closed(h, k)
        payload = {"invariant": "bf", "k": k, "value": _integer(closed), "closed_form": closed,
                   "formula": "prod gcd(k,p)p"}
        try:
            brute = bf_partition_bruteforce(m, k)
            payload["bruteforce"] = _complex(brute.value)
        except UnsupportedPresentation:
            payload["bruteforce"] = None
    elif which == "rt":
        if args.level is None and args.k is None:
            raise SchemaError("--level (or --k for level 4k) is required for rt", "/args")
        n = _need(args.level, "--level") if args.level is not None else 4 * _need(args.k, "--k")
        link = surgery_link(m)
        res = rt_at_level(link, n, args.normalization)
        exact = None
        if res.exact is not None:
            exact = {"kind": "phase", "num": res.exact.num, "den": res.exact.order}
        payload = {"invariant": "rt", "level": n, "normalization": res.normalization,
                   "value": _complex(res.value, exact), "abs_squared": res.abs_squared}
        if args.normalization == "moo":
            try:
                h = homology_data(m).profile
                payload["closed_form"] = {"abs_squared": tau_abs_squared_closed(h, n // 4) if n % 4 == 0
                                          else tau_odd_abs_squared_closed(h, n)}
            except AbinvError:
                pass
        payload["formula"] = ("reduced Gauss-sum normalization" if args.normalization == "moo"
                              else "Delta_N^sigma D^(-sigma-m-1) sum F")
    else:
        n = _need(args.level, "--level")
        c = cell_complex(m)
        alg = tv_algebraic(c, n)
        payload = {"invariant": "tv", "level": n, "value": _integer(alg),
                   "formula": "N^-(v-1) #{closed labelings} = |H^1(M;Z_N)|"}
        if n ** c.e <= ENUMERATION_CAP:
            payload["bruteforce"] = tv_bruteforce(c, n)
    _emit(payload, args.output)
    return EXIT_OK


def _lens_grid(pmax):
    for p in range(2, pmax + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield f"lens({p},{q})", lens_space(p, q)


def _random_link(rng: random.Random, mmax=2, bound=4) -> SurgeryLink:
    m = rng.randint(1, mmax)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    return SurgeryLink(rows)


def run_verify(args) -> int:
    reports = []
    suite = args.suite
    if suite == "lemma2":
        cases = [(args.manifold, load_manifold(args.manifold))] if args.manifold else \
            list(_lens_grid(args.pmax)) + [("s1xs2", s1_x_s2()),
                                           ("lens(2,1)#lens(4,1)", connected_sum([lens_space(2, 1), lens_space(4, 1)]))]
        for name, m in cases:
            for k in range(1, args.kmax + 1):
                reports.append((name, verify_lemma2(m, k)))
    elif suite == "lemma3-rt":
        if args.manifold:
            cases = [(args.manifold, load_manifold(args.manifold))]
        else:
            cases = [("s3", sphere3()), ("s1xs2", s1_x_s2())] + list(_lens_grid(args.pmax))
        for name, m in cases:
            for k in range(1, args.kmax + 1):
                reports.append((name, verify_lemma3_part1(m, k)))
    elif suite == "lemma3-tv":
        cases = [(args.manifold, load_manifold(args.manifold))] if args.manifold else \
            [("s3", sphere3()), ("s1xs2", s1_x_s2()), ("rp3", rp3_heegaard())] + \
            [(f"lens({p},1)", lens_space(p, 1)) for p in range(2, args.pmax + 1)]
        for name, m in cases:
            for n in range(1, args.nmax + 1):
                reports.append((name, verify_lemma3_tv(m, n)))
    elif suite == "ribbon":
        for n in range(1, args.nmax + 1):
            reports.append((f"Z_{n}", verify_ribbon_axioms(CategoryZn(n, args.epsilon))))
    else:
        levels = [args.level] if args.level else [3, 5, 8, 12]
        if args.manifold:
            links = [(args.manifold, surgery_link(load_manifold(args.manifold)))]
        else:
            rng = random.Random(args.seed)
            links = [(f"random#{i}", _random_link(rng)) for i in range(args.count)]
        for name, link in links:
            for n in levels:
                reports.append((name, kirby_blowup_check(link, n, args.normalization)))
    ok = all(r.passed for _, r in reports)
    payload = {"suite": suite, "passed": ok, "cases": len(reports),
               "failures": sum(1 for _, r in reports if not r.passed),
               "reports": [{"case": name, **r.to_dict()} for name, r in reports]}
    if args.output == "json":
        _emit(payload, "json")
    else:
        for name, r in reports:
            print(f"{'PASS' if r.passed else 'FAIL'}  {name:<22} {r.title}")
            for c in r.failures:
                print(f"      failed: {c.name}: {c.lhs} vs {c.rhs}")
            for note in r.notes:
                print(f"      note: {note}")
        print(f"{'all passed' if ok else 'FAILURES'}: {len(reports)} cases")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifold", help="path, inline JSON, s3, s1xs2, rp3, or lens(p,q)")
    common.add_argument("--k", type=int, help="coupling constant (integer)")
    common.add_argument("--level", type=int, help="level N")
    common.add_argument("--normalization", choices=("moo", "raw"), default="moo")
    common.add_argument("--output", choices=("json", "table"), default="json")

    parser = _Parser(prog="abinv", description="Abelian 3-manifold invariants and cross-checks")
    parser.add_argument("--version", action="version", version=f"abinv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("homology", parents=[common], help="first homology and linking form")
    inv = sub.add_parser("invariant", parents=[common], help="compute cs, bf, rt or tv")
    inv.add_argument("which", choices=("cs", "bf", "rt", "tv"))
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=("lemma2", "lemma3-rt", "lemma3-tv", "ribbon", "kirby"))
    ver.add_argument("--pmax", type=int, default=8)
    ver.add_argument("--kmax", type=int, default=6)
    ver.add_argument("--nmax", type=int, default=12)
    ver.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--count", type=int, default=20)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    json_mode = not ("--output" in argv and argv[argv.index("--output") + 1:][:1] == ["table"]) \
        and "--output=table" not in argv
    parser = build_parser()
    parser._json_mode = json_mode
    for action in parser._subparsers._group_actions:
        for p in action.choices.values():
            p._json_mode = json_mode
    args = parser.parse_args(argv)
    handlers = {"homology": run_homology, "invariant": run_invariant, "verify": run_verify}
    try:
        if args.command != "verify" and not args.manifold:
            raise SchemaError("--manifold is required", "/args")
        return handlers[args.command](args)
    except SchemaError as exc:
        _emit_error(json_mode, "schema", str(exc), pointer=exc.pointer)
        return EXIT_PARSE
    except UnsupportedPresentation as exc:
        _emit_error(json_mode, "unsupported_presentation", str(exc), supported=list(exc.supported))
        return EXIT_UNSUPPORTED
    except NoInvariantAtLevel as exc:
        _emit_error(json_mode, "no_invariant_at_level", str(exc))
        return EXIT_NO_LEVEL
    except InvariantViolation as exc:
        _emit_error(json_mode, "invariant_violation", str(exc), rule=exc.rule)
        return EXIT_INVARIANT
    except NonIntegralInvariant as exc:
        _emit_error(json_mode, "non_integral", str(exc))
        return EXIT_INVARIANT
    except OSError as exc:
        _emit_error(json_mode, "io", str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
