"""Command-line front end.

Verbs: abelianization, splits, boundary, signature, chi2, theta, table3,
verify.  Every verb honors ``--format json|text``; JSON output is a single
line rendered with sorted keys, so parsing and re-rendering round-trips
byte-identically.  Exit codes: 0 success, 1 verification/computation
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .abgroups import FinAbGroup
from .cocycles import AffineSurfaceClass, chi2_of_class, load_class_file, \
    signature_of_class
from .mcg import (MCGParams, h1_Gg, h1_half_mcg, h1_mcg, h1_torelli,
                  reproduce_table3, splitting_decisions)
from .spheres import AlmostClosedInvariants, boundary_of_plumbing, theta_data
from .verify import SUITES, describe_theta_element, run_suites


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hdmcg",
        description="Exact invariants of mapping class groups of g-fold "
                    "connected sums of S^n x S^n (n odd).")
    sub = p.add_subparsers(dest="verb", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("json", "text"), default="text")

    sp = sub.add_parser("abelianization",
                        help="first homology of one of the groups")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--group", choices=("mcg", "torelli", "halfmcg", "gg"),
                    default="mcg")
    sp.add_argument("--sigma-q-order", type=int, default=None)
    sp.add_argument("--coker-j-table", type=str, default=None,
                    help="path to a JSON coker-J extension table")
    add_format(sp)

    sp = sub.add_parser("splits", help="splitting decisions for (g, n)")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    add_format(sp)

    sp = sub.add_parser("boundary",
                        help="boundary sphere of an almost closed manifold "
                             "with the given invariants")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sgn", type=int, required=True)
    sp.add_argument("--chi2", type=int, default=None)
    add_format(sp)

    sp = sub.add_parser("signature", help="signature pairing of a class file")
    sp.add_argument("--file", type=str, required=True)
    add_format(sp)

    sp = sub.add_parser("chi2", help="chi^2 pairing of an affine class file")
    sp.add_argument("--file", type=str, required=True)
    add_format(sp)

    sp = sub.add_parser("theta", help="homotopy-sphere data for odd n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sigma-q-order", type=int, default=None)
    add_format(sp)

    sp = sub.add_parser("table3", help="recompute the example table and diff")
    add_format(sp)

    sp = sub.add_parser("verify", help="run an embedded verification suite")
    sp.add_argument("--suite", choices=tuple(SUITES) + ("all",),
                    default="all")
    sp.add_argument("--seed", type=int, default=0)
    add_format(sp)
    return p


def _cmd_abelianization(args) -> int:
    params = MCGParams(args.g, args.n, sigma_q_order=args.sigma_q_order,
                       coker_j_path=args.coker_j_table)
    group: FinAbGroup
    if args.group == "mcg":
        group = h1_mcg(args.g, args.n, params)
    elif args.group == "torelli":
        group = h1_torelli(args.g, args.n, params)
    elif args.group == "halfmcg":
        group = h1_half_mcg(args.g, args.n)
    else:
        group = h1_Gg(args.g, args.n)
    _emit(group.to_json_dict(), args.format == "json", group.describe())
    return 0


def _cmd_splits(args) -> int:
    decisions = splitting_decisions(args.g, args.n)
    obj = {k: d.to_json_dict() for k, d in decisions.items()}
    text = "\n".join(f"{k}: {d.value}  [{d.citation}]"
                     for k, d in decisions.items())
    _emit(obj, args.format == "json", text)
    return 0


def _cmd_boundary(args) -> int:
    data = theta_data(args.n)
    inv = AlmostClosedInvariants(args.sgn, args.chi2)
    el = boundary_of_plumbing(inv, args.n, data)
    label = describe_theta_element(el, data)
    _emit({"label": label, "coords": list(el.coords)},
          args.format == "json", label)
    return 0


def _cmd_signature(args) -> int:
    cls = load_class_file(args.file)
    value = signature_of_class(cls)
    _emit({"signature": value}, args.format == "json", str(value))
    return 0


def _cmd_chi2(args) -> int:
    cls = load_class_file(args.file)
    if not isinstance(cls, AffineSurfaceClass):
        raise ValueError("chi2 needs a class file with translation data")
    value = chi2_of_class(cls)
    _emit({"chi2": value}, args.format == "json", str(value))
    return 0


def _cmd_theta(args) -> int:
    data = theta_data(args.n, sigma_q_order=args.sigma_q_order)
    text = (f"theta = {data.theta.describe()}\n"
            f"Sigma_P coords {list(data.sigma_p.coords)}, "
            f"Sigma_Q coords {list(data.sigma_q.coords)}\n"
            f"coker J = {data.coker_j_group.describe()}, "
            f"omega = {data.omega.describe()}")
    _emit(data.to_json_dict(), args.format == "json", text)
    return 0


def _cmd_table3(args) -> int:
    rendered, ok, mismatches = reproduce_table3()
    if args.format == "json":
        print(json.dumps({"ok": ok, "mismatches": mismatches},
                         sort_keys=True))
    else:
        print(rendered)
        print("OK" if ok else "MISMATCHES:\n" + "\n".join(mismatches))
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names, seed=args.seed)
    ok = all(r[1] for r in results)
    if args.format == "json":
        print(json.dumps({"ok": ok, "seed": args.seed,
                          "checks": [{"name": n, "ok": o, "detail": d}
                                     for n, o, d in results]},
                         sort_keys=True))
    else:
        for name, good, detail in results:
            line = f"[{'PASS' if good else 'FAIL'}] {name}"
            if detail:
                line += f"  ({detail})"
            print(line)
        print(f"verify: {'all checks passed' if ok else 'FAILURES present'}")
    return 0 if ok else 1


_COMMANDS = {
    "abelianization": _cmd_abelianization,
    "splits": _cmd_splits,
    "boundary": _cmd_boundary,
    "signature": _cmd_signature,
    "chi2": _cmd_chi2,
    "theta": _cmd_theta,
    "table3": _cmd_table3,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
