"""Command-line surface: Hall-Littlewood tables and identity-check runs.

Exit codes: 0 all good, 1 at least one check failed, 2 usage or input
error.  JSON output is line-delimited with exact rational coefficients as
strings; runs with identical flags produce identical bytes apart from the
elapsed fields.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .engine import jing_Q
from .errors import QVertexError
from .symfunc import Partition, p_to_x, xpoly_monomial_coeffs
from .verifier import CHECK_IDS, run_check

HL_MIN_T_ORDER = 24
HL_MAX_WEIGHT = 8


@dataclass(frozen=True)
class RunConfig:
    t_order: int = 8
    gamma_order: int = 3
    degree_cap: int = 9
    window: int = 5
    charges: tuple = (1, 1)
    fmt: str = "json"


def _parse_partition(text: str):
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.isdigit() or int(tok) == 0:
            return None
        parts.append(int(tok))
    if not parts:
        return None
    return Partition(tuple(sorted(parts, reverse=True)))


def _charges(text: str):
    try:
        a, b = (int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated charges, got {text!r}")
    return (a, b)


def _coeff_strings(ts) -> list:
    coeffs = list(ts.coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return [str(c) for c in coeffs]


def _hl_required_t_order(lams, requested: int) -> int:
    # degree of any p-basis coefficient of Q_lambda is at most
    # n(lambda) + |lambda|
    need = HL_MIN_T_ORDER
    for lam in lams:
        n_stat = sum(i * part for i, part in enumerate(lam))
        need = max(need, n_stat + lam.weight)
    return max(need, requested)


def run_hl(lambdas, cfg: RunConfig, nvars=None, basis: str = "p") -> int:
    lams = []
    for text in lambdas:
        lam = _parse_partition(text)
        if lam is None:
            print(f"error: malformed partition {text!r}", file=sys.stderr)
            return 2
        if lam.weight > HL_MAX_WEIGHT:
            print(f"error: |lambda| = {lam.weight} exceeds the size limit "
                  f"{HL_MAX_WEIGHT}", file=sys.stderr)
            return 2
        lams.append(lam)
    T = _hl_required_t_order(lams, cfg.t_order)
    if T > cfg.t_order:
        print(f"notice: raising t-order to {T} so the printed tables are "
              "exact polynomials", file=sys.stderr)
    for lam in lams:
        f = jing_Q(lam, T)
        if basis == "p":
            rows = [(list(mu), _coeff_strings(c))
                    for mu, c in sorted(f.terms.items())]
            payload = {"lambda": list(lam), "basis": "p", "t_order": T,
                       "terms": [{"mu": mu, "coeff": cs}
                                 for mu, cs in rows]}
            if cfg.fmt == "json":
                print(json.dumps(payload))
            else:
                print(f"Q_{list(lam)} =", str(f))
        else:
            n = nvars if nvars is not None else max(lam.weight, 1)
            mono = xpoly_monomial_coeffs(p_to_x(f, n))
            rows = [(list(mu), [str(c) for c in cs])
                    for mu, cs in sorted(mono.items(), reverse=True)]
            payload = {"lambda": list(lam), "basis": "m", "nvars": n,
                       "t_order": T,
                       "terms": [{"mu": mu, "coeff": cs}
                                 for mu, cs in rows]}
            if cfg.fmt == "json":
                print(json.dumps(payload))
            else:
                print(f"Q_{list(lam)} in {n} variables:")
                for mu, cs in rows:
                    print(f"  m_{mu}: [{', '.join(cs)}]")
    return 0


def run_verify(selection, cfg: RunConfig) -> int:
    ids = set()
    for tok in selection:
        if tok == "all":
            ids.update(CHECK_IDS)
        elif tok in CHECK_IDS:
            ids.add(tok)
        else:
            print(f"error: unknown check {tok!r}; choose from "
                  f"{', '.join(CHECK_IDS)} or all", file=sys.stderr)
            return 2
    if "hl-oracle" in ids and cfg.t_order < HL_MIN_T_ORDER:
        print(f"notice: hl-oracle runs at t-order {HL_MIN_T_ORDER}",
              file=sys.stderr)
    reports = []
    for cid in sorted(ids):
        try:
            reports.append(run_check(
                cid, t_order=cfg.t_order, g_order=cfg.gamma_order,
                degree_cap=cfg.degree_cap, window=cfg.window,
                charges=cfg.charges))
        except QVertexError as exc:
            print(f"error: {cid}: {exc}", file=sys.stderr)
            return 2
    if cfg.fmt == "json":
        for r in reports:
            print(json.dumps(r.as_dict()))
    else:
        print(f"{'check':<24} {'result':<7} {'monomials':>9} {'time':>8}")
        for r in reports:
            tag = "pass" if r.passed else "FAIL"
            print(f"{r.check_id:<24} {tag:<7} {r.compared:>9} "
                  f"{r.elapsed:>7.2f}s")
        failed = [r.check_id for r in reports if not r.passed]
        if failed:
            print(f"{len(failed)} failed: {', '.join(failed)}")
        else:
            print("all checks passed")
    return 0 if all(r.passed for r in reports) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvertex",
        description="Exact Hall-Littlewood tables and coefficient-exact "
                    "checks of the braided vertex-algebra identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    hl = sub.add_parser("hl", help="print Q_lambda in the power-sum or "
                                   "monomial basis")
    hl.add_argument("partitions", nargs="+", metavar="PARTITION",
                    help="comma-separated parts, e.g. 3,2,1")
    hl.add_argument("--basis", choices=("p", "m"), default="p")
    hl.add_argument("--nvars", type=int, default=None)

    vf = sub.add_parser("verify", help="run identity checks")
    vf.add_argument("selection", nargs="+", metavar="CHECK",
                    help=f"{', '.join(CHECK_IDS)}, or all")

    for p in (hl, vf):
        p.add_argument("--t-order", type=int, default=RunConfig.t_order)
        p.add_argument("--gamma-order", type=int,
                       default=RunConfig.gamma_order)
        p.add_argument("--max-degree", type=int,
                       default=RunConfig.degree_cap)
        p.add_argument("--window", type=int, default=RunConfig.window)
        p.add_argument("--charges", type=_charges,
                       default=RunConfig.charges)
        p.add_argument("--format", choices=("json", "text"),
                       default=RunConfig.fmt, dest="fmt")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(t_order=args.t_order, gamma_order=args.gamma_order,
                    degree_cap=args.max_degree, window=args.window,
                    charges=tuple(args.charges), fmt=args.fmt)
    if cfg.t_order < 0 or cfg.gamma_order < 0 or cfg.window < 1:
        print("error: need t-order >= 0, gamma-order >= 0, window >= 1",
              file=sys.stderr)
        return 2
    if args.command == "hl":
        return run_hl(args.partitions, cfg, nvars=args.nvars,
                      basis=args.basis)
    return run_verify(args.selection, cfg)


if __name__ == "__main__":
    sys.exit(main())
