"""Command-line interface.

Every subcommand builds a JSON report with the keys ``tool-version``,
``semiring``, ``operation``, ``inputs``, ``verdict``, ``witnesses``,
``scope`` and ``seed``.  Reports are written with sorted keys, so a fixed
configuration and seed give byte-identical output.

Exit codes: 0 when a verdict was computed (including negative verdicts),
2 for unreadable or malformed input, 3 when a search budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import BudgetExceeded, ParseError, SemiringError
from .matrix import (
    SPAN_BUDGET,
    code_of,
    col_space,
    enumerate_span,
    load_matrix,
    parse_vector,
    row_space,
    span_membership,
)
from .semiring import describe, parse_semiring

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    semiring: str | None = None
    inputs: dict = field(default_factory=dict)
    budgets: dict = field(default_factory=dict)
    seed: int = 0
    output: str | None = None


def _vec(S, x) -> str:
    return " ".join(S.format(a) for a in x.flat())


def _report(cfg: RunConfig, S, operation, verdict, witnesses, scope) -> dict:
    return {
        "tool-version": __version__,
        "semiring": describe(S) if S is not None else None,
        "operation": operation,
        "inputs": cfg.inputs,
        "verdict": verdict,
        "witnesses": witnesses,
        "scope": scope,
        "seed": cfg.seed,
    }


def _semiring(cfg: RunConfig):
    if cfg.semiring is None:
        raise ParseError("--semiring is required")
    return parse_semiring(cfg.semiring)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(cfg: RunConfig, args) -> tuple[dict, str]:
    S = _semiring(cfg)
    rep = S.validate(samples=args.samples, seed=cfg.seed)
    d = rep.as_dict(S.format)
    verdict = "valid" if rep.ok else "invalid"
    scope = {"exhaustive": rep.exhaustive, "samples": rep.samples}
    out = _report(cfg, S, "semiring validate", verdict,
                  {"checks": d["checks"], "failure": d["witness"]}, scope)
    return out, f"{S.spec}: {verdict}"


def cmd_exactness(cfg: RunConfig, args) -> tuple[dict, str]:
    from .exactness import exactness_report

    S = _semiring(cfg)
    props = [p.strip().lower() for p in args.props.split(",") if p.strip()]
    rep = exactness_report(S, args.max_m, args.max_n, props=props, f_bound=args.f_bound,
                           g_budget=args.g_budget, h_budget=args.h_budget,
                           matrix_budget=cfg.budgets["enumeration"])
    verdict = "exact" if rep["exact"] else "not exact"
    witnesses = {"properties": rep["properties"], "agreement": rep["agreement"]}
    scope = {"max_m": args.max_m, "max_n": args.max_n, "matrices": rep["matrices"], **rep["scope"]}
    return _report(cfg, S, "exactness", verdict, witnesses, scope), f"{S.spec}: {verdict}"


def cmd_complement(cfg: RunConfig, args) -> tuple[dict, str]:
    from .pid import orthogonal_complement_row, row_col_isomorphism

    if args.modulus is not None:
        if args.modulus < 2:
            raise ParseError(f"modulus must be at least 2, got {args.modulus}")
        cfg.semiring = f"zmod {args.modulus}"
    S = _semiring(cfg)
    A = load_matrix(args.matrix, S)
    rep = orthogonal_complement_row(A, budget=cfg.budgets["enumeration"])
    checks = {k: v for k, v in rep.verification.items() if isinstance(v, bool)}
    witnesses = rep.as_dict()
    if args.isomorphism:
        iso = row_col_isomorphism(A, budget=cfg.budgets["enumeration"])
        witnesses["isomorphism"] = iso.as_dict()
        checks.update({f"isomorphism_{k}": v for k, v in iso.checks.items()})
    verdict = "verified" if all(checks.values()) else "failed"
    scope = {"enumeration_budget": cfg.budgets["enumeration"],
             "enumerated": rep.verification.get("double_perp") is not None}
    return _report(cfg, S, "complement", verdict, witnesses, scope), f"complement: {verdict}"


def cmd_snf(cfg: RunConfig, args) -> tuple[dict, str]:
    from .pid import int_det, int_matmul, is_smith_form, load_int_matrix, smith_normal_form

    A = load_int_matrix(args.matrix)
    r = smith_normal_form(A)
    checks = {
        "MAN_equals_D": int_matmul(int_matmul(r.M, A), r.N) == r.D,
        "M_unimodular": abs(int_det(r.M)) == 1,
        "N_unimodular": abs(int_det(r.N)) == 1,
        "divisibility_chain": is_smith_form(r.D),
    }
    verdict = "ok" if all(checks.values()) else "failed"
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, X in (("M", r.M), ("D", r.D), ("N", r.N)):
            body = "\n".join(" ".join(map(str, row)) for row in X)
            (out / f"{name}.mat").write_text(f"{len(X)} {len(X[0])}\n{body}\n")
    witnesses = {"M": r.M, "D": r.D, "N": r.N, "diagonal": r.diagonal, "checks": checks}
    return _report(cfg, None, "snf", verdict, witnesses, {}), f"snf: {r.diagonal}"


def cmd_duality(cfg: RunConfig, args) -> tuple[dict, str]:
    from .involution import (
        DualityMaps,
        col_non_membership_witness,
        col_residuation_closure,
        non_membership_witness,
        residuation_closure,
    )
    from .matrix import mat_mul

    S = _semiring(cfg)
    A = load_matrix(args.matrix, S)
    maps = DualityMaps(A)
    if args.row is not None:
        x = parse_vector(args.row, S, "row")
        member = span_membership(row_space(A), x, method="closure")
        closure = residuation_closure(A, x)
        w = {"closure": _vec(S, closure), "phi": _vec(S, maps.phi(x))}
        if member:
            w["multiplier"] = _vec(S, member.witness)
            w["psi_phi"] = _vec(S, maps.psi(maps.phi(x)))
        else:
            v, v2 = non_membership_witness(A, x)
            w["separating_pair"] = {"v": _vec(S, v), "v2": _vec(S, v2),
                                    "Av": _vec(S, mat_mul(A, v)),
                                    "xv": _vec(S, mat_mul(x, v)), "xv2": _vec(S, mat_mul(x, v2))}
    else:
        y = parse_vector(args.col, S, "col")
        member = span_membership(col_space(A), y, method="closure")
        closure = col_residuation_closure(A, y)
        w = {"closure": _vec(S, closure), "psi": _vec(S, maps.psi(y))}
        if member:
            w["multiplier"] = _vec(S, member.witness)
            w["phi_psi"] = _vec(S, maps.phi(maps.psi(y)))
        else:
            u, u2 = col_non_membership_witness(A, y)
            w["separating_pair"] = {"u": _vec(S, u), "u2": _vec(S, u2),
                                    "uA": _vec(S, mat_mul(u, A)),
                                    "uy": _vec(S, mat_mul(u, y)), "u2y": _vec(S, mat_mul(u2, y))}
    verdict = "member" if member else "non-member"
    scope = {"side": "row" if args.row is not None else "col", "method": "residuation"}
    return _report(cfg, S, "duality", verdict, w, scope), f"duality: {verdict}"


def cmd_groupsemiring(cfg: RunConfig, args) -> tuple[dict, str]:
    from . import groupring as gr

    S = _semiring(cfg)
    G = gr.resolve_group(args.group)
    if args.check == "exactness":
        rep = gr.group_semiring_exactness(S, G, args.max_m, args.max_n,
                                          table_budget=args.table_budget)
        verdict = "exact" if rep["exact"] else "not exact"
        witnesses = {"properties": rep["properties"], "group_semiring": rep["group_semiring"]}
        scope = {"max_m": args.max_m, "max_n": args.max_n, "matrices": rep["matrices"]}
    elif args.check == "homomorphism":
        rep = gr.check_retract_hypotheses(S, G, samples=args.samples, seed=cfg.seed)
        keys = ("embedding_injective", "embedding_additive", "embedding_multiplicative")
        hyps = {k: rep.hypotheses[k] for k in keys}
        verdict = "homomorphism" if all(hyps.values()) else "failed"
        witnesses = {"checks": hyps}
        scope = {"elements": rep.scope["elements_and_vectors"]}
    else:
        rep = gr.check_retract_hypotheses(S, G, samples=args.samples, seed=cfg.seed)
        verdict = "hypotheses hold" if rep.ok else "failed"
        witnesses = {"hypotheses": rep.hypotheses}
        scope = rep.scope
    return (_report(cfg, S, f"groupsemiring {args.check}", verdict, witnesses, scope),
            f"{S.spec}[{G.label}] {args.check}: {verdict}")


def cmd_greens(cfg: RunConfig, args) -> tuple[dict, str]:
    from . import greens

    S = _semiring(cfg)
    d = Path(args.dir)
    if not d.is_dir():
        raise ParseError(f"not a directory: {d}", source=str(d))
    paths = sorted(d.glob("*.mat"))
    if not paths:
        raise ParseError(f"no .mat files in {d}", source=str(d))
    mats = [load_matrix(p, S) for p in paths]
    rel = args.relation
    classes = greens.d_classes(mats, rel)
    names = [p.name for p in paths]
    witnesses = []
    fn = greens.RELATIONS[rel]
    for cls in classes:
        rep = mats[cls[0]]
        for i in cls[1:]:
            w = fn(rep, mats[i])
            witnesses.append({"from": names[cls[0]], "to": names[i], "witness": w.as_dict()})
    verdict = {"classes": [[names[i] for i in cls] for cls in classes]}
    scope = {"relation": rel, "matrices": len(mats)}
    return (_report(cfg, S, f"greens {rel}", verdict, witnesses, scope),
            f"{rel.upper()}-classes: {len(classes)}")


def cmd_kernel(cfg: RunConfig, args) -> tuple[dict, str]:
    from .congruence import kernel_of_span

    S = _semiring(cfg)
    A = load_matrix(args.matrix, S)
    X = row_space(A) if args.side == "row" else col_space(A)
    K = kernel_of_span(X, budget=cfg.budgets["enumeration"])
    verdict = {"blocks": len(K)}
    witnesses = {"blocks": K.formatted_blocks()}
    scope = {"side": args.side, "congruence_side": K.side, "vectors": S.size**K.length}
    return _report(cfg, S, "kernel", verdict, witnesses, scope), f"kernel: {len(K)} blocks"


def cmd_span(cfg: RunConfig, args) -> tuple[dict, str]:
    S = _semiring(cfg)
    A = load_matrix(args.matrix, S)
    X = row_space(A) if args.side == "row" else col_space(A)
    budget = cfg.budgets["enumeration"]
    if args.member is not None:
        x = parse_vector(args.member, S, args.side)
        mem = span_membership(X, x, budget=budget)
        verdict = "member" if mem else "non-member"
        witnesses = {"multiplier": _vec(S, mem.witness) if mem else None, "method": mem.method}
        summary = f"span membership: {verdict}"
    else:
        elems = enumerate_span(X, budget)
        verdict = {"size": len(elems)}
        witnesses = {"elements": [_vec(S, v) for v in sorted(elems, key=code_of)]}
        summary = f"span: {len(elems)} elements"
    return _report(cfg, S, "span", verdict, witnesses, {"side": args.side}), summary


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, semiring: bool = True):
    if semiring:
        p.add_argument("--semiring", required=True, help="semiring description, e.g. 'zmod 4'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=SPAN_BUDGET,
                   help="maximum enumeration size (default %(default)s)")
    p.add_argument("--output", "-o", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report to stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semiexact",
                                     description="Linear algebra over semirings.")
    parser.add_argument("--version", action="version", version=f"semiexact {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("semiring", help="semiring utilities")
    ssub = p.add_subparsers(dest="action", required=True)
    v = ssub.add_parser("validate", help="check the semiring laws")
    _common(v)
    v.add_argument("--samples", type=int, default=1000)
    v.set_defaults(func=cmd_validate, operation="semiring validate")

    p = sub.add_parser("exactness", help="check exactness over all small matrices")
    _common(p)
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--props", default="e1,e2", help="comma list from e1,e2,f1,f2,g1,g2,h1,h2")
    p.add_argument("--f-bound", type=int, default=3)
    p.add_argument("--g-budget", type=int, default=2**32)
    p.add_argument("--h-budget", type=int, default=10**6)
    p.set_defaults(func=cmd_exactness)

    p = sub.add_parser("complement", help="orthogonal complement of a row space over Z/nZ")
    _common(p, semiring=False)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--modulus", type=int, help="n for Z/nZ")
    g.add_argument("--semiring", help="'zmod n'")
    p.add_argument("--matrix", required=True)
    p.add_argument("--isomorphism", action="store_true",
                   help="also tabulate the row/column space isomorphism")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    _common(p, semiring=False)
    p.add_argument("--matrix", required=True)
    p.add_argument("--out-dir", help="also write M.mat, D.mat and N.mat here")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("duality", help="residuation and duality over an anti-involutive semiring")
    _common(p)
    p.add_argument("--matrix", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--row", help="row vector, e.g. '0 1'")
    g.add_argument("--col", help="column vector entries")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("groupsemiring", help="group semiring checks")
    _common(p)
    p.add_argument("--group", required=True, help="C2, C3, S3 or a group file")
    p.add_argument("--check", choices=("exactness", "homomorphism", "retract"), required=True)
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--table-budget", type=int, default=64)
    p.set_defaults(func=cmd_groupsemiring)

    p = sub.add_parser("greens", help="Green's relation classes of matrices in a directory")
    _common(p)
    p.add_argument("--dir", required=True)
    p.add_argument("--relation", choices=("d", "l", "r", "j"), default="d")
    p.set_defaults(func=cmd_greens)

    p = sub.add_parser("kernel", help="kernel congruence of a row or column space")
    _common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--side", choices=("row", "col"), default="row")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("span", help="enumerate a span or test membership")
    _common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--side", choices=("row", "col"), default="row")
    p.add_argument("--member", help="vector to test for membership")
    p.set_defaults(func=cmd_span)
    return parser


def _inputs(args) -> dict:
    skip = {"func", "command", "action", "json", "output", "seed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(cfg: RunConfig, args) -> tuple[int, dict | None, str]:
    """Execute one configured command; returns (exit code, report, summary)."""
    if any(v is not None and v <= 0 for v in cfg.budgets.values()):
        return EXIT_INPUT, None, "error: budgets must be positive"
    try:
        report, summary = args.func(cfg, args)
    except ParseError as exc:
        return EXIT_INPUT, None, f"error: {exc}"
    except BudgetExceeded as exc:
        return EXIT_BUDGET, None, f"budget exceeded: {exc}"
    except SemiringError as exc:
        return EXIT_INPUT, None, f"error: {exc}"
    return EXIT_OK, report, summary


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=args.command if args.command != "semiring" else "semiring validate",
        semiring=getattr(args, "semiring", None),
        inputs=_inputs(args),
        budgets={"enumeration": args.budget},
        seed=args.seed,
        output=args.output,
    )
    code, report, summary = run(cfg, args)
    if report is None:
        print(summary, file=sys.stderr)
        return code
    text = dumps(report)
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    if args.json:
        sys.stdout.write(text)
    else:
        print(summary)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
