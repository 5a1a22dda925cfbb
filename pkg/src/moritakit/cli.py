"""Command-line front end: load a workspace file, run one verification
command, and emit a human or machine report.

Exit codes: 0 when every verdict passes, 1 when some verdict fails, 2 on
usage or input errors.  Machine reports are a single JSON document and
are byte-identical across runs with the same workspace, flags, and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import validate_algebra
from .context import (
    compose_contexts,
    contexts_isomorphic,
    is_strict,
    trace_ideals,
    validate_context,
)
from .equivalence import (
    Report,
    build_catalog,
    user_catalog,
    verify_kato_muller,
    verify_projective_equivalence,
    verify_strict_equivalence,
)
from .exactlin import Matrix
from .graded import GradedContext, build_graded_catalog, verify_graded_kato_muller
from .modules import DEFAULT_LATTICE_BUDGET, validate_module
from .torsion import TorsionTheory, is_closed, is_torsion_free, localize, torsion_submodule
from .workspace import WorkspaceError, matrix_to_json, parse_workspace

COMMANDS = (
    "validate", "trace", "strict", "torsion", "localize", "closed",
    "equiv", "equiv-strict", "equiv-proj", "compose", "iso",
    "graded-equiv", "catalog",
)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("workspace", help="path to a workspace JSON file")
    common.add_argument("--context", action="append",
                        help="context name (repeat for compose/iso)")
    common.add_argument("--module", help="module name")
    common.add_argument("--ideal", help="ideal name")
    common.add_argument("--max-dim", type=int, dest="max_dim",
                        help="catalog dimension bound (overrides workspace recipes)")
    common.add_argument("--budget", type=int, help="submodule enumeration budget")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled searches (recorded in reports)")
    common.add_argument("--strict-sampling", action="store_true", dest="strict_sampling",
                        help="treat sampled passes as failures")
    common.add_argument("--out", help="also write the machine report to this path")
    common.add_argument("--format", choices=("human", "machine"), default="human",
                        help="report style on stdout")
    parser = argparse.ArgumentParser(
        prog="moritakit",
        description="exact verification of context, torsion, and equivalence facts")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=f"run the {name} check")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ws = parse_workspace(args.workspace)
        report, extra = _dispatch(args.command, ws, args)
    except WorkspaceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    machine = _machine_report(args, report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(machine)
    if args.format == "machine":
        sys.stdout.write(machine)
    else:
        print(_human_report(args, report, extra))
    return 0 if report.passed else 1


# ----------------------------------------------------------------- dispatch


def _dispatch(command, ws, args):
    handler = {
        "validate": _cmd_validate,
        "trace": _cmd_trace,
        "strict": _cmd_strict,
        "torsion": _cmd_torsion,
        "localize": _cmd_localize,
        "closed": _cmd_closed,
        "equiv": _cmd_equiv,
        "equiv-strict": _cmd_equiv_strict,
        "equiv-proj": _cmd_equiv_proj,
        "compose": _cmd_compose,
        "iso": _cmd_iso,
        "graded-equiv": _cmd_graded_equiv,
        "catalog": _cmd_catalog,
    }[command]
    return handler(ws, args)


def _one_context(ws, args):
    names = args.context or []
    if len(names) != 1:
        raise WorkspaceError("exactly one --context name is required", "--context")
    return ws.context(names[0]), names[0]


def _two_contexts(ws, args):
    names = args.context or []
    if len(names) != 2:
        raise WorkspaceError("exactly two --context names are required", "--context")
    return [(ws.context(n), n) for n in names]


def _theory(ws, args):
    if not args.module or not args.ideal:
        raise WorkspaceError("--module and --ideal are both required", "--module")
    mod = ws.left_module(args.module)
    ideal = ws.ideal(args.ideal)
    if ideal.algebra != mod.algebra:
        raise WorkspaceError(
            f"ideal {args.ideal!r} and module {args.module!r} live over different algebras",
            "--ideal")
    return TorsionTheory.from_ideal(mod.algebra, ideal), mod


def _cmd_validate(ws, args):
    report = Report("workspace validation")
    for name in sorted(ws.algebras):
        report.record(f"algebra {name}", "associativity and unit laws",
                      not validate_algebra(ws.algebras[name]))
    for name in sorted(ws.modules):
        report.record(f"module {name}", "module laws", not validate_module(ws.modules[name]))
    for name in sorted(ws.bimodules):
        report.record(f"bimodule {name}", "bimodule laws",
                      not validate_module(ws.bimodules[name]))
    for name in sorted(ws.contexts):
        report.record(f"context {name}", "bimodule maps and compatibility",
                      not validate_context(ws.contexts[name]))
    for name in sorted(ws.gradings):
        report.record(f"grading {name}", "group table and degree lists", True)
    return report, []


def _cmd_trace(ws, args):
    ctx, name = _one_context(ws, args)
    i, j = trace_ideals(ctx)
    t_i = TorsionTheory.from_ideal(ctx.R, i)
    t_j = TorsionTheory.from_ideal(ctx.S, j)
    report = Report("trace ideals and stabilization")
    i_note = f"I = {i.dim}-dim, idempotent (exponent {t_i.exponent})"
    j_note = (f"J = S (dim {j.dim})" if j.dim == ctx.S.dim
              else f"J = {j.dim}-dim, idempotent (exponent {t_j.exponent})")
    report.record(f"context {name}", "trace ideal into R", True, note=i_note)
    report.record(f"context {name}", "trace ideal into S", True, note=j_note)
    return report, [i_note, j_note]


def _cmd_strict(ws, args):
    ctx, name = _one_context(ws, args)
    ok = is_strict(ctx)
    report = Report("pairing surjectivity")
    report.record(f"context {name}", "both pairings surjective", ok)
    return report, [f"strict: {'true' if ok else 'false'}"]


def _cmd_torsion(ws, args):
    tt, mod = _theory(ws, args)
    t = torsion_submodule(tt, mod)
    free = is_torsion_free(tt, mod)
    report = Report("torsion theory of the ideal")
    stab = f"ideal stabilizes at exponent {tt.exponent} (dim {tt.stable_ideal.dim})"
    report.record(f"module {args.module}", "torsion submodule computed", True,
                  witness=t.dim, note=stab)
    return report, [stab, f"torsion submodule dim {t.dim}",
                    f"torsion-free: {'true' if free else 'false'}"]


def _cmd_localize(ws, args):
    tt, mod = _theory(ws, args)
    loc = localize(tt, mod)
    report = Report("localization at the ideal")
    report.record(f"module {args.module}", "localization closed, kernel torsion",
                  True, witness=loc.module.dim)
    return report, [f"localized dim {loc.module.dim}"]


def _cmd_closed(ws, args):
    tt, mod = _theory(ws, args)
    ok = is_closed(tt, mod)
    report = Report("closedness for the ideal")
    report.record(f"module {args.module}", "canonical map to the ideal hom invertible", ok)
    return report, [f"closed: {'true' if ok else 'false'}"]


def _catalog_pair(ws, args, r_alg, s_alg, default_dim=3):
    budget = args.budget if args.budget is not None else DEFAULT_LATTICE_BUDGET

    def build(alg, dim):
        return build_catalog(alg, dim, budget=budget,
                             allow_sampling=True, seed=args.seed)

    if args.max_dim is not None:
        return build(r_alg, args.max_dim), build(s_alg, args.max_dim)

    def from_recipe(recipe_name, alg):
        rec = ws.catalogs.get(recipe_name)
        if rec is None or ws.algebras[rec.algebra_name] != alg:
            return None
        if rec.module_names is not None:
            return user_catalog(alg, [ws.left_module(n) for n in rec.module_names])
        return build(alg, rec.max_dim)

    cat_r = from_recipe("catR", r_alg) or build(r_alg, default_dim)
    cat_s = from_recipe("catS", s_alg) or build(s_alg, default_dim)
    return cat_r, cat_s


def _cmd_equiv(ws, args):
    ctx, _ = _one_context(ws, args)
    cat_r, cat_s = _catalog_pair(ws, args, ctx.R, ctx.S)
    return verify_kato_muller(ctx, cat_r, cat_s, strict_sampling=args.strict_sampling), []


def _cmd_equiv_strict(ws, args):
    ctx, _ = _one_context(ws, args)
    cat_r, cat_s = _catalog_pair(ws, args, ctx.R, ctx.S)
    report = verify_strict_equivalence(ctx, cat_r, cat_s, seed=args.seed,
                                       strict_sampling=args.strict_sampling)
    return report, []


def _cmd_equiv_proj(ws, args):
    ctx, _ = _one_context(ws, args)
    cat_r, cat_s = _catalog_pair(ws, args, ctx.R, ctx.S)
    kwargs = {"strict_sampling": args.strict_sampling}
    if args.budget is not None:
        kwargs["budget"] = args.budget
    return verify_projective_equivalence(ctx, cat_r, cat_s, **kwargs), []


def _cmd_compose(ws, args):
    pairs = _two_contexts(ws, args)
    (first, first_name), (second, second_name) = pairs
    comp = compose_contexts(first, second)
    report = Report("context composition")
    report.record(f"{first_name} o {second_name}", "pairings well-defined on tensors",
                  not validate_context(comp))
    extra = [f"composed M dim {comp.M.dim}, N dim {comp.N.dim}"]
    return report, extra


def _cmd_iso(ws, args):
    pairs = _two_contexts(ws, args)
    (first, first_name), (second, second_name) = pairs
    res = contexts_isomorphic(first, second, seed=args.seed)
    report = Report("context isomorphism search")
    witness = None
    if res.found:
        witness = {"u": res.u, "v": res.v}
    note = "exhaustive search" if res.exhaustive else f"sampled search (seed {args.seed})"
    if not res.exhaustive:
        report.flag(f"sampled iso search (seed {args.seed})")
    report.record(f"{first_name} vs {second_name}", "bimodule isos matching both pairings",
                  res.found, witness=witness, note=note)
    return report, [f"isomorphic: {'true' if res.found else 'false'}"]


def _cmd_graded_equiv(ws, args):
    ctx, name = _one_context(ws, args)
    grading = ws.grading_for_context(name)
    r_name, s_name, m_name, n_name = ws.context_names[name]
    gctx = GradedContext(ctx, grading.graded_algebras[r_name],
                         grading.graded_algebras[s_name],
                         grading.degrees[m_name], grading.degrees[n_name])
    dim_r = dim_s = args.max_dim if args.max_dim is not None else 3
    if args.max_dim is None:
        rec_r, rec_s = ws.catalogs.get("catR"), ws.catalogs.get("catS")
        if rec_r is not None and rec_r.max_dim is not None and rec_r.algebra_name == r_name:
            dim_r = rec_r.max_dim
        if rec_s is not None and rec_s.max_dim is not None and rec_s.algebra_name == s_name:
            dim_s = rec_s.max_dim
    budget = args.budget if args.budget is not None else DEFAULT_LATTICE_BUDGET
    cat_r = build_graded_catalog(gctx.graded_r, dim_r, budget=budget,
                                 allow_sampling=True, seed=args.seed)
    cat_s = build_graded_catalog(gctx.graded_s, dim_s, budget=budget,
                                 allow_sampling=True, seed=args.seed)
    report = verify_graded_kato_muller(gctx, cat_r, cat_s,
                                       strict_sampling=args.strict_sampling)
    return report, []


def _cmd_catalog(ws, args):
    if args.module:
        alg = ws.left_module(args.module).algebra
    elif len(ws.algebras) == 1:
        alg = next(iter(ws.algebras.values()))
    else:
        raise WorkspaceError("catalog needs --module to pick the algebra", "--module")
    max_dim = args.max_dim if args.max_dim is not None else 3
    budget = args.budget if args.budget is not None else DEFAULT_LATTICE_BUDGET
    cat = build_catalog(alg, max_dim, budget=budget,
                        allow_sampling=True, seed=args.seed)
    dims = [m.dim for m in cat]
    report = Report("module catalog")
    report.record("catalog", "isomorphism classes enumerated", True,
                  witness=dims, note=cat.provenance)
    extra = [f"catalog: {len(cat)} modules",
             "dims: " + ", ".join(str(d) for d in dims),
             f"provenance: {cat.provenance}"]
    return report, extra


# ----------------------------------------------------------------- reports


def _witness_json(w):
    if isinstance(w, Matrix):
        return matrix_to_json(w)
    if isinstance(w, dict):
        return {k: _witness_json(v) for k, v in sorted(w.items())}
    if isinstance(w, (list, tuple)):
        return [_witness_json(x) for x in w]
    return w


def _machine_report(args, report: Report) -> str:
    inputs = {"workspace": os.path.basename(args.workspace),
              "strict_sampling": bool(args.strict_sampling)}
    for key in ("context", "module", "ideal", "max_dim", "budget"):
        val = getattr(args, key)
        if val is not None:
            inputs[key] = val
    verdicts = []
    for v in report.verdicts:
        entry = {"subject": v.subject, "check": v.check, "pass": v.passed}
        if v.witness is not None:
            entry["witness"] = _witness_json(v.witness)
        if v.note:
            entry["note"] = v.note
        verdicts.append(entry)
    doc = {
        "command": args.command,
        "inputs": inputs,
        "seed": args.seed,
        "verdicts": verdicts,
        "summary": {
            "statement": report.statement,
            "passed": report.passed,
            "verdict_count": len(report.verdicts),
            "failure_count": len(report.failures()),
            "flags": list(report.flags),
        },
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _human_report(args, report: Report, extra) -> str:
    lines = [f"{args.command}: {report.statement}",
             f"workspace: {os.path.basename(args.workspace)}",
             f"seed: {args.seed}"]
    lines += extra
    for v in report.verdicts:
        mark = "pass" if v.passed else "FAIL"
        tail = f" ({v.note})" if v.note else ""
        lines.append(f"[{mark}] {v.subject}: {v.check}{tail}")
    for fl in report.flags:
        lines.append(f"flag: {fl}")
    outcome = "pass" if report.passed else "fail"
    lines.append(f"result: {outcome} ({len(report.verdicts)} verdicts, "
                 f"{len(report.failures())} failures)")
    return "\n".join(lines)


if __name__ == "__main__":
    raise SystemExit(main())
