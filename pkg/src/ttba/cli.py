"""Command-line interface.

JSON reports go to stdout (deterministic byte streams: sorted keys, two-space
indent); one-line human summaries go to stderr.  Exit codes: 0 success,
1 invariant violation, 2 parse/schema error, 3 budget or search bound
exceeded.  The env var TTBA_BUDGET overrides the default entry budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from ttba import algebra as alg
from ttba import bimodule as bim
from ttba import builders, fileio
from ttba import hochschild as hh
from ttba import isoclass as iso
from ttba import shear as sh
from ttba.errors import (BudgetExceeded, SchemaError, SearchBoundExceeded,
                         ValidationError)
from ttba.exactlin import RatMatrix, format_rational
from ttba.triangular import (TriAlgebra, ideal_and_quotient, ideal_bimodule,
                             peirce, tri_norm)


def _default_budget() -> int:
    env = os.environ.get("TTBA_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise SchemaError(f"TTBA_BUDGET is not an integer: {env!r}") from exc
    return hh.DEFAULT_BUDGET


def _emit(report: dict, summary: str, out: str | None) -> None:
    text = fileio.canonical_json(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    print(summary, file=sys.stderr)


def _load_validated(path: str, allowed: tuple[str, ...]) -> fileio.Definition:
    defn = fileio.load_definition(path)
    if defn.kind not in allowed:
        raise SchemaError(
            f"{path}: expected one of {', '.join(allowed)}, got {defn.kind!r}")
    violations = fileio.validate_definition(defn)
    if violations:
        raise ValidationError(f"{path}: {violations[0]}", violations)
    return defn


def _load_triangular(path: str) -> TriAlgebra:
    """Triangular input: a triangular file or an anchored-system file."""
    defn = _load_validated(path, ("triangular", "anchored-system"))
    if isinstance(defn, fileio.TriangularDef):
        return defn.build()
    assert isinstance(defn, fileio.AnchoredDef)
    return builders.anchored_triangular(defn.system)


def _shear_to_json(s: sh.Shear) -> dict:
    return {"f": fileio._dump_matrix(s.f), "g": fileio._dump_matrix(s.g)}


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    defn = fileio.load_definition(args.path)
    violations = fileio.validate_definition(defn)
    report = {"kind": defn.kind, "valid": not violations,
              "violations": violations}
    _emit(report, f"{args.path}: " + ("valid" if not violations else
                                      f"INVALID ({len(violations)} violations)"),
          args.out)
    return 0 if not violations else 1


def cmd_shear(args) -> int:
    t = _load_triangular(args.path)
    z1 = sh.cocycle_space(t.a, t.b, t.x, t.twist)
    b1 = sh.inner_shears(t.a, t.b, t.x, t.twist)
    report = {
        "dim_z1": len(z1),
        "dim_b1": len(b1),
        "quotient_dim": len(z1) - len(b1),
        "z1_basis": [_shear_to_json(s) for s in z1],
        "b1_basis": [_shear_to_json(s) for s in b1],
    }
    _emit(report, f"dim Z1 = {len(z1)}, dim B1 = {len(b1)}, "
                  f"quotient = {len(z1) - len(b1)}", args.out)
    return 0


def _iso_data_from_def(d: fileio.IsoDataDef, t_sigma: TriAlgebra) -> iso.IsoData:
    na, nb, nx = t_sigma.a.dim, t_sigma.b.dim, t_sigma.x.dim
    if d.alpha.rows != na or d.beta.rows != nb or d.u.rows != nx:
        raise SchemaError("iso-data blocks do not match the component dimensions")
    if d.theta_f.rows != nx or d.theta_f.cols != na \
            or d.theta_g.rows != nx or d.theta_g.cols != nb:
        raise SchemaError("iso-data shear blocks have the wrong shape")
    alpha = alg.check_automorphism(t_sigma.a, d.alpha)
    if alpha is None:
        raise ValidationError("alpha is not an algebra automorphism of A")
    beta = alg.check_automorphism(t_sigma.b, d.beta)
    if beta is None:
        raise ValidationError("beta is not an algebra automorphism of B")
    return iso.IsoData(alpha, beta, d.u, sh.Shear(d.theta_f, d.theta_g))


def cmd_iso(args) -> int:
    if args.action == "verify":
        return _iso_verify(args)
    return _iso_search(args)


def _iso_verify(args) -> int:
    if len(args.paths) != 3:
        raise SchemaError("iso verify needs: T_sigma T_tau iso-data")
    t_sigma = _load_triangular(args.paths[0])
    t_tau = _load_triangular(args.paths[1])
    d_def = _load_validated(args.paths[2], ("iso-data",))
    assert isinstance(d_def, fileio.IsoDataDef)
    data = _iso_data_from_def(d_def, t_sigma)
    verdict = iso.verify_iso_data(t_sigma, t_tau, data)
    report = verdict.as_dict()
    if verdict.passed:
        phi, _ = iso.build_phi(t_sigma, t_tau, data)
        report["characteristic_ideal"] = iso.characteristic_ideal_check(
            phi, t_sigma, t_tau)
    _emit(report, "verdict: " + ("PASS" if verdict.passed else "FAIL"), args.out)
    return 0


def _group_data_from_triangular(path: str) -> tuple[builders.FiniteGroup,
                                                    tuple[int, ...], tuple[int, ...]]:
    """Recover (G, gamma_a, gamma_b) from a group-algebra triangular file:
    components must be copies of QG with convolution actions and
    permutation-matrix twists."""
    defn = _load_validated(path, ("triangular",))
    assert isinstance(defn, fileio.TriangularDef)
    a, b, x = defn.a, defn.b, defn.x
    n = a.dim
    if b.dim != n or x.dim != n:
        raise ValidationError(f"{path}: group-family search needs A = B = X = QG")
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            comps = a.prod_basis(i, j)
            if len(comps) != 1 or list(comps.values())[0] != 1:
                raise ValidationError(
                    f"{path}: A is not a group algebra on the given basis")
            row.append(next(iter(comps)))
        table.append(row)
    g = builders.group_from_cayley(table, a.basis_labels)
    if b.structure != a.structure:
        raise ValidationError(f"{path}: B does not match the group algebra A")
    one = Fraction(1)
    for i in range(n):
        for p in range(n):
            if x.left.get((i, p)) != {g.mul(i, p): one} \
                    or x.right.get((p, i)) != {g.mul(p, i): one}:
                raise ValidationError(f"{path}: X is not the convolution bimodule")

    def perm_of(m: RatMatrix, what: str) -> tuple[int, ...]:
        perm = []
        for c in range(n):
            col = [r for r in range(n) if m.entry(r, c) != 0]
            if len(col) != 1 or m.entry(col[0], c) != 1:
                raise ValidationError(
                    f"{path}: {what} is not a group-induced (permutation) twist")
            perm.append(col[0])
        return tuple(perm)

    return g, perm_of(defn.sigma_a, "sigma_a"), perm_of(defn.sigma_b, "sigma_b")


def _iso_search(args) -> int:
    if len(args.paths) != 2:
        raise SchemaError("iso search needs two input files")
    if args.family == "group":
        g, ga, gb = _group_data_from_triangular(args.paths[0])
        g2, ga2, gb2 = _group_data_from_triangular(args.paths[1])
        if g2.cayley != g.cayley:
            raise ValidationError("the two files are over different groups")
        witness = iso.search_iso_group(g, ga, gb, ga2, gb2, bound=args.bound)
        scope = iso.GROUP_FAMILY_SCOPE
        family = "group-induced automorphisms"
    else:
        s_def = _load_validated(args.paths[0], ("anchored-system",))
        t_def = _load_validated(args.paths[1], ("anchored-system",))
        assert isinstance(s_def, fileio.AnchoredDef)
        assert isinstance(t_def, fileio.AnchoredDef)
        fw = iso.search_iso_function(s_def.system, t_def.system,
                                     max_search=args.max_search)
        witness = fw.iso if fw is not None else None
        scope = iso.FUNCTION_FAMILY_SCOPE
        family = "basis permutations"
    if witness is None:
        report = {"witness_found": False,
                  "message": f"no witness in searched family ({family})",
                  "scope": scope}
        _emit(report, "no witness found", args.out)
        return 0
    w_def = fileio.iso_data_def_from_witness(witness, args.paths[0], args.paths[1])
    report = {"witness_found": True, "scope": scope,
              "iso_data": fileio.dump_definition(w_def)}
    if args.out:
        Path(args.out).write_text(fileio.dumps_definition(w_def), encoding="utf-8")
        sys.stdout.write(fileio.canonical_json(report))
        print(f"witness written to {args.out}", file=sys.stderr)
    else:
        _emit(report, "witness found", None)
    return 0


def _resolve_module(args, t_or_a) -> tuple[alg.FDAlgebra, bim.Bimodule]:
    choice = args.module
    if isinstance(t_or_a, TriAlgebra):
        base = t_or_a.carrier
    else:
        base = t_or_a
    if choice == "self":
        return base, bim.regular_bimodule(base)
    if choice == "dual":
        return base, bim.dual_bimodule(bim.regular_bimodule(base))
    if choice in ("ideal", "ideal-dual"):
        if not isinstance(t_or_a, TriAlgebra):
            raise SchemaError(f"--module {choice} needs a triangular input")
        ib = ideal_bimodule(t_or_a)
        return base, (ib if choice == "ideal" else bim.dual_bimodule(ib))
    # a path to a bimodule file over the same algebra
    m_def = _load_validated(choice, ("bimodule",))
    assert isinstance(m_def, fileio.BimoduleDef)
    m = m_def.bimodule
    if m.left_algebra != base or m.right_algebra != base:
        raise SchemaError("--module file is not a bimodule over the input algebra")
    return base, m


def cmd_cohomology(args) -> int:
    defn = _load_validated(args.path, ("algebra", "triangular", "anchored-system"))
    if isinstance(defn, fileio.AlgebraDef):
        target: alg.FDAlgebra | TriAlgebra = defn.algebra
    else:
        target = _load_triangular(args.path)
    a, m = _resolve_module(args, target)
    dim = hh.hochschild_dim(a, m, args.degree, max_entries=args.max_entries)
    report = {"degree": args.degree, "module": args.module,
              "algebra_dim": a.dim, "module_dim": m.dim, "dimension": dim}
    _emit(report, f"dim H^{args.degree} = {dim}", args.out)
    return 0


def cmd_bidim(args) -> int:
    defn = _load_validated(args.path, ("algebra", "triangular", "anchored-system"))
    if isinstance(defn, fileio.AlgebraDef):
        a = defn.algebra
    else:
        a = _load_triangular(args.path).carrier
    value = hh.bidimension(a, args.max_degree, max_entries=args.max_entries)
    shown = value if value is not None else f">{args.max_degree}"
    report = {"max_degree": args.max_degree, "bidimension": shown,
              "algebra_dim": a.dim}
    _emit(report, f"bidimension = {shown}", args.out)
    return 0


def cmd_cd_check(args) -> int:
    t = _load_triangular(args.path)
    report = hh.cd_formula_check(t, args.max_degree, max_entries=args.max_entries)
    _emit(report, f"cd formula: {report['bidim_carrier']} vs "
                  f"max formula {report['formula_rhs']}: {report['verdict']}",
          args.out)
    return 0


def cmd_wa(args) -> int:
    t = _load_triangular(args.path)
    report = {
        "sufficient_criterion": hh.wa_sufficient_check(t, max_entries=args.max_entries),
        "probe": hh.weak_amenability_probe(t, max_entries=args.max_entries),
    }
    probe = report["probe"]
    _emit(report, f"H1(T, T*) = {probe['h1_t_dual']}, "
                  f"H1(T, I*) = {probe['h1_ideal_dual']}", args.out)
    return 0


def cmd_classify_twists(args) -> int:
    defn = _load_validated(args.path, ("group",))
    assert isinstance(defn, fileio.GroupDef)
    g = defn.build()
    classes = iso.classify_twists(g, bound=args.bound)
    report = {
        "group_order": g.order,
        "automorphism_count": sum(c.size for c in classes),
        "classes": [{"representative": list(c.representative),
                     "size": c.size,
                     "members": [list(m) for m in c.members]}
                    for c in classes],
    }
    _emit(report, f"{len(classes)} conjugacy classes, sizes "
                  f"{[c.size for c in classes]}", args.out)
    return 0


def cmd_report(args) -> int:
    t = _load_triangular(args.path)
    e11, e22, peirce_report = peirce(t)
    ideal, q, pi = ideal_and_quotient(t)
    pi_mult = all(
        pi.mul_vec(t.carrier.multiply(t.carrier.basis_vector(s),
                                      t.carrier.basis_vector(u)))
        == q.multiply(pi.mul_vec(t.carrier.basis_vector(s)),
                      pi.mul_vec(t.carrier.basis_vector(u)))
        for s in range(t.dim) for u in range(t.dim))
    z1 = sh.cocycle_space(t.a, t.b, t.x, t.twist)
    b1 = sh.inner_shears(t.a, t.b, t.x, t.twist)

    overruns: list = []
    cd = hh._guard(lambda: hh.cd_formula_check(t, args.max_degree,
                                               max_entries=args.max_entries),
                   overruns, "cd_formula")
    probe = hh._guard(lambda: hh.weak_amenability_probe(t, max_entries=args.max_entries),
                      overruns, "weak_amenability_probe")
    sufficient = hh._guard(lambda: hh.wa_sufficient_check(t, max_entries=args.max_entries),
                           overruns, "wa_sufficient")
    report = {
        "validation": {"valid": True, "violations": []},
        "dimensions": {"a": t.a.dim, "x": t.x.dim, "b": t.b.dim,
                       "carrier": t.dim},
        "peirce": {
            "idempotents_complementary": peirce_report["idempotents_complementary"],
            "corner_dims": peirce_report["corner_dims"],
            "a_corner_matches_structure": peirce_report["a_corner_matches_structure"],
            "b_corner_matches_structure": peirce_report["b_corner_matches_structure"],
        },
        "exact_sequence": {
            "ideal_dim": len(ideal),
            "quotient_dim": q.dim,
            "carrier_dim": t.dim,
            "exact": len(ideal) + q.dim == t.dim,
            "pi_multiplicative": pi_mult,
        },
        "unit_norm": format_rational(tri_norm(t, t.carrier.unit)),
        "shear": {"dim_z1": len(z1), "dim_b1": len(b1),
                  "quotient_dim": len(z1) - len(b1)},
        "cd_formula": cd,
        "weak_amenability_probe": probe,
        "wa_sufficient": sufficient,
        "budget_overruns": overruns,
    }
    _emit(report, f"report for {args.path} complete", args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttba",
        description="Exact workbench for twisted triangular algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="also write the JSON artifact to this path")
        p.add_argument("--max-entries", type=int, default=None,
                       help="matrix entry budget per differential "
                            "(default 10^7; env TTBA_BUDGET overrides)")

    p = sub.add_parser("validate", help="run every applicable validation")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("shear", help="cocycle and inner-shear spaces")
    p.add_argument("path", help="triangular or anchored-system file")
    common(p)
    p.set_defaults(func=cmd_shear)

    p = sub.add_parser("iso", help="verify or search classification witnesses")
    p.add_argument("action", choices=("verify", "search"))
    p.add_argument("paths", nargs="+")
    p.add_argument("--family", choices=("group", "function"), default="group")
    p.add_argument("--bound", type=int, default=builders.DEFAULT_AUT_BOUND,
                   help="automorphism enumeration bound (group family)")
    p.add_argument("--max-search", type=int, default=1_000_000,
                   help="permutation search-space bound (function family)")
    common(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("cohomology", help="one Hochschild dimension")
    p.add_argument("path", help="algebra, triangular, or anchored-system file")
    p.add_argument("--module", default="self",
                   help="self | dual | ideal | ideal-dual | bimodule file path")
    p.add_argument("--degree", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("bidim", help="cohomological dimension")
    p.add_argument("path")
    p.add_argument("--max-degree", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_bidim)

    p = sub.add_parser("cd-check", help="dimension formula check")
    p.add_argument("path")
    p.add_argument("--max-degree", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_cd_check)

    p = sub.add_parser("wa", help="weak-amenability probes")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_wa)

    p = sub.add_parser("classify-twists", help="conjugacy classes of Aut(G)")
    p.add_argument("path", help="group file")
    p.add_argument("--bound", type=int, default=builders.DEFAULT_AUT_BOUND)
    common(p)
    p.set_defaults(func=cmd_classify_twists)

    p = sub.add_parser("report", help="aggregated document for one input")
    p.add_argument("path", help="triangular or anchored-system file")
    p.add_argument("--max-degree", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_entries", None) is None:
        try:
            args.max_entries = _default_budget()
        except SchemaError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        report = {"valid": False, "violations": exc.violations}
        sys.stdout.write(fileio.canonical_json(report))
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, SearchBoundExceeded) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
