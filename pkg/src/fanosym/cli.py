"""Command line interface: ``fanosym <area> <action> [flags]``.

Every command prints a :class:`~fanosym.report.Report`.  Exit codes: 0 when
all checked claims hold, 1 when a claim check fails, 2 on usage errors, 3 when
a budget is exceeded or a numeric decision is indeterminate.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Sequence

from . import acceptance, bounds, fermat, grouprep, spinmolien, toric, wci
from .report import Cert, Claim, Report, dumps_json, dumps_text

DEFAULT_CAP = 12
DEFAULT_TOL = 1e-9

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def threads_from_env() -> int:
    raw = os.environ.get("FSL_THREADS", "")
    if not raw:
        return 1
    try:
        v = int(raw)
    except ValueError:
        raise UsageError(f"FSL_THREADS must be a positive integer, got {raw!r}")
    if v < 1:
        raise UsageError(f"FSL_THREADS must be a positive integer, got {raw!r}")
    return v


def _scalar(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.12g}{v.imag:+.12g}j"
    return str(v)


# ---------------------------------------------------------------- reps
def cmd_reps_min_degree(a) -> Report:
    g = grouprep.GroupSpec(a.family, a.k)
    deg = grouprep.min_faithful_degree(g)
    claims = []
    cell = {(f.value, k): d for f, k, d in acceptance.table_cells()}.get((g.family.value, g.k))
    if cell is not None:
        claims.append(Claim("min-faithful-degree-table", deg == cell, cell, deg))
    return Report("reps min-degree", {"family": g.family.value, "k": g.k}, {"degree": deg}, Cert.Exact, claims)


def cmd_reps_spectrum(a) -> Report:
    spec = grouprep.sym_degree_spectrum(a.k, a.bound)
    dims = spec.dims()
    claims = []
    if a.k >= 9 and a.bound >= a.k * (a.k - 3) // 2:
        exp = [1, a.k - 1, a.k * (a.k - 3) // 2]
        claims.append(Claim("sym-three-smallest-dims", dims[:3] == exp, exp, dims[:3]))
    if a.k == 8 and a.bound >= 14:
        claims.append(Claim("sym8-third-dim", dims[:3] == [1, 7, 14], [1, 7, 14], dims[:3]))
    return Report(
        "reps spectrum", {"k": a.k, "bound": a.bound},
        {"entries": [list(e) for e in spec.entries]}, Cert.Exact, claims,
    )


# ---------------------------------------------------------------- molien
def cmd_molien_spin(a) -> Report:
    G = spinmolien.spin_group(a.k)
    s = spinmolien.molien_series(G, a.cap)
    gens = spinmolien.generator_degrees(s)
    # |2.A_k| = k!
    claims = [Claim("spin-closure-order", G.order == math.factorial(a.k), math.factorial(a.k), G.order)]
    if a.k == 8 and a.cap >= 8:
        claims.append(Claim("spin8-molien-through-8", list(s.as_ints()[:9]) == list(acceptance.SPIN8_EXPECTED),
                            list(acceptance.SPIN8_EXPECTED), list(s.as_ints()[:9])))
        low = [list(p) for p in spinmolien.generator_degrees(s, 8)]
        claims.append(Claim("spin8-generator-degrees", low == [list(p) for p in acceptance.SPIN8_GENERATORS],
                            [list(p) for p in acceptance.SPIN8_GENERATORS], low))
    results = {
        "order": G.order,
        "dim": G.dim,
        "radicands": list(G.radicands),
        "coefficients": list(s.as_ints()),
        "generator_degrees": [list(p) for p in gens],
        "reliable_up_to": gens.reliable_up_to,
        "relation_at": gens.relation_at,
    }
    return Report("molien spin-a", {"k": a.k, "cap": a.cap}, results, Cert.Exact, claims)


def cmd_molien_oracle(a) -> Report:
    mode = {"sym-std": "standard", "sym-nat": "natural"}[a.group]
    G = spinmolien.close_group(spinmolien.symmetric_group_generators(a.k, mode))
    s = spinmolien.molien_series(G, a.cap)
    degs = range(2, a.k + 1) if mode == "standard" else range(1, a.k + 1)
    exp = spinmolien.free_series(list(degs), a.cap)
    claims = [Claim(f"{a.group}-free-invariants", list(s.as_ints()) == exp, exp, list(s.as_ints()))]
    return Report("molien oracle", {"group": a.group, "k": a.k, "cap": a.cap},
                  {"order": G.order, "coefficients": list(s.as_ints())}, Cert.Exact, claims)


# ---------------------------------------------------------------- wci
BOUND_TABLE = {"Fano": {1: 4, 2: 5, 3: 7, 4: 8, 5: 9}, "CalabiYau": {1: 4, 2: 6, 3: 7, 4: 8, 5: 10}}


def _kind(a) -> wci.Kind:
    return wci.Kind.CalabiYau if a.cy else wci.Kind.Fano


def cmd_wci_bound(a) -> Report:
    kind = _kind(a)
    c = wci.c_fano(a.dim) if kind is wci.Kind.Fano else wci.c_cy(a.dim)
    scan = wci.max_k_degree_condition(a.dim, strict=kind is wci.Kind.Fano)
    claims = [Claim("closed-form-equals-scan", c == scan, scan, c)]
    if a.dim in BOUND_TABLE[kind.value]:
        exp = BOUND_TABLE[kind.value][a.dim]
        claims.append(Claim(f"bound-table-{kind.value}", c == exp, exp, c))
    key = "c_fano" if kind is wci.Kind.Fano else "c_cy"
    return Report("wci bound", {"dim": a.dim, "kind": kind.value}, {key: c}, Cert.Exact, claims)


def cmd_wci_search(a) -> Report:
    kind = _kind(a)
    out = wci.search_max_symmetric(a.dim, kind)
    bound = wci.c_fano(a.dim) if kind is wci.Kind.Fano else wci.c_cy(a.dim)
    claims = [Claim("search-matches-bound", out.max_feasible_k == bound, bound, out.max_feasible_k)]
    if kind is wci.Kind.Fano:
        ok = all(w.shape.b == 1 and len(w.shape.extra_weights) <= 1 for w in out.witnesses)
        claims.append(Claim("ambient-shapes", ok, "P^(k-2) or P(1^(k-1),a)", sorted(out.ambient_shapes)))
    results = {
        "max_feasible_k": out.max_feasible_k,
        "ambient_shapes": sorted(out.ambient_shapes),
        "unreduced_ambients": sorted({w.shape.unreduced_ambient() for w in out.witnesses}),
        "witnesses": [
            {"b": w.shape.b, "extra_weights": list(w.shape.extra_weights), "degrees": list(w.degrees)}
            for w in out.witnesses
        ],
        "layers": [f"k={r.k} e={r.extras}: {r.status} {r.detail}".strip() for r in out.layers],
        "caps": out.caps,
        "notes": out.notes,
    }
    return Report("wci search", {"dim": a.dim, "kind": kind.value}, results, Cert.UpperBoundOnly, claims)


def cmd_wci_example(a) -> Report:
    ex = wci.maximal_example(a.dim)
    idx = wci.fano_index(ex.candidate)
    ub = wci.index_upper_bound(a.dim, ex.k)
    results = {
        "k": ex.k,
        "ambient": wci.ambient_name(ex.candidate.weights),
        "degrees": list(ex.candidate.degrees),
        "reduced_ambient": ex.shape.ambient(),
        "reduced_degrees": list(ex.reduced.degrees) if ex.reduced else [],
        "fano_index": idx,
        "index_upper_bound": ub,
    }
    claims = [Claim("example-attains-index-bound", idx == ub, ub, idx)]
    return Report("wci example", {"dim": a.dim}, results, Cert.Exact, claims)


def cmd_wci_check(a) -> Report:
    c = wci.WciCandidate(tuple(a.weights), tuple(a.degrees))
    ifr = wci.if_inequalities(c)
    cls = wci.classify(c)
    results = {
        "N": c.N, "m": c.m, "n": c.n,
        "well_formed_space": wci.well_formed_space(c.weights),
        "linear_cone_free": wci.linear_cone_free(c),
        "canonical_degree": wci.canonical_degree(c),
        "classification": cls.value,
        "fano_index": wci.fano_index(c) if cls is wci.Classification.Fano else None,
        "if_part1": ifr.part1,
        "if_part2": ifr.part2,
        "codim_bound_fano": wci.codim_bound(c, wci.Kind.Fano),
        "codim_bound_cy": wci.codim_bound(c, wci.Kind.CalabiYau),
    }
    if c.degrees.count(1):
        try:
            red = wci.reduce_linear(c)
            results["reduced"] = red.describe()
        except ValueError:
            pass
    return Report("wci check", {"weights": list(c.weights), "degrees": list(c.degrees)}, results, Cert.Exact, [])


# ---------------------------------------------------------------- fermat
def _verdict_payload(v: fermat.SmoothnessVerdict) -> dict:
    out = {
        "status": v.status.value,
        "certification": str(v.certification),
        "strata_checked": v.strata_checked,
        "strata_numeric": v.strata_numeric,
        "flags": v.flags,
    }
    if v.witness is not None:
        w = v.witness
        out["witness"] = {
            "values": [_scalar(x) for x in w.values],
            "multiplicities": list(w.multiplicities),
            "zero_multiplicity": w.zero_multiplicity,
        }
        out["max_residual"] = max(v.residuals) if v.residuals else 0.0
    return out


_EXPECTED_SMOOTH = {(N, d): s for N, d, s in fermat.SUITE_CASES}


def cmd_fermat_verdict(a) -> Report:
    ci = fermat.FermatCI(a.ambient, tuple(a.degrees))
    v = fermat.singular_point_search(ci, tol=a.tol)
    claims = []
    exp = _EXPECTED_SMOOTH.get((ci.N, ci.degrees))
    if exp is not None:
        claims.append(Claim(f"fermat-{''.join(map(str, ci.degrees))}-P{ci.N}", v.smooth == exp,
                            "smooth" if exp else "singular", "smooth" if v.smooth else "singular"))
    cert = Cert.Exact if v.certification.kind == "Exact" else Cert.Numeric
    return Report("fermat verdict", {"ambient": ci.N, "degrees": list(ci.degrees), "tol": a.tol},
                  _verdict_payload(v), cert, claims)


def cmd_fermat_suite(a) -> Report:
    rows = fermat.verdict_suite(tol=a.tol, workers=a.threads)
    results, claims, exact = {}, [], True
    for N, d, v in rows:
        key = f"P{N}-{'-'.join(map(str, d))}"
        results[key] = _verdict_payload(v)
        exp = _EXPECTED_SMOOTH[(N, d)]
        claims.append(Claim(f"fermat-{''.join(map(str, d))}-P{N}", v.smooth == exp,
                            "smooth" if exp else "singular", "smooth" if v.smooth else "singular"))
        exact &= v.certification.kind == "Exact"
    return Report("fermat suite", {"tol": a.tol}, results, Cert.Exact if exact else Cert.Numeric, claims)


# ---------------------------------------------------------------- toric
def _load_fan(path: str) -> toric.FanData:
    try:
        return toric.load_rays(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def cmd_toric_classgroup(a) -> Report:
    fan = _load_fan(a.rays)
    cg = toric.class_group(fan)
    part = toric.ray_partition(fan)
    results = {
        "free_rank": cg.free_rank,
        "torsion": list(cg.torsion),
        "group": cg.describe(),
        "blocks": [[i + 1 for i in b] for b in part.blocks],
        "classes": [list(c) for c in toric.divisor_classes(fan)],
    }
    claims = [Claim("class-group-rank", cg.free_rank == fan.d - fan.n, fan.d - fan.n, cg.free_rank)]
    return Report("toric classgroup", {"rays": os.path.basename(a.rays), "n": fan.n, "d": fan.d}, results, Cert.Exact, claims)


def cmd_toric_lemma42(a) -> Report:
    fan = _load_fan(a.rays)
    rep = toric.lemma42_check(fan)
    results = {
        "sum_ok": rep.sum_ok,
        "equality": rep.equality,
        "sizes": rep.sizes,
        "product_decomposition": rep.product_decomposition,
        "torsion_present": rep.torsion_present,
    }
    claims = [Claim("block-sum-bound", rep.sum_ok, True, rep.sum_ok)]
    if rep.equality:
        claims.append(Claim("equality-gives-product", rep.product_decomposition is not None, "product", rep.product_decomposition))
    return Report("toric lemma42", {"rays": os.path.basename(a.rays), "n": fan.n, "d": fan.d}, results, Cert.Exact, claims)


# ---------------------------------------------------------------- bounds
def cmd_bounds_jordan(a) -> Report:
    n = a.dim
    p = bounds.smallest_prime_above(n + 1)
    b = bounds.jordan_quadratic_bound(n)
    r = bounds.asymptotic_ratio_check(n)
    k0 = p * (n + 1)
    sy = bounds.sylow_structure(k0, p)
    results = {
        "p": p,
        "upper_bound": b,
        "ratio": f"{r.numerator}/{r.denominator}",
        "sylow_at_threshold": sy.describe(),
        "dusart": bounds.dusart_comparison(n) if n >= bounds.DUSART_THRESHOLD else None,
    }
    claims = [Claim("sylow-trigger", bounds.trigger_holds(n, k0), True, bounds.trigger_holds(n, k0))]
    return Report("bounds jordan", {"dim": n}, results, Cert.UpperBoundOnly, claims)


def cmd_bounds_sylow(a) -> Report:
    s = bounds.sylow_structure(a.k, a.p)
    leg = bounds.legendre(a.k, a.p)
    results = {
        "factors": [list(f) for f in s.factors],
        "nonabelian": [i for i, flag in s.nonabelian().items() if flag],
        "valuation": s.valuation(),
        "describe": s.describe(),
    }
    claims = [Claim("legendre", s.valuation() == leg, leg, s.valuation())]
    return Report("bounds sylow", {"k": a.k, "p": a.p}, results, Cert.Exact, claims)


# ---------------------------------------------------------------- suite
def cmd_suite_acceptance(a) -> Report:
    only = set(a.only) if a.only else None
    res = acceptance.run_acceptance(only)
    for r in res:
        print(r.line(), file=sys.stderr)
    results = {f"criterion{r.number}": {"title": r.title, "passed": r.passed, "detail": r.detail} for r in res}
    claims = [Claim(f"criterion-{r.number}", r.passed, True, r.passed) for r in res]
    return Report("suite acceptance", {"only": sorted(only) if only else "all"}, results, Cert.Exact, claims)


# ---------------------------------------------------------------- parser
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fanosym", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit JSON instead of key-sorted text")
    areas = p.add_subparsers(dest="area", required=True, parser_class=_Parser)

    def action(area, name, fn, help_):
        sp = area.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return sp

    reps = areas.add_parser("reps").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = action(reps, "min-degree", cmd_reps_min_degree, "minimal faithful degree")
    s.add_argument("--family", required=True, choices=[f.value for f in grouprep.Family])
    s.add_argument("--k", type=int, required=True)
    s = action(reps, "spectrum", cmd_reps_spectrum, "irreducible degrees of S_k up to a bound")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--bound", type=int, required=True)

    mol = areas.add_parser("molien").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = action(mol, "spin-a", cmd_molien_spin, "Molien series of the basic spin representation of 2.A_k")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s = action(mol, "oracle", cmd_molien_oracle, "Molien series of a symmetric group with known invariants")
    s.add_argument("--group", choices=["sym-std", "sym-nat"], default="sym-std")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)

    w = areas.add_parser("wci").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn, h in (("bound", cmd_wci_bound, "closed-form bound on k"),
                        ("search", cmd_wci_search, "search shapes for the largest k")):
        s = action(w, name, fn, h)
        s.add_argument("--dim", type=int, required=True)
        s.add_argument("--cy", action="store_true", help="Calabi-Yau instead of Fano")
    s = action(w, "example", cmd_wci_example, "Fermat example attaining the bound")
    s.add_argument("--dim", type=int, required=True)
    s = action(w, "check", cmd_wci_check, "invariants of a weighted complete intersection")
    s.add_argument("--weights", type=_int_list, required=True)
    s.add_argument("--degrees", type=_int_list, required=True)

    f = areas.add_parser("fermat").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = action(f, "verdict", cmd_fermat_verdict, "smoothness verdict for one Fermat intersection")
    s.add_argument("--ambient", type=int, required=True)
    s.add_argument("--degrees", type=_int_list, required=True)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s = action(f, "suite", cmd_fermat_suite, "verdicts for the named cases")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)

    t = areas.add_parser("toric").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn, h in (("classgroup", cmd_toric_classgroup, "class group and ray blocks"),
                        ("lemma42", cmd_toric_lemma42, "block-size bound and product detection")):
        s = action(t, name, fn, h)
        s.add_argument("--rays", required=True, help="ray file: 'n d', d rays, then cones (1-based)")

    b = areas.add_parser("bounds").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = action(b, "jordan", cmd_bounds_jordan, "quadratic upper bound on k")
    s.add_argument("--dim", type=int, required=True)
    s = action(b, "sylow", cmd_bounds_sylow, "Sylow p-subgroup shape of S_k")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p", type=int, required=True)

    su = areas.add_parser("suite").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = action(su, "acceptance", cmd_suite_acceptance, "run the acceptance battery")
    s.add_argument("--only", type=_int_list, default=None, help="comma-separated criterion numbers")
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.threads = threads_from_env()
    except UsageError as e:
        print(f"fanosym: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        rep = args.func(args)
    except UsageError as e:
        print(f"fanosym: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (wci.BudgetError, fermat.IndeterminateRank, spinmolien.ExplosionError) as e:
        print(f"fanosym: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, toric.FanError) as e:
        print(f"fanosym: invalid input: {e}", file=sys.stderr)
        return EXIT_USAGE
    rep.inputs.setdefault("defaults", {"cap": DEFAULT_CAP, "tol": DEFAULT_TOL})
    payload = rep.to_dict()
    out.write(dumps_json(payload) if args.json else dumps_text(payload))
    return EXIT_CLAIM if rep.failed else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
