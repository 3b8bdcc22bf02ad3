"""Command line interface.

Commands
--------
check     decide invariance of a stratum ideal (or print the conditions)
restrict  project the weighted root lines onto a stratum and render the
          induced radial and potential operators
verify    run a verification suite: commutativity | gauge | restriction |
          deformed | catalog
catalog   recompute the full classification table
solve     solve the invariance conditions for the multiplicities

Everything is exact; JSON output is deterministic (sorted keys).  Exit
codes: 0 success or invariant, 1 definitive negative, 2 usage error,
3 infeasible or orbit cap exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .fields import render_scalar
from .polynomials import parse_polynomial, render_polynomial
from .rootsystems import (
    ORBIT_CAP_ENV,
    Multiplicities,
    OrbitCapExceeded,
    Stratum,
    Subspace,
    block_stratum,
    classify_indices,
    enumerate_parabolic_strata,
    parabolic_stratum,
    parabolic_subspace,
    root_system,
    subgraph_type_name,
)
from .dunkl import DeformedContext, DunklContext
from .invariance import (
    condition_equations,
    criterion_invariant,
    direct_invariance_violations,
    solve_multiplicities,
)
from .restriction import (
    catalog_compare,
    catalog_row_result,
    conservation_defect,
    deformed_restriction_constant,
    gauge_defects,
    restricted_configuration,
    restriction_defects,
    _load_catalog_rows,
)
from .complexgroups import (
    ComplexDunklContext,
    collision_subspace,
    direct_ideal_violations,
    ideal_conditions,
    ideal_conditions_hold,
    parse_group_name,
)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# subgraph spec grammar
#
#   ""                     the whole space (identity restriction)
#   "verts:1,3,4"          explicit 1-based simple root indices
#   "A2", "A1^3", "A1*A2", "A1A1", "D4", "I2(5)" ...
#                          parabolic type; first matching subset of simple
#                          roots in (size, lex) order
#   "A1^3:2"               second orbit class of that type, discovery order
#   "A1^2:k=2,m=2"         family A block stratum: m blocks of k coordinates
#   "Bl:l=2"               family B: l zero coordinates (blocks via k=,m=)
#   "Dp:p=3"               family D: p zero coordinates
#   "D2^2:k=2,m=2,eps=-1"  family D sign-twisted last block


_ATOM_RE = re.compile(r"(I2\(\d+\)|[A-Z]\d+)(?:\^(\d+))?")


def _parse_type_expr(text: str) -> dict[str, int]:
    counts: dict[str, int] = {}
    pos = 0
    while pos < len(text):
        if text[pos] in "* ":
            pos += 1
            continue
        match = _ATOM_RE.match(text, pos)
        if not match:
            raise UsageError(f"cannot parse subgraph type {text!r} at {text[pos:]!r}")
        name = match.group(1)
        counts[name] = counts.get(name, 0) + int(match.group(2) or 1)
        pos = match.end()
    if not counts:
        raise UsageError(f"empty subgraph type in {text!r}")
    return counts


def _canonical_type(counts: dict[str, int]) -> str:
    return "*".join(
        name if counts[name] == 1 else f"{name}^{counts[name]}"
        for name in sorted(counts)
    )


def _atom_rank(name: str) -> int:
    if name.startswith("I2"):
        return 2
    return int(name[1:])


def _parse_opts(text: str) -> dict:
    opts: dict = {}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "=" in token:
            key, _, val = token.partition("=")
            opts[key.strip()] = int(val)
        else:
            opts["variant"] = int(token)
    return opts


def resolve_subgraph(rs, text: str) -> Stratum:
    text = (text or "").strip()
    if not text:
        return Stratum(rs, Subspace(rs.field, rs.dim, []), gamma0=(), label="")
    if text.startswith("verts:"):
        verts = [int(t) for t in text[len("verts:"):].split(",") if t.strip()]
        if not verts or min(verts) < 1 or max(verts) > rs.rank:
            raise UsageError(f"vertex list out of range 1..{rs.rank}: {text!r}")
        return parabolic_stratum(rs, [v - 1 for v in verts])
    head, _, opts_text = text.partition(":")
    head = head.strip()
    opts = _parse_opts(opts_text)
    structural = {"k", "m", "l", "p", "eps"} & set(opts)
    if head in ("Bl", "Dp") or structural:
        m = opts.get("m", 0)
        k = opts.get("k", 1)
        l = opts.get("l", opts.get("p", 0))
        eps = opts.get("eps", 1)
        if head == "Bl" and rs.family != "B":
            raise UsageError("Bl strata live in family B")
        if head == "Dp" and rs.family != "D":
            raise UsageError("Dp strata live in family D")
        if (head in ("Bl", "Dp")) and not l:
            raise UsageError(f"{head} needs l= (or p=) zero coordinates")
        return block_stratum(rs, m, k, l=l, eps=eps)
    counts = _parse_type_expr(head)
    canonical = _canonical_type(counts)
    size = sum(_atom_rank(name) * n for name, n in counts.items())
    if size > rs.rank:
        raise UsageError(f"type {canonical} needs {size} vertices; rank is {rs.rank}")
    variant = opts.get("variant", 1)
    reps: list[Stratum] = []
    for indices in itertools.combinations(range(rs.rank), size):
        try:
            comps = classify_indices(rs, indices)
        except ValueError:
            continue
        if subgraph_type_name(comps) != canonical:
            continue
        if variant == 1:
            return parabolic_stratum(rs, indices)
        sub = parabolic_subspace(rs, indices)
        if any(sub.key in rep.orbit() for rep in reps):
            continue
        st = Stratum(rs, sub, gamma0=tuple(indices), label=canonical)
        reps.append(st)
        if len(reps) == variant:
            st.label = f"{canonical}:{variant}"
            return st
    if reps or variant > 1:
        raise UsageError(
            f"type {canonical} has only {len(reps)} orbit classes; asked for {variant}"
        )
    raise UsageError(f"no parabolic subgraph of type {canonical} in {_system_name(rs)}")


# ---------------------------------------------------------------------------
# shared plumbing


def _collect_mult_values(args) -> dict[str, Fraction]:
    vals: dict[str, Fraction] = {}
    for name in ("c", "c1", "c2", "c0"):
        got = getattr(args, name, None)
        if got is not None:
            vals[name] = Fraction(got)
    if getattr(args, "c0_odd", None) is not None:
        vals["c0_odd"] = Fraction(args.c0_odd)
    for item in getattr(args, "mult", None) or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--mult expects name=value, got {item!r}")
        vals[name.strip()] = Fraction(val)
    return vals


def _numeric_mults(rs, vals: dict[str, Fraction]) -> Multiplicities:
    try:
        return Multiplicities.numeric(rs, vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _instantiate_solution(st, solved, offset: int = 0) -> Multiplicities:
    """A numeric point on the solved invariance locus (free params sampled)."""
    rs = st.rs
    field = rs.field
    names = rs.orbit_names
    sample = {
        name: field.element(Fraction(2 * (i + offset) + 1, 2 * (i + offset) + 5))
        for i, name in enumerate(solved.get("free", []))
    }
    vals: dict = dict(sample)
    point = tuple(sample.get(n, field.zero()) for n in names)
    for name, text in solved.get("values", {}).items():
        poly = parse_polynomial(field, len(names), text, names=names)
        vals[name] = poly.evaluate(point)
    return Multiplicities.numeric(rs, vals)


def _add_floats(obj):
    if isinstance(obj, dict):
        out = {}
        for key, val in obj.items():
            out[key] = _add_floats(val)
            if isinstance(val, str):
                approx = _approx(val)
                if approx is not None:
                    out[f"{key}~float"] = approx
        return out
    if isinstance(obj, list):
        return [_add_floats(v) for v in obj]
    return obj


def _approx(text: str):
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return None


def _emit(args, payload: dict, pretty_lines=None) -> None:
    if getattr(args, "float", False):
        payload = _add_floats(payload)
    if getattr(args, "pretty", False) and pretty_lines is not None:
        text = "\n".join(pretty_lines)
    else:
        text = json.dumps(payload, sort_keys=True, indent=2)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _system_name(rs) -> str:
    return f"{rs.family}{rs.rank}" if rs.family[-1].isalpha() else rs.family


def _stratum_summary(st) -> dict:
    data = {"family": st.rs.family, "rank": st.rs.rank, "label": st.label}
    if st.gamma0 is not None:
        data["gamma0"] = [i + 1 for i in st.gamma0]
    return data


def _random_sample(rng, names) -> dict[str, Fraction]:
    return {name: Fraction(rng.randint(1, 9), rng.randint(2, 9)) for name in names}


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    if args.group:
        return _check_complex(args)
    if not args.family:
        raise UsageError("check needs --family or --group")
    rs = root_system(args.family, args.rank)
    st = resolve_subgraph(rs, args.subgraph)
    payload = {"command": "check", "stratum": _stratum_summary(st)}
    payload["equations"] = condition_equations(st)
    vals = _collect_mult_values(args)
    if args.symbolic or not vals:
        if not args.symbolic:
            raise UsageError("provide multiplicity values, or --symbolic for the conditions")
        solved = solve_multiplicities(st)
        payload.update(solved)
        _emit(args, payload, _pretty_solve(payload))
        return 0 if solved["status"] != "inconsistent" else 1
    mults = _numeric_mults(rs, vals)
    invariant = criterion_invariant(st, mults)
    payload["multiplicities"] = {k: str(v) for k, v in sorted(vals.items())}
    payload["invariant"] = invariant
    if args.direct:
        viol = direct_invariance_violations(st, mults, seed=args.seed)
        payload["direct_invariant"] = not viol
        payload["routes_agree"] = (not viol) == invariant
    lines = [
        f"{_system_name(st.rs)} [{st.label or 'whole space'}]",
        "conditions: " + "; ".join(payload["equations"] or ["none"]),
        f"invariant: {invariant}",
    ]
    _emit(args, payload, lines)
    return 0 if invariant else 1


def _parse_blocks(text: str | None) -> tuple[int, int]:
    if not text:
        return 0, 1
    parts = [p for p in re.split(r"[,x]", text) if p.strip()]
    if len(parts) == 1:
        return 1, int(parts[0])
    if len(parts) == 2:
        return int(parts[0]), int(parts[1])
    raise UsageError(f"--blocks expects 'r' or 'q,r', got {text!r}")


def _check_complex(args) -> int:
    group = parse_group_name(args.group)
    q, r = _parse_blocks(args.blocks)
    l = args.zeros or 0
    eps = args.eps or 0
    sub = collision_subspace(group, q, r, l=l, eps=eps)
    payload = {
        "command": "check",
        "group": repr(group),
        "blocks": {"q": q, "r": r, "eps": eps},
        "zeros": l,
        "equations": ideal_conditions(group, q, r, l, eps),
    }
    vals = _collect_mult_values(args)
    if args.symbolic or not vals:
        if not args.symbolic:
            raise UsageError("provide weights (--c0 ...), or --symbolic for the conditions")
        solvable = "0 = 1" not in payload["equations"]
        payload["status"] = "solvable" if solvable else "inconsistent"
        _emit(args, payload, _pretty_solve(payload))
        return 0 if solvable else 1
    if "c0" not in vals:
        raise UsageError("complex groups need --c0")
    invariant = ideal_conditions_hold(group, vals, q, r, l, eps)
    payload["weights"] = {k: str(v) for k, v in sorted(vals.items())}
    payload["invariant"] = invariant
    if args.direct:
        cdiag = tuple(vals.get(f"c{t}", Fraction(0)) for t in range(1, group.diag_order))
        ctx = ComplexDunklContext(
            group, vals["c0"], c0_odd=vals.get("c0_odd"), cdiag=cdiag
        )
        viol = direct_ideal_violations(ctx, sub, seed=args.seed)
        payload["direct_invariant"] = not viol
        payload["routes_agree"] = (not viol) == invariant
    lines = [
        f"{group!r} blocks q={q} r={r} eps={eps} zeros={l}",
        "conditions: " + "; ".join(payload["equations"] or ["none"]),
        f"invariant: {invariant}",
    ]
    _emit(args, payload, lines)
    return 0 if invariant else 1


def cmd_restrict(args) -> int:
    rs = root_system(args.family, args.rank)
    st = resolve_subgraph(rs, args.subgraph)
    payload = {"command": "restrict", "stratum": _stratum_summary(st)}
    vals = _collect_mult_values(args)
    if vals:
        mults = _numeric_mults(rs, vals)
        invariant = criterion_invariant(st, mults)
        payload["invariant"] = invariant
        payload["multiplicities"] = {k: str(v) for k, v in sorted(vals.items())}
        if not invariant and not args.force:
            payload["error"] = "ideal is not invariant at these multiplicities; use --force"
            _emit(args, payload)
            return 1
    else:
        solved = solve_multiplicities(st)
        payload["status"] = solved["status"]
        payload["equations"] = solved["equations"]
        if solved["status"] == "unique":
            point = {
                name: Fraction(text) for name, text in solved["values"].items()
            }
            mults = Multiplicities.numeric(rs, point)
            payload["multiplicities"] = {k: str(v) for k, v in sorted(point.items())}
        elif solved["status"] == "inconsistent" and not args.force:
            payload["error"] = "no multiplicities make this ideal invariant; use --force for symbolic data"
            _emit(args, payload)
            return 1
        else:
            payload["values"] = solved.get("values", {})
            payload["free"] = solved.get("free", [])
            mults = Multiplicities.symbolic(rs)
    config = restricted_configuration(st, mults)
    payload["configuration"] = config.to_json()
    payload["conservation_defect"] = render_polynomial(
        conservation_defect(st, mults), names=mults.params or None
    )
    payload["radial_operator"] = config.radial_text()
    payload["potential_operator"] = config.potential_text()
    lines = [
        f"{_system_name(rs)} [{st.label or 'whole space'}]: "
        f"{config.size} lines in dim {config.span_dim()}",
    ]
    for vec_text, mult_text in zip(
        payload["configuration"]["vectors"], payload["configuration"]["multiplicities"]
    ):
        lines.append(f"  ({', '.join(vec_text)})  mult {mult_text}")
    lines.append("radial: " + payload["radial_operator"])
    lines.append("potential: " + payload["potential_operator"])
    _emit(args, payload, lines)
    return 0


def _pretty_solve(payload: dict) -> list[str]:
    lines = list(payload.get("equations", []))
    if "status" in payload:
        lines.append(f"status: {payload['status']}")
    for name, text in sorted(payload.get("values", {}).items()):
        lines.append(f"{name} = {text}")
    if payload.get("free"):
        lines.append("free: " + ", ".join(payload["free"]))
    return lines


def cmd_solve(args) -> int:
    if args.group:
        group = parse_group_name(args.group)
        q, r = _parse_blocks(args.blocks)
        l = args.zeros or 0
        eps = args.eps or 0
        eqs = ideal_conditions(group, q, r, l, eps)
        payload = {
            "command": "solve",
            "group": repr(group),
            "equations": eqs,
            "status": "inconsistent" if "0 = 1" in eqs else ("unconstrained" if not eqs else "see equations"),
        }
        _emit(args, payload, _pretty_solve(payload))
        return 1 if payload["status"] == "inconsistent" else 0
    if not args.family:
        raise UsageError("solve needs --family or --group")
    rs = root_system(args.family, args.rank)
    st = resolve_subgraph(rs, args.subgraph)
    solved = solve_multiplicities(st)
    payload = {"command": "solve", "stratum": _stratum_summary(st)}
    payload.update(solved)
    _emit(args, payload, _pretty_solve(payload))
    return 0 if solved["status"] != "inconsistent" else 1


def cmd_catalog(args) -> int:
    rows = _load_catalog_rows(args.golden)
    jobs = max(1, args.jobs)

    def compute(row):
        got = catalog_row_result(row)
        return {
            "index": row["index"],
            "family": got["family"],
            "type": got["type"],
            "gamma0": got["gamma0"],
            "dim": got["dim"],
            "size": got["size"],
            "c": got["c"],
            "mults": got["mults"],
        }

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(compute, rows))
    else:
        results = [compute(row) for row in rows]
    payload = {"command": "catalog", "rows": results}
    lines = [
        f"{'idx':>3} {'family':6} {'type':14} {'dim':>3} {'lines':>5} {'c':>6}  multiplicities"
    ]
    for row in results:
        mults = ", ".join(f"{k}:{v}" for k, v in sorted(row["mults"].items()))
        lines.append(
            f"{row['index']:>3} {row['family']:6} {row['type']:14} "
            f"{row['dim']:>3} {row['size']:>5} {row['c']:>6}  {mults}"
        )
    _emit(args, payload, lines)
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _verify_commutativity(args) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    report = {"suite": "commutativity", "samples": [], "violations": 0}
    if args.group:
        group = parse_group_name(args.group)
        report["group"] = repr(group)
        for _ in range(args.samples):
            vals = _random_sample(rng, group.param_names())
            ctx = ComplexDunklContext(
                group,
                vals["c0"],
                c0_odd=vals.get("c0_odd"),
                cdiag=tuple(vals[f"c{t}"] for t in range(1, group.diag_order)),
            )
            bad = ctx.commutativity_violations(args.degree)
            report["samples"].append(
                {"values": {k: str(v) for k, v in sorted(vals.items())}, "violations": len(bad)}
            )
            report["violations"] += len(bad)
    else:
        rs = root_system(args.family, args.rank)
        report["family"] = _system_name(rs)
        vals_list = []
        got = _collect_mult_values(args)
        if got:
            vals_list.append(got)
        else:
            vals_list = [_random_sample(rng, rs.orbit_names) for _ in range(args.samples)]
        for vals in vals_list:
            mults = _numeric_mults(rs, vals)
            ctx = DunklContext(rs, mults)
            bad = ctx.commutativity_violations(args.degree)
            report["samples"].append(
                {"values": {k: str(v) for k, v in sorted(vals.items())}, "violations": len(bad)}
            )
            report["violations"] += len(bad)
    return report, 0 if report["violations"] == 0 else 1


def _verify_gauge(args) -> tuple[dict, int]:
    rs = root_system(args.family, args.rank)
    if args.subgraph:
        strata = [resolve_subgraph(rs, args.subgraph)]
    else:
        strata = enumerate_parabolic_strata(rs)
    rows = []
    failures = 0
    for offset, st in enumerate(strata):
        solved = solve_multiplicities(st)
        row = {"label": st.label, "status": solved["status"]}
        if solved["status"] == "inconsistent":
            row["skipped"] = "no invariant multiplicities"
        else:
            mults = _instantiate_solution(st, solved, offset)
            if not criterion_invariant(st, mults):
                raise RuntimeError(f"sampled point is off the invariance locus for {st.label}")
            bad = gauge_defects(st, mults)
            row["multiplicities"] = {
                name: render_scalar(mults.scalar(name)) for name in rs.orbit_names
            }
            row["defects"] = len(bad)
            failures += len(bad)
        rows.append(row)
    report = {
        "suite": "gauge",
        "family": _system_name(rs),
        "strata": rows,
        "violations": failures,
    }
    return report, 0 if failures == 0 else 1


def _verify_restriction(args) -> tuple[dict, int]:
    rs = root_system(args.family, args.rank)
    st = resolve_subgraph(rs, args.subgraph or "")
    vals = _collect_mult_values(args)
    if vals:
        mults = _numeric_mults(rs, vals)
    else:
        solved = solve_multiplicities(st)
        if solved["status"] == "inconsistent":
            report = {"suite": "restriction", "error": "no invariant multiplicities"}
            return report, 3
        mults = _instantiate_solution(st, solved)
    degrees = tuple(range(2, args.degree + 1, 2))
    bad = restriction_defects(st, mults, degrees=degrees)
    report = {
        "suite": "restriction",
        "family": _system_name(rs),
        "label": st.label,
        "degrees": list(degrees),
        "failing_degrees": list(bad),
        "multiplicities": {name: render_scalar(mults.scalar(name)) for name in rs.orbit_names},
    }
    return report, 0 if not bad else 1


def _verify_deformed(args) -> tuple[dict, int]:
    rs = root_system(args.family, args.rank)
    rng = random.Random(args.seed)
    vals = _collect_mult_values(args) or _random_sample(rng, rs.orbit_names)
    mults = _numeric_mults(rs, vals)
    ctx = DeformedContext(rs, mults)
    bad = ctx.integrability_violations(args.k, args.l, args.degree)
    report = {
        "suite": "deformed",
        "family": _system_name(rs),
        "powers": [args.k, args.l],
        "degree": args.degree,
        "multiplicities": {k: str(v) for k, v in sorted(vals.items())},
        "violations": len(bad),
    }
    code = 0 if not bad else 1
    if args.subgraph:
        st = resolve_subgraph(rs, args.subgraph)
        degrees = tuple(range(2, args.degree + 1, 2)) or (2,)
        defects = restriction_defects(st, mults, degrees=degrees, deformed=True)
        report["restriction_label"] = st.label
        report["restriction_failing_degrees"] = list(defects)
        report["restriction_constant"] = render_scalar(
            deformed_restriction_constant(st, mults)
        )
        if defects:
            code = 1
    return report, code


def _verify_catalog(args) -> tuple[dict, int]:
    jobs = max(1, args.jobs)
    rows = _load_catalog_rows(args.golden)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            def one(row):
                return catalog_compare_row(row)
            results = list(pool.map(one, rows))
    else:
        results = [catalog_compare_row(row) for row in rows]
    matched = sum(1 for r in results if r["dim_match"] and r["mults_match"])
    size_diffs = [
        {
            "index": r["index"],
            "family": r["family"],
            "type": r["type"],
            "expected_size": r["expected"]["size"],
            "computed_size": r["computed"]["size"],
        }
        for r in results
        if not r["size_match"]
    ]
    report = {
        "suite": "catalog",
        "rows": results,
        "matched": matched,
        "total": len(results),
        "size_diffs": size_diffs,
    }
    return report, 0 if matched == len(results) else 1


def catalog_compare_row(row: dict) -> dict:
    got = catalog_row_result(row)
    return {
        "index": row["index"],
        "family": row["family"],
        "type": row["type"],
        "dim_match": got["dim"] == row["dim"],
        "mults_match": got["mults"] == row["mults"],
        "size_match": got["size"] == row["size"],
        "expected": {"dim": row["dim"], "size": row["size"], "mults": row["mults"]},
        "computed": {"dim": got["dim"], "size": got["size"], "mults": got["mults"]},
        "c": got["c"],
    }


def cmd_verify(args) -> int:
    suites = {
        "commutativity": _verify_commutativity,
        "gauge": _verify_gauge,
        "restriction": _verify_restriction,
        "deformed": _verify_deformed,
        "catalog": _verify_catalog,
    }
    report, code = suites[args.suite](args)
    lines = [f"suite {args.suite}: {'pass' if code == 0 else 'FAIL'}"]
    if args.suite == "catalog":
        lines.append(f"{report['matched']}/{report['total']} rows match")
        for diff in report["size_diffs"]:
            lines.append(
                f"  size diff row {diff['index']} ({diff['family']} {diff['type']}): "
                f"expected {diff['expected_size']}, computed {diff['computed_size']}"
            )
    elif args.suite == "gauge":
        for row in report["strata"]:
            note = row.get("skipped") or f"defects={row.get('defects', 0)}"
            lines.append(f"  {row['label'] or '(whole space)'}: {note}")
    _emit(args, report, lines)
    return code


# ---------------------------------------------------------------------------
# parser


def _add_common(sub):
    sub.add_argument("--out", help="write output to this file instead of stdout")
    sub.add_argument("--pretty", action="store_true", help="human readable output")
    sub.add_argument("--float", action="store_true", help="add approximate decimals, clearly marked")
    sub.add_argument("--seed", type=int, default=0, help="seed for randomized witnesses/samples")
    sub.add_argument("--orbit-cap", type=int, default=None, help=f"orbit size cap (else ${ORBIT_CAP_ENV} or 10^6)")
    sub.add_argument("--jobs", type=int, default=1, help="worker threads for independent rows")


def _add_family(sub):
    sub.add_argument("--family", help="A, B, D, E, F4, G2, H3, H4 or I2(m)")
    sub.add_argument("--rank", type=int, default=None)
    sub.add_argument("--subgraph", default="", help="subgraph spec, see README")


def _add_mults(sub):
    sub.add_argument("--c", help="multiplicity for a single orbit")
    sub.add_argument("--c1", help="first orbit multiplicity")
    sub.add_argument("--c2", help="second orbit multiplicity")
    sub.add_argument("--mult", action="append", help="name=value, repeatable")


def _add_group(sub):
    sub.add_argument("--group", help="complex group, e.g. G(4,2,3)")
    sub.add_argument("--blocks", help="collision blocks 'q,r' (or just 'r')")
    sub.add_argument("--zeros", type=int, default=0, help="trailing zero coordinates")
    sub.add_argument("--eps", type=int, default=0, help="root-of-unity twist power on the last block")
    sub.add_argument("--c0", help="reflection weight")
    sub.add_argument("--c0-odd", dest="c0_odd", help="odd-twist reflection weight (N=2, even p)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunklcm",
        description="Exact invariance and restriction of Dunkl operators on reflection arrangements.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="decide invariance of a stratum ideal")
    _add_family(p)
    _add_group(p)
    _add_mults(p)
    p.add_argument("--symbolic", action="store_true", help="print the invariance conditions instead")
    p.add_argument("--direct", action="store_true", help="cross-check with the direct ideal test")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("restrict", help="project the weighted lines onto a stratum")
    _add_family(p)
    _add_mults(p)
    p.add_argument("--force", action="store_true", help="restrict even when not invariant")
    _add_common(p)
    p.set_defaults(func=cmd_restrict)

    p = subs.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["commutativity", "gauge", "restriction", "deformed", "catalog"])
    _add_family(p)
    _add_group(p)
    _add_mults(p)
    p.add_argument("--degree", type=int, default=4, help="max monomial degree for operator identities")
    p.add_argument("--samples", type=int, default=3, help="random multiplicity samples")
    p.add_argument("--k", type=int, default=1, help="first conserved-power exponent")
    p.add_argument("--l", type=int, default=2, help="second conserved-power exponent")
    p.add_argument("--omega", default="1", help="confinement coupling (identities hold for all values)")
    p.add_argument("--golden", default=None, help="alternate golden catalog JSON")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("catalog", help="recompute the classification table")
    p.add_argument("--golden", default=None, help="alternate row definitions JSON")
    _add_common(p)
    p.set_defaults(func=cmd_catalog)

    p = subs.add_parser("solve", help="solve the invariance conditions")
    _add_family(p)
    _add_group(p)
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "orbit_cap", None):
        os.environ[ORBIT_CAP_ENV] = str(args.orbit_cap)
    try:
        return args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2
    except OrbitCapExceeded as exc:
        print(json.dumps({"error": str(exc), "capped": True}, sort_keys=True), file=sys.stderr)
        return 3
    except ValueError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
