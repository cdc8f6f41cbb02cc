"""Command-line interface: every operation behind exact JSON input/output.

Exit codes: 0 verified/found, 1 not-verified/none, 2 computation error
(with a structured error JSON on stdout), 64 usage error.  All integers
and rationals in the JSON are serialized as strings, and output bytes are
identical across runs for identical jobs.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

from .algdep import (
    find_relation,
    find_relation_boettcher,
    implicitize,
    is_generically_one_to_one,
    verify_invariant_curve,
)
from .dynsys import (
    common_iterate_search,
    independence_check,
    transport_boettcher_check,
    verify_commute,
    verify_semiconjugacy,
    verify_theorem_conditions,
)
from .errors import DynalgError, MissingFixture
from .orbifold import (
    Orbifold,
    check_generalized_lattes,
    detect_generalized_lattes,
    is_covering_map,
    is_holomorphic_map,
    is_minimal_holomorphic,
)
from .parsing import parse_point, parse_ratfunc
from .ratfunc import fixed_points, local_degree
from .scalars import field_by_name, parse_scalar
from .series import (
    TruncatedPowerSeries,
    boettcher_series,
    poincare_series,
    series_substitute_power,
    transport_poincare,
)

DEFAULT_ORDER = 40


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def build_parser() -> _Parser:
    top = _Parser(prog="dynalg", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--field", default="Q", choices=["Q", "Qi"])
        p.add_argument("--output", help="write the JSON result to this path")
        return p

    p = add("parse", help="parse a map and print its canonical form")
    p.add_argument("--expr", required=True)
    p.add_argument("--local-degree-at", dest="local_degree_at")

    p = add("fixpoints", help="fixed points with exact multipliers")
    p.add_argument("--map", required=True)

    p = add("poincare", help="linearizing series at a repelling fixed point")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--substitute-power", dest="substitute_power", type=int)
    p.add_argument("--transport")

    p = add("boettcher", help="Boettcher series of a polynomial")
    p.add_argument("--map", required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--leading")

    p = add("algdep", help="algebraic dependency detection between two series")
    p.add_argument("--map1")
    p.add_argument("--point1")
    p.add_argument("--d1", type=int, default=1)
    p.add_argument("--map2")
    p.add_argument("--point2")
    p.add_argument("--d2", type=int, default=1)
    p.add_argument("--s1-file", dest="s1_file")
    p.add_argument("--s2-file", dest="s2_file")
    p.add_argument("--bidegree", nargs=2, type=int, required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--scales")
    p.add_argument("--boettcher", action="store_true")

    p = add("implicitize", help="curve equation from a rational parametrization")
    p.add_argument("--x1", required=True)
    p.add_argument("--x2", required=True)
    p.add_argument("--a1")
    p.add_argument("--a2")

    p = add("one-to-one", help="fiber degree of a parametrization")
    p.add_argument("--x1", required=True)
    p.add_argument("--x2", required=True)

    p = add("semiconj", help="verify A o X = X o B")
    p.add_argument("--a", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--b", required=True)
    p.add_argument(
        "--transport-boettcher", dest="transport_boettcher", type=int
    )

    p = add("commute", help="verify A o B = B o A")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = add("common-iterate", help="search for A^l1 = B^l2 within a degree cap")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--budget", type=int, default=4096)

    p = add("independence", help="degree/multiplier independence criterion")
    p.add_argument("--a1", required=True)
    p.add_argument("--z1", required=True)
    p.add_argument("--a2", required=True)
    p.add_argument("--z2", required=True)
    p.add_argument("--bound", type=int, default=12)

    p = add("theorem-check", help="dependency-existence condition bundle")
    p.add_argument("--x1", required=True)
    p.add_argument("--x2", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--a1", required=True)
    p.add_argument("--a2", required=True)
    p.add_argument("--z0", required=True)
    p.add_argument("--l1", type=int, required=True)
    p.add_argument("--l2", type=int, required=True)
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("orbifold-euler", help="orbifold Euler characteristic")
    p.add_argument("--support", required=True)

    p = add("orbifold-check", help="covering / holomorphic / minimal map checks")
    p.add_argument("--map", required=True)
    p.add_argument(
        "--kind",
        required=True,
        choices=["covering", "holomorphic", "minimal", "self-lattes"],
    )
    p.add_argument("--o1")
    p.add_argument("--o2")
    p.add_argument("--support")

    p = add("lattes-detect", help="bounded generalized-Lattes orbifold search")
    p.add_argument("--map", required=True)
    p.add_argument("--nu-max", dest="nu_max", type=int, default=4)
    p.add_argument("--support-budget", dest="support_budget", type=int, default=8)

    p = add("verify-paper", help="run the bundled fixture suite")
    p.add_argument("--fixtures")
    p.add_argument("--jobs", type=int, default=1)
    return top


def _parse_support(text: str, field) -> Orbifold:
    items = []
    if text.strip():
        for chunk in text.split(","):
            point_text, _, nu_text = chunk.rpartition(":")
            if not point_text:
                raise _UsageError(f"bad support entry {chunk!r}; use point:nu")
            items.append((parse_point(point_text, field), int(nu_text)))
    return Orbifold(items)


def _load_series(path: str, field) -> TruncatedPowerSeries:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    coeffs = [parse_scalar(c, field) for c in data["coefficients"]]
    return TruncatedPowerSeries(coeffs, parse_point(data["base_point"], field))


def _poincare_input(map_text, point_text, d, order, field):
    """Series for P(z^d) with enough terms for detection order + margin."""
    A = parse_ratfunc(map_text, field)
    z0 = parse_point(point_text, field)
    base_order = -(-(order + 10) // d)
    P = poincare_series(A, z0, base_order)
    return series_substitute_power(P, d)


# -- handlers: each returns (json-ready object, ok flag) ---------------------


def _cmd_parse(args):
    field = field_by_name(args.field)
    R = parse_ratfunc(args.expr, field)
    out = {
        "canonical": str(R),
        "degree": str(R.degree()),
        "numerator": str(R.num),
        "denominator": str(R.den),
    }
    if args.local_degree_at is not None:
        out["local_degree"] = str(
            local_degree(R, parse_point(args.local_degree_at, field))
        )
    return out, True


def _cmd_fixpoints(args):
    field = field_by_name(args.field)
    scan = fixed_points(parse_ratfunc(args.map, field), field)
    return {
        "fixed_points": [r.to_json() for r in scan.records],
        "unresolved": [str(p) for p in scan.unresolved],
    }, True


def _cmd_poincare(args):
    field = field_by_name(args.field)
    A = parse_ratfunc(args.map, field)
    z0 = parse_point(args.point, field)
    P = poincare_series(A, z0, args.order)
    out = {"series": P.to_json()}
    if args.substitute_power:
        out["substituted"] = series_substitute_power(
            P, args.substitute_power
        ).to_json()
    if args.transport:
        X = parse_ratfunc(args.transport, field)
        out["transport"] = transport_poincare(X, P).to_json()
    return out, True


def _cmd_boettcher(args):
    field = field_by_name(args.field)
    A = parse_ratfunc(args.map, field)
    leading = parse_scalar(args.leading, field) if args.leading else None
    B = boettcher_series(A, args.order, leading_choice=leading, field=field)
    return {"series": B.to_json()}, True


def _cmd_algdep(args):
    field = field_by_name(args.field)
    m, n = args.bidegree
    if args.boettcher:
        if not (args.map1 and args.map2):
            raise _UsageError("Boettcher mode needs --map1 and --map2")
        base_order = args.order + 10
        b1 = boettcher_series(
            parse_ratfunc(args.map1, field), base_order, field=field
        )
        b2 = boettcher_series(
            parse_ratfunc(args.map2, field), base_order, field=field
        )
        cert = find_relation_boettcher(b1, args.d1, b2, args.d2, m, n, args.order)
        return cert.to_json(), cert.found
    if args.s1_file:
        s1 = _load_series(args.s1_file, field)
        if args.d1 > 1:
            s1 = series_substitute_power(s1, args.d1)
    elif args.map1 and args.point1:
        s1 = _poincare_input(args.map1, args.point1, args.d1, args.order, field)
    else:
        raise _UsageError("need --map1/--point1 or --s1-file")
    if args.s2_file:
        s2 = _load_series(args.s2_file, field)
        if args.d2 > 1:
            s2 = series_substitute_power(s2, args.d2)
    elif args.map2 and args.point2:
        s2 = _poincare_input(args.map2, args.point2, args.d2, args.order, field)
    else:
        raise _UsageError("need --map2/--point2 or --s2-file")
    scales = None
    if args.scales:
        scales = [parse_scalar(c, field) for c in args.scales.split(",")]
    cert = find_relation(s1, s2, m, n, args.order, scales=scales)
    return cert.to_json(), cert.found


def _cmd_implicitize(args):
    field = field_by_name(args.field)
    X1 = parse_ratfunc(args.x1, field)
    X2 = parse_ratfunc(args.x2, field)
    f = implicitize(X1, X2)
    out = {
        "curve": {"monomials": f.json_monomials()},
        "bidegree": [str(f.deg_x()), str(f.deg_y())],
    }
    ok = True
    if args.a1 and args.a2:
        inv = verify_invariant_curve(
            f,
            parse_ratfunc(args.a1, field),
            parse_ratfunc(args.a2, field),
            param=(X1, X2),
        )
        out["invariant"] = inv
        ok = inv
    return out, ok


def _cmd_one_to_one(args):
    field = field_by_name(args.field)
    X1 = parse_ratfunc(args.x1, field)
    X2 = parse_ratfunc(args.x2, field)
    f = implicitize(X1, X2)
    flag, d = is_generically_one_to_one(X1, X2, f)
    return {
        "one_to_one": flag,
        "fiber_degree": str(d),
        "curve": {"monomials": f.json_monomials()},
    }, flag


def _cmd_semiconj(args):
    field = field_by_name(args.field)
    A = parse_ratfunc(args.a, field)
    X = parse_ratfunc(args.x, field)
    B = parse_ratfunc(args.b, field)
    triple = verify_semiconjugacy(A, X, B)
    out = {"verified": triple.verified}
    ok = triple.verified
    if args.transport_boettcher is not None:
        match = transport_boettcher_check(
            A, X, B, args.transport_boettcher, field=field
        )
        out["boettcher_transport"] = match
        ok = ok and match
    return out, ok


def _cmd_commute(args):
    field = field_by_name(args.field)
    flag = verify_commute(
        parse_ratfunc(args.a, field), parse_ratfunc(args.b, field)
    )
    return {"commute": flag}, flag


def _cmd_common_iterate(args):
    field = field_by_name(args.field)
    result = common_iterate_search(
        parse_ratfunc(args.a, field), parse_ratfunc(args.b, field), args.budget
    )
    return result.to_json(), bool(result)


def _cmd_independence(args):
    field = field_by_name(args.field)
    report = independence_check(
        parse_ratfunc(args.a1, field),
        parse_point(args.z1, field),
        parse_ratfunc(args.a2, field),
        parse_point(args.z2, field),
        bound=args.bound,
        field=field,
    )
    return report.to_json(), report.independent


def _cmd_theorem_check(args):
    field = field_by_name(args.field)
    report = verify_theorem_conditions(
        parse_ratfunc(args.x1, field),
        parse_ratfunc(args.x2, field),
        parse_ratfunc(args.b, field),
        parse_ratfunc(args.a1, field),
        parse_ratfunc(args.a2, field),
        parse_point(args.z0, field),
        args.l1,
        args.l2,
        args.d1,
        args.d2,
        args.k,
    )
    return report.to_json(), report.all_hold


def _cmd_orbifold_euler(args):
    field = field_by_name(args.field)
    o = _parse_support(args.support, field)
    out = o.to_json()
    out["chi"] = str(o.euler_char())
    return out, True


def _cmd_orbifold_check(args):
    field = field_by_name(args.field)
    f = parse_ratfunc(args.map, field)
    if args.kind == "self-lattes":
        if not args.support:
            raise _UsageError("self-lattes check needs --support")
        o = _parse_support(args.support, field)
        result = check_generalized_lattes(f, o, field)
        return result.to_json(), result.holds
    if not (args.o1 is not None and args.o2 is not None):
        raise _UsageError(f"{args.kind} check needs --o1 and --o2")
    o1 = _parse_support(args.o1, field)
    o2 = _parse_support(args.o2, field)
    checker = {
        "covering": is_covering_map,
        "holomorphic": is_holomorphic_map,
        "minimal": is_minimal_holomorphic,
    }[args.kind]
    holds = checker(f, o1, o2, field)
    return {
        "kind": args.kind,
        "holds": holds,
        "chi_1": str(o1.euler_char()),
        "chi_2": str(o2.euler_char()),
    }, holds


def _cmd_lattes_detect(args):
    field = field_by_name(args.field)
    detection = detect_generalized_lattes(
        parse_ratfunc(args.map, field),
        args.nu_max,
        support_budget=args.support_budget,
        field=field,
    )
    return detection.to_json(), bool(detection)


HANDLERS = {
    "parse": _cmd_parse,
    "fixpoints": _cmd_fixpoints,
    "poincare": _cmd_poincare,
    "boettcher": _cmd_boettcher,
    "algdep": _cmd_algdep,
    "implicitize": _cmd_implicitize,
    "one-to-one": _cmd_one_to_one,
    "semiconj": _cmd_semiconj,
    "commute": _cmd_commute,
    "common-iterate": _cmd_common_iterate,
    "independence": _cmd_independence,
    "theorem-check": _cmd_theorem_check,
    "orbifold-euler": _cmd_orbifold_euler,
    "orbifold-check": _cmd_orbifold_check,
    "lattes-detect": _cmd_lattes_detect,
}


# -- fixture suite ------------------------------------------------------------

_JOB_COMMANDS = set(HANDLERS)


def _job_to_argv(job: dict) -> list[str]:
    if "command" not in job:
        raise MissingFixture("fixture job lacks a command")
    command = job["command"]
    if command not in _JOB_COMMANDS:
        raise MissingFixture(f"fixture job has unknown command {command!r}")
    argv = [command]
    for key, value in sorted(job.items()):
        if key == "command":
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        elif isinstance(value, list):
            argv.append(flag)
            argv.extend(str(v) for v in value)
        else:
            argv.extend([flag, str(value)])
    return argv


def run_job(job: dict):
    """Dispatch a JobSpec exactly like the CLI; returns (exit_code, object)."""
    parser = build_parser()
    try:
        args = parser.parse_args(_job_to_argv(job))
    except MissingFixture as exc:
        return 2, {"error": exc.payload()}
    except _UsageError as exc:
        return 64, {"error": {"kind": "Usage", "message": str(exc)}}
    try:
        obj, ok = HANDLERS[args.command](args)
    except DynalgError as exc:
        return 2, {"error": exc.payload()}
    return (0 if ok else 1), obj


def _matches(expected, actual) -> bool:
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return False
        return all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    if isinstance(expected, list):
        return (
            isinstance(actual, list)
            and len(expected) == len(actual)
            and all(_matches(e, a) for e, a in zip(expected, actual))
        )
    return expected == actual


def _run_fixture(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        fixture = json.load(fh)
    name = fixture.get("name", path.name)
    check = {"name": name, "source": fixture.get("source", "")}
    expected_exit = int(fixture.get("expect_exit", 0))
    code, obj = run_job(fixture.get("job", {}))
    if code != expected_exit:
        check["status"] = "fail"
        check["reason"] = f"exit {code} != expected {expected_exit}"
        check["output"] = obj
        return check
    expect = fixture.get("expect", {})
    if not _matches(expect, obj):
        check["status"] = "fail"
        check["reason"] = "output mismatch"
        check["output"] = obj
        return check
    check["status"] = "pass"
    return check


def _cmd_verify_paper(args):
    if args.fixtures:
        import pathlib

        root = pathlib.Path(args.fixtures)
        files = sorted(root.glob("*.json"))
    else:
        root = resources.files("dynalg").joinpath("fixtures")
        files = sorted(
            (p for p in root.iterdir() if p.name.endswith(".json")),
            key=lambda p: p.name,
        )
    if not files:
        raise MissingFixture(f"no fixture files found under {root}")
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            checks = list(pool.map(_run_fixture, files))
    else:
        checks = [_run_fixture(p) for p in files]
    failed = sum(1 for c in checks if c["status"] != "pass")
    report = {
        "checks": checks,
        "total": str(len(checks)),
        "passed": str(len(checks) - failed),
        "failed": str(failed),
    }
    return report, failed == 0


HANDLERS["verify-paper"] = _cmd_verify_paper


def run(argv) -> int:
    """Entry point used by tests: parse argv, print JSON, return exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 64
    try:
        obj, ok = HANDLERS[args.command](args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 64
    except DynalgError as exc:
        _emit({"error": exc.payload()}, args)
        return 2
    _emit(obj, args)
    return 0 if ok else 1


def _emit(obj, args):
    text = json.dumps(obj, sort_keys=True, indent=2)
    path = getattr(args, "output", None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
