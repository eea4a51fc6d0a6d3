"""Command-line front end: one subcommand per library operation.

Output is deterministic for fixed arguments: decimal strings are
truncated (never rounded), JSON keys are sorted, and every randomized
check runs from a fixed seed.  Exit codes: 0 success, 1 domain or math
errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import refdata
from .analysis import (
    critical_point_to_json,
    find_inflection,
    find_minimum,
    grid_csv,
    grid_to_csv,
    identity_report_to_json,
    scan_shape,
    shape_report_to_json,
    verify_identity,
)
from .constants import (
    constant_to_json,
    estimate_constant,
    estimate_constant_additive,
)
from .errors import AbelkitError, MapExprSyntaxError, UnknownMap
from .logseries import (
    additive_wseries,
    derive_expansion,
    expansion_to_json,
    map_label,
    reciprocal,
    residual,
    wseries_to_json,
)
from .mapexpr import parse_map_expr
from .maps import builtin_map, builtin_names, eval_exact
from .numfmt import agreeing_digits, mpf_to_fraction, parse_rational, truncate_decimal
from .orbits import (
    check_patterns,
    orbit_exact,
    orbit_to_json,
    pattern_report_to_json,
    reparametrize,
    t_sequence,
    u_sequence,
    v_sequence,
)

_PROG = "abelkit"


class _UsageError(Exception):
    """Bad argument combination detected after parsing."""


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _sign_arg(text: str) -> int:
    signs = {"+": 1, "+1": 1, "1": 1, "plus": 1,
             "-": -1, "-1": -1, "minus": -1}
    try:
        return signs[text.strip().lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"sign must be one of +, -, +1, -1 (got {text!r})") from None


def _add_map_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--map", metavar="NAME",
                       help="built-in map name: " + ", ".join(builtin_names())
                       + ", or HIGHER(ell,+|-)")
    group.add_argument("--map-expr", metavar="EXPR",
                       help="rational map in x, e.g. 'x/(1+x+x^2)'")
    p.add_argument("--domain-sup", metavar="RAT", type=_rational_arg,
                   default=None,
                   help="upper end of the domain for --map-expr "
                        "(default: unbounded)")


def _resolve_map(args):
    if args.map is not None:
        if args.domain_sup is not None:
            raise _UsageError("--domain-sup applies only to --map-expr")
        try:
            return builtin_map(args.map)
        except UnknownMap as exc:
            raise _UsageError(str(exc)) from None
    try:
        return parse_map_expr(args.map_expr, domain_sup=args.domain_sup)
    except MapExprSyntaxError as exc:
        raise _UsageError(f"bad --map-expr: {exc}") from None


def _add_format_arg(p: argparse.ArgumentParser, choices=("text", "json"),
                    default="text") -> None:
    p.add_argument("--format", choices=choices, default=default,
                   help=f"output format (default: {default})")


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit_kv(doc: dict) -> None:
    for key, value in doc.items():
        if isinstance(value, bool):
            value = _yesno(value)
        print(f"{key}: {value}")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_constant(args) -> int:
    m = _resolve_map(args)
    est = estimate_constant(m, args.x0, args.digits, k=args.k)
    doc = constant_to_json(est)
    if args.format == "json":
        _emit_json(doc)
    else:
        _emit_kv(doc)
    return 0


def _recurrence_text(ell: int, sign: int) -> str:
    term = "1/x" if ell == 1 else f"1/x^{ell}"
    return f"x -> x + 1 {'+' if sign > 0 else '-'} {term}"


def _cmd_constant_additive(args) -> int:
    est = estimate_constant_additive(args.ell, args.sign, args.x0,
                                     args.digits, k=args.k)
    inner = constant_to_json(est)
    doc = {
        "recurrence": _recurrence_text(args.ell, args.sign),
        "ell": args.ell,
        "sign": args.sign,
        "x0": str(args.x0),
        "conjugate_map": inner["map"],
        "y0": inner["x0"],
        "digits": inner["digits"],
        "value": inner["value"],
        "N": inner["N"],
        "k": inner["k"],
        "precision_bits": inner["precision_bits"],
        "digits_agreed": inner["digits_agreed"],
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        _emit_kv(doc)
    return 0


def _cmd_polys(args) -> int:
    m = _resolve_map(args)
    exp = derive_expansion(m, args.k)
    if args.format == "json":
        _emit_json(expansion_to_json(exp))
        return 0
    print(f"map: {map_label(m)}")
    print(f"b1: {exp.b1}")
    for i, p in enumerate(exp.polys):
        print(f"P_{i} = {p.render()}")
    return 0


def _cmd_residual(args) -> int:
    m = _resolve_map(args)
    depth = args.depth if args.depth is not None else args.k
    exp = derive_expansion(m, args.k)
    defects = residual(exp, depth)
    nonzero = [i + 1 for i, d in enumerate(defects) if d]
    doc = {
        "map": map_label(m),
        "k": args.k,
        "depth": depth,
        "all_zero": not nonzero,
        "nonzero_orders": nonzero,
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        _emit_kv(doc)
    return 0 if not nonzero else 1


def _cmd_recip(args) -> int:
    additive = args.ell is not None or args.sign is not None
    if additive and (args.map is not None or args.map_expr is not None):
        raise _UsageError("give either --map/--map-expr or --ell/--sign, "
                          "not both")
    if additive:
        if args.ell is None or args.sign is None:
            raise _UsageError("--ell and --sign must be given together")
        ws = additive_wseries(args.ell, args.sign, args.k)
        header = {"recurrence": _recurrence_text(args.ell, args.sign),
                  "conjugate_map": map_label(ws.map)}
    else:
        if args.map is None and args.map_expr is None:
            raise _UsageError("a map (--map/--map-expr) or a recurrence "
                              "(--ell/--sign) is required")
        m = _resolve_map(args)
        ws = reciprocal(derive_expansion(m, args.k + 2), args.k)
        header = {"map": map_label(m)}
    if args.format == "json":
        doc = dict(header)
        doc.update(wseries_to_json(ws))
        _emit_json(doc)
        return 0
    _emit_kv(header)
    print(f"log_coeff: {ws.log_coeff}")
    print(f"w = {ws.render()}")
    return 0


def _cmd_orbit(args) -> int:
    m = _resolve_map(args)
    orbit = orbit_exact(m, args.x0, args.n, allow_large=args.allow_large)
    if args.format == "json":
        _emit_json(orbit_to_json(orbit))
        return 0
    print(f"map: {map_label(m)}")
    print(f"x0: {orbit.x0}")
    for i, term in enumerate(orbit.terms):
        print(f"x_{i} = {term}")
    return 0


def _cmd_sequences(args) -> int:
    family = args.family
    if family == "t":
        if args.t1 is None:
            raise _UsageError("family t needs --t1")
        seq = t_sequence(args.t1, args.n)
        header = {"family": "t", "t1": str(args.t1)}
        terms = [str(t) for t in seq.terms]
    elif family == "u":
        if args.u1 is None or args.u2 is None:
            raise _UsageError("family u needs --u1 and --u2")
        seq = u_sequence(args.u1, args.u2, args.n)
        header = {"family": "u", "u1": str(args.u1), "u2": str(args.u2)}
        terms = [str(t) for t in seq.terms]
    else:
        if args.v1 is None or args.v2 is None:
            raise _UsageError("family v needs --v1 and --v2")
        seq = v_sequence(args.v1, args.v2, args.n)
        header = {"family": "v", "v1": str(args.v1), "v2": str(args.v2)}
        terms = [str(t) for t in seq.terms]
    if args.format == "json":
        doc = dict(header)
        doc["terms"] = terms
        _emit_json(doc)
        return 0
    _emit_kv(header)
    for i, term in enumerate(terms, start=1):
        print(f"{family}_{i} = {term}")
    return 0


_PATTERN_PAIRS = {"AB": ("A", "B"), "IJ": ("I", "J")}


def _cmd_patterns(args) -> int:
    first_name, second_name = _PATTERN_PAIRS[args.pair]
    x0 = args.x0
    if not 0 < x0 < 1:
        raise _UsageError("--x0 must lie in (0, 1), the first map's domain")
    second_start = x0 / (1 - x0)
    first = orbit_exact(builtin_map(first_name), x0, args.n - 1)
    second = orbit_exact(builtin_map(second_name), second_start, args.n - 1)
    report = check_patterns(first, second, args.n)
    doc = pattern_report_to_json(report)
    doc["x0"] = str(x0)
    doc["second_x0"] = str(second_start)
    doc["all_established"] = report.all_established()
    if args.format == "json":
        _emit_json(doc)
        return 0
    print(f"pair: {report.kind}")
    print(f"x0: {x0}")
    print(f"second_x0: {second_start}")
    print(f"terms_checked: {report.terms_checked}")
    for name in ("numerators_match", "A_denominators_power",
                 "I_denominators_are_u_ratios", "J_denominators_follow_v",
                 "B_numerators_are_cumsum_denominators"):
        value = getattr(report, name)
        if value is not None:
            print(f"{name}: {'pass' if value else 'fail'}")
    for name in sorted(report.conjecture_consistent):
        flag = report.conjecture_consistent[name]
        print(f"conjectured_{name}: "
              f"{'consistent' if flag else 'inconsistent'}")
    print(f"all_established: {_yesno(report.all_established())}")
    return 0


def _cmd_reparam(args) -> int:
    source_name = args.direction.split("->")[0]
    orbit = orbit_exact(builtin_map(source_name), args.x0, args.n)
    rep = reparametrize(orbit, args.direction)
    if args.format == "json":
        doc = orbit_to_json(rep)
        doc["direction"] = args.direction
        doc["source_x0"] = str(orbit.x0)
        doc["verified"] = True
        _emit_json(doc)
        return 0
    print(f"direction: {args.direction}")
    print(f"source_x0: {orbit.x0}")
    print(f"map: {map_label(rep.map)}")
    print(f"x0: {rep.x0}")
    for i, term in enumerate(rep.terms):
        print(f"x_{i} = {term}")
    print("verified: exact")
    return 0


def _cmd_verify(args) -> int:
    report = verify_identity(args.identity, args.x, args.digits)
    doc = identity_report_to_json(report)
    doc["required"] = report.digits - 3
    if args.format == "json":
        _emit_json(doc)
    else:
        _emit_kv(doc)
    return 0 if report.passed else 1


def _cmd_scan(args) -> int:
    m = _resolve_map(args)
    report = scan_shape(m, args.a, args.b, args.points, args.digits)
    if args.format == "json":
        doc = shape_report_to_json(report)
        doc["values"] = [truncate_decimal(v, report.digits)
                         for v in report.values]
        doc["abscissae"] = [str(x) for x in report.abscissae]
        _emit_json(doc)
        return 0
    print(f"map: {map_label(m)}")
    print(f"a: {report.abscissae[0]}")
    print(f"b: {report.abscissae[-1]}")
    print(f"points: {len(report.abscissae)}")
    print(f"digits: {report.digits}")
    print(f"monotonicity: {report.monotonicity}")
    print(f"convexity: {report.convexity}")
    for lo, hi in report.turning_points:
        print(f"turning_point: between {lo} and {hi}")
    for x, v in zip(report.abscissae, report.values):
        print(f"C({x}) = {truncate_decimal(v, report.digits)}")
    return 0


def _emit_critical_point(result, args, extra: dict) -> None:
    doc = critical_point_to_json(result, args.digits)
    doc.update(extra)
    if args.format == "json":
        _emit_json(doc)
        return
    for key in extra:
        print(f"{key}: {extra[key]}")
    print(f"kind: {result.kind}")
    print(f"location: {doc['location']}")
    print(f"location_digits: {result.digits}")
    lo, hi = result.bracket
    pad = result.digits + 2
    print(f"bracket: [{truncate_decimal(lo, pad)}, {truncate_decimal(hi, pad)}]")
    if result.value is not None:
        print(f"value: {doc['value']}")


def _cmd_minimum(args) -> int:
    m = _resolve_map(args)
    result = find_minimum(m, (args.a, args.b), args.digits)
    _emit_critical_point(result, args, {"map": map_label(m)})
    return 0


def _cmd_inflection(args) -> int:
    m = _resolve_map(args)
    result = find_inflection(m, (args.a, args.b), args.digits, of=args.of)
    _emit_critical_point(result, args, {"map": map_label(m), "of": args.of})
    return 0


def _cmd_grid(args) -> int:
    m = _resolve_map(args)
    sample = grid_csv(m, args.a, args.b, args.points, args.digits)
    if args.format == "json":
        rows = []
        for x, v, status in zip(sample.abscissae, sample.values,
                                sample.statuses):
            rows.append({
                "x": truncate_decimal(x, sample.digits),
                "value": None if v is None
                else truncate_decimal(v, sample.digits),
                "status": status,
            })
        _emit_json({"map": map_label(m), "digits": sample.digits,
                    "rows": rows})
        return 0
    sys.stdout.write(grid_to_csv(sample))
    return 0


# ---------------------------------------------------------------------------
# repro: replay the reference-data checks from scratch
# ---------------------------------------------------------------------------

def _check_expansion_tables():
    for name, table in sorted(refdata.EXPANSION_TABLES.items()):
        exp = derive_expansion(builtin_map(name), 7)
        if exp.b1 != refdata.EXPECTED_B1[name]:
            return False, f"{name}: wrong b1 {exp.b1}"
        if list(exp.polys) != list(table):
            return False, f"{name}: polynomial table mismatch"
    return True, "6 maps, P_0..P_6 exact"


def _check_residuals():
    for name in builtin_names():
        exp = derive_expansion(builtin_map(name), 20)
        if any(residual(exp, 20)):
            return False, f"{name}: nonzero residual"
    return True, "all built-ins, k = 20"


def _check_reciprocal():
    for name, (log_coeff, r1) in sorted(refdata.RECIPROCAL_R1.items()):
        ws = reciprocal(derive_expansion(builtin_map(name), 8), 3)
        if ws.log_coeff != log_coeff or ws.term(1) != r1:
            return False, f"{name}: R_1 mismatch"
    ws = reciprocal(derive_expansion(builtin_map("ORACLE"), 9), 6)
    if ws.log_coeff != 0 or any(ws.term(i) for i in range(1, 7)):
        return False, "ORACLE: reciprocal not exact"
    return True, "B, I leading terms + exact ORACLE"


def _check_additive_w():
    for sign, table in sorted(refdata.ADDITIVE_W2.items()):
        ws = additive_wseries(2, sign, 6)
        if ws.log_coeff != 0:
            return False, f"sign {sign:+d}: unexpected log term"
        for m_i, want in table.items():
            if ws.term(m_i) != want:
                return False, f"sign {sign:+d}: R_{m_i} mismatch"
    return True, "x -> x + 1 +- 1/x^2 through n^-6"


def _check_orbits():
    for (name, x0), want in refdata.ORBITS.items():
        orbit = orbit_exact(builtin_map(name), x0, len(want) - 1)
        if list(orbit.terms) != want:
            return False, f"{name} from {x0}: orbit mismatch"
    return True, f"{len(refdata.ORBITS)} orbit prefixes exact"


def _check_t_sequences():
    for t1, want in refdata.T_SEQUENCES.items():
        if list(t_sequence(t1, len(want)).terms) != want:
            return False, f"t1 = {t1}: mismatch"
    return True, "t1 in {2, 3}"


def _check_u_sequences():
    for (u1, u2), want in refdata.U_SEQUENCES.items():
        if list(u_sequence(u1, u2, len(want)).terms) != want:
            return False, f"seeds ({u1}, {u2}): mismatch"
    return True, "seeds (1,2) and (1,3)"


def _check_v_sequences():
    for (v1, v2), want in refdata.V_SEQUENCES.items():
        if list(v_sequence(v1, v2, len(want)).terms) != want:
            return False, f"seeds ({v1}, {v2}): mismatch"
    return True, "seeds (1,3) and (2,8)"


def _check_patterns():
    for (first_key, second_key) in refdata.PATTERN_PAIRS:
        f_name, f_x0 = first_key
        s_name, s_x0 = second_key
        first = orbit_exact(builtin_map(f_name), f_x0, 9)
        second = orbit_exact(builtin_map(s_name), s_x0, 9)
        report = check_patterns(first, second, 10)
        if not report.all_established():
            return False, f"{f_name}/{s_name} from {f_x0}: established range"
        if not all(report.conjecture_consistent.values()):
            return False, f"{f_name}/{s_name} from {f_x0}: conjectured range"
    return True, "4 pairs, established n<=6 + conjectured n<=10"


def _check_reparam():
    rng = random.Random(1789)
    count = 0
    for direction in ("B->A", "J->I"):
        source = builtin_map(direction.split("->")[0])
        for _ in range(25):
            den = rng.randint(1, 100)
            x0 = Fraction(rng.randint(1, 5 * den - 1), den)
            reparametrize(orbit_exact(source, x0, 12), direction)
            count += 1
    return True, f"{count} random starts, n = 12, exact"


def _check_oracle_exact():
    rng = random.Random(1789)
    oracle = builtin_map("ORACLE")
    for _ in range(10):
        den = rng.randint(1, 60)
        x0 = Fraction(rng.randint(1, 6 * den), den)
        est = estimate_constant(oracle, x0, 30)
        if abs(mpf_to_fraction(est.value) - 1 / x0) >= Fraction(1, 10**28):
            return False, f"C({x0}) != {1 / x0}"
    return True, "C(p/q) = q/p for 10 random rationals"


def _random_in_domain(rng, m):
    if m.domain_sup is not None:
        den = rng.randint(2, 60)
        return Fraction(rng.randint(1, den - 1), den) * m.domain_sup
    den = rng.randint(1, 60)
    return Fraction(rng.randint(1, 6 * den), den)


def _check_abel_property(samples: int):
    rng = random.Random(1789)
    bound = Fraction(1, 10**28)
    for name in builtin_names():
        m = builtin_map(name)
        for _ in range(samples):
            x0 = _random_in_domain(rng, m)
            c0 = estimate_constant(m, x0, 30).value
            c1 = estimate_constant(m, eval_exact(m, x0), 30).value
            step = mpf_to_fraction(c1) - mpf_to_fraction(c0) - 1
            if abs(step) >= bound:
                return False, f"{name} at {x0}: |C(f(x)) - C(x) - 1| >= 1e-28"
    return True, f"{samples} starts per map, D = 30"


def _check_symmetry():
    rng = random.Random(1789)
    a_map, b_map = builtin_map("A"), builtin_map("B")
    for _ in range(5):
        den = rng.randint(3, 50)
        num = rng.randint(1, den - 1)
        if 2 * num == den:
            num += 1
        x0 = Fraction(num, den)
        va = estimate_constant(a_map, x0, 30).value
        vb = estimate_constant(a_map, 1 - x0, 30).value
        if agreeing_digits(va, vb) < 28:
            return False, f"A({x0}) != A({1 - x0})"
        y0 = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        if y0 == 1:
            y0 = Fraction(2)
        wa = estimate_constant(b_map, y0, 30).value
        wb = estimate_constant(b_map, 1 / y0, 30).value
        if agreeing_digits(wa, wb) < 28:
            return False, f"B({y0}) != B({1 / y0})"
    return True, "A(x) = A(1-x), B(x) = B(1/x), 5 random points each"


def _check_additive_fifteen():
    for ell, sign, x0, conj_name, want in refdata.ADDITIVE_FIFTEEN:
        add = estimate_constant_additive(ell, sign, x0, 20)
        direct = estimate_constant(builtin_map(conj_name), 1 / x0, 20)
        if truncate_decimal(add.value, 15) != want:
            return False, f"ell={ell} sign={sign:+d} x0={x0}: {want} missed"
        if truncate_decimal(direct.value, 15) != want:
            return False, f"{conj_name} at {1 / x0}: {want} missed"
        if agreeing_digits(add.value, direct.value, cap=30) < 15:
            return False, f"ell={ell} sign={sign:+d} x0={x0}: routes disagree"
    return True, "6 constants, both routes, 15 digits"


def _check_constants(digits: int):
    for (name, x0), want in refdata.HUNDRED_DIGIT_CONSTANTS.items():
        est = estimate_constant(builtin_map(name), x0, digits)
        got = truncate_decimal(est.value, digits)
        if got != want[:len(got)]:
            return False, f"{name}({x0}): digit mismatch"
    n = len(refdata.HUNDRED_DIGIT_CONSTANTS)
    return True, f"{n} map/start pairs, {digits} digits"


def _check_identities(digits: int, xs):
    for pair in ("AB", "IJ"):
        for x in xs:
            report = verify_identity(pair, x, digits)
            if not report.passed:
                return False, (f"{pair} at x = {x}: "
                               f"only {report.digits_agreed} digits")
    return True, f"AB and IJ at {len(xs)} points, >= {digits - 3} digits"


def _check_minimum(name, bracket, location, tol):
    result = find_minimum(builtin_map(name), bracket, 30)
    if abs(result.location - location) > tol:
        return False, f"{name}: located {result.location}"
    return True, f"{name}: minimum at {location} +- {tol}"


def _check_inflection_abel():
    name, bracket, window = refdata.INFLECTION_ABEL_WINDOW
    result = find_inflection(builtin_map(name), bracket, 30, of="abel")
    lo, hi = result.bracket
    if not (window[0] <= lo and hi <= window[1]):
        return False, f"bracket [{lo}, {hi}] outside window"
    return True, f"solution inflection inside [{window[0]}, {window[1]}]"


def _check_inflection_map():
    name, bracket, window = refdata.INFLECTION_MAP_WINDOW
    result = find_inflection(builtin_map(name), bracket, 30, of="map")
    if not (window[0] <= result.location <= window[1]):
        return False, f"located {result.location} outside window"
    return True, f"raw-map inflection inside [{window[0]}, {window[1]}]"


def _repro_plan(level: str):
    quick = [
        ("expansion-tables", _check_expansion_tables),
        ("residual-zero", _check_residuals),
        ("reciprocal-series", _check_reciprocal),
        ("additive-w-series", _check_additive_w),
        ("orbits", _check_orbits),
        ("t-sequences", _check_t_sequences),
        ("u-sequences", _check_u_sequences),
        ("v-sequences", _check_v_sequences),
        ("patterns", _check_patterns),
        ("reparametrization", _check_reparam),
        ("oracle-exactness", _check_oracle_exact),
        ("symmetry", _check_symmetry),
        ("constants-additive-15", _check_additive_fifteen),
        ("inflection-map", _check_inflection_map),
    ]
    if level == "quick":
        return quick + [
            ("abel-property", lambda: _check_abel_property(2)),
            ("constants-50", lambda: _check_constants(50)),
            ("identities-20", lambda: _check_identities(
                20, (Fraction(1), Fraction(3)))),
        ]
    return quick + [
        ("abel-property", lambda: _check_abel_property(10)),
        ("constants-50", lambda: _check_constants(50)),
        ("constants-100", lambda: _check_constants(100)),
        ("identities-50", lambda: _check_identities(
            50, refdata.IDENTITY_XS)),
        ("minimum-B", lambda: _check_minimum(*refdata.MINIMUM_CHECKS[0])),
        ("minimum-A", lambda: _check_minimum(*refdata.MINIMUM_CHECKS[1])),
        ("inflection-abel", _check_inflection_abel),
    ]


def _cmd_repro(args) -> int:
    results = []
    for name, check in _repro_plan(args.level):
        try:
            ok, detail = check()
        except AbelkitError as exc:
            ok, detail = False, f"error: {exc}"
        results.append({"name": name, "passed": ok, "detail": detail})
    failed = sum(1 for r in results if not r["passed"])
    if args.format == "json":
        _emit_json({"level": args.level, "checks": results,
                    "passed": len(results) - failed, "failed": failed})
        return 0 if failed == 0 else 1
    for r in results:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"{status} {r['name']}: {r['detail']}")
    print(f"repro: {len(results) - failed} passed, {failed} failed "
          f"(level {args.level})")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=_PROG,
        description="Convex solutions of F(f(x)) = F(x) + 1 for iterated "
                    "rational maps: exact expansions, high-precision "
                    "constants, exact sequences, and shape analysis.")
    sub = parser.add_subparsers(dest="subcommand", required=True,
                                metavar="SUBCOMMAND")

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("constant", _cmd_constant,
            "high-precision constant of one orbit")
    _add_map_args(p)
    p.add_argument("--x0", type=_rational_arg, required=True,
                   help="starting point, e.g. 1/2")
    p.add_argument("--digits", type=_positive_int, default=50)
    p.add_argument("--k", type=_positive_int, default=20,
                   help="series terms used by the solver")
    _add_format_arg(p)

    p = add("constant-additive", _cmd_constant_additive,
            "constant of the recurrence x -> x + 1 +- 1/x^ell")
    p.add_argument("--ell", type=_positive_int, required=True)
    p.add_argument("--sign", type=_sign_arg, required=True)
    p.add_argument("--x0", type=_rational_arg, required=True)
    p.add_argument("--digits", type=_positive_int, default=50)
    p.add_argument("--k", type=_positive_int, default=20)
    _add_format_arg(p)

    p = add("polys", _cmd_polys,
            "expansion polynomials P_0..P_{k-1} of a map")
    _add_map_args(p)
    p.add_argument("--k", type=_positive_int, default=7,
                   help="number of polynomials (default: 7)")
    _add_format_arg(p)

    p = add("residual", _cmd_residual,
            "substitute the expansion back into the map; report defects")
    _add_map_args(p)
    p.add_argument("--k", type=_positive_int, default=20)
    p.add_argument("--depth", type=_positive_int, default=None,
                   help="orders n^-1..n^-depth to check (default: k)")
    _add_format_arg(p)

    p = add("recip", _cmd_recip,
            "w = 1/x side of an expansion (map or additive recurrence)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--map", metavar="NAME", default=None)
    group.add_argument("--map-expr", metavar="EXPR", default=None)
    p.add_argument("--domain-sup", metavar="RAT", type=_rational_arg,
                   default=None)
    p.add_argument("--ell", type=_positive_int, default=None)
    p.add_argument("--sign", type=_sign_arg, default=None)
    p.add_argument("--k", type=_positive_int, default=6,
                   help="number of correction terms (default: 6)")
    _add_format_arg(p)

    p = add("orbit", _cmd_orbit, "exact rational orbit of a map")
    _add_map_args(p)
    p.add_argument("--x0", type=_rational_arg, required=True)
    p.add_argument("--n", type=_positive_int, default=10,
                   help="number of steps (default: 10)")
    p.add_argument("--allow-large", action="store_true",
                   help="permit n beyond the size guard")
    _add_format_arg(p)

    p = add("sequences", _cmd_sequences,
            "exact t/u/v sequences from seed values")
    p.add_argument("--family", choices=("t", "u", "v"), required=True)
    p.add_argument("--t1", type=_rational_arg, default=None)
    p.add_argument("--u1", type=int, default=None)
    p.add_argument("--u2", type=int, default=None)
    p.add_argument("--v1", type=int, default=None)
    p.add_argument("--v2", type=int, default=None)
    p.add_argument("--n", type=_positive_int, default=6,
                   help="number of terms (default: 6)")
    _add_format_arg(p)

    p = add("patterns", _cmd_patterns,
            "numerator/denominator pattern report for an orbit pair")
    p.add_argument("--pair", choices=("AB", "IJ"), required=True)
    p.add_argument("--x0", type=_rational_arg, required=True,
                   help="starting point of the first map (in (0,1))")
    p.add_argument("--n", type=_positive_int, default=10,
                   help="terms to check (default: 10)")
    _add_format_arg(p)

    p = add("reparam", _cmd_reparam,
            "exact orbit reparametrization between conjugate maps")
    p.add_argument("--direction", choices=("B->A", "J->I"), required=True)
    p.add_argument("--x0", type=_rational_arg, required=True)
    p.add_argument("--n", type=_positive_int, default=12)
    _add_format_arg(p)

    p = add("verify", _cmd_verify,
            "numeric check of a conjugacy identity between constants")
    p.add_argument("--identity", choices=("AB", "IJ"), required=True)
    p.add_argument("--x", type=_rational_arg, required=True)
    p.add_argument("--digits", type=_positive_int, default=50)
    _add_format_arg(p)

    p = add("scan", _cmd_scan,
            "monotonicity/convexity scan of the constant as a function "
            "of the start")
    _add_map_args(p)
    p.add_argument("--a", type=_rational_arg, required=True)
    p.add_argument("--b", type=_rational_arg, required=True)
    p.add_argument("--points", type=_positive_int, default=11)
    p.add_argument("--digits", type=_positive_int, default=30)
    _add_format_arg(p)

    p = add("minimum", _cmd_minimum,
            "bisection-locate the interior minimum of the constant curve")
    _add_map_args(p)
    p.add_argument("--a", type=_rational_arg, required=True)
    p.add_argument("--b", type=_rational_arg, required=True)
    p.add_argument("--digits", type=_positive_int, default=30)
    _add_format_arg(p)

    p = add("inflection", _cmd_inflection,
            "bisection-locate an inflection (of the solution or raw map)")
    _add_map_args(p)
    p.add_argument("--a", type=_rational_arg, required=True)
    p.add_argument("--b", type=_rational_arg, required=True)
    p.add_argument("--digits", type=_positive_int, default=30)
    p.add_argument("--of", choices=("abel", "map"), default="abel")
    _add_format_arg(p)

    p = add("grid", _cmd_grid,
            "constant sampled on a uniform grid (CSV)")
    _add_map_args(p)
    p.add_argument("--a", type=_rational_arg, required=True)
    p.add_argument("--b", type=_rational_arg, required=True)
    p.add_argument("--points", type=_positive_int, default=11)
    p.add_argument("--digits", type=_positive_int, default=30)
    _add_format_arg(p, choices=("csv", "json"), default="csv")

    p = add("repro", _cmd_repro,
            "replay every frozen reference check; print pass/fail lines")
    p.add_argument("--level", choices=("quick", "full"), default="full",
                   help="quick skips the 100-digit and bisection checks")
    _add_format_arg(p)

    return parser


_ERROR_LABELS = {
    "OrbitEscaped": "orbit escaped domain",
    "PoleHit": "pole hit",
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"{_PROG}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"{_PROG}: error: {exc}", file=sys.stderr)
        return 2
    except AbelkitError as exc:
        label = _ERROR_LABELS.get(type(exc).__name__)
        if label:
            print(f"{_PROG}: error: {label}: {exc}", file=sys.stderr)
        else:
            print(f"{_PROG}: error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
