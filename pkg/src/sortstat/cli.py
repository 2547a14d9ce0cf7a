"""Command-line front end: ``sortstat verify | stat | dist | map | enumerate``.

Exit status is 0 on success, 1 when a verification check fails and 2 on a
usage error (bad arguments or malformed objects).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable

from . import bicolored as bc
from . import matchings as mt
from . import permutations as pm
from .checks import CATALOGUE, CheckSpec, jsonify, run_checks
from .dyck import DyckPath, dyck_from_restriction, enumerate_dyck, fall_heights, restriction_from_dyck
from .polynomials import distribution

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
_SIGNED_WINDOW = re.compile(r"^-\d+([,\s]+-?\d+)*$")


class UsageError(ValueError):
    pass


# --- object parsing ---------------------------------------------------------------


def parse_int_list(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]()")
    if not text:
        return ()
    if "," not in text and " " not in text and text.isdigit():
        return tuple(int(ch) for ch in text)
    return tuple(int(x) for x in re.split(r"[,\s]+", text) if x)


def parse_matching(text: str) -> mt.Matching:
    """JSON (``{"edges": [[1,4],[2,3]]}`` or ``[[1,4],[2,3]]``) or ``1-4,2-3``."""
    text = text.strip()
    if text[:1] in "[{":
        return mt.Matching.from_json(json.loads(text))
    return mt.Matching.from_edges(tuple(int(x) for x in e.split("-")) for e in text.split(","))


def parse_bicolored(text: str) -> bc.BicoloredMatching:
    """JSON with ``"r"``/``"b"`` colors, or ``1-4r,2-3b``.  Uncolored edges are red."""
    text = text.strip()
    if text[:1] in "[{":
        obj = json.loads(text)
        edges = obj["edges"] if isinstance(obj, dict) else obj
        return bc.BicoloredMatching.from_colored_edges([list(e) + ["r"] if len(e) == 2 else e for e in edges])
    edges = []
    for e in text.split(","):
        m = re.fullmatch(r"(\d+)-(\d+)([rb]?)", e.strip())
        if not m:
            raise ValueError(f"cannot read edge {e!r}")
        edges.append((int(m[1]), int(m[2]), m[3] or "r"))
    return bc.BicoloredMatching.from_colored_edges(edges)


def _parse_positive(text: str) -> pm.SignedPermutation:
    s = pm.parse_perm(text)
    if not s.is_positive:
        raise ValueError(f"{text} has negative entries; use the sperm family")
    return s


PARSERS: dict[str, Callable] = {
    "perm": _parse_positive,
    "sperm": pm.parse_perm,
    "dperm": pm.parse_perm,
    "dyck": lambda t: DyckPath(t.strip()),
    "matching": parse_matching,
    "bicolored": parse_bicolored,
    "bicolored-even": parse_bicolored,
}


# --- statistics -------------------------------------------------------------------
# each entry: (function(obj, ctx), needs) where needs lists required options


def _need(ctx, key):
    if ctx.get(key) is None:
        raise UsageError(f"this statistic needs --{key}")
    return ctx[key]


STATS: dict[str, dict[str, Callable]] = {
    "perm": {
        "inv": lambda s, c: pm.inv(s),
        "maj": lambda s, c: pm.maj(s),
        "sor": lambda s, c: pm.sor(s),
        "sorfact": lambda s, c: [str(t) for t in pm.sor_factorization(s)],
        "cyc": lambda s, c: pm.cyc(s),
        "Cyc": lambda s, c: pm.cyc_min_set(s),
        "cycles": lambda s, c: pm.cycle_decomposition(s),
        "Rlminl": lambda s, c: pm.rlminl_set(s),
        "Lrmaxp": lambda s, c: pm.lrmaxp_set(s),
        "sor_r": lambda s, c: pm.sor_r(s, _need(c, "base"), _need(c, "r")),
        "Cyc_rel": lambda s, c: pm.cyc_min_set(s * _need(c, "base").inverse()),
        "cyc_rel": lambda s, c: pm.cyc(s * _need(c, "base").inverse()),
    },
    "sperm": {
        "N": lambda s, c: pm.neg_count(s),
        "invB": lambda s, c: pm.inv_B(s),
        "nminB": lambda s, c: pm.nmin_B(s),
        "sorB": lambda s, c: pm.sor_B(s),
        "sorBfact": lambda s, c: [str(t) for t in pm.sor_B_factorization(s)],
        "Prlminl": lambda s, c: pm.prlminl_set(s, "letters"),
        "Prlminl_places": lambda s, c: pm.prlminl_set(s, "places"),
        "Cyc0": lambda s, c: pm.cyc0_set(s),
        "Cyc1": lambda s, c: pm.cyc1_set(s),
        "reflB": lambda s, c: pm.refl_length_B(s),
        "sor_rB": lambda s, c: pm.sor_r_B(s, _need(c, "base"), _need(c, "r")),
        "Cyc0_rel": lambda s, c: pm.cyc0_set(s * _need(c, "base").inverse()),
        "Cyc1_rel": lambda s, c: pm.cyc1_set(s * _need(c, "base").inverse()),
        "reflB_rel": lambda s, c: pm.refl_length_B(s * _need(c, "base").inverse()),
    },
    "dperm": {
        "invD": lambda s, c: pm.inv_D(s),
        "sorD": lambda s, c: pm.sor_D(s),
        "sorDfact": lambda s, c: [str(t) for t in pm.sor_D_factorization(s)],
        "Prlminl'": lambda s, c: pm.prlminl_prime_set(s),
        "Cyc0'": lambda s, c: pm.cyc01_prime_sets(s)[0],
        "Cyc1'": lambda s, c: pm.cyc01_prime_sets(s)[1],
        "sor_rD": lambda s, c: pm.sor_r_D(s, _need(c, "base"), _need(c, "r")),
        "Cyc0'_rel": lambda s, c: pm.cyc01_prime_sets(s * _need(c, "base").inverse())[0],
        "Cyc1'_rel": lambda s, c: pm.cyc01_prime_sets(s * _need(c, "base").inverse())[1],
    },
    "dyck": {
        "heights": lambda d, c: d.heights,
        "falls": lambda d, c: fall_heights(d),
        "restriction": lambda d, c: restriction_from_dyck(d),
    },
    "matching": {
        "type": lambda m, c: m.type,
        "cr": lambda m, c: mt.arc_relations(m).cr,
        "ne": lambda m, c: mt.arc_relations(m).ne,
        "al": lambda m, c: mt.arc_relations(m).al,
        "Long": lambda m, c: mt.long_set(m),
        "Short": lambda m, c: mt.short_set(m),
        "Left": lambda m, c: mt.left_set(m),
        "sor": lambda m, c: mt.sor(m, _need(c, "base")),
        "sor_k": lambda m, c: mt.sort_matching(m, _need(c, "base")).sor_k,
        "cyc": lambda m, c: mt.cyc(m, _need(c, "base")),
        "Cyc": lambda m, c: mt.cyc_set(m, _need(c, "base")),
    },
    "bicolored": {
        "b": lambda m, c: m.b,
        "mix": lambda m, c: bc.mix(m),
        "mix'": lambda m, c: bc.mix_prime(m),
        "refined": lambda m, c: vars(bc.refined_counts(m)),
        "Longr": lambda m, c: bc.longr_set(m),
        "Longr'": lambda m, c: bc.longr_prime_set(m),
        "sor": lambda m, c: bc.sor_bicolored(m, _need(c, "base")),
        "sor'": lambda m, c: bc.sor_prime(m, _need(c, "base")),
        "Cyc0": lambda m, c: bc.cyc01_sets(m, _need(c, "base"))[0],
        "Cyc1": lambda m, c: bc.cyc01_sets(m, _need(c, "base"))[1],
        "Cyc0'": lambda m, c: bc.cyc01_prime_sets(m, _need(c, "base"))[0],
        "Cyc1'": lambda m, c: bc.cyc01_prime_sets(m, _need(c, "base"))[1],
    },
}
# D_n elements are signed permutations too
STATS["dperm"] = {**STATS["sperm"], **STATS["dperm"]}
STATS["bicolored-even"] = STATS["bicolored"]


def _base_parser(family: str) -> Callable:
    if family in ("perm", "sperm", "dperm"):
        # bases of the relative statistics always have a positive window
        return _parse_positive
    return PARSERS[family]


# --- output -----------------------------------------------------------------------


def _emit(value, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(jsonify(value)) + "\n")
        return
    if isinstance(value, (set, frozenset)):
        out.write("{" + ", ".join(map(str, sorted(value))) + "}\n")
    elif isinstance(value, (list, tuple)) and not isinstance(value, str):
        out.write(" ".join(str(v) for v in value) + "\n")
    else:
        out.write(f"{value}\n")


# --- subcommands ------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    ids = args.check or list(CATALOGUE)
    unknown = [i for i in ids if i not in CATALOGUE]
    if unknown:
        raise UsageError(f"unknown check id(s): {', '.join(unknown)}")
    report = run_checks(CheckSpec(i, args.max_n, args.bases) for i in ids)
    if args.format == "json":
        out.write(json.dumps(report.to_dict(timing=args.timing), indent=2, sort_keys=False) + "\n")
    else:
        for r in report.results:
            line = f"{r.status.upper():4s} {r.id:18s} n<={r.max_n} instances={r.instances}"
            if args.timing:
                line += f" {r.elapsed:.3f}s"
            out.write(line + "\n")
            if r.counterexample:
                out.write("  counterexample: " + json.dumps(r.counterexample) + "\n")
        passed = sum(r.status == "pass" for r in report.results)
        out.write(f"{passed}/{len(report.results)} checks passed\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _context(args, family: str) -> dict:
    ctx = {"r": None, "base": None}
    if getattr(args, "r", None):
        ctx["r"] = parse_int_list(args.r)
    if getattr(args, "base", None):
        ctx["base"] = _base_parser(family)(args.base)
    return ctx


def cmd_stat(args, out) -> int:
    table = STATS[args.family]
    if args.statistic not in table:
        raise UsageError(f"unknown statistic {args.statistic!r} for {args.family}; choose from {', '.join(table)}")
    obj = PARSERS[args.family](args.object)
    _emit(table[args.statistic](obj, _context(args, args.family)), args.format, out)
    return EXIT_OK


def _family_objects(family: str, ctx: dict, path_text: str | None):
    r = ctx["r"]
    if family in ("perm", "sperm", "dperm"):
        if r is None:
            raise UsageError("--r is required for permutation families")
        return list({"perm": pm.enumerate_Sr, "sperm": pm.enumerate_Br, "dperm": pm.enumerate_Dr}[family](r))
    if family == "dyck":
        if r is None:
            raise UsageError("--r N enumerates Dyck paths of semilength N")
        return list(enumerate_dyck(r[0]))
    path = DyckPath(path_text) if path_text else dyck_from_restriction(r) if r is not None else None
    if path is None:
        raise UsageError("--path or --r is required for matching families")
    if family == "matching":
        return list(mt.enumerate_matchings(path))
    if family == "bicolored":
        return list(bc.enumerate_bicolored(path))
    return list(bc.enumerate_bicolored_even(path))


def _assign_variables(stats: list[str], sample, family, ctx) -> list[tuple[str, str]]:
    """Pick a variable for each statistic: explicit ``name:var`` wins; otherwise
    scalars take q, t, p, s and set-valued ones t, s (first letter not yet used)."""
    used, out = set(), []
    for spec in stats:
        name, _, v = spec.partition(":")
        if name not in STATS[family]:
            raise UsageError(f"unknown statistic {name!r} for {family}; choose from {', '.join(STATS[family])}")
        if not v:
            value = STATS[family][name](sample, ctx) if sample is not None else 0
            pool = ("t", "s") if isinstance(value, (set, frozenset)) else ("q", "t", "p", "s")
            v = next((x for x in pool if x not in used), None)
            if v is None:
                raise UsageError("too many statistics; name variables explicitly with stat:var")
        used.add(v)
        out.append((name, v))
    return out


def cmd_dist(args, out) -> int:
    ctx = _context(args, args.family)
    objs = _family_objects(args.family, ctx, args.path)
    stats = [s for s in args.stats.split(",") if s]
    if not stats:
        raise UsageError("--stats must name at least one statistic")
    plan = _assign_variables(stats, objs[0] if objs else None, args.family, ctx)
    table = STATS[args.family]
    poly = distribution(objs, lambda o: {v: table[name](o, ctx) for name, v in plan})
    if args.format == "json":
        out.write(json.dumps(poly.to_json()) + "\n")
    else:
        out.write(f"{poly}\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    ctx = _context(args, args.family)
    objs = _family_objects(args.family, ctx, args.path)
    if args.format == "json":
        out.write(json.dumps(jsonify(objs)) + "\n")
    else:
        for o in objs:
            out.write(f"{o}\n")
    return EXIT_OK


def cmd_map(args, out) -> int:
    name = args.bijection
    ctx = {"r": parse_int_list(args.r) if args.r else None}
    w = parse_int_list(args.w) if args.w else None
    eps = parse_int_list(args.eps) if args.eps else None
    if name in ("f_r", "g_r"):
        r = _need(ctx, "r")
        fwd, back, parse_in, parse_out = {
            "f_r": (pm.f_r, pm.f_r_inv, _parse_positive, parse_matching),
            "g_r": (pm.g_r, pm.g_r_inv, pm.parse_perm, parse_bicolored),
        }[name]
        if args.inverse:
            m = parse_out(args.inverse)
            image = back(m, r)
            result = {"input": m, "output": image, "roundtrip": fwd(image, r) == m}
        else:
            if not args.object:
                raise UsageError(f"{name} needs a permutation argument or --inverse")
            s = parse_in(args.object)
            image = fwd(s, r)
            result = {"input": s, "output": image, "roundtrip": back(image, r) == s}
    elif name in ("varphi1", "varphi2"):
        colored = name == "varphi2"
        if args.inverse:
            m = (parse_bicolored if colored else parse_matching)(args.inverse)
            res = bc.varphi2_inv(m) if colored else mt.varphi1_inv(m)
            again = bc.varphi2(*res) if colored else mt.varphi1(*res)
            keys = ("path", "w", "eps") if colored else ("path", "w")
            result = {"input": m, "output": dict(zip(keys, res)), "roundtrip": again == m}
        else:
            if not args.path or w is None or (colored and eps is None):
                raise UsageError(f"{name} needs --path and --w" + (" and --eps" if colored else ""))
            path = DyckPath(args.path)
            m = bc.varphi2(path, w, eps) if colored else mt.varphi1(path, w)
            back = bc.varphi2_inv(m) if colored else mt.varphi1_inv(m)
            result = {"input": {"path": path, "w": w, "eps": eps} if colored else {"path": path, "w": w},
                      "output": m, "roundtrip": tuple(back[1:]) == ((w, eps) if colored else (w,))}
    else:
        colored = name == "phi2"
        if not args.base:
            raise UsageError(f"{name} needs --base")
        m0 = parse_matching(args.base)
        m0 = bc.all_red(m0) if colored else m0
        if args.inverse:
            m = (parse_bicolored if colored else parse_matching)(args.inverse)
            res = bc.phi2_inv(m0, m) if colored else mt.phi1_inv(m0, m)
            again = bc.phi2(m0, *res) if colored else mt.phi1(m0, res)
            output = {"w": res[0], "eps": res[1]} if colored else {"w": res}
            result = {"input": m, "output": output, "roundtrip": again == m}
        else:
            if w is None or (colored and eps is None):
                raise UsageError(f"{name} needs --w" + (" and --eps" if colored else ""))
            m = bc.phi2(m0, w, eps) if colored else mt.phi1(m0, w)
            back = bc.phi2_inv(m0, m) if colored else (mt.phi1_inv(m0, m),)
            result = {"input": {"w": w, "eps": eps} if colored else {"w": w}, "output": m,
                      "roundtrip": back == ((w, eps) if colored else (w,))}
    if args.format == "json":
        out.write(json.dumps(jsonify(result)) + "\n")
    else:
        out.write(f"{result['output']}\n")
        out.write(f"roundtrip: {'ok' if result['roundtrip'] else 'FAILED'}\n")
    return EXIT_OK if result["roundtrip"] else EXIT_FAIL


# --- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from overwriting a --format given before it
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="sortstat", description="Sorting-index statistics and their verification.")
    p.add_argument("--format", choices=("text", "json"), default=None,
                   help="output format (default: json for dist, text otherwise)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run exhaustive identity checks")
    v.add_argument("--check", action="append", metavar="ID", help="check id (repeatable); default: all")
    v.add_argument("--max-n", type=int, default=None, metavar="K")
    v.add_argument("--bases", choices=("all", "canonical"), default="all")
    v.add_argument("--timing", action="store_true", help="add elapsed times (not byte-stable)")
    v.add_argument("--list", action="store_true", help="list check ids and exit")
    v.set_defaults(func=cmd_verify)

    families = sorted(PARSERS)
    s = sub.add_parser("stat", parents=[common], help="one statistic of one object")
    s.add_argument("family", choices=families)
    s.add_argument("object")
    s.add_argument("statistic")
    s.add_argument("--base", help="base object for relative statistics")
    s.add_argument("--r", help="restriction sequence, e.g. 2,2,3")
    s.set_defaults(func=cmd_stat)

    d = sub.add_parser("dist", parents=[common], help="joint distribution as a polynomial")
    d.add_argument("family", choices=families)
    d.add_argument("--r", help="restriction sequence")
    d.add_argument("--path", help="Dyck path for matching families")
    d.add_argument("--stats", required=True, help="comma list, each optionally name:var")
    d.add_argument("--base")
    d.set_defaults(func=cmd_dist)

    m = sub.add_parser("map", parents=[common], help="apply a bijection and check its round trip")
    m.add_argument("bijection", choices=("f_r", "g_r", "phi1", "phi2", "varphi1", "varphi2"))
    m.add_argument("object", nargs="?")
    m.add_argument("--r")
    m.add_argument("--path")
    m.add_argument("--w")
    m.add_argument("--eps")
    m.add_argument("--base")
    m.add_argument("--inverse", metavar="OBJ", help="apply the inverse map to OBJ")
    m.set_defaults(func=cmd_map)

    e = sub.add_parser("enumerate", parents=[common], help="list a family")
    e.add_argument("family", choices=families)
    e.add_argument("--r")
    e.add_argument("--path")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # a signed window such as -5,1,3 is an operand, not an option
    argv = [" " + a if _SIGNED_WINDOW.match(a) else a for a in argv]
    try:
        args, extra = parser.parse_known_args(argv)
        if extra and args.command == "map" and args.object is None and len(extra) == 1:
            args.object, extra = extra[0], []
        if extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    if args.format is None:
        args.format = "json" if args.command == "dist" else "text"
    if args.command == "verify" and args.list:
        for c in CATALOGUE.values():
            out.write(f"{c.id:18s} n<={c.default_max_n}  {c.statement}\n")
        return EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ValueError, KeyError) as exc:
        sys.stderr.write(f"sortstat: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
