"""Command-line front end.

Exit status: 0 on success, 1 when a budget is exceeded or an audit finds a
mismatch, 2 on usage errors.  Counts are always printed as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import census as cz
from . import counting as ct
from . import mixedcode as mc
from .mixedcode import CodeType, MixedAmbient
from .ringcore import EisensteinParams

EXIT_OK, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2 itself; keep it explicit
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _ambient_args(p: argparse.ArgumentParser, additive: bool = False) -> None:
    p.add_argument("--p", type=int, required=True, help="prime")
    p.add_argument("--e", type=int, required=True, help="nilpotency index (mu)")
    p.add_argument("--n1", type=int, help="hi block length")
    p.add_argument("--n2", type=int, help="lo block length")
    if additive:
        p.add_argument("--r", type=int, help="Galois ring rank")
        p.add_argument("--k", type=int, help="Eisenstein degree")
        p.add_argument("--t", type=int, help="y-exponent in the second relation")
        p.add_argument("--n", type=int, help="additive code length")


def _common(p: argparse.ArgumentParser, threads: bool = False) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--nonzero", action="store_true", help="leave out the zero code")
    p.add_argument("--budget", type=float, help="census work-unit cap")
    if threads:
        p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chaincode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="closed-form counts")
    c.add_argument("kind", choices=("so", "sd", "lcd", "acd"))
    _ambient_args(c, additive=True)
    c.add_argument("--type", dest="code_type", help='restrict to one type, e.g. "0,1;0"')
    c.add_argument("--variant", choices=ct.VARIANTS, help="theta_mu variant (default: oracle-selected)")
    _common(c)

    s = sub.add_parser("census", help="exhaustive enumeration")
    s.add_argument("predicate", choices=tuple(cz.PREDICATE_ALIASES))
    _ambient_args(s)
    _common(s, threads=True)

    k = sub.add_parser("classify", help="orbits under *-equivalence")
    k.add_argument("predicate", choices=tuple(cz.PREDICATE_ALIASES))
    _ambient_args(k)
    _common(k, threads=True)

    d = sub.add_parser("code", help="inspect one code file")
    d.add_argument("action", choices=("type", "dual", "size", "predicates", "standard-form", "torsion", "distance"))
    d.add_argument("--in", dest="path", required=True)
    d.add_argument("--format", choices=("json", "csv"), default="json")

    a = sub.add_parser("audit", help="formula against census on the reference grid")
    a.add_argument("--threads", type=int, default=1)
    a.add_argument("--budget", type=float)
    a.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


# -- helpers ------------------------------------------------------------------


def _mixed(ns) -> MixedAmbient:
    if ns.n1 is None or ns.n2 is None:
        raise UsageError("--n1 and --n2 are required")
    return MixedAmbient(ns.p, ns.e, ns.n1, ns.n2)


def _lengths(ns) -> tuple[int, int]:
    """Block-length from --n1/--n2 or from the additive parameters."""
    if ns.n is not None:
        params = EisensteinParams(ns.p, ns.e, ns.r or 1, ns.k or 2, ns.t or 1)
        return ct.additive_lengths(params, ns.n)
    if ns.n1 is None or ns.n2 is None:
        raise UsageError("give --n1/--n2 or --n with --r/--k/--t")
    return ns.n1, ns.n2


def _parse_type(text: str) -> CodeType:
    try:
        ks, ls = text.split(";")
        return CodeType(tuple(int(x) for x in ks.split(",")), tuple(int(x) for x in ls.split(",") if x))
    except ValueError:
        raise UsageError(f"bad type {text!r}; expected like 0,1;0") from None


def _csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _emit(payload: dict, rows: Sequence[dict], fmt: str) -> str:
    if fmt == "csv":
        return _csv(rows)
    return json.dumps(payload, indent=2) + "\n"


def _budget(ns) -> int | None:
    return None if ns.budget is None else int(ns.budget)


# -- verbs --------------------------------------------------------------------


def run_count(ns) -> tuple[str, int]:
    n1, n2 = _lengths(ns)
    p, e = ns.p, ns.e
    out: dict = {"kind": ns.kind, "p": p, "e": e, "n1": n1, "n2": n2}
    if ns.code_type:
        if ns.kind != "so":
            raise UsageError("--type applies to so counts only")
        t = _parse_type(ns.code_type)
        value = ct.count_so_typed(p, e, n1, n2, t.ks, t.ls, ns.variant)
        out["type"] = str(t)
    elif ns.kind == "so":
        value = ct.count_so_total(p, e, n1, n2, ns.variant)
    elif ns.kind == "sd":
        value = ct.count_sd_total(p, e, n1, n2, ns.variant)
    else:
        value = ct.count_lcd_mixed(n1, n2, p, e)
    # every total above includes the zero code except self-dual ones, which cannot
    if ns.nonzero and ns.kind != "sd":
        value -= 1
    if ns.kind in ("lcd", "acd") and not ns.nonzero:
        out["note"] = f"includes the zero code; --nonzero gives {value - 1}"
    out["count"] = str(value)
    return _emit(out, [out], ns.format), EXIT_OK


def run_census(ns) -> tuple[str, int]:
    a = _mixed(ns)
    rep = cz.census_count(a, ns.predicate, threads=ns.threads, budget=_budget(ns))
    data = rep.to_dict()
    if ns.nonzero:
        zero = CodeType((0,) * a.mu, (0,) * (a.mu - 1))
        if rep.by_type.get(zero):
            data["total"] = str(rep.total - 1)
            data["by_type"] = [
                {**row, "count": str(int(row["count"]) - 1)} if (tuple(row["k"]), tuple(row["l"])) == (zero.ks, zero.ls) else row
                for row in data["by_type"]
            ]
            data["by_type"] = [row for row in data["by_type"] if row["count"] != "0"]
    rows = [{"k": " ".join(map(str, r["k"])), "l": " ".join(map(str, r["l"])), "count": r["count"]} for r in data["by_type"]]
    rows.append({"k": "total", "l": "", "count": data["total"]})
    return _emit(data, rows, ns.format), EXIT_OK


def run_classify(ns) -> tuple[str, int]:
    a = _mixed(ns)
    rep = cz.classify(a, ns.predicate, nonzero=ns.nonzero, budget=_budget(ns))
    data = rep.to_dict()
    rows = [
        {
            "generators": json.dumps(o["generators"]),
            "k": " ".join(map(str, o["type"]["k"])),
            "l": " ".join(map(str, o["type"]["l"])),
            "class_size": o["class_size"],
            "hom_distance": o["hom_distance"],
            "plotkin": o["plotkin"],
        }
        for o in data["orbits"]
    ]
    return _emit(data, rows, ns.format), EXIT_OK


def _load(path: str) -> mc.MixedCode:
    from .additive import read_additive_file

    if not Path(path).is_file():
        raise UsageError(f"no such file: {path}")
    data = json.loads(Path(path).read_text())
    if {"r", "k", "t", "n"} <= set(data):
        return read_additive_file(path).image
    return mc.read_code_file(path)


def run_code(ns) -> tuple[str, int]:
    C = _load(ns.path)
    act = ns.action
    if act == "type":
        out = mc.type_of(C).to_dict()
    elif act == "dual":
        out = mc.code_to_dict(mc.dual(C))
    elif act == "size":
        out = {"cardinality": str(mc.cardinality(C)), "log_p": mc.log_cardinality(C)}
    elif act == "predicates":
        out = {
            "self_orthogonal": mc.is_self_orthogonal(C),
            "self_dual": mc.is_self_dual(C),
            "lcd": mc.is_lcd(C),
        }
    elif act == "standard-form":
        hi, lo, rows = mc.standard_form(C)
        out = {"hi_permutation": list(hi), "lo_permutation": list(lo), "rows": [list(r) for r in rows]}
    elif act == "torsion":
        a = C.ambient
        out = {
            "X": [[list(r) for r in mc.torsion(C, i, "X")] for i in range(1, a.mu + 1)],
            "Y": [[list(r) for r in mc.torsion(C, j, "Y")] for j in range(1, a.mu)],
        }
    else:
        out = {"hom_distance": mc.min_hom_distance(C)}
    flat = {k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in out.items()}
    return _emit(out, [flat], ns.format), EXIT_OK


def run_audit(ns) -> tuple[str, int]:
    report = cz.audit(threads=ns.threads, budget=_budget(ns))
    bad = [
        pt for pt in report["points"]
        if pt.get("match") is False or pt.get("reference_match") is False or pt.get("status") == "skipped"
    ]
    rows = [
        {
            "ambient": MixedAmbient(**{"p": pt["ambient"]["p"], "mu": pt["ambient"]["e"], "n1": pt["ambient"]["n1"], "n2": pt["ambient"]["n2"]}).label(),
            "predicate": pt["predicate"],
            "census": pt.get("census", ""),
            "formula": pt.get("formula", ""),
            "match": pt.get("match", ""),
            "reference": pt.get("reference", ""),
            "reference_match": pt.get("reference_match", ""),
        }
        for pt in report["points"]
    ]
    return _emit(report, rows, ns.format), (EXIT_BUDGET if bad else EXIT_OK)


VERBS = {"count": run_count, "census": run_census, "classify": run_classify, "code": run_code, "audit": run_audit}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        text, status = VERBS[ns.verb](ns)
    except UsageError as exc:
        print(f"chaincode: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except cz.BudgetExceeded as exc:
        print(f"chaincode: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, NotImplementedError, json.JSONDecodeError) as exc:
        print(f"chaincode: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
