"""Exhaustive enumeration of codes, orbit classification and the lift oracle.

Codes are built one coordinate at a time, right to left.  A code on
coordinates i..n-1 is a code K on i+1..n-1 plus at most one new Howell row
x = (0.., p^v, y): y runs over canonical coset representatives of
S / K with S = {y : p^(mu-v) y in K}.  For self-orthogonal censuses S is cut
down to the orthogonal complement of K and x must be isotropic; this prunes
the search because every subcode of a self-orthogonal code is
self-orthogonal.
"""

from __future__ import annotations

import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from . import kernel
from . import modmatrix as mm
from .mixedcode import (
    CodeType,
    MixedAmbient,
    MixedCode,
    cardinality,
    dual_basis,
    log_cardinality,
    min_hom_distance,
    type_of,
)
from .mixedcode import is_self_orthogonal as mc_is_self_orthogonal

Row = tuple[int, ...]
Basis = tuple[Row, ...]

PREDICATES = ("all", "self_orthogonal", "self_dual", "lcd")
PREDICATE_ALIASES = {"all": "all", "so": "self_orthogonal", "sd": "self_dual", "lcd": "lcd"}
DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


def budget_limit() -> int:
    raw = os.environ.get("CHAINCODE_BUDGET")
    return int(float(raw)) if raw else DEFAULT_BUDGET


def work_units(ambient: MixedAmbient, predicate: str) -> int:
    """Estimated cost: |A| for pruned (self-orthogonal) searches, |A|^(3/2) otherwise."""
    predicate = PREDICATE_ALIASES.get(predicate, predicate)
    if predicate in ("self_orthogonal", "self_dual"):
        return ambient.size
    return ambient.size * math.isqrt(ambient.size)


def check_budget(ambient: MixedAmbient, predicate: str, budget: int | None = None) -> None:
    limit = budget_limit() if budget is None else budget
    need = work_units(ambient, predicate)
    if need > limit:
        raise BudgetExceeded(
            f"{ambient.label()} {predicate}: {need} work units exceed the budget of {limit}"
        )


# -- enumeration ------------------------------------------------------------


class _Enumerator:
    def __init__(self, ambient: MixedAmbient, so: bool) -> None:
        self.a = ambient
        self.so = so
        self.gens = ambient.generators()
        self.lo_mask = ambient.lo_mask if so else None

    def extensions(self, K: Basis, i: int) -> Iterator[Basis]:
        """Codes on coordinates i.. whose part on i+1.. is exactly K."""
        a = self.a
        p, mu, n, mod = a.p, a.mu, a.n, a.mod
        yield K
        tail = self.gens[i + 1 :]
        kcols = mm.pivot_cols(K)
        kval = {c: r[c] for c, r in zip(kcols, K)}
        kperp = dual_basis(a, K) if self.so and K else None
        for v in range(1 if i >= a.n1 else 0, mu):
            S = mm.colon_rows(K, tail, mu - v, n, p, mu) if tail else ()
            if kperp is not None and S:
                S = mm.intersect_rows(S, kperp, n, p, mu)
            scols = mm.pivot_cols(S)
            ranges = [kval.get(c, mod) // r[c] for c, r in zip(scols, S)]
            head = tuple(p**v if j == i else 0 for j in range(n))
            for x in kernel.coset_reps(S, ranges, K, kcols, head, self.lo_mask, p, mod):
                yield (x,) + K

    def level(self, i: int) -> list[Basis]:
        """All codes supported on coordinates i..n-1."""
        codes: list[Basis] = [()]
        for j in range(self.a.n - 1, i - 1, -1):
            codes = [C for K in codes for C in self.extensions(K, j)]
        return codes


def _iter_codes(ambient: MixedAmbient, so: bool) -> Iterator[Basis]:
    en = _Enumerator(ambient, so)
    for K in en.level(1):
        yield from en.extensions(K, 0)


def enumerate_codes(
    ambient: MixedAmbient, self_orthogonal_only: bool = False, budget: int | None = None
) -> Iterator[MixedCode]:
    """Every submodule of the ambient exactly once (optionally only self-orthogonal ones)."""
    check_budget(ambient, "self_orthogonal" if self_orthogonal_only else "all", budget)
    for B in _iter_codes(ambient, self_orthogonal_only):
        yield MixedCode(ambient, B)


def closure_enumeration(ambient: MixedAmbient) -> set[Basis]:
    """Independent oracle: all submodules by breadth-first closure from {0}.

    Each step adjoins one cyclic submodule to a known submodule as explicit
    element sets; no Howell-form bookkeeping is involved until the final
    conversion used for comparison.
    """
    mod, n = ambient.mod, ambient.n
    elements = list(product(*([range(mod)] * ambient.n1 + [range(0, mod, ambient.p)] * ambient.n2)))
    cyclic = {frozenset(tuple(k * x % mod for x in g) for k in range(mod)) for g in elements}
    zero = frozenset([(0,) * n])
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for S in frontier:
            for G in cyclic:
                if G <= S:
                    continue
                T = frozenset(tuple((a + b) % mod for a, b in zip(s, g)) for s in S for g in G)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return {mm.howell_rows(sorted(S), ambient.p, ambient.mu) for S in seen}


# -- census -----------------------------------------------------------------


@dataclass
class CensusReport:
    ambient: MixedAmbient
    predicate: str
    total: int
    by_type: dict[CodeType, int]
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        rows = sorted(self.by_type.items(), key=lambda kv: (kv[0].ks, kv[0].ls))
        return {
            "ambient": self.ambient.to_dict(),
            "predicate": self.predicate,
            "total": str(self.total),
            "by_type": [{"k": list(t.ks), "l": list(t.ls), "count": str(c)} for t, c in rows],
        }


def _accept(B: Basis, ambient: MixedAmbient, predicate: str) -> bool:
    if predicate in ("all", "self_orthogonal"):
        return True
    if predicate == "self_dual":
        return 2 * log_cardinality(MixedCode(ambient, B)) == ambient.log_size
    # lcd: C + C^perp is everything
    s = mm.howell_rows(B + dual_basis(ambient, B), ambient.p, ambient.mu)
    return log_cardinality(MixedCode(ambient, s)) == ambient.log_size


def _census_chunk(args) -> Counter:
    ambient, predicate, chunk = args
    en = _Enumerator(ambient, predicate in ("self_orthogonal", "self_dual"))
    counts: Counter = Counter()
    for K in chunk:
        for B in en.extensions(K, 0):
            if _accept(B, ambient, predicate):
                counts[type_of(MixedCode(ambient, B))] += 1
    return counts


def census_count(
    ambient: MixedAmbient, predicate: str, threads: int = 1, budget: int | None = None
) -> CensusReport:
    predicate = PREDICATE_ALIASES.get(predicate, predicate)
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    check_budget(ambient, predicate, budget)
    t0 = time.perf_counter()
    en = _Enumerator(ambient, predicate in ("self_orthogonal", "self_dual"))
    suffix = en.level(1)
    counts: Counter = Counter()
    if threads > 1 and len(suffix) > 1:
        chunks = [suffix[j::threads] for j in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_census_chunk, [(ambient, predicate, c) for c in chunks]):
                counts.update(part)
    else:
        counts = _census_chunk((ambient, predicate, suffix))
    return CensusReport(ambient, predicate, sum(counts.values()), dict(counts), time.perf_counter() - t0)


# -- lifts ------------------------------------------------------------------


@dataclass
class LiftStats:
    """Bookkeeping from one lift search; ``collisions`` counts codes reached twice."""

    middles: int = 0
    candidates: int = 0
    collisions: int = 0


def _min_generators(rows: Sequence[Row], base: Basis, p: int, mu: int) -> list[Row]:
    """Rows whose images form a basis of span(rows + base) / span(base)."""
    kept: list[Row] = []
    span = mm.howell_rows(base, p, mu)
    for r in rows:
        nxt = mm.howell_rows(span + (r,), p, mu)
        if nxt != span:
            kept.append(r)
            span = nxt
    return kept


def lift_ambient(lower: MixedAmbient) -> MixedAmbient:
    return MixedAmbient(lower.p, lower.mu + 2, lower.n1, lower.n2)


def lift_reduction(C: MixedCode) -> MixedCode:
    """The code one lifts from: {y : p*y in C}, read modulo p^(mu-2)."""
    a = C.ambient
    lower = MixedAmbient(a.p, a.mu - 2, a.n1, a.n2)
    J = mm.colon_rows(C.basis, a.generators(), 1, a.n, a.p, a.mu)
    m = lower.mod
    return MixedCode(lower, mm.howell_rows([tuple(x % m for x in r) for r in J], a.p, lower.mu))


def lift_enumerate(
    C_lower: MixedCode, target: CodeType | None = None, stats: LiftStats | None = None
) -> Iterator[MixedCode]:
    """Every self-orthogonal code two levels up that reduces to ``C_lower``.

    A lift C is pinned by J = {y : p*y in C}: J contains the socle, reduces to
    C_lower, and pJ <= C <= J.  The search runs over the free F_p entries of
    J (a correction p^(mu-2)*g for each lower generator plus a subspace of
    the layer killed by p^2 modulo the socle), then over the subspaces of
    J / pJ.  Nothing in here consults a counting formula.
    """
    lower = C_lower.ambient
    a = lift_ambient(lower)
    p, mu, n = a.p, a.mu, a.n
    if mu < 4:
        raise ValueError("lifts start from the (mu-2)-ladder with mu >= 4")
    if not mc_is_self_orthogonal(C_lower):
        raise ValueError("the lower code must be self-orthogonal")
    if target is not None:
        if len(target.ks) != mu or len(target.ls) != mu - 1:
            raise ValueError("target type has the wrong lengths")
        if CodeType(_contract(target.ks), _contract(target.ls)) != type_of(C_lower):
            return
    stats = stats if stats is not None else LiftStats()
    mod = a.mod
    mid = p ** (mu - 2)
    socle = tuple(tuple(p ** (mu - 1) if j == i else 0 for j in range(n)) for i in range(n))
    bhat = [tuple(r) for r in C_lower.basis]
    seen_J: set[Basis] = set()
    emitted: set[Basis] = set()
    for V in mm.rref_subspaces(n, p):
        vrows = [tuple(mid * x for x in v) for v in V]
        # corrections only matter modulo V: keep them off V's pivot columns
        vpiv = {next(j for j, x in enumerate(v) if x) for v in V}
        free = [j for j in range(n) if j not in vpiv]
        for g in product(product(range(p), repeat=len(free)), repeat=len(bhat)):
            gens = []
            for b, gi in zip(bhat, g):
                row = list(b)
                for j, x in zip(free, gi):
                    row[j] = (row[j] + mid * x) % mod
                gens.append(tuple(row))
            J = mm.howell_rows(gens + vrows + list(socle), p, mu)
            if J in seen_J:
                continue
            seen_J.add(J)
            stats.middles += 1
            pJ = mm.howell_rows([tuple(p * x % mod for x in r) for r in J], p, mu)
            basis = _min_generators(J, pJ, p, mu)
            for U in mm.rref_subspaces(len(basis), p):
                rows = [tuple(sum(u * r[j] for u, r in zip(urow, basis)) % mod for j in range(n)) for urow in U]
                C = mm.howell_rows(rows + list(pJ), p, mu)
                stats.candidates += 1
                if mm.colon_rows(C, a.generators(), 1, n, p, mu) != J:
                    continue
                code = MixedCode(a, C)
                if not mc_is_self_orthogonal(code):
                    continue
                if target is not None and type_of(code) != target:
                    continue
                if C in emitted:
                    stats.collisions += 1
                    continue
                emitted.add(C)
                yield code


def _contract(t: Sequence[int]) -> tuple[int, ...]:
    return (t[0] + t[1],) + tuple(t[2:-1])


@dataclass(frozen=True)
class ThetaSelection:
    """Outcome of the lift oracle that picks the theta_mu variant."""

    selected: str
    ambient: MixedAmbient
    target: CodeType
    lift_count: int
    values: dict

    def to_dict(self) -> dict:
        return {
            "ambient": self.ambient.to_dict(),
            "type": str(self.target),
            "lifts_counted": str(self.lift_count),
            "variants": {
                v: {"value": str(x), "integral": x.denominator == 1, "matches": x == self.lift_count}
                for v, x in self.values.items()
            },
            "selected": self.selected,
        }


ORACLE_TYPE = CodeType((0, 0, 0, 1), (0, 0, 1))


@lru_cache(maxsize=None)
def select_theta_variant(p: int = 3, n1: int = 2, n2: int = 2, target: CodeType = ORACLE_TYPE) -> ThetaSelection:
    """Count the lifts of the zero code to ``target`` and keep the variant that agrees.

    Exactly one variant must reproduce the count; anything else is an error.
    """
    from .counting import VARIANTS, lift_count_value

    mu = len(target.ks)
    lower = MixedAmbient(p, mu - 2, n1, n2)
    count = sum(1 for _ in lift_enumerate(MixedCode(lower, ()), target))
    values = {v: lift_count_value(mu, target.ks, target.ls, n1, n2, p, v) for v in VARIANTS}
    hits = [v for v, x in values.items() if x == count]
    if len(hits) != 1:
        raise RuntimeError(f"lift oracle is ambiguous: {count} lifts, variant values {values}")
    return ThetaSelection(hits[0], MixedAmbient(p, mu, n1, n2), target, count, values)


# -- *-equivalence ----------------------------------------------------------


def default_params(ambient: MixedAmbient):
    """The Eisenstein context whose Psi-image is this ambient, with r = 1.

    Block-length (N, N) comes from R_e = Z_{p^e}[y]/<y^2 - p, p^(e-1) y>
    and (N, 0) from Z_{p^e} itself.
    """
    from .ringcore import EisensteinParams

    if ambient.n1 == ambient.n2:
        return EisensteinParams(ambient.p, ambient.mu, 1, 2, 1), ambient.n1
    if ambient.n2 == 0:
        return EisensteinParams(ambient.p, ambient.mu, 1, 1, 1), ambient.n1
    raise ValueError(f"no default ring context for {ambient.label()}; pass one explicitly")


@dataclass(frozen=True)
class Group:
    params: object
    n: int
    elements: tuple

    @classmethod
    def of(cls, params, n: int) -> Group:
        from .additive import monomial_group

        return cls(params, n, tuple(monomial_group(params, n)))

    def __len__(self) -> int:
        return len(self.elements)

    def check(self, ambient: MixedAmbient) -> None:
        pr = self.params
        if (ambient.p, ambient.mu, ambient.n1, ambient.n2) != (pr.p, pr.e, self.n * pr.n_hi, self.n * pr.n_lo):
            raise ValueError(f"group context does not fit {ambient.label()}")

    def orbit(self, C: MixedCode) -> set[Basis]:
        from .additive import monomial_image_code

        return {monomial_image_code(C, U, self.params).basis for U in self.elements}


def canonical_rep(C: MixedCode, group: Group) -> MixedCode:
    """Smallest basis (lexicographic) over the orbit of C."""
    group.check(C.ambient)
    return MixedCode(C.ambient, min(group.orbit(C)))


@dataclass
class OrbitRecord:
    """One equivalence class inside a predicate class.

    The group need not preserve the predicate (unit scaling multiplies each
    coordinate's share of the form by u^2), so ``class_size`` counts the orbit
    members that pass it and ``rep`` is the smallest of those.
    """

    rep: MixedCode
    code_type: CodeType
    orbit_size: int
    class_size: int
    hom_distance: int | None
    plotkin: bool | None

    def to_dict(self) -> dict:
        return {
            "generators": [list(r) for r in self.rep.generators()],
            "type": self.code_type.to_dict(),
            "orbit_size": self.orbit_size,
            "class_size": self.class_size,
            "hom_distance": self.hom_distance,
            "plotkin": self.plotkin,
        }


@dataclass
class OrbitReport:
    ambient: MixedAmbient
    predicate: str
    orbits: list[OrbitRecord]
    codes: int

    @property
    def count(self) -> int:
        return len(self.orbits)

    def weight_split(self) -> dict[int | None, int]:
        return dict(sorted(Counter(o.hom_distance for o in self.orbits).items(), key=lambda kv: (kv[0] is None, kv[0])))

    def to_dict(self) -> dict:
        return {
            "ambient": self.ambient.to_dict(),
            "predicate": self.predicate,
            "total": str(self.count),
            "codes": str(self.codes),
            "orbits": [o.to_dict() for o in self.orbits],
        }


def _orbit_invariants(C: MixedCode, group: Group) -> tuple[int | None, bool | None]:
    from .additive import plotkin_achieved

    a = C.ambient
    if a.mu != 2 or a.n1 != a.n2 or C.is_zero():
        return None, None
    d = min_hom_distance(C)
    return d, plotkin_achieved(a.p, group.n, cardinality(C), d)


def classify(
    ambient: MixedAmbient,
    predicate: str,
    group: Group | None = None,
    nonzero: bool = True,
    budget: int | None = None,
) -> OrbitReport:
    """Orbit representatives of the codes passing ``predicate``."""
    predicate = PREDICATE_ALIASES.get(predicate, predicate)
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    check_budget(ambient, predicate, budget)
    if group is None:
        group = Group.of(*default_params(ambient))
    group.check(ambient)
    codes = [B for B in _iter_codes(ambient, predicate in ("self_orthogonal", "self_dual")) if _accept(B, ambient, predicate)]
    if nonzero:
        codes = [B for B in codes if B]
    members = set(codes)
    remaining = set(codes)
    orbits = []
    for B in sorted(codes):
        if B not in remaining:
            continue
        orb = group.orbit(MixedCode(ambient, B))
        inside = orb & members
        remaining -= inside
        rep = MixedCode(ambient, min(inside))
        d, plot = _orbit_invariants(rep, group)
        orbits.append(OrbitRecord(rep, type_of(rep), len(orb), len(inside), d, plot))
    orbits.sort(key=lambda o: o.rep.basis)
    return OrbitReport(ambient, predicate, orbits, len(codes))


# -- audit ------------------------------------------------------------------


@dataclass(frozen=True)
class GridPoint:
    ambient: MixedAmbient
    predicate: str
    reference: int | None = None
    reference_excludes: int = 0  # codes the reference leaves out (zero or trivial code)


DEFAULT_GRID = (
    GridPoint(MixedAmbient(3, 2, 2, 2), "self_orthogonal", 5, 1),
    GridPoint(MixedAmbient(3, 2, 3, 3), "self_orthogonal", 2635, 1),
    GridPoint(MixedAmbient(5, 2, 2, 2), "self_dual", 22),
    GridPoint(MixedAmbient(5, 3, 2, 2), "self_dual", 172),
    GridPoint(MixedAmbient(3, 3, 2, 2), "self_orthogonal", 499, 1),
    GridPoint(MixedAmbient(3, 4, 2, 2), "self_orthogonal", 1065, 1),
    GridPoint(MixedAmbient(2, 2, 2, 2), "lcd", 113, 1),
    GridPoint(MixedAmbient(3, 2, 2, 2), "lcd", 883, 1),
    GridPoint(MixedAmbient(3, 2, 2, 2), "self_dual", 0),
    GridPoint(MixedAmbient(3, 2, 3, 3), "self_dual", 0),
)


def formula_value(ambient: MixedAmbient, predicate: str, variant: str | None = None) -> Fraction | int:
    """Closed-form count for a grid point (a Fraction when a variant breaks integrality)."""
    from . import counting as ct

    p, e, n1, n2 = ambient.p, ambient.mu, ambient.n1, ambient.n2
    if predicate == "lcd":
        return ct.count_lcd_mixed(n1, n2, p, e)
    if predicate == "self_dual":
        return ct.count_sd_total(p, e, n1, n2, variant)
    if predicate == "self_orthogonal":
        return sum(
            (ct.count_so_typed_value(p, e, n1, n2, k, l, variant) for k in ct.k_set(n1, e) for l in ct.k_set(n2, e - 1)),
            Fraction(0),
        )
    raise ValueError(f"no closed form for predicate {predicate!r}")


def _type_rows(report: CensusReport, variants: Sequence[str]) -> list[dict]:
    from . import counting as ct

    a = report.ambient
    rows = []
    for k in ct.k_set(a.n1, a.mu):
        for l in ct.k_set(a.n2, a.mu - 1):
            t = CodeType(tuple(k), tuple(l))
            got = report.by_type.get(t, 0)
            vals = {}
            for v in variants:
                try:
                    vals[v] = ct.count_so_typed_value(a.p, a.mu, a.n1, a.n2, k, l, v)
                except ct.NonIntegralCount:
                    vals[v] = None
            if got == 0 and all(x == 0 for x in vals.values()):
                continue
            rows.append(
                {
                    "type": str(t),
                    "census": str(got),
                    **{v: (None if x is None else str(x)) for v, x in vals.items()},
                    **{f"{v}_integral": (x is not None and x.denominator == 1) for v, x in vals.items()},
                    **{f"{v}_match": x == got for v, x in vals.items()},
                }
            )
    return rows


def lift_table(ambient: MixedAmbient, variants: Sequence[str]) -> dict:
    """Lift route over a whole ambient: per target type, the lift count of each lower code."""
    from . import counting as ct

    lower = MixedAmbient(ambient.p, ambient.mu - 2, ambient.n1, ambient.n2)
    per: dict[CodeType, list[int]] = {}
    stats = LiftStats()
    for B in _iter_codes(lower, True):
        counts = Counter(type_of(C) for C in lift_enumerate(MixedCode(lower, B), stats=stats))
        for t, c in counts.items():
            per.setdefault(t, []).append(c)
    rows = []
    for t in sorted(per, key=lambda t: (t.ks, t.ls)):
        f = {v: ct.lift_count_value(ambient.mu, t.ks, t.ls, ambient.n1, ambient.n2, ambient.p, v) for v in variants}
        rows.append(
            {
                "type": str(t),
                "lower_codes": len(per[t]),
                "lifts_each": sorted(set(per[t])),
                **{v: str(x) for v, x in f.items()},
                **{f"{v}_match": set(per[t]) == {x} for v, x in f.items()},
            }
        )
    total = sum(sum(v) for v in per.values())
    return {"total": str(total), "collisions": stats.collisions, "by_type": rows}


def audit(grid: Sequence[GridPoint] = DEFAULT_GRID, threads: int = 1, budget: int | None = None) -> dict:
    """Formula against census on every grid point; mismatches are data, not errors."""
    from . import counting as ct

    selection = select_theta_variant()
    points = []
    for gp in grid:
        a, pred = gp.ambient, PREDICATE_ALIASES.get(gp.predicate, gp.predicate)
        entry: dict = {"ambient": a.to_dict(), "predicate": pred}
        try:
            report = census_count(a, pred, threads=threads, budget=budget)
        except BudgetExceeded as exc:
            entry.update(status="skipped", reason=str(exc))
            points.append(entry)
            continue
        formula = formula_value(a, pred, selection.selected)
        entry.update(
            census=str(report.total),
            formula=str(formula),
            match=formula == report.total,
            seconds=round(report.elapsed, 3),
        )
        if gp.reference is not None:
            entry.update(
                reference=str(gp.reference),
                reference_excludes=gp.reference_excludes,
                reference_match=report.total - gp.reference_excludes == gp.reference,
            )
        if pred == "self_orthogonal" and a.mu >= 4:
            entry["by_type"] = _type_rows(report, ct.VARIANTS)
            entry["lifts"] = lift_table(a, ct.VARIANTS)
            entry["lifts_match_census"] = entry["lifts"]["total"] == str(report.total)
        points.append(entry)
    ok = all(pt.get("match", True) for pt in points)
    return {"theta_mu": selection.to_dict(), "points": points, "all_match": ok}
