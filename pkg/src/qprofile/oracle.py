"""Brute-force enumeration of subspaces and partial maps, and reports that
compare enumeration against the closed forms in ``qprofile.counting``.

Enumeration never consults the formulas; they enter only when a report
lines up the two columns.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from qprofile import counting
from qprofile.ffield import FieldCtx
from qprofile.fqlinalg import (
    MatrixFq,
    Subspace,
    format_matrix,
    full_space,
    image,
    span,
    subspace_sum,
    zero_subspace,
)
from qprofile.fqpoly import PolyFq, char_poly, companion_matrix, format_poly, is_irreducible, smallest_irreducible
from qprofile.partition import Partition, as_partition, partitions_of
from qprofile.profiles import (
    PartialMap,
    all_vectors,
    defect_chain,
    defect_dimensions,
    dual_restriction,
    enumerate_extensions,
    is_simple_map,
    profile,
)

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    env = os.environ.get("QPROFILE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _charge(cost: int, budget: int | None, what: str):
    budget = default_budget() if budget is None else budget
    if cost > budget:
        raise BudgetExceeded(f"{what} needs about {cost} steps, over the budget of {budget}")


def subspace_enumeration_cost(q: int, n: int, k: int) -> int:
    return q ** (k * (n - k)) * comb(n, k)


def enumerate_with_pivots(ctx: FieldCtx, n: int, pivots: Sequence[int]) -> Iterator[Subspace]:
    """All subspaces whose RREF basis has the given pivot columns."""
    pivset = set(pivots)
    free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivset]
    for vals in itertools.product(range(ctx.q), repeat=len(free)):
        rows = [[0] * n for _ in pivots]
        for i, pc in enumerate(pivots):
            rows[i][pc] = 1
        for (i, j), v in zip(free, vals):
            rows[i][j] = v
        yield Subspace(ctx, n, tuple(tuple(r) for r in rows))


def enumerate_subspaces(ctx: FieldCtx, n: int, k: int, budget: int | None = None) -> Iterator[Subspace]:
    """Every k-dimensional subspace of F_q^n once: pivot sets in lexicographic
    order, then free entries in lexicographic code order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    _charge(subspace_enumeration_cost(ctx.q, n, k), budget, f"enumerating {k}-subspaces of F_{ctx.q}^{n}")
    for pivots in itertools.combinations(range(n), k):
        yield from enumerate_with_pivots(ctx, n, pivots)


def all_subspaces(ctx: FieldCtx, n: int, budget: int | None = None) -> Iterator[Subspace]:
    _charge(sum(subspace_enumeration_cost(ctx.q, n, k) for k in range(n + 1)), budget, f"enumerating F_{ctx.q}^{n}")
    for k in range(n + 1):
        yield from enumerate_subspaces(ctx, n, k, budget=None if budget is None else budget)


def _sorted_counts(counts) -> dict[Partition, int]:
    return {mu: counts[mu] for mu in sorted(counts, reverse=True)}


@dataclass
class ProfileHistogram:
    """Profile counts over the nonzero subspaces; the zero subspace is tallied apart."""

    ctx: FieldCtx
    n: int
    operator: MatrixFq
    dim_filter: int | None
    counts: dict[Partition, int]
    zero_subspaces: int = 0

    def total(self) -> int:
        return sum(self.counts.values()) + self.zero_subspaces

    def to_dict(self) -> dict:
        return {
            "q": self.ctx.q,
            "n": self.n,
            "operator": format_matrix(self.operator),
            "dim_filter": self.dim_filter,
            "zero_subspaces": self.zero_subspaces,
            "counts": [{"partition": str(mu), "count": c} for mu, c in self.counts.items()],
        }


def _histogram_task(args) -> Counter:
    t, k, pivots = args
    out = Counter()
    for w in enumerate_with_pivots(t.ctx, t.nrows, pivots):
        out[profile(t, w)] += 1
    return out


def profile_histogram(
    t: MatrixFq, dim_filter: int | None = None, budget: int | None = None, workers: int = 1
) -> ProfileHistogram:
    """Histogram of profile(t, W) over all subspaces W (or those of one dimension).

    Work is split by pivot pattern; with ``workers > 1`` the patterns run in
    worker processes and the merged result equals the serial one.
    """
    ctx, n = t.ctx, t.nrows
    dims = range(n + 1) if dim_filter is None else [dim_filter]
    _charge(sum(subspace_enumeration_cost(ctx.q, n, k) for k in dims), budget, f"profile histogram over F_{ctx.q}^{n}")
    tasks = [(t, k, piv) for k in dims for piv in itertools.combinations(range(n), k)]
    merged = Counter()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_histogram_task, tasks):
                merged.update(part)
    else:
        for task in tasks:
            merged.update(_histogram_task(task))
    zero = merged.pop(Partition(), 0)
    return ProfileHistogram(ctx, n, t, dim_filter, _sorted_counts(merged), zero)


@dataclass
class ReportRow:
    label: str
    enumerated: int
    formula: int

    @property
    def match(self) -> bool:
        return self.enumerated == self.formula


@dataclass
class VerificationReport:
    title: str
    params: dict
    rows: list[ReportRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    extra_ok: bool = True
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.extra_ok and all(r.match for r in self.rows)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "title": self.title,
            "params": self.params,
            "rows": [
                {"label": r.label, "enumerated": r.enumerated, "formula": r.formula, "match": r.match}
                for r in self.rows
            ],
            "notes": self.notes,
            "passed": self.passed,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 6)
        return out

    def to_text(self, timing: bool = False) -> str:
        head = ("case", "enumerated", "formula", "match")
        body = [(r.label, str(r.enumerated), str(r.formula), "ok" if r.match else "MISMATCH") for r in self.rows]
        widths = [max(len(x[i]) for x in [head] + body) for i in range(4)]
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.title} [{params}]"]
        lines.append("  ".join(h.ljust(w) for h, w in zip(head, widths)))
        for row in body:
            lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))))
        lines.extend(f"note: {n}" for n in self.notes)
        if timing:
            lines.append(f"elapsed: {self.elapsed:.3f}s")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def verify_sigma(
    ctx: FieldCtx, n: int, f: PolyFq | None = None, budget: int | None = None, workers: int = 1
) -> VerificationReport:
    """Enumerate every subspace under companion(f) and compare with sigma(mu) for all mu |- n."""
    start = time.perf_counter()
    f = smallest_irreducible(ctx, n) if f is None else f
    if f.degree != n or not f.is_monic() or not is_irreducible(f):
        raise ValueError(f"{format_poly(f)} is not a monic irreducible of degree {n}")
    hist = profile_histogram(companion_matrix(f), budget=budget, workers=workers)
    report = VerificationReport("verify-sigma", {"q": ctx.q, "n": n, "poly": format_poly(f)})
    expected = partitions_of(n)
    for mu in expected:
        report.rows.append(ReportRow(str(mu), hist.counts.get(mu, 0), counting.sigma_value(mu, ctx.q)))
    for mu, c in hist.counts.items():
        if mu not in expected:
            report.rows.append(ReportRow(str(mu), c, 0))
    if hist.zero_subspaces != 1:
        report.extra_ok = False
        report.notes.append(f"found {hist.zero_subspaces} zero subspaces, expected 1")
    else:
        report.notes.append("zero subspace (empty profile) counted separately: 1")
    report.elapsed = time.perf_counter() - start
    return report


def _maps_on(w: Subspace) -> Iterator[PartialMap]:
    vectors = list(all_vectors(w.ctx, w.ambient))
    for images in itertools.product(vectors, repeat=w.dim):
        yield PartialMap(w.ctx, w.ambient, w, images)


def simple_defect_histogram(w: Subspace, budget: int | None = None) -> Counter:
    """Defect dimensions of the simple maps among all maps w -> F_q^n."""
    _charge(w.ctx.q ** (w.ambient * w.dim), budget, "enumerating partial maps")
    out = Counter()
    for pm in _maps_on(w):
        dims, _, w_ell = defect_chain(pm)
        if w_ell.is_zero or (w.is_full and is_simple_map(pm)):
            out[Partition(tuple(a - b for a, b in zip(dims, dims[1:])))] += 1
    return out


def count_simple_maps_brute(w: Subspace, mu: Partition | Sequence[int], budget: int | None = None) -> int:
    return simple_defect_histogram(w, budget).get(as_partition(mu), 0)


def count_extensions_brute(
    pm: PartialMap,
    target: Subspace | None = None,
    predicate: str | PolyFq = "simple",
    budget: int | None = None,
) -> int:
    """Count extensions of a simple map to ``target`` (default: all of F_q^n)
    that are simple (``predicate="simple"``) or have char poly ``predicate``."""
    if not is_simple_map(pm):
        raise ValueError("extension counts are stated for simple maps only")
    target = full_space(pm.ctx, pm.ambient) if target is None else target
    extra = target.dim - pm.k
    _charge(pm.ctx.q ** (pm.ambient * extra), budget, "enumerating extensions")
    if isinstance(predicate, str):
        if predicate != "simple":
            raise ValueError(f"unknown predicate {predicate!r}")
        return sum(1 for ext in enumerate_extensions(pm, target) if is_simple_map(ext))
    if not target.is_full:
        raise ValueError("a characteristic polynomial needs a full-domain extension")
    return sum(1 for ext in enumerate_extensions(pm, target) if char_poly(ext.as_matrix()) == predicate)


def charpoly_histogram(pm: PartialMap, budget: int | None = None) -> Counter:
    """Characteristic polynomials of all full extensions of ``pm``."""
    _charge(pm.ctx.q ** (pm.ambient * (pm.ambient - pm.k)), budget, "enumerating extensions")
    out = Counter()
    for ext in enumerate_extensions(pm, full_space(pm.ctx, pm.ambient)):
        out[char_poly(ext.as_matrix()).coeffs] += 1
    return out


def splitting_brute(ctx: FieldCtx, m: int, d: int, f: PolyFq | None = None, budget: int | None = None) -> int:
    """m-subspaces W with W + TW + ... + T^{d-1}W of dimension md, T = companion(f)."""
    n = m * d
    f = smallest_irreducible(ctx, n) if f is None else f
    if f.degree != n or not is_irreducible(f):
        raise ValueError(f"{format_poly(f)} is not irreducible of degree {n}")
    t = companion_matrix(f)
    count = 0
    for w in enumerate_subspaces(ctx, n, m, budget):
        total = w
        power = w
        for _ in range(d - 1):
            power = image(t, power)
            total = subspace_sum(total, power)
        if total.dim == n:
            count += 1
    return count


def random_matrix(ctx: FieldCtx, n: int, rng: random.Random, ncols: int | None = None) -> MatrixFq:
    ncols = n if ncols is None else ncols
    return MatrixFq(ctx, n, ncols, tuple(tuple(rng.randrange(ctx.q) for _ in range(ncols)) for _ in range(n)))


def random_subspace(ctx: FieldCtx, n: int, k: int, rng: random.Random) -> Subspace:
    while True:
        w = span(ctx, n, [[rng.randrange(ctx.q) for _ in range(n)] for _ in range(k)])
        if w.dim == k:
            return w


def random_partial_map(ctx: FieldCtx, n: int, k: int, rng: random.Random) -> PartialMap:
    w = random_subspace(ctx, n, k, rng)
    images = tuple(tuple(rng.randrange(ctx.q) for _ in range(n)) for _ in range(k))
    return PartialMap(ctx, n, w, images)


def random_simple_partial_map(ctx: FieldCtx, n: int, k: int, rng: random.Random) -> PartialMap:
    while True:
        pm = random_partial_map(ctx, n, k, rng)
        if is_simple_map(pm):
            return pm


def verify_duality(
    ctx: FieldCtx, n: int, trials: int = 100, seed: int = 0, budget: int | None = None
) -> VerificationReport:
    """For seeded random operators T and every subspace W, check
    profile(T, W) == defect_dimensions(dual_restriction(T, W))."""
    start = time.perf_counter()
    _charge(trials * sum(subspace_enumeration_cost(ctx.q, n, k) for k in range(n + 1)), budget, "duality check")
    rng = random.Random(seed)
    subspaces = list(all_subspaces(ctx, n, budget=None))
    report = VerificationReport("verify-duality", {"q": ctx.q, "n": n, "trials": trials, "seed": seed})
    singular = 0
    for _ in range(trials):
        t = random_matrix(ctx, n, rng)
        agree = sum(1 for w in subspaces if profile(t, w) == defect_dimensions(dual_restriction(t, w)))
        report.rows.append(ReportRow(format_matrix(t), agree, len(subspaces)))
        if char_poly(t).coeffs[0] == 0:
            singular += 1
    report.notes.append(f"{len(subspaces)} subspaces per operator; {singular} of {trials} operators singular")
    report.elapsed = time.perf_counter() - start
    return report
