"""Exhaustive sweeps over coefficient ranges.

Candidates are enumerated lexicographically over the coefficient slots
(j, l, k) in ascending order and classified through the closed-form
criterion; hits are recorded in enumeration order as tuples of slot
values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .tower import (
    BottMatrix,
    GeneralizedBottTower,
    Verdict,
    chary_condition,
    classify,
    from_bott_matrix,
)

DEFAULT_CAP = 10**6

#: Coefficient triples (a_{2,1}, a_{3,1}, a_{3,2}) of the Fano 3-stage
#: Bott manifolds; the `fano` sweep over stages (1,1,1) must reproduce
#: exactly this set.
FANO_THREE_STAGE_TRIPLES = frozenset(
    {
        (0, 0, 0),
        (0, 0, 1),
        (0, 0, -1),
        (0, 1, 0),
        (0, 1, 1),
        (0, 1, -1),
        (0, -1, 0),
        (0, -1, 1),
        (0, -1, -1),
        (1, 0, 0),
        (1, 0, 1),
        (1, 0, -1),
        (-1, 0, 0),
        (-1, 1, 1),
        (-1, -1, -1),
    }
)

SWEEP_MODES = ("fano", "weak_fano", "census")


class SweepError(ValueError):
    """Invalid sweep parameters or candidate cap exceeded."""


@dataclass
class SweepSpec:
    stage_dims: tuple[int, ...]
    coeff_range: tuple[int, int]
    mode: str = "census"
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        self.stage_dims = tuple(int(n) for n in self.stage_dims)
        lo, hi = self.coeff_range
        if lo > hi:
            raise SweepError(f"empty coefficient range {lo}:{hi}")
        if self.mode not in SWEEP_MODES:
            raise SweepError(f"unknown mode {self.mode!r}; expected one of {SWEEP_MODES}")


@dataclass
class SweepReport:
    total: int
    slots: tuple[tuple[int, int, int], ...]
    hits: list[tuple[int, ...]] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)


@dataclass
class CharyCompareReport:
    total: int
    chary_not_fano: list[tuple[int, ...]] = field(default_factory=list)
    fano_not_chary: list[tuple[int, ...]] = field(default_factory=list)


def coefficient_slots(stage_dims) -> tuple[tuple[int, int, int], ...]:
    """All (j, l, k) coefficient indices in ascending lexicographic order."""
    return tuple(
        (j, l, k)
        for j in range(2, len(stage_dims) + 1)
        for l in range(1, j)
        for k in range(1, stage_dims[j - 1] + 1)
    )


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise SweepError(f"{count} candidates exceed cap {cap}; raise --cap to proceed")


def sweep(s: SweepSpec) -> SweepReport:
    slots = coefficient_slots(s.stage_dims)
    lo, hi = s.coeff_range
    width = hi - lo + 1
    total = width ** len(slots)
    _check_cap(total, s.cap)

    counts = {v.value: 0 for v in Verdict}
    hits: list[tuple[int, ...]] = []
    for values in product(range(lo, hi + 1), repeat=len(slots)):
        coeffs: dict[tuple[int, int], list[int]] = {}
        for (j, l, k), v in zip(slots, values):
            coeffs.setdefault((j, l), [0] * s.stage_dims[j - 1])[k - 1] = v
        t = GeneralizedBottTower(s.stage_dims, {jl: tuple(v) for jl, v in coeffs.items()})
        verdict = classify(t).verdict
        counts[verdict.value] += 1
        if s.mode == "fano" and verdict is Verdict.FANO:
            hits.append(values)
        elif s.mode == "weak_fano" and verdict is not Verdict.NOT_WEAK_FANO:
            hits.append(values)
    return SweepReport(total=total, slots=slots, hits=hits, counts=counts)


def chary_compare(r: int, beta_range: tuple[int, int], cap: int = DEFAULT_CAP) -> CharyCompareReport:
    """Compare Chary's sign condition against the Fano verdict over all
    upper triangular unit-diagonal matrices with off-diagonal entries in
    the given range."""
    if r < 2:
        raise SweepError("chary_compare requires r >= 2")
    lo, hi = beta_range
    if lo > hi:
        raise SweepError(f"empty beta range {lo}:{hi}")
    slots = [(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1)]
    total = (hi - lo + 1) ** len(slots)
    _check_cap(total, cap)

    report = CharyCompareReport(total=total)
    for values in product(range(lo, hi + 1), repeat=len(slots)):
        beta = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        for (i, j), v in zip(slots, values):
            beta[i - 1][j - 1] = v
        bm = BottMatrix(tuple(tuple(row) for row in beta))
        chary = chary_condition(bm)
        fano = classify(from_bott_matrix(bm)).verdict is Verdict.FANO
        if chary and not fano:
            report.chary_not_fano.append(values)
        if fano and not chary:
            report.fano_not_chary.append(values)
    return report
