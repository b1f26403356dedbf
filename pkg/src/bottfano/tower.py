"""Generalized Bott towers and their closed-form Fano classification.

An m-stage tower is given by fiber dimensions (n_1, ..., n_m) and, for
each 2 <= j <= m and 1 <= l <= j-1, a coefficient vector a_{j,l} of
length n_j.  The auxiliary vectors b_{p,q} are computed by the recursion

    b_{p,1} = a_{p+1,p}
    b_{p,q} = a_{p+q,p} + sum_{r<q} mu(b_{p,r}) * a_{p+q,p+r}

and the manifold is Fano (resp. weak Fano) exactly when
sum_q nu(b_{p,q}) <= n_p (resp. n_p + 1) for every p < m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .lattice import IntVec, mu, nu


class TowerError(ValueError):
    """Invalid tower data."""


class Verdict(Enum):
    FANO = "fano"
    WEAK_FANO_NOT_FANO = "weak_fano_not_fano"
    NOT_WEAK_FANO = "not_weak_fano"


@dataclass
class GeneralizedBottTower:
    """Stage dimensions plus the coefficient vectors a_{j,l}.

    ``coeffs`` maps (j, l) with 2 <= j <= m, 1 <= l <= j-1 to an integer
    tuple of length n_j.  Treated as immutable after construction.
    """

    stage_dims: tuple[int, ...]
    coeffs: dict[tuple[int, int], IntVec] = field(default_factory=dict)

    def __post_init__(self):
        self.stage_dims = tuple(int(n) for n in self.stage_dims)
        self.coeffs = {
            (int(j), int(l)): tuple(int(c) for c in vec)
            for (j, l), vec in self.coeffs.items()
        }

    @property
    def num_stages(self) -> int:
        return len(self.stage_dims)

    @property
    def dim(self) -> int:
        return sum(self.stage_dims)

    def a(self, j: int, l: int) -> IntVec:
        return self.coeffs[(j, l)]


@dataclass
class BVectors:
    """The b_{p,q} vectors with cached minima and chosen argmin indices.

    ``argmins[(p, q)]`` is the index i_{p,q} in {0, 1, ..., n_{p+q}} of an
    entry of (0, b^{(1)}, ..., b^{(n)}) attaining mu(b_{p,q}): 0 when the
    minimum is 0, otherwise the smallest k >= 1 attaining it.
    """

    num_stages: int
    b: dict[tuple[int, int], IntVec]
    mins: dict[tuple[int, int], int]
    argmins: dict[tuple[int, int], int]


@dataclass
class Classification:
    """Tri-state verdict with the witnesses that produced it.

    ``nu_sums`` and ``thresholds`` are populated by the closed-form
    classifier; ``degrees`` (primitive-collection degrees) by the fan
    route.
    """

    verdict: Verdict
    nu_sums: tuple[int, ...] = ()
    thresholds: tuple[tuple[int, int], ...] = ()
    degrees: dict | None = None


@dataclass
class BottMatrix:
    """Upper triangular integer matrix with unit diagonal."""

    beta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        self.beta = tuple(tuple(int(e) for e in row) for row in self.beta)
        r = len(self.beta)
        for i, row in enumerate(self.beta):
            if len(row) != r:
                raise TowerError(f"row {i + 1} has length {len(row)}, expected {r}")
            if row[i] != 1:
                raise TowerError(f"diagonal entry ({i + 1},{i + 1}) must be 1")
            for j in range(i):
                if row[j] != 0:
                    raise TowerError(f"entry ({i + 1},{j + 1}) below diagonal must be 0")

    @property
    def size(self) -> int:
        return len(self.beta)


def validate(t: GeneralizedBottTower) -> None:
    """Check index ranges and coefficient-vector lengths, naming (j, l)."""
    m = t.num_stages
    if m < 1:
        raise TowerError("at least one stage required")
    for j, n in enumerate(t.stage_dims, start=1):
        if n < 1:
            raise TowerError(f"stage dimension n_{j} must be positive, got {n}")
    expected = {(j, l) for j in range(2, m + 1) for l in range(1, j)}
    got = set(t.coeffs)
    for j, l in sorted(expected - got):
        raise TowerError(f"missing coefficient vector a[{j},{l}]")
    for j, l in sorted(got - expected):
        raise TowerError(f"unexpected coefficient vector a[{j},{l}]")
    for (j, l), vec in sorted(t.coeffs.items()):
        nj = t.stage_dims[j - 1]
        if len(vec) != nj:
            raise TowerError(
                f"coefficient vector a[{j},{l}] has length {len(vec)}, expected n_{j}={nj}"
            )


def compute_b(t: GeneralizedBottTower) -> BVectors:
    """Run the b_{p,q} recursion, caching mu values and argmin indices."""
    validate(t)
    m = t.num_stages
    b: dict[tuple[int, int], IntVec] = {}
    mins: dict[tuple[int, int], int] = {}
    argmins: dict[tuple[int, int], int] = {}
    for p in range(1, m):
        for q in range(1, m - p + 1):
            vec = list(t.a(p + q, p))
            for r in range(1, q):
                mr = mins[(p, r)]
                if mr != 0:
                    arl = t.a(p + q, p + r)
                    vec = [v + mr * c for v, c in zip(vec, arl)]
            bpq = tuple(vec)
            b[(p, q)] = bpq
            mn = mu(bpq)
            mins[(p, q)] = mn
            if mn == 0:
                argmins[(p, q)] = 0
            else:
                argmins[(p, q)] = 1 + bpq.index(mn)
    return BVectors(num_stages=m, b=b, mins=mins, argmins=argmins)


def classify(t: GeneralizedBottTower) -> Classification:
    """Tri-state Fano / weak Fano verdict from the nu-sum criterion."""
    bv = compute_b(t)
    m = t.num_stages
    nu_sums = tuple(
        sum(nu(bv.b[(p, q)]) for q in range(1, m - p + 1)) for p in range(1, m)
    )
    thresholds = tuple((t.stage_dims[p - 1], t.stage_dims[p - 1] + 1) for p in range(1, m))
    return Classification(
        verdict=_verdict_from_sums(nu_sums, thresholds),
        nu_sums=nu_sums,
        thresholds=thresholds,
    )


def _verdict_from_sums(nu_sums, thresholds) -> Verdict:
    if all(s <= lo for s, (lo, _) in zip(nu_sums, thresholds)):
        return Verdict.FANO
    if all(s <= hi for s, (_, hi) in zip(nu_sums, thresholds)):
        return Verdict.WEAK_FANO_NOT_FANO
    return Verdict.NOT_WEAK_FANO


def classify_picard_two(n1: int, n2: int, a: IntVec) -> Classification:
    """Two-stage special case: Fano iff nu(a_{2,1}) <= n_1."""
    a = tuple(int(c) for c in a)
    if len(a) != n2:
        raise TowerError(f"coefficient vector a[2,1] has length {len(a)}, expected n_2={n2}")
    if n1 < 1 or n2 < 1:
        raise TowerError("stage dimensions must be positive")
    nu_sums = (nu(a),)
    thresholds = ((n1, n1 + 1),)
    return Classification(
        verdict=_verdict_from_sums(nu_sums, thresholds),
        nu_sums=nu_sums,
        thresholds=thresholds,
    )


def bott_fano(t: GeneralizedBottTower) -> bool:
    """Fano test for Bott manifolds (all n_j = 1) via the three-clause criterion.

    For each p < m, with the scalar column (a_{p+1,p}, ..., a_{m,p}), one of:
    (1) the whole column is zero;
    (2) a single entry equals 1 and the rest are zero;
    (3) a single entry a_{p+q,p} equals -1, entries before it are zero, and
        a_{p+r,p} = a_{p+r,p+q} for every r > q.
    """
    validate(t)
    m = t.num_stages
    if any(n != 1 for n in t.stage_dims):
        raise TowerError("bott_fano requires all stage dimensions equal to 1")

    def a(j, l):
        return t.a(j, l)[0]

    for p in range(1, m):
        col = [a(p + r, p) for r in range(1, m - p + 1)]
        if all(c == 0 for c in col):
            continue
        ok = False
        for q in range(1, m - p + 1):
            if col[q - 1] == 1 and all(c == 0 for r, c in enumerate(col, 1) if r != q):
                ok = True
                break
            if (
                col[q - 1] == -1
                and all(col[r - 1] == 0 for r in range(1, q))
                and all(col[r - 1] == a(p + r, p + q) for r in range(q + 1, m - p + 1))
            ):
                ok = True
                break
        if not ok:
            return False
    return True


def from_bott_matrix(b: BottMatrix) -> GeneralizedBottTower:
    """Tower with m = r, all n_j = 1 and a_{j,l}^{(1)} = -beta_{lj}."""
    r = b.size
    coeffs = {
        (j, l): (-b.beta[l - 1][j - 1],)
        for j in range(2, r + 1)
        for l in range(1, j)
    }
    return GeneralizedBottTower(stage_dims=(1,) * r, coeffs=coeffs)


def chary_condition(b: BottMatrix) -> bool:
    """Sign-pattern condition on beta rows; sufficient for Fano, not necessary.

    For each i, with eta_i^+ = {j > i : beta_ij > 0} and
    eta_i^- = {j > i : beta_ij < 0}, require one of:
    (1) eta_i^+ empty, |eta_i^-| <= 1, and the negative entry (if any) is -1;
    (2) eta_i^- empty, |eta_i^+| <= 1, and the positive entry (if any) is 1
        at some column q with beta_qk = 0 for all k > q.
    """
    r = b.size
    beta = b.beta
    for i in range(1, r + 1):
        plus = [j for j in range(i + 1, r + 1) if beta[i - 1][j - 1] > 0]
        minus = [j for j in range(i + 1, r + 1) if beta[i - 1][j - 1] < 0]
        cond1 = not plus and len(minus) <= 1 and all(beta[i - 1][l - 1] == -1 for l in minus)
        cond2 = (
            not minus
            and len(plus) <= 1
            and all(
                beta[i - 1][q - 1] == 1
                and all(beta[q - 1][k - 1] == 0 for k in range(q + 1, r + 1))
                for q in plus
            )
        )
        if not (cond1 or cond2):
            return False
    return True
