"""The toric fan of a generalized Bott tower and Batyrev's degree criterion.

Rays are labelled by pairs (l, k) with 1 <= l <= m and 0 <= k <= n_l:
u_l^k is the standard basis vector e_l^k for k >= 1, and

    u_l^0 = -sum_k e_l^k + sum_{j>l} sum_k a_{j,l}^{(k)} e_j^k.

Maximal cones are obtained by omitting one ray per stage.  Primitive
collections, their relations and degrees, and the wall relations around
the distinguished codimension-one cones are all computed exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .lattice import IntVec, det, kernel_primitive
from .tower import BVectors, Classification, GeneralizedBottTower, Verdict, validate

RayLabel = tuple[int, int]

BRUTE_FORCE_RAY_LIMIT = 24


class FanError(ValueError):
    """Invalid fan data or a failed fan-level check."""


@dataclass
class Fan:
    """Rays and maximal cones of a tower fan in Z^n.

    ``labels[i]`` is the (l, k) pair of ray i; ``max_cones`` are frozensets
    of ray indices, one cone per lexicographic choice (k_1, ..., k_m) of
    the omitted ray in each stage.
    """

    dim: int
    stage_dims: tuple[int, ...]
    rays: tuple[IntVec, ...]
    labels: tuple[RayLabel, ...]
    max_cones: tuple[frozenset[int], ...]

    def __post_init__(self):
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    def ray(self, label: RayLabel) -> IntVec:
        return self.rays[self.index[label]]

    def to_labels(self, indices) -> frozenset[RayLabel]:
        return frozenset(self.labels[i] for i in indices)

    def is_face(self, labels) -> bool:
        idx = {self.index[lab] for lab in labels}
        return any(idx <= cone for cone in self.max_cones)


@dataclass
class PrimitiveCollectionData:
    """A primitive collection with its relation coefficients and degree.

    ``relation_rhs`` maps ray labels to the positive integer coefficients
    on the right-hand side of the primitive relation; the degree is
    |members| minus their sum.
    """

    members: frozenset[RayLabel]
    relation_rhs: dict[RayLabel, int]
    degree: int


@dataclass
class WallData:
    """A codimension-one cone and the signed relation among the n+1 rays
    of its two adjacent maximal cones (zero coefficients omitted)."""

    wall: frozenset[RayLabel]
    relation: dict[RayLabel, int]


def build_fan(t: GeneralizedBottTower) -> Fan:
    validate(t)
    m = t.num_stages
    dims = t.stage_dims
    n = t.dim
    offsets = [0]
    for nl in dims:
        offsets.append(offsets[-1] + nl)

    labels: list[RayLabel] = []
    rays: list[IntVec] = []
    for l in range(1, m + 1):
        nl = dims[l - 1]
        u0 = [0] * n
        for k in range(1, nl + 1):
            u0[offsets[l - 1] + k - 1] = -1
        for j in range(l + 1, m + 1):
            ajl = t.a(j, l)
            for k in range(1, dims[j - 1] + 1):
                u0[offsets[j - 1] + k - 1] = ajl[k - 1]
        labels.append((l, 0))
        rays.append(tuple(u0))
        for k in range(1, nl + 1):
            ek = [0] * n
            ek[offsets[l - 1] + k - 1] = 1
            labels.append((l, k))
            rays.append(tuple(ek))

    index = {lab: i for i, lab in enumerate(labels)}
    all_indices = frozenset(range(len(rays)))
    max_cones = []
    for choice in product(*(range(nl + 1) for nl in dims)):
        omitted = {index[(l, kl)] for l, kl in enumerate(choice, start=1)}
        max_cones.append(all_indices - omitted)
    return Fan(
        dim=n,
        stage_dims=dims,
        rays=tuple(rays),
        labels=tuple(labels),
        max_cones=tuple(max_cones),
    )


def validate_smooth_complete(f: Fan) -> None:
    """Check unimodular maximal cones, two cones per facet, distinct
    primitive rays."""
    seen: dict[IntVec, RayLabel] = {}
    for lab, ray in zip(f.labels, f.rays):
        if ray in seen:
            raise FanError(f"duplicate ray u[{lab[0]},{lab[1]}] = u[{seen[ray][0]},{seen[ray][1]}]")
        seen[ray] = lab
        g = 0
        for e in ray:
            g = gcd(g, e)
        if g != 1:
            raise FanError(f"ray u[{lab[0]},{lab[1]}] is not primitive")
    for ci, cone in enumerate(f.max_cones):
        mat = [f.rays[i] for i in sorted(cone)]
        if len(mat) != f.dim:
            raise FanError(f"maximal cone #{ci} has {len(mat)} rays, expected {f.dim}")
        if det(mat) not in (1, -1):
            raise FanError(f"maximal cone #{ci} is not unimodular")
    facet_counts: Counter[frozenset[int]] = Counter()
    for cone in f.max_cones:
        for i in cone:
            facet_counts[cone - {i}] += 1
    for facet, count in facet_counts.items():
        if count != 2:
            raise FanError(
                f"facet {sorted(f.to_labels(facet))} lies in {count} maximal cones, expected 2"
            )


def primitive_collections_bruteforce(f: Fan) -> set[frozenset[RayLabel]]:
    """All minimal ray sets not contained in any maximal cone, by subset scan.

    An oracle for testing: checks set inclusion against the maximal-cone
    ray sets over subsets of increasing size.  Refuses fans with more
    than BRUTE_FORCE_RAY_LIMIT rays.
    """
    nrays = len(f.rays)
    if nrays > BRUTE_FORCE_RAY_LIMIT:
        raise FanError(
            f"brute-force search refused: {nrays} rays > limit {BRUTE_FORCE_RAY_LIMIT}"
        )
    cone_masks = [sum(1 << i for i in cone) for cone in f.max_cones]
    full = (1 << nrays) - 1
    found: list[tuple[int, frozenset[int]]] = []
    # a minimal non-face has every proper subset a face, so size <= dim + 1
    for size in range(1, min(nrays, f.dim + 1) + 1):
        for combo in combinations(range(nrays), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if any(mask & pm == pm for pm, _ in found):
                continue
            if any(mask & ~cm & full == 0 for cm in cone_masks):
                continue
            found.append((mask, frozenset(combo)))
    return {f.to_labels(idx) for _, idx in found}


def _solve_square(cols: list[IntVec], target: IntVec) -> list[Fraction] | None:
    """Solve sum_j x_j * cols[j] = target exactly; None if singular."""
    n = len(target)
    aug = [
        [Fraction(cols[j][i]) for j in range(n)] + [Fraction(target[i])]
        for i in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        if pv != 1:
            aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [a - fac * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def primitive_relation(f: Fan, p: frozenset[RayLabel]) -> PrimitiveCollectionData:
    """Relation and degree of a primitive collection.

    Sums the member rays, locates the unique cone containing the sum in
    its relative interior (first maximal cone, in lexicographic order,
    with all coordinates >= 0), and reads off the strictly positive
    coordinates as the relation coefficients.
    """
    members = frozenset(p)
    if f.is_face(members):
        raise FanError(f"{sorted(members)} spans a cone of the fan; not a primitive collection")
    for lab in members:
        if not f.is_face(members - {lab}):
            raise FanError(f"{sorted(members)} is not minimal; not a primitive collection")
    s = [0] * f.dim
    for lab in members:
        s = [a + b for a, b in zip(s, f.ray(lab))]
    target = tuple(s)
    if all(e == 0 for e in target):
        return PrimitiveCollectionData(members=members, relation_rhs={}, degree=len(members))
    for cone in f.max_cones:
        idx = sorted(cone)
        coords = _solve_square([f.rays[i] for i in idx], target)
        if coords is None:
            raise FanError("singular maximal cone encountered")
        if all(c >= 0 for c in coords):
            rhs: dict[RayLabel, int] = {}
            for i, c in zip(idx, coords):
                if c > 0:
                    if c.denominator != 1:
                        raise FanError("non-integral relation coefficient in a smooth fan")
                    rhs[f.labels[i]] = int(c)
            return PrimitiveCollectionData(
                members=members, relation_rhs=rhs, degree=len(members) - sum(rhs.values())
            )
    raise FanError("no maximal cone contains the ray sum; fan is not complete")


def batyrev_classify(f: Fan) -> Classification:
    """Fano iff every primitive-collection degree is positive; weak Fano
    iff every degree is nonnegative."""
    degrees: dict[frozenset[RayLabel], int] = {}
    for pc in primitive_collections_bruteforce(f):
        degrees[pc] = primitive_relation(f, pc).degree
    if all(d > 0 for d in degrees.values()):
        verdict = Verdict.FANO
    elif all(d >= 0 for d in degrees.values()):
        verdict = Verdict.WEAK_FANO_NOT_FANO
    else:
        verdict = Verdict.NOT_WEAK_FANO
    return Classification(verdict=verdict, degrees=degrees)


def collection_for_stage(t: GeneralizedBottTower, p: int) -> frozenset[RayLabel]:
    """The stage-p collection {u_p^0, ..., u_p^{n_p}}."""
    return frozenset((p, k) for k in range(0, t.stage_dims[p - 1] + 1))


def expected_primitive_relation(
    t: GeneralizedBottTower, bv: BVectors, p: int
) -> PrimitiveCollectionData:
    """Closed-form relation for the stage-p collection, from the b-vectors.

    For p < m the right-hand side puts -mu(b_{p,q}) on u_{p+q}^0 and
    b_{p,q}^{(k)} - mu(b_{p,q}) on u_{p+q}^k, so the degree is
    (n_p + 1) - sum_q nu(b_{p,q}); for p = m the sum of the members is
    zero and the degree is n_m + 1.
    """
    m = t.num_stages
    if not 1 <= p <= m:
        raise FanError(f"stage index {p} out of range 1..{m}")
    members = collection_for_stage(t, p)
    rhs: dict[RayLabel, int] = {}
    for q in range(1, m - p + 1):
        bpq = bv.b[(p, q)]
        mn = bv.mins[(p, q)]
        if -mn > 0:
            rhs[(p + q, 0)] = -mn
        for k in range(1, t.stage_dims[p + q - 1] + 1):
            c = bpq[k - 1] - mn
            if c > 0:
                rhs[(p + q, k)] = c
    return PrimitiveCollectionData(
        members=members, relation_rhs=rhs, degree=len(members) - sum(rhs.values())
    )


def signed_relation(pr: PrimitiveCollectionData) -> dict[RayLabel, int]:
    """Primitive relation as one signed map: +1 on members, minus the
    right-hand-side coefficients elsewhere."""
    rel = {lab: 1 for lab in pr.members}
    for lab, c in pr.relation_rhs.items():
        rel[lab] = rel.get(lab, 0) - c
    return {lab: c for lab, c in rel.items() if c != 0}


def wall_relation(f: Fan, t: GeneralizedBottTower, bv: BVectors, p: int) -> WallData:
    """Wall relation for the distinguished (n-1)-cone tau_p.

    tau_p consists of u_l^k (l < p, k >= 1), u_p^1 ... u_p^{n_p - 1} and,
    for each q, every u_{p+q}^k with k != i_{p,q}.  The relation among
    the n+1 rays of its two adjacent maximal cones is normalized so that
    the coefficient of u_p^0 is positive.
    """
    m = t.num_stages
    if not 1 <= p <= m:
        raise FanError(f"stage index {p} out of range 1..{m}")
    wall: set[RayLabel] = set()
    for l in range(1, p):
        wall.update((l, k) for k in range(1, t.stage_dims[l - 1] + 1))
    wall.update((p, k) for k in range(1, t.stage_dims[p - 1]))
    for q in range(1, m - p + 1):
        ipq = bv.argmins[(p, q)]
        wall.update(
            (p + q, k) for k in range(0, t.stage_dims[p + q - 1] + 1) if k != ipq
        )
    wall_idx = {f.index[lab] for lab in wall}
    if len(wall_idx) != f.dim - 1:
        raise FanError(f"tau_{p} has {len(wall_idx)} rays, expected {f.dim - 1}")
    adjacent = [cone for cone in f.max_cones if wall_idx <= cone]
    if len(adjacent) != 2:
        raise FanError(f"tau_{p} lies in {len(adjacent)} maximal cones, expected 2")
    around = sorted(adjacent[0] | adjacent[1])
    matrix = [[f.rays[i][row] for i in around] for row in range(f.dim)]
    v = kernel_primitive(matrix)
    pos = around.index(f.index[(p, 0)])
    if v[pos] < 0:
        v = tuple(-e for e in v)
    elif v[pos] == 0:
        raise FanError(f"wall relation for tau_{p} has zero coefficient on u[{p},0]")
    relation = {f.labels[i]: c for i, c in zip(around, v) if c != 0}
    return WallData(wall=frozenset(wall), relation=relation)
