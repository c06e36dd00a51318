"""Splitting types of exceptional curves and their prediction.

The restricted tangent bundle of the plane to a rational curve of degree d
splits as O(a) + O(b) with a + b = d; the pair (a, b), a <= b, is the curve's
splitting type. For the image of an exceptional curve of degree d and maximal
multiplicity m the allowed range is

    min(m, d-m) <= a <= min(d-m, floor(d/2)),

a single forced value exactly when d <= 2m+1.

``compute_splitting`` determines (a, b) for an explicit curve over F_p:
reduce the class to a line through two of the points, draw a random point
configuration, replay the reduction on the points (recording each Cremona's
base triangle), parametrize the final line, then run the replay backwards on
the parametrization, dividing out the gcd of the three binary forms after
each quadratic substitution. The syzygy degree a of the resulting degree-d
parametrization is read off with exact linear algebra. This is a randomized
computation over one prime: results are correct for the drawn configuration
but only provisional as statements about the generic curve, and reports label
them so.

``predict_splitting`` is the deterministic conjecture: among the allowed
(a, b) it returns the most balanced pair whose genus-like score
(a-1)(a-2)/2 + (b-1)(b-2)/2 is at least the defect sum of the conjugate point
classes, a quantity computable from forced types and recursive splittings.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import ConjectureViolation, DegenerateConfiguration, InfeasibleError, InputError
from .exactla import DEFAULT_PRIME, BinaryForm, PrimeField, form_divexact, form_gcd, min_syzygy_degree
from .lattice import DivisorClass, binom2, intersect, line_class, selfint
from .weyl import CREMONA, WeylWord, apply_word, exceptional_points, is_exceptional, line_reduction, orbit_of_line

DEFAULT_SEED = 20260814
RETRY_CAP = 10


def derive_seed(*parts: int) -> int:
    """Deterministically fold seed components into one int (no hash()
    involved, so results are stable across processes and platforms)."""
    h = 0
    for v in parts:
        h = (h * 1000003 + int(v) + 0x9E3779B9) % (1 << 63)
    return h


@dataclass(frozen=True)
class SplittingType:
    a: int
    b: int

    def __post_init__(self):
        if not (0 <= self.a <= self.b):
            raise InputError(f"splitting type needs 0 <= a <= b, got ({self.a}, {self.b})")

    @property
    def degree(self) -> int:
        return self.a + self.b

    def __iter__(self):
        return iter((self.a, self.b))

    def __str__(self):
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class PointConfiguration:
    """n points of P^2 over F_p, rows of an (n, 3) int64 array."""

    points: tuple[tuple[int, int, int], ...]
    p: int = DEFAULT_PRIME

    @property
    def n(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64)


def draw_points(n: int, p: int = DEFAULT_PRIME, seed=DEFAULT_SEED) -> PointConfiguration:
    """Uniform random points; all-zero rows are redrawn."""
    rng = np.random.default_rng(seed)
    pts = rng.integers(0, p, size=(n, 3), dtype=np.int64)
    for i in range(n):
        while not pts[i].any():
            pts[i] = rng.integers(0, p, size=3, dtype=np.int64)
    return PointConfiguration(tuple(tuple(int(v) for v in row) for row in pts), p)


def candidate_pairs(d: int, m: int) -> tuple[SplittingType, ...]:
    """Allowed splitting types for degree d and maximal multiplicity m."""
    if d < 1:
        raise InputError(f"splitting needs degree >= 1, got {d}")
    if not (0 <= m <= d):
        raise InputError(f"multiplicity {m} out of range for degree {d}")
    lo = min(m, d - m)
    hi = min(d - m, d // 2)
    return tuple(SplittingType(a, d - a) for a in range(lo, hi + 1))


def split_bounds(e: DivisorClass) -> tuple[SplittingType, ...]:
    """Allowed types for an exceptional class of degree >= 1."""
    if not is_exceptional(e):
        raise InputError(f"{e} is not an exceptional class")
    d = intersect(e, line_class(e.n))
    if d < 1:
        raise InputError("point classes E_i have no plane image to split")
    return candidate_pairs(d, max(e.m))


def forced_type(d: int, m: int) -> SplittingType | None:
    """The unique allowed type when d <= 2m+1, else None."""
    cands = candidate_pairs(d, m)
    return cands[0] if len(cands) == 1 else None


def _inv3(mat: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a 3x3 matrix mod p via the adjugate; raises on det 0."""
    a, b, c = (int(v) for v in mat[0])
    d, e, f = (int(v) for v in mat[1])
    g, h, i = (int(v) for v in mat[2])
    det = (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p
    if det == 0:
        raise DegenerateConfiguration("collinear Cremona centers")
    inv = pow(det, p - 2, p)
    adj = np.array(
        [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d],
        ],
        dtype=np.int64,
    )
    return adj % p * inv % p


def _replay_points(word: WeylWord, pts: np.ndarray, p: int) -> tuple[np.ndarray, list[np.ndarray]]:
    """Transport a point configuration through a reduction word.

    Swaps permute rows. A Cremona maps x to q(M^-1 x) with q(y) =
    (y2 y3, y1 y3, y1 y2) and M the matrix of the first three points; those
    three become the coordinate vertices. Returns the final points and the
    stack of Cremona matrices M in application order.
    """
    pts = pts.copy()
    mats: list[np.ndarray] = []
    for op in word.ops:
        if op != CREMONA:
            i = op - 1
            pts[[i, i + 1]] = pts[[i + 1, i]]
            continue
        m = pts[:3].T % p
        minv = _inv3(m, p)
        mats.append(m)
        for j in range(3, pts.shape[0]):
            y = minv @ pts[j] % p
            q = np.array([y[1] * y[2], y[0] * y[2], y[0] * y[1]], dtype=np.int64) % p
            if not q.any():
                raise DegenerateConfiguration("point collides with a Cremona center")
            pts[j] = q
        pts[0] = (1, 0, 0)
        pts[1] = (0, 1, 0)
        pts[2] = (0, 0, 1)
    return pts, mats


def _replay_forms(
    word: WeylWord,
    trail: list[int],
    mats: list[np.ndarray],
    phi: list[BinaryForm],
    p: int,
) -> list[BinaryForm]:
    """Undo a reduction word on a parametrized curve.

    For each Cremona (most recent first) substitute phi <- M q(phi) and divide
    out the common binary-form factor; the degree after each undo must match
    the recorded class degree, anything else means the configuration was
    degenerate.
    """
    mats = list(mats)
    for k in range(len(word.ops) - 1, -1, -1):
        op = word.ops[k]
        if op != CREMONA:
            continue
        m = mats.pop()
        psi = [phi[1] * phi[2], phi[0] * phi[2], phi[0] * phi[1]]
        new = []
        for i in range(3):
            f = psi[0].scale(int(m[i, 0])) + psi[1].scale(int(m[i, 1])) + psi[2].scale(int(m[i, 2]))
            new.append(f)
        if any(f.is_zero for f in new):
            raise DegenerateConfiguration("parametrization component vanished")
        g = form_gcd(form_gcd(new[0], new[1]), new[2])
        phi = [form_divexact(f, g) for f in new]
        if phi[0].degree != trail[k]:
            raise DegenerateConfiguration(
                f"degree {phi[0].degree} after undo, expected {trail[k]}"
            )
    return phi


def parametrize(
    e: DivisorClass, p: int = DEFAULT_PRIME, seed=DEFAULT_SEED
) -> tuple[list[BinaryForm], PointConfiguration]:
    """A degree-d parametrization over F_p of the plane image of the
    exceptional curve of class e through a random point configuration."""
    PrimeField(p)
    word, term, trail = line_reduction(e)
    n = max(e.n, 3)
    config = draw_points(n, p, seed)
    pts, mats = _replay_points(word, config.as_array(), p)
    a_pt, b_pt = pts[0], pts[1]
    phi = [BinaryForm((int(b_pt[i]), int(a_pt[i])), p) for i in range(3)]
    if any(f.is_zero for f in phi):
        raise DegenerateConfiguration("degenerate final line")
    phi = _replay_forms(word, trail, mats, phi, p)
    d = intersect(e, line_class(e.n))
    if phi[0].degree != d:
        raise DegenerateConfiguration(f"parametrization degree {phi[0].degree} != {d}")
    return phi, config


def _splitting_once(e: DivisorClass, p: int, seed) -> SplittingType:
    phi, _ = parametrize(e, p, seed)
    d = phi[0].degree
    a = min_syzygy_degree(phi[0], phi[1], phi[2])
    st = SplittingType(a, d - a)
    if st not in candidate_pairs(d, max(e.m)):
        raise DegenerateConfiguration(f"type {st} outside the allowed range")
    return st


def compute_splitting(
    e: DivisorClass,
    p: int = DEFAULT_PRIME,
    seed=DEFAULT_SEED,
    trials: int = 3,
) -> SplittingType:
    """Splitting type of the plane image of e over F_p, majority over
    ``trials`` independent configurations. Degenerate draws are retried with
    fresh derived seeds up to a cap, then reported as infeasible."""
    if not is_exceptional(e):
        raise InputError(f"{e} is not an exceptional class")
    if intersect(e, line_class(e.n)) < 1:
        raise InputError("point classes E_i have no plane image to split")
    votes: Counter[SplittingType] = Counter()
    for trial in range(trials):
        for attempt in range(RETRY_CAP):
            try:
                votes[_splitting_once(e, p, derive_seed(seed, trial, attempt))] += 1
                break
            except DegenerateConfiguration:
                continue
        else:
            raise InfeasibleError(
                f"no nondegenerate configuration in {RETRY_CAP} attempts for {e} over F_{p}"
            )
    return votes.most_common(1)[0][0]


def _type_of_conjugate(
    c: DivisorClass, p: int, seed, trials: int
) -> tuple[SplittingType, bool]:
    """(type, was_computed) for one conjugate point class; degree-0 classes
    contribute the zero type."""
    d = intersect(c, line_class(c.n))
    if d == 0:
        return SplittingType(0, 0), False
    forced = forced_type(d, max(c.m))
    if forced is not None:
        return forced, False
    return compute_splitting(c, p, seed, trials), True


def defect_sum(
    w: WeylWord,
    n: int,
    p: int = DEFAULT_PRIME,
    seed=DEFAULT_SEED,
    trials: int = 3,
) -> int:
    """sum_i binom2(a_i) + binom2(b_i) over the splitting types of the
    conjugate point classes w(E_1), ..., w(E_n)."""
    total = 0
    for i, c in enumerate(exceptional_points(w, n)):
        st, _ = _type_of_conjugate(c, p, derive_seed(seed, 101, i), trials)
        total += binom2(st.a) + binom2(st.b)
    return total


@dataclass(frozen=True)
class SplitPrediction:
    type: SplittingType
    defect: int
    score: int
    rejected: tuple[tuple[SplittingType, int], ...]
    provisional: bool


def _score(st: SplittingType) -> int:
    return binom2(st.a - 1) + binom2(st.b - 1)


def predict_report(
    c: DivisorClass,
    p: int = DEFAULT_PRIME,
    seed=DEFAULT_SEED,
    trials: int = 3,
) -> SplitPrediction:
    """Conjectural splitting type of a degree-d rational curve class with
    c.c = 1 (a Weyl image of the line), or of an exceptional class via its
    companion with two multiplicity-1 slots removed."""
    if c.n and is_exceptional(c):
        ones = [i for i, v in enumerate(c.m) if v == 1]
        if len(ones) < 2:
            raise InputError(
                f"exceptional {c} has no companion: needs two multiplicity-1 slots"
            )
        kept = [v for i, v in enumerate(c.m) if i not in ones[-2:]]
        return predict_report(DivisorClass(c.t, tuple(kept)), p, seed, trials)
    if selfint(c) != 1:
        raise InputError(f"prediction needs c.c = 1 or an exceptional class, got {c}")
    d = intersect(c, line_class(c.n))
    if d < 1 or any(v < 0 for v in c.m):
        raise InputError(f"{c} is not the class of a rational plane curve")
    w = orbit_of_line(c)
    if w is None:
        raise InputError(f"{c} is not in the Weyl orbit of the line")
    m = max(c.m) if c.n else 0
    cands = candidate_pairs(d, m)
    if len(cands) == 1:
        return SplitPrediction(cands[0], 0, _score(cands[0]), (), False)
    provisional = False
    for i, cl in enumerate(exceptional_points(w, c.n)):
        dd = intersect(cl, line_class(c.n))
        if dd > 0 and forced_type(dd, max(cl.m)) is None:
            provisional = True
            break
    ds = defect_sum(w, c.n, p, seed, trials)
    feasible = [st for st in cands if _score(st) >= ds]
    if not feasible:
        raise ConjectureViolation(
            f"no allowed splitting of {c} has score >= defect sum {ds}"
        )
    best = min(feasible, key=_score)
    rejected = tuple((st, _score(st)) for st in cands if _score(st) < ds)
    return SplitPrediction(best, ds, _score(best), rejected, provisional)


def predict_splitting(
    c: DivisorClass,
    p: int = DEFAULT_PRIME,
    seed=DEFAULT_SEED,
    trials: int = 3,
) -> SplittingType:
    return predict_report(c, p, seed, trials).type
