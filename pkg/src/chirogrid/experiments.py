"""Monte Carlo harness for grid rounding of random point sets, plus the lemma verifiers.

Every trial is a pure function of ``(seed, trial_index)`` through
:func:`chirogrid.sampling.derive_seed`, so trials can be farmed out to worker
processes and folded back in any order.
"""

from __future__ import annotations

import enum
import json
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .chirotope import chirotope_diff, compute_chirotope, enumerate_subsets
from .exact import ball_volume_ratio, binomial, integer_orientation, orientation
from .geometry import (
    _cofactor_row,
    Hyperplane,
    DegenerateError,
    dist_at_least,
    facet_hyperplane,
    hyperplane_through,
    lemma1_transversal_report,
    lemma2_certificate,
    meets_full_family,
    offset,
)
from .grid import GridSpec, grid_from_params, round_config, round_point
from .sampling import (
    DEFAULT_PRECISION,
    Domain,
    PointConfig,
    SamplerConfig,
    derive_seed,
    draw_points,
    sample_config,
)


class Outcome(str, enum.Enum):
    PRESERVED = "PRESERVED"
    FLIP = "FLIP"
    DEGENERATE = "DEGENERATE"
    COLLISION = "COLLISION"


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054):
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


# bounds ---------------------------------------------------------------------

class PerEventBound(NamedTuple):
    paper: float  # (2 sqrt(d) / M) * ratio
    simplified: float  # d^{3/2} / (sqrt(pi) M)
    exact: float  # (4 sqrt(d) / M) * ratio, the full two-sided slab


def per_event_bound(d: int, M) -> PerEventBound:
    if d < 1 or M < 1:
        raise ValueError("need d >= 1 and M >= 1")
    ratio = float(ball_volume_ratio(d))
    M = float(M)
    return PerEventBound(
        2 * math.sqrt(d) / M * ratio,
        d ** 1.5 / (math.sqrt(math.pi) * M),
        4 * math.sqrt(d) / M * ratio,
    )


class SuccessBound(NamedTuple):
    paper: float
    exact: float
    M: int


def success_lower_bound(n: int, d: int, eps=0) -> SuccessBound:
    """Union-bound success probabilities at the realized grid ``M``."""
    if n < d + 1:
        raise ValueError("need n >= d+1")
    M = grid_from_params(n, d, eps).M
    events = binomial(n, d + 1) * (d + 1)
    b = per_event_bound(d, M)
    return SuccessBound(max(0.0, 1 - events * b.simplified), max(0.0, 1 - events * b.exact), M)


# theorem experiment -----------------------------------------------------------

@dataclass(frozen=True)
class ExperimentParams:
    n: int
    d: int
    eps: Fraction = Fraction(1, 2)
    trials: int = 100
    seed: int = 0
    domain: Domain = Domain.BALL
    precision_bits: int = DEFAULT_PRECISION

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "domain", Domain(self.domain))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.n < self.d + 1:
            raise ValueError("need n >= d+1")

    @property
    def grid(self) -> GridSpec:
        return grid_from_params(self.n, self.d, self.eps)

    def as_dict(self):
        return {
            "n": self.n, "d": self.d, "eps": str(self.eps), "trials": self.trials,
            "seed": self.seed, "domain": self.domain.value,
            "precision_bits": self.precision_bits,
        }


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    M: int
    outcome: Outcome
    diff_count: int
    flips: int
    degenerate: int
    collisions: int
    min_margin_sq: float

    def to_json(self) -> str:
        d = asdict(self)
        d["outcome"] = self.outcome.value
        return json.dumps(d, sort_keys=True)


def _min_margin_sq(S: PointConfig) -> float:
    """Smallest squared distance from a vertex to its opposite facet over all subsets.

    Located with floats, then evaluated exactly at the minimizer so the reported
    value does not depend on the platform's linear algebra.
    """
    d = S.d
    if S.n < d + 1:
        return math.inf
    X = np.array([[float(x) for x in p] for p in S.points])
    idx = np.array(enumerate_subsets(S.n, d)) - 1
    best, where = math.inf, None
    with np.errstate(all="ignore"):
        for i in range(d + 1):
            others = np.delete(idx, i, axis=1)
            base = X[others[:, 0]]
            V = X[others[:, 1:]] - base[:, None, :]
            w = X[idx[:, i]] - base
            full = np.linalg.det(np.concatenate([V, w[:, None, :]], axis=1))
            gram = np.linalg.det(V @ np.swapaxes(V, 1, 2))
            m = full * full / gram
            m[~np.isfinite(m)] = np.inf
            k = int(np.argmin(m))
            if m[k] < best:
                best, where = float(m[k]), (k, i)
    if where is None:
        return 0.0
    k, i = where
    t = [S.points[j] for j in idx[k]]
    try:
        h = facet_hyperplane(t, i + 1)
    except DegenerateError:
        return 0.0
    v = Fraction(offset(h, t[i]))
    return float(v * v / sum(Fraction(a) ** 2 for a in h.a))


def classify_trial(S: PointConfig, S2: PointConfig):
    a, b = compute_chirotope(S), compute_chirotope(S2)
    diff = chirotope_diff(a, b)
    kinds = Counter(x.kind for x in diff)
    collisions = len(S2.duplicates())
    if collisions:
        outcome = Outcome.COLLISION
    elif not (a.general_position and b.general_position):
        outcome = Outcome.DEGENERATE
    elif diff:
        outcome = Outcome.FLIP
    else:
        outcome = Outcome.PRESERVED
    return outcome, diff, kinds, collisions


def theorem_trial(params: ExperimentParams, trial_index: int, points: PointConfig | None = None) -> TrialRecord:
    """Sample S, round it to the grid, and compare the two chirotopes."""
    seed = derive_seed(params.seed, trial_index)
    if points is None:
        cfg = SamplerConfig(params.domain, params.d, params.n, params.precision_bits, seed)
        points = sample_config(cfg)
    g = params.grid
    S2 = round_config(points, g)
    outcome, diff, kinds, collisions = classify_trial(points, S2)
    return TrialRecord(
        trial_index, seed, g.M, outcome, len(diff), kinds["FLIP"], kinds["DEGENERATE"],
        collisions, _min_margin_sq(points),
    )


@dataclass
class ExperimentSummary:
    params: ExperimentParams
    M: int
    counts: dict
    freq: float
    wilson_lo: float
    wilson_hi: float
    bound_paper: float
    bound_exact: float
    records: list = field(default_factory=list, repr=False)

    @property
    def trials(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> str:
        d = {
            "params": self.params.as_dict(), "M": self.M, "counts": self.counts,
            "freq": self.freq, "wilson_lo": self.wilson_lo, "wilson_hi": self.wilson_hi,
            "bound_paper": self.bound_paper, "bound_exact": self.bound_exact,
        }
        return json.dumps(d, sort_keys=True)

    CSV_COLUMNS = ("n,d,eps,M,trials,preserved,flip,degenerate,collision,freq,"
                   "wilson_lo,wilson_hi,bound_paper,bound_exact")

    def csv_row(self) -> str:
        p, c = self.params, self.counts
        vals = [p.n, p.d, p.eps, self.M, self.trials, c["PRESERVED"], c["FLIP"],
                c["DEGENERATE"], c["COLLISION"], repr(self.freq), repr(self.wilson_lo),
                repr(self.wilson_hi), repr(self.bound_paper), repr(self.bound_exact)]
        return ",".join(str(v) for v in vals)


def summarize(params: ExperimentParams, records) -> ExperimentSummary:
    records = sorted(records, key=lambda r: r.trial)
    counts = {o.value: 0 for o in Outcome}
    for r in records:
        counts[r.outcome.value] += 1
    k, t = counts["PRESERVED"], len(records)
    lo, hi = wilson_interval(k, t)
    bound = success_lower_bound(params.n, params.d, params.eps)
    return ExperimentSummary(params, bound.M, counts, k / t, lo, hi, bound.paper, bound.exact, records)


def _trial_chunk(params, indices):
    return [theorem_trial(params, i) for i in indices]


def _chunks(seq, k):
    k = max(1, k)
    return [seq[j::k] for j in range(k) if seq[j::k]]


def run_theorem_experiment(params: ExperimentParams, workers: int = 1) -> ExperimentSummary:
    indices = list(range(params.trials))
    if workers <= 1:
        records = _trial_chunk(params, indices)
    else:
        with ProcessPoolExecutor(workers) as ex:
            parts = ex.map(_trial_chunk, [params] * workers, _chunks(indices, workers))
            records = [r for part in parts for r in part]
    return summarize(params, records)


# per-event estimate ---------------------------------------------------------

BLOCK = 4096


class FrequencyEstimate(NamedTuple):
    hits: int
    samples: int
    resampled: int

    @property
    def freq(self) -> float:
        return self.hits / self.samples

    def wilson(self, z: float = 1.959963984540054):
        return wilson_interval(self.hits, self.samples, z)


def _int_hyperplane(pts, d):
    rows = [list(p) + [1] for p in pts] + [[0] * (d + 1)]
    c = _cofactor_row(rows, d, d)
    return c[:d], c[d]


def _per_event_block(d, M, seed, block, count, bits):
    rng = random.Random(derive_seed(seed, block))
    D = 1 << bits
    # threshold (2 sqrt(d) / M)^2 in the integer coordinates scaled by 2^bits
    t2 = Fraction(4 * d * D * D, M * M)
    hits = resampled = 0
    for _ in range(count):
        while True:
            pts = draw_points(rng, d, d + 1, bits, Domain.BALL)
            a, b = _int_hyperplane(pts[:d], d)
            if any(a):
                break
            resampled += 1
        if not dist_at_least(Hyperplane(a, b), pts[d], t2):
            hits += 1
    return hits, resampled


def estimate_per_event(d: int, M: int, samples: int, seed: int = 0, workers: int = 1,
                       bits: int = DEFAULT_PRECISION) -> FrequencyEstimate:
    """Frequency of a random ball point lying within 2 sqrt(d)/M of a random hyperplane.

    The hyperplane passes through d independent uniform ball points.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    jobs = [(d, M, seed, b, min(BLOCK, samples - b * BLOCK), bits)
            for b in range((samples + BLOCK - 1) // BLOCK)]
    if workers <= 1:
        results = [_per_event_block(*j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_per_event_block, *zip(*jobs)))
    return FrequencyEstimate(sum(h for h, _ in results), samples, sum(r for _, r in results))


# lemma verifiers ------------------------------------------------------------

def _nondegenerate_simplex(rng, d, bits):
    while True:
        pts = draw_points(rng, d, d + 1, bits, Domain.BALL)
        if integer_orientation(pts) != 0:
            return pts


def lemma1_trial(d: int, seed: int, trial_index: int, bits: int = 32):
    """One random simplex and one random hyperplane through d fresh points."""
    rng = random.Random(derive_seed(seed, trial_index))
    simplex = _nondegenerate_simplex(rng, d, bits)
    while True:
        try:
            h = hyperplane_through(draw_points(rng, d, d, bits, Domain.BALL))
            break
        except DegenerateError:
            continue
    return simplex, h, lemma1_transversal_report(simplex, h)


class Lemma1Result(NamedTuple):
    trials: int
    counterexamples: int
    witnesses: list  # (trial_index, sorted cell labels)


def lemma1_falsify(d: int, trials: int, seed: int = 0, bits: int = 32) -> Lemma1Result:
    if d not in (2, 3, 4):
        raise ValueError("lemma1_falsify supports d in {2, 3, 4}")
    witnesses = []
    for i in range(trials):
        _, _, report = lemma1_trial(d, seed, i, bits)
        if meets_full_family(report, d):
            witnesses.append((i, sorted(str(c) for c in report)))
    return Lemma1Result(trials, len(witnesses), witnesses)


def lemma2_trial(d: int, M: int, seed: int, trial_index: int, bits: int = DEFAULT_PRECISION):
    """Returns ``(certified, violated)`` for one random simplex and its rounding."""
    rng = random.Random(derive_seed(seed, trial_index))
    D = 1 << bits
    P = [tuple(Fraction(v, D) for v in p) for p in _nondegenerate_simplex(rng, d, bits)]
    g = GridSpec(M)
    Q = [round_point(p, g) for p in P]
    if not lemma2_certificate(P, Q):
        return False, False
    return True, orientation(P) != orientation(Q)


class Lemma2Result(NamedTuple):
    trials: int
    certified: int
    violations: int
    witnesses: list


def lemma2_property_run(d: int, trials: int, M: int, seed: int = 0,
                        bits: int = DEFAULT_PRECISION) -> Lemma2Result:
    certified = 0
    witnesses = []
    for i in range(trials):
        ok, bad = lemma2_trial(d, M, seed, i, bits)
        certified += ok
        if bad:
            witnesses.append(i)
    return Lemma2Result(trials, certified, len(witnesses), witnesses)


def margin_implies_certificate(P, M: int) -> tuple[bool, bool]:
    """``(all margins hold, certificate holds)`` for P rounded to step 1/M."""
    d = len(P) - 1
    t2 = Fraction(4 * d, M * M)
    margins = all(dist_at_least(facet_hyperplane(P, i), P[i - 1], t2) for i in range(1, d + 2))
    Q = [round_point(p, GridSpec(M)) for p in P]
    return margins, lemma2_certificate(P, Q)


__all__ = [
    "Outcome", "ExperimentParams", "TrialRecord", "ExperimentSummary", "PerEventBound",
    "SuccessBound", "FrequencyEstimate", "wilson_interval", "per_event_bound",
    "success_lower_bound", "theorem_trial", "run_theorem_experiment", "summarize",
    "estimate_per_event", "lemma1_trial", "lemma1_falsify",
    "lemma2_trial", "lemma2_property_run", "margin_implies_certificate",
]
