"""The (epsilon, delta) estimator: parameters, bucket search, median driver.

Parameter computation uses exact rational arithmetic with frozen
high-precision constants (cbrt(e) and e^-2 fixed at >= 30 significant
digits) so that threshold/boundary cases are decided identically on
every platform; this is part of the reproducibility contract.

The bucket search draws a random XOR hash with m output rows,
restricts the formula to the distinguished hash cell and counts up to
pivot+1 cell models; m is incremented until the cell is small enough
(or an emergency bound on m fires, which is reported but does not
carry the tolerance guarantee).  The estimate is cell_count * 2^m in
exact integer arithmetic.  The driver first checks whether the count
is at most pivot (then the answer is exact with confidence 1) and
otherwise returns the lower median of t independent bucket searches.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .enumeration import bounded_count_in_session
from .formula import Formula
from .hashing import conjoin_hash, sample_hash
from .randomness import RandomSource
from .sat import SatOracle

# cbrt(e) and e^-2 to 33 significant digits, frozen.
CBRT_E = Fraction(Decimal("1.39561242508608952862812531960259"))
EXP_MINUS_2 = Fraction(Decimal("0.135335283236612691893999494972484"))


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CounterConfig:
    """Estimator parameters; r is the hash independence degree.

    Only r=3 is supported: it is the degree of the shipped XOR hash
    family, and the parameter formulas, while symbolic in r, have no
    backing construction for other values.
    """

    epsilon: float = 0.5
    delta: float = 0.14
    r: int = 3
    seed: int = 0
    warm_start_lower_bound: int | None = None
    parallel_repetitions: bool = False

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise ConfigError(f"epsilon must be in (0, 1], got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ConfigError(f"delta must be in (0, 1), got {self.delta}")
        if self.r != 3:
            raise ConfigError(f"only r=3 is supported, got {self.r}")
        if self.warm_start_lower_bound is not None and self.warm_start_lower_bound < 0:
            raise ConfigError("lower bound must be non-negative")


@dataclass(frozen=True)
class CoreTrace:
    """One bucket-search repetition: final m, cell count, c * 2^m."""

    final_m: int
    cell_count: int
    estimate: int
    emergency_stop: bool
    sat_queries: int


@dataclass(frozen=True)
class CountResult:
    estimate: int
    exact: bool
    pivot: int
    t: int
    traces: tuple[CoreTrace, ...]
    seed: int
    any_emergency_stop: bool
    exact_gate_queries: int = 0


def compute_pivot(epsilon: float, r: int = 3) -> int:
    """Cell-size cap: ceil(2 r (1+eps) cbrt(e) / eps^2), exact."""
    if not 0 < epsilon <= 1:
        raise ConfigError(f"epsilon must be in (0, 1], got {epsilon}")
    e = Fraction(epsilon)
    return math.ceil(2 * r * (1 + e) * CBRT_E / (e * e))


def _binomial_tail(n: int, p: Fraction) -> Fraction:
    """Pr[at least ceil(n/2) heads in n tosses with head probability p]."""
    return sum(
        math.comb(n, k) * p**k * (1 - p) ** (n - k)
        for k in range((n + 1) // 2, n + 1)
    )


def compute_t(delta: float, r: int = 3) -> int:
    """Minimal repetition count whose majority-failure tail is <= delta.

    Head probability is e^floor(-r/2); the ascending search is finite
    because the tail decays geometrically in n.
    """
    if not 0 < delta < 1:
        raise ConfigError(f"delta must be in (0, 1), got {delta}")
    if r != 3:
        raise ConfigError(f"only r=3 is supported, got {r}")
    p = EXP_MINUS_2  # e^floor(-3/2)
    d = Fraction(delta)
    n = 1
    while _binomial_tail(n, p) > d:
        n += 1
    return n


def _ceil_log2(x: Fraction) -> int:
    """Smallest integer m with 2^m >= x, for x > 0."""
    if x <= 0:
        raise ValueError("log of non-positive value")
    m = 0
    while Fraction(2) ** m < x:
        m += 1
    while m > 0 and Fraction(2) ** (m - 1) >= x:
        m -= 1
    return m


def warm_start_m(lower_bound: int, epsilon: float, pivot: int) -> int:
    """Sound initial bucket exponent given a lower bound on the count."""
    if lower_bound < 1:
        raise ValueError("lower bound must be >= 1")
    return max(0, _ceil_log2((1 + Fraction(epsilon)) * lower_bound / pivot))


def emergency_bound_m(n: int, epsilon: float, pivot: int) -> int:
    """Loop exit bound: ceil(log2((1+eps) * 2^n / pivot))."""
    return _ceil_log2((1 + Fraction(epsilon)) * Fraction(2) ** n / pivot)


def core_estimate(
    f: Formula, cfg: CounterConfig, rng: RandomSource, oracle: SatOracle
) -> CoreTrace:
    """One bucket search: increment m until the distinguished hash cell
    holds at most pivot projected models, then return cell * 2^m.
    """
    n = len(f.scope)
    if n < 1:
        raise ValueError("bucket search requires a nonempty scope")
    pivot = compute_pivot(cfg.epsilon, cfg.r)
    m_limit = emergency_bound_m(n, cfg.epsilon, pivot)
    if cfg.warm_start_lower_bound:
        m = max(0, warm_start_m(cfg.warm_start_lower_bound, cfg.epsilon, pivot) - 1)
    else:
        m = 0
    queries = 0
    while True:
        m += 1
        h = sample_hash(n, m, rng)
        cell = conjoin_hash(f, h)
        session = oracle.open_session(cell)
        c = bounded_count_in_session(session, cell.scope, pivot + 1)
        queries += session.stats.queries
        if c.value <= pivot:
            return CoreTrace(m, c.value, c.value * 2**m, False, queries)
        if m > m_limit:
            return CoreTrace(m, c.value, c.value * 2**m, True, queries)


def _lower_median(values: list[int]) -> int:
    s = sorted(values)
    return s[(len(s) - 1) // 2]


def main_count(f: Formula, cfg: CounterConfig, oracle: SatOracle) -> CountResult:
    """Full (epsilon, delta) count with the exact gate and median
    amplification over t seed-derived independent repetitions.
    """
    pivot = compute_pivot(cfg.epsilon, cfg.r)
    t = compute_t(cfg.delta, cfg.r)
    gate_session = oracle.open_session(f)
    gate = bounded_count_in_session(gate_session, f.scope, pivot + 1)
    if gate.value <= pivot:
        return CountResult(
            estimate=gate.value,
            exact=True,
            pivot=pivot,
            t=t,
            traces=(),
            seed=cfg.seed,
            any_emergency_stop=False,
            exact_gate_queries=gate_session.stats.queries,
        )

    rng = RandomSource(cfg.seed)

    def one(i: int) -> CoreTrace:
        return core_estimate(f, cfg, rng.substream(i), oracle)

    if cfg.parallel_repetitions and t > 1:
        with ThreadPoolExecutor(max_workers=min(t, 8)) as pool:
            traces = list(pool.map(one, range(t)))
    else:
        traces = [one(i) for i in range(t)]

    return CountResult(
        estimate=_lower_median([tr.estimate for tr in traces]),
        exact=False,
        pivot=pivot,
        t=t,
        traces=tuple(traces),
        seed=cfg.seed,
        any_emergency_stop=any(tr.emergency_stop for tr in traces),
        exact_gate_queries=gate_session.stats.queries,
    )
