"""Monte Carlo cross-validator.

Samples the typed Poisson bipolar network inside a finite disk around the
typical receiver and estimates every analytic metric empirically: success
probability from the realized SIR, the conditional-success distribution from
per-pattern averages, throughput from the realized rate, and the mean
interference directly.

Each realization draws its generator from (seed, realization index), so
estimates are bit-reproducible and independent of any execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .allocation import _check_type, type_averaged_overlap
from .errors import ConfigError, DomainError
from .params import AllocationMode, BandwidthConfig, NetworkParams

#: Realized SIR used in place of an infinite one (zero interference) when
#: averaging rates; the capped fraction is reported alongside the estimate.
SIR_CAP = 1e9

#: Default simulation disk radius, in units of the link distance.
DEFAULT_WINDOW_FACTOR = 50.0
_MIN_WINDOW_FACTOR = 10.0


class ConditionalMode(str, Enum):
    """How per-pattern success probabilities are computed."""

    CLOSED_FORM_GIVEN_PHI = "closed_form_given_phi"  # average fading/chunks analytically
    FULLY_EMPIRICAL = "fully_empirical"              # redraw fading/chunks and count


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo settings.

    ``window_radius`` is the simulation disk radius around the receiver;
    ``None`` selects 50 link distances, and anything below 10 link distances
    is rejected at sampling time since truncation would no longer be
    negligible against statistical noise.
    """

    n_realizations: int = 10_000
    seed: int = 0
    window_radius: float | None = None
    n_fading_draws: int = 1_000
    conditional_mode: ConditionalMode = ConditionalMode.CLOSED_FORM_GIVEN_PHI

    def __post_init__(self) -> None:
        if isinstance(self.n_realizations, bool) or not isinstance(
            self.n_realizations, (int, np.integer)
        ):
            raise ConfigError("n_realizations must be an integer")
        object.__setattr__(self, "n_realizations", int(self.n_realizations))
        if self.n_realizations < 1:
            raise ConfigError("n_realizations must be >= 1")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise ConfigError("seed must be an integer")
        object.__setattr__(self, "seed", int(self.seed))
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 bits")
        if self.window_radius is not None:
            radius = float(self.window_radius)
            object.__setattr__(self, "window_radius", radius)
            if not math.isfinite(radius) or radius <= 0.0:
                raise ConfigError("window_radius must be finite and > 0")
        object.__setattr__(self, "n_fading_draws", int(self.n_fading_draws))
        if self.n_fading_draws < 1:
            raise ConfigError("n_fading_draws must be >= 1")
        try:
            object.__setattr__(
                self, "conditional_mode", ConditionalMode(self.conditional_mode)
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class EstimateWithCI:
    """Point estimate with its standard error."""

    value: float
    std_error: float
    n_samples: int
    n_capped: int = 0

    def __post_init__(self) -> None:
        if self.std_error < 0.0:
            raise ConfigError("std_error must be >= 0")

    def interval(self, n_sigma: float = 3.0) -> tuple[float, float]:
        half = n_sigma * self.std_error
        return (self.value - half, self.value + half)


@dataclass(frozen=True)
class NetworkRealization:
    """One sampled interferer pattern plus the typical link.

    The typical transmitter sits at (R, 0); the receiver is the origin.
    ``occupancy`` is the boolean interferer-by-chunk matrix.
    """

    positions: np.ndarray
    types: np.ndarray
    occupancy: np.ndarray
    fading: np.ndarray
    typical_type: int
    typical_occupancy: np.ndarray
    typical_fading: float
    link_distance: float
    window_radius: float

    @property
    def n_interferers(self) -> int:
        return self.positions.shape[0]

    def distances(self) -> np.ndarray:
        return np.hypot(self.positions[:, 0], self.positions[:, 1])

    def chunk_sets(self) -> list[tuple[int, ...]]:
        return [tuple(int(c) + 1 for c in np.flatnonzero(row)) for row in self.occupancy]

    def overlaps(self) -> np.ndarray:
        """Shared-chunk count of each interferer with the typical user."""
        return self.occupancy[:, self.typical_occupancy].sum(axis=1)


def realization_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for one realization; the (seed, index) pair is the entire
    entropy, which is what makes parallel fan-out deterministic."""
    return np.random.default_rng([seed, index])


def _window(net: NetworkParams, sim: SimConfig) -> float:
    radius = sim.window_radius
    if radius is None:
        return DEFAULT_WINDOW_FACTOR * net.link_distance
    if radius < _MIN_WINDOW_FACTOR * net.link_distance:
        raise DomainError(
            f"window_radius must be at least {_MIN_WINDOW_FACTOR} link distances"
        )
    return radius


def _sample_types(ba: BandwidthConfig, rng: np.random.Generator, n: int) -> np.ndarray:
    cum = np.cumsum(ba.type_probs)
    idx = np.searchsorted(cum, rng.random(n), side="right")
    return np.minimum(idx, ba.n_chunks - 1) + 1


def _sample_occupancy(
    ba: BandwidthConfig, types: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    n = types.shape[0]
    n_chunks = ba.n_chunks
    if ba.mode is AllocationMode.RANDOM:
        # rank trick: a uniform random matrix argsorted per row gives a
        # uniform random permutation; keeping ranks below the type yields a
        # uniform k-subset
        order = np.argsort(rng.random((n, n_chunks)), axis=1)
        ranks = np.empty_like(order)
        np.put_along_axis(
            ranks, order, np.broadcast_to(np.arange(n_chunks), (n, n_chunks)).copy(), axis=1
        )
        return ranks < types[:, None]
    starts = (rng.random(n) * (n_chunks - types + 1)).astype(np.int64)
    cols = np.arange(n_chunks)
    return (cols >= starts[:, None]) & (cols < (starts + types)[:, None])


def sample_realization(
    net: NetworkParams,
    ba: BandwidthConfig,
    sim: SimConfig,
    k_typical: int,
    rng: np.random.Generator,
) -> NetworkRealization:
    """Draw one network: Poisson interferer count in the window disk, uniform
    positions, independent types, chunk sets, and unit-mean fading. The
    typical link is added on top, never drawn from the interferer process."""
    k_typical = _check_type(ba.n_chunks, k_typical, "k_typical")
    radius = _window(net, sim)
    n = int(rng.poisson(net.intensity * math.pi * radius * radius))
    rr = radius * np.sqrt(rng.random(n))
    ang = 2.0 * math.pi * rng.random(n)
    positions = np.column_stack((rr * np.cos(ang), rr * np.sin(ang)))
    types = _sample_types(ba, rng, n)
    occupancy = _sample_occupancy(ba, types, rng)
    fading = rng.exponential(1.0, n)
    typical_occupancy = np.zeros(ba.n_chunks, dtype=bool)
    if ba.mode is AllocationMode.RANDOM:
        typical_occupancy[rng.choice(ba.n_chunks, size=k_typical, replace=False)] = True
    else:
        start = int(rng.integers(0, ba.n_chunks - k_typical + 1))
        typical_occupancy[start : start + k_typical] = True
    typical_fading = float(rng.exponential(1.0))
    return NetworkRealization(
        positions=positions,
        types=types,
        occupancy=occupancy,
        fading=fading,
        typical_type=k_typical,
        typical_occupancy=typical_occupancy,
        typical_fading=typical_fading,
        link_distance=net.link_distance,
        window_radius=radius,
    )


def sir_of_realization(real: NetworkRealization, net: NetworkParams) -> float:
    """Realized SIR of the typical link; infinite when nothing interferes on
    the typical user's chunks."""
    overlaps = real.overlaps()
    attenuation = net.pathloss.attenuation(real.distances())
    interference = float(np.sum(overlaps * real.fading * attenuation))
    signal = real.typical_type * real.typical_fading * net.signal_attenuation()
    if interference == 0.0:
        return math.inf
    return signal / interference


def conditional_success_prob(
    real: NetworkRealization,
    net: NetworkParams,
    ba: BandwidthConfig,
    k: int,
    theta: float,
    mode: ConditionalMode = ConditionalMode.CLOSED_FORM_GIVEN_PHI,
    n_fading_draws: int = 1_000,
    rng: np.random.Generator | None = None,
) -> float:
    """Success probability given the interferer positions.

    The closed-form route averages fading and everyone's chunk draws exactly,
    yielding a product of per-interferer factors that depends on the pattern
    only through distances. The empirical route redraws types, chunk sets,
    and fading with positions held fixed.
    """
    k = _check_type(ba.n_chunks, k, "k")
    theta = float(theta)
    if not math.isfinite(theta) or theta <= 0.0:
        raise DomainError(f"theta must be finite and > 0, got {theta}")
    dist = real.distances()
    if mode is ConditionalMode.CLOSED_FORM_GIVEN_PHI:
        if dist.size == 0:
            return 1.0
        q = type_averaged_overlap(ba, k)
        ts = np.arange(1, k + 1, dtype=float)
        ratio = net.pathloss.attenuation(dist) / net.signal_attenuation()
        scaled = theta * (ts / k)[:, None] * np.atleast_1d(ratio)[None, :]
        # per-interferer factor as 1 - discount; exact when nothing overlaps
        discount = (q[1:, None] * (1.0 - 1.0 / (1.0 + scaled))).sum(axis=0)
        return float(np.prod(1.0 - discount))

    if rng is None:
        raise DomainError("fully-empirical conditioning needs a randomness source")
    n = dist.size
    if n == 0:
        return 1.0
    attenuation = np.asarray(net.pathloss.attenuation(dist), dtype=float)
    signal_scale = k * net.signal_attenuation()
    hits = 0
    done = 0
    # draws are processed in blocks to bound the (block, n, chunks) workspace
    block = max(1, int(2_000_000 // max(n * ba.n_chunks, 1)))
    while done < n_fading_draws:
        m = min(block, n_fading_draws - done)
        types = _sample_types(ba, rng, m * n).reshape(m, n)
        if ba.mode is AllocationMode.RANDOM:
            occ = _sample_occupancy(ba, types.ravel(), rng).reshape(m, n, ba.n_chunks)
            typ = _sample_occupancy(ba, np.full(m, k, dtype=np.int64), rng)
            t_x = (occ & typ[:, None, :]).sum(axis=2)
        else:
            starts = (rng.random((m, n)) * (ba.n_chunks - types + 1)).astype(np.int64)
            typ_starts = (rng.random(m) * (ba.n_chunks - k + 1)).astype(np.int64)
            lo = np.maximum(starts, typ_starts[:, None])
            hi = np.minimum(starts + types, (typ_starts + k)[:, None])
            t_x = np.maximum(0, hi - lo)
        h = rng.exponential(1.0, (m, n))
        h0 = rng.exponential(1.0, m)
        interference = (t_x * h * attenuation[None, :]).sum(axis=1)
        sir = np.where(
            interference > 0.0, signal_scale * h0 / np.maximum(interference, 1e-300), math.inf
        )
        hits += int(np.count_nonzero(sir > theta))
        done += m
    return hits / n_fading_draws


def _binomial_estimate(hits: int, n: int) -> EstimateWithCI:
    p = hits / n
    return EstimateWithCI(p, math.sqrt(p * (1.0 - p) / n), n)


def success_prob_curve(
    net: NetworkParams,
    ba: BandwidthConfig,
    sim: SimConfig,
    k: int | None,
    thetas,
) -> list[EstimateWithCI]:
    """Empirical P(SIR > theta) on a threshold grid, sharing one realization
    set across all thresholds (common random numbers). ``k = None`` draws the
    typical type from the mix per realization."""
    thetas = np.asarray(list(thetas), dtype=float)
    if thetas.size == 0:
        raise DomainError("thetas must be nonempty")
    if np.any(~np.isfinite(thetas)) or np.any(thetas < 0.0):
        raise DomainError("thetas must be finite and >= 0")
    hits = np.zeros(thetas.size, dtype=np.int64)
    for idx in range(sim.n_realizations):
        rng = realization_rng(sim.seed, idx)
        k_typ = sample_type_or_fixed(ba, k, rng)
        real = sample_realization(net, ba, sim, k_typ, rng)
        sir = sir_of_realization(real, net)
        hits += sir > thetas
    n = sim.n_realizations
    return [_binomial_estimate(int(h), n) for h in hits]


def sample_type_or_fixed(ba: BandwidthConfig, k: int | None, rng) -> int:
    if k is None:
        cum = np.cumsum(ba.type_probs)
        idx = int(np.searchsorted(cum, rng.random(), side="right"))
        return min(idx, ba.n_chunks - 1) + 1
    return _check_type(ba.n_chunks, k, "k")


def estimate_success_prob(
    net: NetworkParams,
    ba: BandwidthConfig,
    sim: SimConfig,
    k: int | None,
    theta: float,
) -> EstimateWithCI:
    """Empirical P(SIR > theta) with a binomial standard error."""
    return success_prob_curve(net, ba, sim, k, [theta])[0]


def estimate_meta_distribution(
    net: NetworkParams,
    ba: BandwidthConfig,
    sim: SimConfig,
    k: int | None,
    theta: float,
    x_grid,
) -> list[EstimateWithCI]:
    """Empirical ccdf of the conditional success probability on ``x_grid``."""
    x_grid = np.asarray(list(x_grid), dtype=float)
    if x_grid.size == 0:
        raise DomainError("x_grid must be nonempty")
    if np.any(~np.isfinite(x_grid)) or np.any(x_grid < 0.0) or np.any(x_grid > 1.0):
        raise DomainError("x_grid values must lie in [0, 1]")
    counts = np.zeros(x_grid.size, dtype=np.int64)
    for idx in range(sim.n_realizations):
        rng = realization_rng(sim.seed, idx)
        k_typ = sample_type_or_fixed(ba, k, rng)
        real = sample_realization(net, ba, sim, k_typ, rng)
        value = conditional_success_prob(
            real,
            net,
            ba,
            k_typ,
            theta,
            mode=sim.conditional_mode,
            n_fading_draws=sim.n_fading_draws,
            rng=rng,
        )
        counts += value > x_grid
    n = sim.n_realizations
    return [_binomial_estimate(int(c), n) for c in counts]


def estimate_throughput(
    net: NetworkParams,
    ba: BandwidthConfig,
    sim: SimConfig,
    k: int | None,
) -> EstimateWithCI:
    """Empirical Shannon throughput (k/n) * log2(1 + SIR); infinite-SIR
    realizations are capped at SIR_CAP and counted in ``n_capped``."""
    values = np.empty(sim.n_realizations)
    n_capped = 0
    for idx in range(sim.n_realizations):
        rng = realization_rng(sim.seed, idx)
        k_typ = sample_type_or_fixed(ba, k, rng)
        real = sample_realization(net, ba, sim, k_typ, rng)
        sir = sir_of_realization(real, net)
        if not math.isfinite(sir) or sir > SIR_CAP:
            sir = SIR_CAP
            n_capped += 1
        values[idx] = (k_typ / ba.n_chunks) * math.log2(1.0 + sir)
    n = sim.n_realizations
    std_error = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return EstimateWithCI(float(values.mean()), std_error, n, n_capped)


def estimate_mean_interference(
    net: NetworkParams,
    ba: BandwidthConfig,
    sim: SimConfig,
    k: int | None,
) -> EstimateWithCI:
    """Empirical mean interference power at a type-k receiver, with the
    per-chunk power reinstated."""
    values = np.empty(sim.n_realizations)
    for idx in range(sim.n_realizations):
        rng = realization_rng(sim.seed, idx)
        k_typ = sample_type_or_fixed(ba, k, rng)
        real = sample_realization(net, ba, sim, k_typ, rng)
        attenuation = net.pathloss.attenuation(real.distances())
        values[idx] = ba.power_per_chunk * float(
            np.sum(real.overlaps() * real.fading * attenuation)
        )
    n = sim.n_realizations
    std_error = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return EstimateWithCI(float(values.mean()), std_error, n)
