"""Monte Carlo engine for disaster-area uplink success under BS silencing.

Geometry: a circular disaster disk where a fraction of base stations
survives, a fully active ring just outside it, a silencing annulus whose
stations are suppressed by policy, and untouched outer stations up to a
simulation truncation radius. A typical device inside the disaster disk
uplinks to the nearest functioning station in or around the disk; the
interference it must overcome is the aggregate co-band downlink radiation
of every other transmitting station, received at the serving site.

Determinism contract: all randomness of trial t is drawn from Philox
engines keyed by (master_seed mod 2^64) at counter block (0, 0, t, s),
where s is the substream role:

    s=0  core geometry: device position, disaster stations (count,
         positions, survival marks), ring stations, aerial stations
    s=1  exterior stations, sampled in ascending radius
    s=2  uplink fading: device link, then one draw per station in array order
    s=3  silencing-area user position and downlink fading

Policies never consume randomness, so a trial's realization is identical
under every policy; station arrays are ordered [disaster, ring, aerial,
exterior] with the exterior ascending in radius, so enlarging sim_radius
only appends stations and fading draws. Both properties make policy and
truncation comparisons exact per trial, not just statistical. Estimates
reduce integer success counts in ascending trial order and are
bit-identical for any worker count.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import IntEnum
from functools import lru_cache
import math

import numpy as np

from . import geometry
from .channel import ChannelParams, dbm_to_watts, path_gain
from .geometry import Annulus, Point2D

__all__ = [
    "Zone",
    "Band",
    "AerialTier",
    "ScenarioConfig",
    "SilencingPolicy",
    "NetworkSnapshot",
    "TrialResult",
    "Estimate",
    "ScenarioError",
    "trial_rng",
    "build_network",
    "apply_policy",
    "uplink_sinr",
    "uplink_trial",
    "downlink_sinr",
    "downlink_trial",
    "estimate_success",
    "estimate_silencing_area_coverage",
]


class ScenarioError(ValueError):
    """A scenario field violates its invariant; .field names the offender."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


class Zone(IntEnum):
    DISASTER = 0
    ACTIVE_RING = 1
    SILENCING = 2
    OUTER = 3


class Band(IntEnum):
    DISASTER_BAND = 0
    ALTERNATE_BAND = 1


# Substream roles for per-trial seed derivation.
STREAM_GEOMETRY = 0
STREAM_EXTERIOR = 1
STREAM_UPLINK = 2
STREAM_DOWNLINK = 3
_N_STREAMS = 4


def trial_rng(master_seed: int, trial_index: int, substream: int) -> np.random.Generator:
    """Generator for one (trial, substream) pair; see the module docstring."""
    key = np.array([master_seed % 2**64, 0], dtype=np.uint64)
    counter = np.array([0, 0, trial_index, substream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


class _StreamPool:
    """Reusable Philox engines, one per substream, reset per trial.

    Resetting the counter of an existing engine yields the same draws as
    constructing it fresh, at a fraction of the cost; estimate loops run
    millions of trials, so the construction overhead matters.
    """

    def __init__(self, master_seed: int):
        key = np.array([master_seed % 2**64, 0], dtype=np.uint64)
        self._engines = [np.random.Philox(key=key) for _ in range(_N_STREAMS)]
        self._generators = [np.random.Generator(e) for e in self._engines]
        self._states = [e.state for e in self._engines]

    def get(self, trial_index: int, substream: int) -> np.random.Generator:
        state = self._states[substream]
        state["state"]["counter"][:] = (0, 0, trial_index, substream)
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        state["uinteger"] = 0
        self._engines[substream].state = state
        return self._generators[substream]


@dataclass(frozen=True)
class AerialTier:
    """Optional flying-BS infill over the disaster disk: always on, never thinned."""

    density: float  # per m^2
    altitude: float  # meters
    tx_power: float  # watts

    def __post_init__(self):
        if self.density < 0:
            raise ScenarioError("aerial.density", f"must be >= 0, got {self.density}")
        if self.altitude <= 0:
            raise ScenarioError("aerial.altitude", f"must be > 0, got {self.altitude}")
        if self.tx_power < 0:
            raise ScenarioError("aerial.tx_power", f"must be >= 0, got {self.tx_power}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one silencing experiment."""

    disaster_radius: float = 2000.0  # m
    active_ring_width: float = 600.0  # m
    silencing_radius: float = 6000.0  # m, outer edge of the suppressed annulus
    sim_radius: float = 20000.0  # m, interference truncation
    bs_density: float = 1e-6  # per m^2
    bs_survival_prob: float = 0.3  # inside the disaster disk
    device_tx_power: float = dbm_to_watts(23.0)  # W
    bs_tx_power: float = dbm_to_watts(46.0)  # W
    aerial: AerialTier | None = None
    channel: ChannelParams = field(default_factory=ChannelParams)
    n_trials: int = 10000
    master_seed: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.disaster_radius <= 0:
            raise ScenarioError("disaster_radius", f"must be > 0, got {self.disaster_radius}")
        if self.active_ring_width <= 0:
            raise ScenarioError("active_ring_width", f"must be > 0, got {self.active_ring_width}")
        if self.silencing_radius < self.ring_outer_radius:
            raise ScenarioError(
                "silencing_radius",
                f"must be >= disaster_radius + active_ring_width = {self.ring_outer_radius}, "
                f"got {self.silencing_radius}",
            )
        if self.sim_radius < self.silencing_radius:
            raise ScenarioError(
                "sim_radius", f"must be >= silencing_radius, got {self.sim_radius}"
            )
        if self.bs_density < 0:
            raise ScenarioError("bs_density", f"must be >= 0, got {self.bs_density}")
        if not 0.0 <= self.bs_survival_prob <= 1.0:
            raise ScenarioError("bs_survival_prob", f"must be in [0, 1], got {self.bs_survival_prob}")
        if self.device_tx_power < 0:
            raise ScenarioError("device_tx_power", f"must be >= 0, got {self.device_tx_power}")
        if self.bs_tx_power < 0:
            raise ScenarioError("bs_tx_power", f"must be >= 0, got {self.bs_tx_power}")
        if self.n_trials < 1:
            raise ScenarioError("n_trials", f"must be >= 1, got {self.n_trials}")

    @property
    def ring_outer_radius(self) -> float:
        return self.disaster_radius + self.active_ring_width


@dataclass(frozen=True)
class SilencingPolicy:
    """Tagged silencing policy: none | complete | partial(rho) | spectrum_split.

    rho is the transmit-power suppression factor applied to silencing-zone
    stations; none is partial(1), complete is partial(0). spectrum_split
    keeps silencing-zone stations at full power but moves them to the
    alternate band, so they stop interfering with the disaster band.
    """

    kind: str
    rho: float = 1.0

    _KINDS = ("none", "complete", "partial", "spectrum_split")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must be in [0, 1], got {self.rho}")

    @classmethod
    def none(cls) -> "SilencingPolicy":
        return cls("none", 1.0)

    @classmethod
    def complete(cls) -> "SilencingPolicy":
        return cls("complete", 0.0)

    @classmethod
    def partial(cls, rho: float) -> "SilencingPolicy":
        return cls("partial", rho)

    @classmethod
    def spectrum_split(cls) -> "SilencingPolicy":
        return cls("spectrum_split", 1.0)

    @property
    def silencing_power_factor(self) -> float:
        if self.kind == "complete":
            return 0.0
        if self.kind == "partial":
            return self.rho
        return 1.0


@dataclass
class NetworkSnapshot:
    """One sampled realization as parallel per-station arrays plus the device.

    Station order is [disaster, ring, aerial, exterior-by-ascending-radius];
    that order is the fading-draw order and never changes under policies.
    """

    xy: np.ndarray  # (n, 2) m
    zone: np.ndarray  # (n,) int8, Zone values
    altitude: np.ndarray  # (n,) m, 0 for terrestrial
    tx_power: np.ndarray  # (n,) W
    power_factor: np.ndarray  # (n,) in [0, 1]
    band: np.ndarray  # (n,) int8, Band values
    alive: np.ndarray  # (n,) bool
    device_xy: np.ndarray  # (2,) m, typical device inside the disaster disk

    @property
    def n_bs(self) -> int:
        return self.xy.shape[0]

    def copy(self) -> "NetworkSnapshot":
        return NetworkSnapshot(
            self.xy.copy(),
            self.zone.copy(),
            self.altitude.copy(),
            self.tx_power.copy(),
            self.power_factor.copy(),
            self.band.copy(),
            self.alive.copy(),
            self.device_xy.copy(),
        )


@dataclass(frozen=True)
class TrialResult:
    success: bool
    coverage_hole: bool
    sinr: float  # linear; nan when there was no serving station


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo probability estimate with a 95% normal-approximation CI."""

    value: float
    ci_halfwidth: float
    n_trials: int
    master_seed: int
    n_coverage_holes: int = 0


def _estimate(successes: int, holes: int, cfg: ScenarioConfig) -> Estimate:
    n = cfg.n_trials
    value = successes / n
    ci = 1.96 * math.sqrt(value * (1.0 - value) / n)
    return Estimate(value, ci, n, cfg.master_seed, holes)


@lru_cache(maxsize=32)
def _regions(disaster_radius: float, ring_outer: float, sim_radius: float):
    origin = Point2D(0.0, 0.0)
    disaster = geometry.disk(disaster_radius)
    ring = Annulus(origin, disaster_radius, ring_outer)
    exterior = Annulus(origin, ring_outer, sim_radius) if sim_radius > ring_outer else None
    return disaster, ring, exterior


def _sample_trial(
    cfg: ScenarioConfig,
    geom_rng: np.random.Generator,
    exterior_rng: np.random.Generator,
) -> NetworkSnapshot:
    disaster_region, ring_region, exterior_region = _regions(
        cfg.disaster_radius, cfg.ring_outer_radius, cfg.sim_radius
    )

    device = geometry.sample_uniform(disaster_region, 1, geom_rng)[0]
    dis_xy = geometry.sample_ppp(disaster_region, cfg.bs_density, geom_rng)
    dis_alive = geom_rng.random(dis_xy.shape[0]) < cfg.bs_survival_prob
    ring_xy = geometry.sample_ppp(ring_region, cfg.bs_density, geom_rng)
    if cfg.aerial is not None:
        air_xy = geometry.sample_ppp(disaster_region, cfg.aerial.density, geom_rng)
    else:
        air_xy = np.empty((0, 2))

    if exterior_region is not None:
        ext_xy = geometry.sample_ppp_radial(exterior_region, cfg.bs_density, exterior_rng)
    else:
        ext_xy = np.empty((0, 2))

    n_d, n_r, n_a, n_e = dis_xy.shape[0], ring_xy.shape[0], air_xy.shape[0], ext_xy.shape[0]
    n = n_d + n_r + n_a + n_e

    xy = np.vstack([dis_xy, ring_xy, air_xy, ext_xy])
    zone = np.empty(n, dtype=np.int8)
    zone[: n_d + n_r + n_a] = Zone.DISASTER
    zone[n_d : n_d + n_r] = Zone.ACTIVE_RING  # aerial stays in the disaster zone
    ext_r = np.hypot(ext_xy[:, 0], ext_xy[:, 1])
    zone[n_d + n_r + n_a :] = np.where(ext_r <= cfg.silencing_radius, Zone.SILENCING, Zone.OUTER)

    altitude = np.zeros(n)
    tx_power = np.full(n, cfg.bs_tx_power)
    if n_a:
        altitude[n_d + n_r : n_d + n_r + n_a] = cfg.aerial.altitude
        tx_power[n_d + n_r : n_d + n_r + n_a] = cfg.aerial.tx_power

    alive = np.ones(n, dtype=bool)
    alive[:n_d] = dis_alive

    return NetworkSnapshot(
        xy=xy,
        zone=zone,
        altitude=altitude,
        tx_power=tx_power,
        power_factor=np.ones(n),
        band=np.full(n, Band.DISASTER_BAND, dtype=np.int8),
        alive=alive,
        device_xy=device,
    )


def build_network(cfg: ScenarioConfig, trial_index: int) -> NetworkSnapshot:
    """Sample one network realization, fully determined by (master_seed, trial_index).

    Stations arrive as independent PPPs at bs_density per zone: the disaster
    disk (then survival-thinned via alive marks), the active ring, and the
    exterior annulus out to sim_radius, which is split into silencing and
    outer zones by radius against cfg.silencing_radius. Splitting one
    exterior process by radius keeps realizations comparable across
    silencing radii with common random numbers.
    """
    return _sample_trial(
        cfg,
        trial_rng(cfg.master_seed, trial_index, STREAM_GEOMETRY),
        trial_rng(cfg.master_seed, trial_index, STREAM_EXTERIOR),
    )


def _stamp_policy(net: NetworkSnapshot, policy: SilencingPolicy):
    sil = net.zone == Zone.SILENCING
    net.power_factor[sil] = policy.silencing_power_factor
    if policy.kind == "spectrum_split":
        net.band[sil] = Band.ALTERNATE_BAND


def apply_policy(net: NetworkSnapshot, policy: SilencingPolicy) -> NetworkSnapshot:
    """Return a copy of the snapshot with the policy stamped onto the silencing zone.

    Only silencing-zone stations change: their power factor becomes the
    policy's suppression factor, and spectrum_split retunes them to the
    alternate band at full power. No randomness is consumed.
    """
    out = net.copy()
    _stamp_policy(out, policy)
    return out


def _distances_3d(xy: np.ndarray, alt: np.ndarray, point_xy: np.ndarray, point_alt: float) -> np.ndarray:
    planar_sq = (xy[:, 0] - point_xy[0]) ** 2 + (xy[:, 1] - point_xy[1]) ** 2
    if point_alt == 0.0:
        return np.sqrt(planar_sq + alt * alt)
    return np.sqrt(planar_sq + (alt - point_alt) ** 2)


def uplink_sinr(
    net: NetworkSnapshot,
    cfg: ScenarioConfig,
    device_fading: float,
    bs_fading: np.ndarray,
) -> tuple[float, int]:
    """Uplink SINR for the typical device given explicit fading values.

    The device transmits on the disaster band to the nearest alive station
    inside the disaster disk or the active ring (aerial counts, with 3D
    range). Stations beyond the ring never serve the uplink: suppressing
    or re-tuning them must not retarget the receiver, which is what makes
    the common-random-number policy orderings exact per trial. Interference
    is the power_factor-scaled downlink radiation of every other
    disaster-band transmitter, received at the serving site. Returns
    (sinr, serving index); (nan, -1) when no station can serve.
    """
    ch = cfg.channel
    servable = (
        net.alive
        & (net.power_factor > 0.0)
        & (net.band == Band.DISASTER_BAND)
        & ((net.zone == Zone.DISASTER) | (net.zone == Zone.ACTIVE_RING))
    )
    candidates = np.flatnonzero(servable)
    if candidates.size == 0:
        return math.nan, -1

    d_dev = _distances_3d(net.xy[candidates], net.altitude[candidates], net.device_xy, 0.0)
    pick = int(np.argmin(d_dev))
    serving = int(candidates[pick])
    d0 = float(d_dev[pick])
    signal = cfg.device_tx_power * device_fading * path_gain(max(d0, ch.min_distance), ch)

    interferers = net.alive & (net.power_factor > 0.0) & (net.band == Band.DISASTER_BAND)
    interferers[serving] = False
    idx = np.flatnonzero(interferers)
    if idx.size:
        d_int = _distances_3d(net.xy[idx], net.altitude[idx], net.xy[serving], float(net.altitude[serving]))
        gains = path_gain(np.maximum(d_int, ch.min_distance), ch)
        interference = float(np.sum(net.power_factor[idx] * net.tx_power[idx] * bs_fading[idx] * gains))
    else:
        interference = 0.0

    denom = interference + ch.noise_power
    if denom == 0.0:
        return math.inf, serving
    return signal / denom, serving


def uplink_trial(net: NetworkSnapshot, cfg: ScenarioConfig, rng: np.random.Generator) -> TrialResult:
    """One uplink success/failure draw on an already-policied snapshot.

    Draw order is fixed (device fading, then one fading per station in array
    order) so identical generator states give identical draws under every
    policy. A trial with no serving station is a coverage hole and counts
    as a failure.
    """
    g = rng.exponential()
    h = rng.exponential(size=net.n_bs)
    sinr, serving = uplink_sinr(net, cfg, g, h)
    if serving < 0:
        return TrialResult(False, True, math.nan)
    return TrialResult(bool(sinr >= cfg.channel.sinr_threshold), False, float(sinr))


def downlink_sinr(
    net: NetworkSnapshot,
    cfg: ScenarioConfig,
    user_xy: np.ndarray,
    user_band: Band,
    user_fading: float,
    bs_fading: np.ndarray,
) -> tuple[float, int]:
    """Downlink SINR for a user served on user_band, given explicit fading.

    Serving station is the nearest transmitting station on that band (any
    zone); its power_factor scales the signal exactly as it scales what it
    leaks to everyone else. Interference comes from the other co-band
    transmitters. Returns (sinr, serving index); (nan, -1) for no server.
    """
    ch = cfg.channel
    transmitting = net.alive & (net.power_factor > 0.0) & (net.band == user_band)
    candidates = np.flatnonzero(transmitting)
    if candidates.size == 0:
        return math.nan, -1

    d_user = _distances_3d(net.xy[candidates], net.altitude[candidates], user_xy, 0.0)
    pick = int(np.argmin(d_user))
    serving = int(candidates[pick])
    d0 = float(d_user[pick])
    signal = (
        net.power_factor[serving]
        * net.tx_power[serving]
        * user_fading
        * path_gain(max(d0, ch.min_distance), ch)
    )

    others = transmitting
    others[serving] = False
    idx = np.flatnonzero(others)
    if idx.size:
        d_int = _distances_3d(net.xy[idx], net.altitude[idx], user_xy, 0.0)
        gains = path_gain(np.maximum(d_int, ch.min_distance), ch)
        interference = float(np.sum(net.power_factor[idx] * net.tx_power[idx] * bs_fading[idx] * gains))
    else:
        interference = 0.0

    denom = interference + ch.noise_power
    if denom == 0.0:
        if signal == 0.0:
            return math.nan, -1
        return math.inf, serving
    return signal / denom, serving


def downlink_trial(
    net: NetworkSnapshot,
    cfg: ScenarioConfig,
    policy: SilencingPolicy,
    rng: np.random.Generator,
) -> TrialResult:
    """Coverage draw for a user uniform in the silencing annulus.

    Under spectrum_split the user is served on the alternate band by the
    re-tuned silencing-zone stations; otherwise on the disaster band. Draw
    order: user position (radius, angle), user-link fading, one fading per
    station in array order.
    """
    if cfg.silencing_radius <= cfg.ring_outer_radius:
        raise ScenarioError(
            "silencing_radius",
            "silencing annulus is empty; coverage inside it is undefined",
        )
    region = Annulus(Point2D(0.0, 0.0), cfg.ring_outer_radius, cfg.silencing_radius)
    user = geometry.sample_uniform(region, 1, rng)[0]
    g = rng.exponential()
    h = rng.exponential(size=net.n_bs)
    band = Band.ALTERNATE_BAND if policy.kind == "spectrum_split" else Band.DISASTER_BAND
    sinr, serving = downlink_sinr(net, cfg, user, band, g, h)
    if serving < 0:
        return TrialResult(False, True, math.nan)
    return TrialResult(bool(sinr >= cfg.channel.sinr_threshold), False, float(sinr))


def _uplink_chunk(cfg: ScenarioConfig, policy: SilencingPolicy, start: int, stop: int) -> tuple[int, int]:
    pool = _StreamPool(cfg.master_seed)
    successes = holes = 0
    for t in range(start, stop):
        net = _sample_trial(cfg, pool.get(t, STREAM_GEOMETRY), pool.get(t, STREAM_EXTERIOR))
        _stamp_policy(net, policy)
        res = uplink_trial(net, cfg, pool.get(t, STREAM_UPLINK))
        successes += res.success
        holes += res.coverage_hole
    return successes, holes


def _downlink_chunk(cfg: ScenarioConfig, policy: SilencingPolicy, start: int, stop: int) -> tuple[int, int]:
    pool = _StreamPool(cfg.master_seed)
    successes = holes = 0
    for t in range(start, stop):
        net = _sample_trial(cfg, pool.get(t, STREAM_GEOMETRY), pool.get(t, STREAM_EXTERIOR))
        _stamp_policy(net, policy)
        res = downlink_trial(net, cfg, policy, pool.get(t, STREAM_DOWNLINK))
        successes += res.success
        holes += res.coverage_hole
    return successes, holes


def _run_chunked(chunk_fn, cfg: ScenarioConfig, policy: SilencingPolicy, workers: int) -> tuple[int, int]:
    n = cfg.n_trials
    if workers <= 1:
        return chunk_fn(cfg, policy, 0, n)
    # Per-trial seeding makes any partition valid; summing integer counts in
    # ascending chunk order keeps the result bit-identical for any worker count.
    chunk = max(1, math.ceil(n / (workers * 4)))
    bounds = [(s, min(s + chunk, n)) for s in range(0, n, chunk)]
    args = [(cfg, policy, a, b) for a, b in bounds]
    successes = holes = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for s, h in pool.map(chunk_fn, *zip(*args)):
            successes += s
            holes += h
    return successes, holes


def estimate_success(
    cfg: ScenarioConfig, policy: SilencingPolicy, workers: int = 1
) -> Estimate:
    """Probability that the typical disaster-area device's uplink clears the
    SINR threshold, averaged over n_trials independent realizations."""
    successes, holes = _run_chunked(_uplink_chunk, cfg, policy, workers)
    return _estimate(successes, holes, cfg)


def estimate_silencing_area_coverage(
    cfg: ScenarioConfig, policy: SilencingPolicy, workers: int = 1
) -> Estimate:
    """Downlink coverage probability for a typical user inside the silencing annulus."""
    if cfg.silencing_radius <= cfg.ring_outer_radius:
        raise ScenarioError(
            "silencing_radius",
            "silencing annulus is empty; coverage inside it is undefined",
        )
    successes, holes = _run_chunked(_downlink_chunk, cfg, policy, workers)
    return _estimate(successes, holes, cfg)
