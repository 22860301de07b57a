"""Seeded Monte Carlo estimation of asymptotic densities.

Asymptotic density of a set of words (or tuples of words) is the limiting
fraction it occupies among all reduced words of length at most p, as p
grows.  The estimators here sample uniformly from the sphere (length
exactly p) or the ball (length at most p, identity included) and count how
often a property holds; the measured properties are the certificates from
the remnant and conjugacy modules.

Seeding contract: every sampled word is a pure function of
(seed, length index, trial index, role index), realised with numpy
SeedSequence spawn keys.  Trials are therefore independent of execution
order, and a run with any number of worker processes is bit-identical to
the serial run.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .words import Alphabet, PreconditionError, Word
from .homomorphisms import Homomorphism, free_product
from .remnant import compute_remnant
from .conjugacy import eta_has_remnant, quick_distinguish

PROPERTIES = (
    "remnant",
    "remnant_length",
    "remnant_ratio",
    "equalizer_trivial",
    "quick_distinct",
    "eta_distinct",
)

# Roles of the word streams inside one sampled tuple (phi, psi, u, v).
_ROLE_PHI, _ROLE_PSI, _ROLE_U, _ROLE_V = 0, 1, 2, 3

_WILSON_Z = 1.96  # 95% score interval


def sphere_size(rank: int, k: int) -> int:
    """Number of reduced words of length exactly k, computed exactly."""
    if rank < 1 or k < 0:
        raise ValueError("rank must be >= 1 and k >= 0")
    if k == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (k - 1)


def ball_size(rank: int, p: int) -> int:
    """Number of reduced words of length at most p, computed exactly."""
    if rank < 1 or p < 0:
        raise ValueError("rank must be >= 1 and p >= 0")
    return 1 + sum(sphere_size(rank, k) for k in range(1, p + 1))


@dataclass(frozen=True)
class RandomModel:
    """Parameters of the word sampler.

    ``sphere`` mode draws uniformly among reduced words of length exactly
    ``length``: the first letter uniform over the 2n signed generators,
    every later letter uniform over the 2n-1 choices that do not cancel.
    ``ball`` mode first picks a length k <= ``length`` with probability
    proportional to the exact sphere size, then sphere-samples at k.
    """

    rank_g: int
    rank_h: int
    length: int
    mode: str = "sphere"
    seed: int = 0

    def __post_init__(self):
        if self.rank_g < 1 or self.rank_h < 1:
            raise ValueError("ranks must be at least 1")
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.mode not in ("sphere", "ball"):
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


@lru_cache(maxsize=None)
def _default_alphabet(rank: int) -> Alphabet:
    return Alphabet.default(rank)


def _spawn_key(stream) -> tuple[int, ...]:
    if isinstance(stream, int):
        return (stream,)
    return tuple(stream)


def _rng(seed: int, key: tuple[int, ...]) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _uniform_below(rng: np.random.Generator, bound: int) -> int:
    # Exact uniform draw from [0, bound) for arbitrary-precision bounds,
    # by rejection on bit blocks.
    bits = bound.bit_length()
    while True:
        x = 0
        remaining = bits
        while remaining > 0:
            take = min(32, remaining)
            x = (x << take) | int(rng.integers(0, 1 << take))
            remaining -= take
        if x < bound:
            return x


def _ball_length(rng: np.random.Generator, rank: int, p: int) -> int:
    x = _uniform_below(rng, ball_size(rank, p))
    cumulative = 1
    k = 0
    while x >= cumulative:
        k += 1
        cumulative += sphere_size(rank, k)
    return k


def _sphere_word(rng: np.random.Generator, alphabet: Alphabet, length: int) -> Word:
    if length == 0:
        return Word._raw(alphabet, ())
    two_n = 2 * alphabet.rank
    # Letter codes 0..2n-1: even = generator, odd = its inverse.
    code = int(rng.integers(0, two_n))
    out = [code]
    if length > 1:
        for c in rng.integers(0, two_n - 1, size=length - 1):
            banned = out[-1] ^ 1  # code of the inverse of the last letter
            c = int(c)
            out.append(c if c < banned else c + 1)
    letters = tuple(
        (c // 2 + 1) if c % 2 == 0 else -(c // 2 + 1) for c in out
    )
    return Word._raw(alphabet, letters)


def sample_word(model: RandomModel, stream) -> Word:
    """Draw one reduced word over the target alphabet.

    Deterministic in (model.seed, stream); ``stream`` may be an int or a
    tuple of ints and names an independent substream.
    """
    rng = _rng(model.seed, _spawn_key(stream))
    if model.mode == "ball":
        length = _ball_length(rng, model.rank_h, model.length)
    else:
        length = model.length
    return _sphere_word(rng, _default_alphabet(model.rank_h), length)


def sample_hom(model: RandomModel, stream) -> Homomorphism:
    """Draw a homomorphism: one independent image word per domain
    generator, on substreams derived from ``stream``."""
    key = _spawn_key(stream)
    images = tuple(
        sample_word(model, key + (i,)) for i in range(model.rank_g)
    )
    return Homomorphism(
        _default_alphabet(model.rank_g), _default_alphabet(model.rank_h), images
    )


@dataclass(frozen=True)
class DensityConfig:
    """One experiment: which properties to measure, at which lengths."""

    rank_g: int
    rank_h: int
    lengths: tuple[int, ...]
    trials: int
    seed: int
    mode: str = "sphere"
    properties: tuple[str, ...] = ("remnant",)
    remnant_length_l: int | None = None
    remnant_ratio_r: Fraction | None = None

    @classmethod
    def from_json(cls, obj: dict) -> "DensityConfig":
        ratio = obj.get("remnant_ratio_r")
        if ratio is not None:
            ratio = Fraction(ratio)
        return cls(
            rank_g=int(obj["rank_g"]),
            rank_h=int(obj["rank_h"]),
            lengths=tuple(int(p) for p in obj["lengths"]),
            trials=int(obj["trials"]),
            seed=int(obj["seed"]),
            mode=obj.get("mode", "sphere"),
            properties=tuple(obj.get("properties", ("remnant",))),
            remnant_length_l=(
                int(obj["remnant_length_l"]) if "remnant_length_l" in obj else None
            ),
            remnant_ratio_r=ratio,
        )

    def to_json(self) -> dict:
        out = {
            "rank_g": self.rank_g,
            "rank_h": self.rank_h,
            "lengths": list(self.lengths),
            "trials": self.trials,
            "seed": self.seed,
            "mode": self.mode,
            "properties": list(self.properties),
        }
        if self.remnant_length_l is not None:
            out["remnant_length_l"] = self.remnant_length_l
        if self.remnant_ratio_r is not None:
            out["remnant_ratio_r"] = str(self.remnant_ratio_r)
        return out


@dataclass(frozen=True)
class DensityRow:
    property: str
    p: int
    trials: int
    count: int
    fraction: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class DensityReport:
    config: DensityConfig
    rows: tuple[DensityRow, ...]

    def row(self, property: str, p: int) -> DensityRow:
        for r in self.rows:
            if r.property == property and r.p == p:
                return r
        raise KeyError((property, p))

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "results": [
                {
                    "property": r.property,
                    "p": r.p,
                    "trials": r.trials,
                    "count": r.count,
                    "fraction": r.fraction,
                    "ci_low": r.ci_low,
                    "ci_high": r.ci_high,
                }
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["property", "p", "trials", "count", "fraction", "ci_low", "ci_high", "seed"]
        )
        for r in self.rows:
            writer.writerow(
                [r.property, r.p, r.trials, r.count, r.fraction, r.ci_low, r.ci_high,
                 self.config.seed]
            )
        return buf.getvalue()


def wilson_interval(count: int, trials: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval; well behaved near fractions of 0 and 1.
    The degenerate zero-trial interval is (0, 1)."""
    if trials == 0:
        return (0.0, 1.0)
    p = count / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def _validate(config: DensityConfig) -> None:
    for prop in config.properties:
        if prop not in PROPERTIES:
            raise PreconditionError(
                f"unknown property {prop!r}; choose from {PROPERTIES}"
            )
    if config.properties and config.rank_h < 2:
        raise PreconditionError(
            "density experiments need a target group of rank at least 2: "
            "over a rank-1 target the remnant certificates degenerate and the "
            "measured properties are no longer generic"
        )
    if config.trials < 0:
        raise PreconditionError("trials must be nonnegative")
    if "remnant_length" in config.properties and config.remnant_length_l is None:
        raise PreconditionError("remnant_length requires remnant_length_l")
    if "remnant_ratio" in config.properties:
        r = config.remnant_ratio_r
        if r is None or not 0 < r <= 1:
            raise PreconditionError("remnant_ratio requires remnant_ratio_r in (0, 1]")
    # Constructing a model validates mode, seed and lengths.
    for p in config.lengths:
        RandomModel(config.rank_g, config.rank_h, p, config.mode, config.seed)


def sample_trial(
    config: DensityConfig, length_index: int, trial: int
) -> tuple[Homomorphism, Homomorphism, Word, Word]:
    """Reconstruct the full (phi, psi, u, v) tuple of one trial.

    This is the exact tuple run_density measures, so spot checks can
    re-derive any counted trial from (config, length index, trial index).
    """
    model = RandomModel(
        config.rank_g, config.rank_h, config.lengths[length_index],
        config.mode, config.seed,
    )
    phi = sample_hom(model, (length_index, trial, _ROLE_PHI))
    psi = sample_hom(model, (length_index, trial, _ROLE_PSI))
    u = sample_word(model, (length_index, trial, _ROLE_U))
    v = sample_word(model, (length_index, trial, _ROLE_V))
    return phi, psi, u, v


def _evaluate_trial(config: DensityConfig, length_index: int, trial: int) -> list[bool]:
    props = config.properties
    model = RandomModel(
        config.rank_g, config.rank_h, config.lengths[length_index],
        config.mode, config.seed,
    )
    phi = sample_hom(model, (length_index, trial, _ROLE_PHI))
    need_pair = any(
        p in props for p in ("equalizer_trivial", "quick_distinct", "eta_distinct")
    )
    need_words = any(p in props for p in ("quick_distinct", "eta_distinct"))
    psi = sample_hom(model, (length_index, trial, _ROLE_PSI)) if need_pair else None
    u = sample_word(model, (length_index, trial, _ROLE_U)) if need_words else None
    v = sample_word(model, (length_index, trial, _ROLE_V)) if need_words else None
    phi_report = None
    if any(p in props for p in ("remnant", "remnant_length", "remnant_ratio")):
        phi_report = compute_remnant(phi)
    out = []
    for prop in props:
        if prop == "remnant":
            value = phi_report.has_remnant
        elif prop == "remnant_length":
            value = phi_report.min_remnant_length >= config.remnant_length_l
        elif prop == "remnant_ratio":
            value = phi_report.min_remnant_ratio >= config.remnant_ratio_r
        elif prop == "equalizer_trivial":
            value = compute_remnant(free_product(phi, psi)).has_remnant
        elif prop == "quick_distinct":
            value = quick_distinguish(phi, psi, u, v)
        else:  # eta_distinct: certificate for either orientation
            value = eta_has_remnant(phi, psi, u, v)[0] or eta_has_remnant(phi, psi, v, u)[0]
        out.append(value)
    return out


def _count_range(config: DensityConfig, length_index: int, t0: int, t1: int) -> list[int]:
    counts = [0] * len(config.properties)
    for t in range(t0, t1):
        for k, value in enumerate(_evaluate_trial(config, length_index, t)):
            counts[k] += value
    return counts


def run_density(config: DensityConfig, workers: int = 1) -> DensityReport:
    """Run the experiment and aggregate counts into a report.

    Counts are sums of per-trial indicators and every trial is seeded
    independently, so the report is identical for any ``workers`` value.
    """
    _validate(config)
    totals = {
        (prop, li): 0
        for prop in config.properties
        for li in range(len(config.lengths))
    }
    if workers <= 1 or config.trials == 0:
        for li in range(len(config.lengths)):
            counts = _count_range(config, li, 0, config.trials)
            for k, prop in enumerate(config.properties):
                totals[(prop, li)] += counts[k]
    else:
        chunk = max(1, -(-config.trials // (workers * 8)))
        tasks = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for li in range(len(config.lengths)):
                for t0 in range(0, config.trials, chunk):
                    t1 = min(t0 + chunk, config.trials)
                    tasks.append((li, pool.submit(_count_range, config, li, t0, t1)))
            for li, future in tasks:
                counts = future.result()
                for k, prop in enumerate(config.properties):
                    totals[(prop, li)] += counts[k]
    rows = []
    for prop in config.properties:
        for li, p in enumerate(config.lengths):
            count = totals[(prop, li)]
            fraction = count / config.trials if config.trials else 0.0
            low, high = wilson_interval(count, config.trials)
            rows.append(
                DensityRow(
                    property=prop,
                    p=p,
                    trials=config.trials,
                    count=count,
                    fraction=fraction,
                    ci_low=low,
                    ci_high=high,
                )
            )
    return DensityReport(config=config, rows=tuple(rows))
