"""Exhaustive degeneracy computation over all 2^|F| spin configurations.

The engine streams the configuration space in contiguous index ranges.  For
each configuration it computes the Hamming distances to its translates by a
set of representative shifts (one per {f, -f} pair); because correlation
entries satisfy A_f = |F| - 2 * distance and A_{-f} = A_f, these fields
determine the correlation vector exactly.  Packing the fields at fixed bit
width yields an injective integer fingerprint (at most 128 bits for every
group within the enumeration bound), so aggregating counts per fingerprint
counts correlation fibers without storing vectors.  A verification mode
stores full vectors to certify the encoding at test scale.

Partitioned runs merge per-range fingerprint counters; the merge is
associative and commutative, so results are independent of the partition
count, which tests assert.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .correlation import CorrelationVector, Interaction, SpinConfig, correlate_fast, translate_bits
from .groups import GroupFormatError, GroupSpec, add_table, neg_table
from .symmetry import phi_orbit_bits

DEFAULT_BOUND = 28
_CHUNK = 1 << 16
_M64 = (1 << 64) - 1


class EnumerationBoundError(ValueError):
    """Raised when a survey would enumerate more configurations than allowed."""


def _check_bound(group: GroupSpec, bound: int | None) -> None:
    limit = DEFAULT_BOUND if bound is None else bound
    if group.order > limit:
        raise EnumerationBoundError(
            f"|F| = {group.order} exceeds the enumeration bound {limit}; raise the bound explicitly"
        )


@lru_cache(maxsize=None)
def _field_layout(group: GroupSpec) -> tuple[tuple[int, ...], int, int]:
    """(representative shifts, bits per field, fields per 64-bit lane)."""
    neg = neg_table(group)
    reps = tuple(f for f in range(1, group.order) if f <= neg[f])
    bits = 5 if group.order <= 31 else 6
    return reps, bits, 64 // bits


def fingerprint_of_corr(corr: CorrelationVector) -> int:
    """Injective integer encoding of a correlation vector."""
    reps, bits, per_lane = _field_layout(corr.group)
    n = corr.group.order
    fp = 0
    for k, f in enumerate(reps):
        h = (n - corr.values[f]) // 2
        lane, slot = divmod(k, per_lane)
        fp |= h << (64 * lane + bits * slot)
    return fp


def config_fingerprint(config: SpinConfig) -> int:
    """Fingerprint of the configuration's correlation, without building the vector."""
    reps, bits, per_lane = _field_layout(config.group)
    x = config.bits
    fp = 0
    for k, f in enumerate(reps):
        h = (x ^ translate_bits(config.group, x, f)).bit_count()
        lane, slot = divmod(k, per_lane)
        fp |= h << (64 * lane + bits * slot)
    return fp


def _hamming_block(group: GroupSpec, lo: int, hi: int) -> np.ndarray:
    """(hi-lo, nfields) uint8 matrix of translate Hamming distances."""
    reps, _, _ = _field_layout(group)
    n = group.order
    if group.is_cyclic:
        x = np.arange(lo, hi, dtype=np.uint64)
        mask = np.uint64((1 << n) - 1)
        out = np.empty((hi - lo, len(reps)), dtype=np.uint8)
        for k, f in enumerate(reps):
            y = ((x >> np.uint64(f)) | (x << np.uint64(n - f))) & mask
            out[:, k] = np.bitwise_count(x ^ y)
        return out
    idx = np.arange(lo, hi, dtype=np.uint64)
    bits = ((idx[:, None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)).astype(np.int8)
    signs = 1 - 2 * bits
    add = add_table(group)
    out = np.empty((hi - lo, len(reps)), dtype=np.uint8)
    for k, f in enumerate(reps):
        perm = np.fromiter(add[f], dtype=np.int64, count=n)
        corr = (signs * signs[:, perm]).sum(axis=1, dtype=np.int64)
        out[:, k] = ((n - corr) // 2).astype(np.uint8)
    return out


def _pack_block(group: GroupSpec, ham: np.ndarray) -> np.ndarray:
    """(m, lanes) uint64 packed fingerprints for a Hamming block."""
    reps, bits, per_lane = _field_layout(group)
    lanes = max(1, -(-len(reps) // per_lane))
    out = np.zeros((ham.shape[0], lanes), dtype=np.uint64)
    for k in range(len(reps)):
        lane, slot = divmod(k, per_lane)
        out[:, lane] |= ham[:, k].astype(np.uint64) << np.uint64(bits * slot)
    return out


def _lanes_to_int(row: np.ndarray) -> int:
    return sum(int(v) << (64 * j) for j, v in enumerate(row))


def _target_lanes(group: GroupSpec, fingerprint: int) -> np.ndarray:
    reps, _, per_lane = _field_layout(group)
    lanes = max(1, -(-len(reps) // per_lane))
    return np.array([(fingerprint >> (64 * j)) & _M64 for j in range(lanes)], dtype=np.uint64)


def _ranges(total: int, partitions: int) -> list[tuple[int, int]]:
    if partitions < 1:
        raise ValueError("partition count must be positive")
    step = -(-total // partitions)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _count_range(group: GroupSpec, lo: int, hi: int) -> Counter:
    local: Counter = Counter()
    for start in range(lo, hi, _CHUNK):
        stop = min(start + _CHUNK, hi)
        packed = _pack_block(group, _hamming_block(group, start, stop))
        if packed.shape[1] == 1:
            uniq, counts = np.unique(packed[:, 0], return_counts=True)
            for u, c in zip(uniq.tolist(), counts.tolist()):
                local[u] += c
        else:
            uniq, counts = np.unique(packed, axis=0, return_counts=True)
            for row, c in zip(uniq, counts.tolist()):
                local[_lanes_to_int(row)] += c
    return local


def fiber_counts(
    group: GroupSpec,
    *,
    bound: int | None = None,
    partitions: int = 1,
    threads: int = 1,
) -> Counter:
    """Fingerprint -> fiber size over the whole configuration space."""
    _check_bound(group, bound)
    total = 1 << group.order
    ranges = _ranges(total, partitions)
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            locals_ = list(pool.map(lambda r: _count_range(group, *r), ranges))
    else:
        locals_ = [_count_range(group, lo, hi) for lo, hi in ranges]
    merged: Counter = Counter()
    for c in locals_:
        merged.update(c)
    return merged


def d_stab(config: SpinConfig, *, bound: int | None = None) -> int:
    """Size of the correlation fiber through the configuration."""
    group = config.group
    _check_bound(group, bound)
    t_lanes = _target_lanes(group, config_fingerprint(config))
    total = 1 << group.order
    count = 0
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        packed = _pack_block(group, _hamming_block(group, start, stop))
        count += int((packed == t_lanes).all(axis=1).sum())
    return count


def fiber(config: SpinConfig, *, bound: int | None = None) -> list[SpinConfig]:
    """All configurations sharing the configuration's correlation vector."""
    group = config.group
    _check_bound(group, bound)
    t_lanes = _target_lanes(group, config_fingerprint(config))
    total = 1 << group.order
    members = []
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        packed = _pack_block(group, _hamming_block(group, start, stop))
        hits = np.nonzero((packed == t_lanes).all(axis=1))[0]
        members.extend(SpinConfig(group, start + int(i)) for i in hits)
    return members


def image_size(group: GroupSpec, *, bound: int | None = None, partitions: int = 1) -> int:
    """Number of distinct correlation vectors over the configuration space."""
    return len(fiber_counts(group, bound=bound, partitions=partitions))


@dataclass(frozen=True)
class MsdRow:
    """Mean-stable-degeneracy summary for one group."""

    n: int
    image_size: int
    msd: Fraction
    msd_over_sym: Fraction
    avg_dstab_over_sym: Fraction


def msd(group: GroupSpec, *, bound: int | None = None, partitions: int = 1) -> MsdRow:
    counts = fiber_counts(group, bound=bound, partitions=partitions)
    n = group.order
    total = 1 << n
    img = len(counts)
    mean_stable = Fraction(total, img)
    avg_dstab = Fraction(sum(c * c for c in counts.values()), total)
    return MsdRow(n, img, mean_stable, mean_stable / (4 * n), avg_dstab / (4 * n))


def _exact_interaction_weights(interaction: Interaction) -> tuple[list[int], int]:
    """Integer-rescaled pair weights (one per representative shift) and the constant term."""
    group = interaction.group
    values = interaction.values
    denom = 1
    for v in values:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    ints = [int(v * denom) for v in values]
    neg = neg_table(group)
    reps, _, _ = _field_layout(group)
    weights = [ints[f] + (ints[neg[f]] if neg[f] != f else 0) for f in reps]
    const = group.order * sum(ints)
    return weights, const


def j_degeneracy(config: SpinConfig, interaction: Interaction, *, bound: int | None = None) -> int:
    """Number of configurations with exactly the same energy under the interaction."""
    group = config.group
    if interaction.group != group:
        raise GroupFormatError("configuration and interaction live on different groups")
    _check_bound(group, bound)
    weights, const = _exact_interaction_weights(interaction)
    corr = correlate_fast(config)
    reps, _, _ = _field_layout(group)
    target_h = [(group.order - corr.values[f]) // 2 for f in reps]
    target = const - 2 * sum(h * w for h, w in zip(target_h, weights))
    # int64 is safe while |energy| stays below 2^62; huge rationals take the exact path
    scale = (sum(abs(w) for w in weights) + abs(const)) * group.order + 1
    exact = scale >= 1 << 62
    w = np.asarray(weights, dtype=object if exact else np.int64)
    total = 1 << group.order
    count = 0
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        ham = _hamming_block(group, start, stop)
        ham = ham.astype(object) if exact else ham.astype(np.int64)
        energies = const - 2 * ham.dot(w)
        count += int((energies == target).sum())
    return count


@dataclass(frozen=True)
class SurveyRow:
    """One symmetry orbit: canonical representative and its two degeneracies."""

    rep: str
    d_sym: int
    d_stab: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.d_stab, self.d_sym)


def _canonical_array_cyclic(n: int) -> np.ndarray:
    """Minimal orbit pattern for every configuration on Z/N, vectorized."""
    x = np.arange(1 << n, dtype=np.uint64)
    mask = np.uint64((1 << n) - 1)
    rev = np.zeros_like(x)
    for i in range(n):
        bit = (x >> np.uint64(i)) & np.uint64(1)
        rev |= bit << np.uint64((n - i) % n)
    best = x.copy()
    for base in (x, rev):
        for t in range(n):
            if t == 0:
                y = base
            else:
                y = ((base >> np.uint64(t)) | (base << np.uint64(n - t))) & mask
            np.minimum(best, y, out=best)
            np.minimum(best, y ^ mask, out=best)
    return best


def orbit_representatives(group: GroupSpec, *, bound: int | None = None) -> list[tuple[int, int]]:
    """(canonical bit pattern, orbit size) for every symmetry orbit, ascending."""
    _check_bound(group, bound)
    if group.is_cyclic:
        canon = _canonical_array_cyclic(group.order)
        uniq, counts = np.unique(canon, return_counts=True)
        return [(int(u), int(c)) for u, c in zip(uniq, counts)]
    seen: set[int] = set()
    out = []
    for bits in range(1 << group.order):
        if bits in seen:
            continue
        pats = phi_orbit_bits(SpinConfig(group, bits))
        seen.update(pats)
        out.append((min(pats), len(pats)))
    out.sort()
    return out


def survey(
    group: GroupSpec,
    min_ratio: Fraction | int = 1,
    *,
    bound: int | None = None,
    partitions: int = 1,
) -> list[SurveyRow]:
    """One row per symmetry orbit with fiber/orbit ratio at least min_ratio."""
    _check_bound(group, bound)
    counts = fiber_counts(group, bound=bound, partitions=partitions)
    rows = []
    min_ratio = Fraction(min_ratio)
    for bits, size in orbit_representatives(group, bound=bound):
        config = SpinConfig(group, bits)
        stab = counts[config_fingerprint(config)]
        if Fraction(stab, size) >= min_ratio:
            rows.append(SurveyRow(config.to_text(), size, stab))
    return rows


def average_dsym_over_sym(group: GroupSpec, *, bound: int | None = None) -> Fraction:
    """Mean orbit size over all configurations, normalized by the group order 4|F|."""
    reps = orbit_representatives(group, bound=bound)
    total = sum(size * size for _, size in reps)
    return Fraction(total, (1 << group.order) * 4 * group.order)


def verify_fingerprint_injectivity(group: GroupSpec, *, bound: int | None = 20) -> bool:
    """Store full correlation vectors and certify the packed encoding collides nowhere."""
    _check_bound(group, bound)
    seen: dict[int, tuple[int, ...]] = {}
    for bits in range(1 << group.order):
        config = SpinConfig(group, bits)
        corr = correlate_fast(config)
        fp = fingerprint_of_corr(corr)
        if fp != config_fingerprint(config):
            return False
        if seen.setdefault(fp, corr.values) != corr.values:
            return False
    return True


@dataclass(frozen=True)
class ProbeResult:
    trials: int
    matches: int
    fraction: float


def _splitmix64(state: int) -> tuple[int, int]:
    """One step of the SplitMix64 generator: (new state, 64-bit output)."""
    state = (state + 0x9E3779B97F4A7C15) & _M64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return state, z ^ (z >> 31)


def generic_j_probe(
    config: SpinConfig,
    trials: int,
    seed: int,
    *,
    bound: int | None = None,
    magnitude: int = 10**6,
) -> ProbeResult:
    """Sample integer interactions uniformly from [-magnitude, magnitude]^F.

    Uses SplitMix64 seeded with the given value (outputs reduced modulo the
    range size), so runs are reproducible bit-for-bit.  Every trial must give
    a j-degeneracy at least the stable degeneracy; the fraction reports how
    often equality holds (1.0 for an empty probe).
    """
    group = config.group
    _check_bound(group, bound)
    stable = d_stab(config, bound=bound)
    span = 2 * magnitude + 1
    state = seed & _M64
    matches = 0
    for _ in range(trials):
        values = []
        for _ in range(group.order):
            state, out = _splitmix64(state)
            values.append(out % span - magnitude)
        deg = j_degeneracy(config, Interaction(group, tuple(values)), bound=bound)
        if deg < stable:
            raise AssertionError("j-degeneracy fell below stable degeneracy; engine bug")
        if deg == stable:
            matches += 1
    return ProbeResult(trials, matches, matches / trials if trials else 1.0)


def survey_csv(group: GroupSpec, rows: list[SurveyRow]) -> str:
    lines = ["N,rep,d_sym,d_stab,ratio"]
    for row in rows:
        lines.append(f"{group.order},{row.rep},{row.d_sym},{row.d_stab},{float(row.ratio)!r}")
    return "\n".join(lines) + "\n"


def msd_csv(rows: list[MsdRow]) -> str:
    lines = ["N,image_size,msd,msd_over_sym,avg_dstab_over_sym"]
    for r in rows:
        lines.append(
            f"{r.n},{r.image_size},{float(r.msd)!r},{float(r.msd_over_sym)!r},"
            f"{float(r.avg_dstab_over_sym)!r}"
        )
    return "\n".join(lines) + "\n"
