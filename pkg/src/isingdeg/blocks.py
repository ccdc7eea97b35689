"""Block structure of configurations via the Laplacian of their correlations.

The second difference of a correlation vector is supported on sums of
adjacent block lengths with signs by parity, so it exposes the number of
blocks, bounds, and (under subset-sum injectivity) the whole profile up to
dihedral moves.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .correlation import CorrelationVector, SpinConfig, correlate_fast
from .degeneracy import config_fingerprint, fiber_counts
from .groups import GroupFormatError, GroupSpec
from .symmetry import phi_orbit_bits


def laplacian(corr: CorrelationVector) -> tuple[int, ...]:
    """Quarter second-difference of a cyclic correlation; always integral."""
    if not corr.group.is_cyclic:
        raise GroupFormatError("the correlation Laplacian is defined for cyclic groups")
    n = corr.group.order
    vals = corr.values
    out = []
    for f in range(n):
        num = vals[(f - 1) % n] - 2 * vals[f] + vals[(f + 1) % n]
        if num % 4:
            raise AssertionError("correlation second difference not divisible by 4")
        out.append(num // 4)
    return tuple(out)


@dataclass(frozen=True)
class BlockProfile:
    """Cyclic run lengths, first entry a +1 run; empty for constant configurations."""

    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.lengths) % 2:
            raise ValueError("block profiles have an even number of runs")
        if any(m < 1 for m in self.lengths):
            raise ValueError("run lengths must be positive")

    @property
    def n(self) -> int:
        return sum(self.lengths)

    @property
    def k(self) -> int:
        return len(self.lengths) // 2

    def multiset(self) -> tuple[tuple[int, int], ...]:
        """Sorted (length, multiplicity) pairs."""
        return tuple(sorted(Counter(self.lengths).items()))

    def normalized(self) -> "BlockProfile":
        """Lexicographically least among all rotations and reflected rotations."""
        seq = self.lengths
        if not seq:
            return self
        best = None
        for cand in (seq, seq[::-1]):
            for i in range(len(seq)):
                rot = cand[i:] + cand[:i]
                if best is None or rot < best:
                    best = rot
        return BlockProfile(best)


def blocks_of(config: SpinConfig) -> BlockProfile:
    """Run lengths after rotating so index 0 starts a +1 run."""
    group = config.group
    if not group.is_cyclic:
        raise GroupFormatError("block profiles are defined for cyclic groups")
    n = group.order
    signs = config.signs()
    if all(s == signs[0] for s in signs):
        return BlockProfile(())
    start = next(i for i in range(n) if signs[i] == 1 and signs[i - 1] == -1)
    rotated = [signs[(start + i) % n] for i in range(n)]
    lengths = []
    run = 1
    for i in range(1, n):
        if rotated[i] == rotated[i - 1]:
            run += 1
        else:
            lengths.append(run)
            run = 1
    lengths.append(run)
    return BlockProfile(tuple(lengths))


@dataclass(frozen=True)
class SignedMultiset:
    """Nonzero Laplacian values as (position, coefficient) pairs; position N encodes 0."""

    modulus: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        coeff = dict(self.entries)
        if len(coeff) != len(self.entries):
            raise ValueError("duplicate positions in signed multiset")
        total = 0
        for t, c in self.entries:
            if not 1 <= t <= self.modulus or c == 0:
                raise ValueError("positions must lie in 1..N with nonzero coefficients")
            total += c
            if t != self.modulus and coeff.get(self.modulus - t) != c:
                raise ValueError("signed multiset must be palindromic")
        if total != 0:
            raise ValueError("signed multiset must sum to zero")
        if list(self.entries) != sorted(self.entries):
            raise ValueError("entries must be sorted by position")

    @classmethod
    def from_vector(cls, values) -> "SignedMultiset":
        values = tuple(values)
        n = len(values)
        entries = [(t, values[t]) for t in range(1, n) if values[t]]
        if values[0]:
            entries.append((n, values[0]))
        return cls(n, tuple(entries))

    def to_vector(self) -> tuple[int, ...]:
        out = [0] * self.modulus
        for t, c in self.entries:
            out[t % self.modulus] = c
        return tuple(out)

    def l1(self) -> int:
        return sum(abs(c) for _, c in self.entries)

    def block_count(self) -> int:
        """2k, read off the coefficient at position N."""
        coeff = dict(self.entries)
        return -coeff.get(self.modulus, 0)

    def to_json_list(self) -> list[list[int]]:
        return [[t, c] for t, c in self.entries]


def delta_from_profile(profile: BlockProfile) -> SignedMultiset:
    """Laplacian of the correlation of any configuration realizing the profile.

    Every run of consecutive blocks contributes +1 at its total length when it
    spans an odd number of blocks and -1 when even; the 2k full turns account
    for the -2k at position N.
    """
    m = profile.lengths
    n = profile.n
    if not m:
        raise ValueError("the empty profile does not determine a modulus")
    two_k = len(m)
    acc: Counter = Counter()
    for start in range(two_k):
        total = 0
        for length in range(1, two_k + 1):
            total += m[(start + length - 1) % two_k]
            acc[total] += 1 if length % 2 else -1
    entries = tuple(sorted((t, c) for t, c in acc.items() if c))
    return SignedMultiset(n, entries)


def laplacian_multiset(corr: CorrelationVector) -> SignedMultiset:
    return SignedMultiset.from_vector(laplacian(corr))


def subset_sum_injective(profile: BlockProfile) -> bool:
    """Whether all 2^(2k) subset sums of the run lengths are distinct."""
    sums = {0}
    for m in profile.lengths:
        sums = sums | {s + m for s in sums}
    return len(sums) == 1 << len(profile.lengths)


def reconstruct_from_delta(delta: SignedMultiset, n: int | None = None) -> list[BlockProfile]:
    """All dihedral classes of block profiles with the given Laplacian multiset.

    When the multiset shows no cancellation (l1 norm equal to 4k^2) a
    budgeted backtracking over interval sums is used; otherwise all
    compositions are scanned and checked exactly.
    """
    if n is None:
        n = delta.modulus
    elif n != delta.modulus:
        raise ValueError("modulus mismatch between multiset and N")
    two_k = delta.block_count()
    if two_k == 0:
        if delta.entries:
            raise ValueError("multiset has entries but no block count at position N")
        return [BlockProfile(())]
    if two_k % 2 or two_k > n:
        raise ValueError("coefficient at position N must be an even block count")
    k = two_k // 2

    target = dict(delta.entries)
    found: set[tuple[int, ...]] = set()

    if delta.l1() == 4 * k * k:
        _reconstruct_budget(n, two_k, target, found)
    else:
        _reconstruct_scan(n, two_k, delta, found)

    profiles = [BlockProfile(p) for p in sorted(found)]
    return profiles


def _reconstruct_budget(n: int, two_k: int, target: dict, found: set) -> None:
    """Backtracking over block sequences, charging every finished interval to a budget.

    Sound only without cancellation: each interval of b consecutive blocks
    must consume one unit of the multiset at its total length, positive for
    odd b.  Block values are drawn from the positive support and the first
    block is pinned to the profile minimum, which every dihedral class admits.
    """
    pos_budget = Counter({t: c for t, c in target.items() if c > 0 and t != n})
    neg_budget = Counter({t: -c for t, c in target.items() if c < 0 and t != n})
    support = sorted(pos_budget)

    def place(ms: list[int]) -> None:
        placed = len(ms)
        total = sum(ms)
        if placed == two_k - 1:
            last = n - total
            if last < ms[0]:
                return
            candidates = [last]
        else:
            remaining = two_k - placed
            candidates = [
                t
                for t in support
                if t >= ms[0] and pos_budget[t] > 0 and total + t + (remaining - 1) * ms[0] <= n
            ]
        for m_next in candidates:
            trail: list[tuple[Counter, int]] = []
            ok = True
            s = 0
            for back in range(min(placed + 1, two_k - 1)):
                s += m_next if back == 0 else ms[placed - back]
                budget = pos_budget if back % 2 == 0 else neg_budget
                if budget[s] <= 0:
                    ok = False
                    break
                budget[s] -= 1
                trail.append((budget, s))
            if ok:
                ms.append(m_next)
                if len(ms) == two_k:
                    _finish_budget(n, two_k, ms, pos_budget, neg_budget, found)
                else:
                    place(ms)
                ms.pop()
            for budget, s in trail:
                budget[s] += 1

    for first in support:
        pos_budget[first] -= 1
        place([first])
        pos_budget[first] += 1


def _finish_budget(n, two_k, ms, pos_budget, neg_budget, found) -> None:
    """Charge the wrapped intervals; accept the profile if budgets zero out."""
    extra: Counter = Counter()
    for start in range(1, two_k):
        for length in range(two_k - start + 1, two_k):
            total = sum(ms[(start + i) % two_k] for i in range(length))
            extra[(total, 1 if length % 2 else -1)] += 1
    for (t, sign), count in extra.items():
        if (pos_budget if sign > 0 else neg_budget)[t] < count:
            return
    for (t, sign), count in extra.items():
        (pos_budget if sign > 0 else neg_budget)[t] -= count
    if not any(v > 0 for v in pos_budget.values()) and not any(v > 0 for v in neg_budget.values()):
        found.add(BlockProfile(tuple(ms)).normalized().lengths)
    for (t, sign), count in extra.items():
        (pos_budget if sign > 0 else neg_budget)[t] += count


def _reconstruct_scan(n: int, two_k: int, delta: SignedMultiset, found: set) -> None:
    total_compositions = math.comb(n - 1, two_k - 1)
    if total_compositions > 2_000_000:
        raise ValueError("composition space too large for exhaustive reconstruction")

    def rec(ms: list[int], remaining: int) -> None:
        if len(ms) == two_k - 1:
            if remaining >= 1:
                cand = BlockProfile(tuple(ms + [remaining]))
                if delta_from_profile(cand).entries == delta.entries:
                    found.add(cand.normalized().lengths)
            return
        slots = two_k - 1 - len(ms)
        for m_next in range(1, remaining - slots + 1):
            ms.append(m_next)
            rec(ms, remaining - m_next)
            ms.pop()

    rec([], n)


@dataclass(frozen=True)
class RigidityReport:
    n: int
    checked: int
    rigid: bool
    violations: tuple[str, ...]


def verify_four_block_rigidity(n: int, *, bound: int | None = None) -> RigidityReport:
    """Check d_stab == d_sym for every configuration on Z/N with at most 4 blocks."""
    group = GroupSpec((n,))
    counts = fiber_counts(group, bound=bound)
    mask = (1 << n) - 1
    checked = 0
    violations = []
    for bits in range(1 << n):
        rot1 = ((bits >> 1) | (bits << (n - 1))) & mask
        boundaries = (bits ^ rot1).bit_count()
        if boundaries > 4:
            continue
        config = SpinConfig(group, bits)
        stab = counts[config_fingerprint(config)]
        sym = len(phi_orbit_bits(config))
        checked += 1
        if stab != sym:
            violations.append(config.to_text())
    return RigidityReport(n, checked, not violations, tuple(violations))
