"""Spin configurations and the correlation map.

A configuration over F is a point of {-1,1}^F stored as a bit vector (bit set
means spin -1).  Its correlation vector lists, for every group element f, the
pair sum over all translates by f; this vector is the sufficient statistic for
every translation-invariant two-body energy, so all degeneracy questions
reduce to questions about its fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .groups import GroupFormatError, GroupSpec, add_table, neg_table


@dataclass(frozen=True)
class SpinConfig:
    """An element of {-1,1}^F; bit i set means the spin at element index i is -1."""

    group: GroupSpec
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << self.group.order):
            raise ValueError("bit vector does not fit the group order")

    @classmethod
    def from_text(cls, group: GroupSpec, text: str) -> "SpinConfig":
        if len(text) != group.order:
            raise ValueError(f"config string has length {len(text)}, expected {group.order}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "-":
                bits |= 1 << i
            elif ch != "+":
                raise ValueError(f"config characters must be '+' or '-', got {ch!r}")
        return cls(group, bits)

    @classmethod
    def from_signs(cls, group: GroupSpec, signs) -> "SpinConfig":
        signs = list(signs)
        if len(signs) != group.order:
            raise ValueError("sign sequence does not match the group order")
        bits = 0
        for i, s in enumerate(signs):
            if s == -1:
                bits |= 1 << i
            elif s != 1:
                raise ValueError(f"signs must be +1 or -1, got {s!r}")
        return cls(group, bits)

    @classmethod
    def all_ones(cls, group: GroupSpec) -> "SpinConfig":
        return cls(group, 0)

    def sign(self, index: int) -> int:
        return -1 if (self.bits >> index) & 1 else 1

    def signs(self) -> tuple[int, ...]:
        return tuple(self.sign(i) for i in range(self.group.order))

    def to_text(self) -> str:
        return "".join("-" if (self.bits >> i) & 1 else "+" for i in range(self.group.order))

    def magnetization(self) -> int:
        n = self.group.order
        return n - 2 * self.bits.bit_count()

    def __neg__(self) -> "SpinConfig":
        mask = (1 << self.group.order) - 1
        return SpinConfig(self.group, self.bits ^ mask)

    def reverse(self) -> "SpinConfig":
        """The sequence read backwards (index i -> index N-1-i)."""
        n = self.group.order
        out = 0
        for i in range(n):
            if (self.bits >> i) & 1:
                out |= 1 << (n - 1 - i)
        return SpinConfig(self.group, out)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class CorrelationVector:
    """Integer spin-pair counts indexed by group element."""

    group: GroupSpec
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.group.order
        if len(self.values) != n:
            raise ValueError("correlation vector length does not match the group order")
        if self.values[0] != n:
            raise ValueError("correlation at 0 must equal the group order")
        neg = neg_table(self.group)
        for f, v in enumerate(self.values):
            if not -n <= v <= n or (n - v) % 4:
                raise ValueError(f"correlation entry {v} at {f} is outside the value lattice")
            if self.values[neg[f]] != v:
                raise ValueError("correlation vector is not even")

    def to_json_dict(self) -> dict:
        return {"group": self.group.to_text(), "values": list(self.values)}


@dataclass(frozen=True)
class ExtendedCorrelation:
    """Correlation vector plus total magnetization (exterior-field statistic)."""

    corr: CorrelationVector
    magnetization: int

    def __post_init__(self) -> None:
        if self.magnetization**2 != sum(self.corr.values):
            raise ValueError("magnetization squared must equal the correlation sum")


@dataclass(frozen=True)
class Interaction:
    """Exact coupling vector j; floats are refused so energy ties are exact."""

    group: GroupSpec
    values: tuple

    def __post_init__(self) -> None:
        if len(self.values) != self.group.order:
            raise ValueError("interaction length does not match the group order")
        for v in self.values:
            if isinstance(v, bool) or not isinstance(v, Rational):
                raise TypeError(f"interactions must be exact integers or rationals, got {v!r}")

    @classmethod
    def zero(cls, group: GroupSpec) -> "Interaction":
        return cls(group, (0,) * group.order)

    @classmethod
    def delta(cls, group: GroupSpec, index: int, value=1) -> "Interaction":
        vals = [0] * group.order
        vals[index] = value
        return cls(group, tuple(vals))


def translate_bits(group: GroupSpec, bits: int, f_index: int) -> int:
    """Bit vector of the configuration sigma' with sigma'_l = sigma_{l+f}."""
    n = group.order
    if group.is_cyclic:
        if f_index == 0:
            return bits
        mask = (1 << n) - 1
        return ((bits >> f_index) | (bits << (n - f_index))) & mask
    row = add_table(group)[f_index]
    out = 0
    for i in range(n):
        if (bits >> row[i]) & 1:
            out |= 1 << i
    return out


def correlate(config: SpinConfig) -> CorrelationVector:
    """Reference correlation: the literal double sum over spin pairs."""
    group = config.group
    n = group.order
    signs = config.signs()
    add = add_table(group)
    values = []
    for f in range(n):
        row = add[f]
        values.append(sum(signs[l] * signs[row[l]] for l in range(n)))
    return CorrelationVector(group, tuple(values))


def correlate_fast(config: SpinConfig) -> CorrelationVector:
    """Correlation via XOR/popcount against cyclic translates; equals correlate()."""
    group = config.group
    n = group.order
    bits = config.bits
    values = tuple(
        n - 2 * (bits ^ translate_bits(group, bits, f)).bit_count() for f in range(n)
    )
    return CorrelationVector(group, values)


def extended_correlate(config: SpinConfig) -> ExtendedCorrelation:
    return ExtendedCorrelation(correlate_fast(config), config.magnetization())


def energy(config: SpinConfig, interaction: Interaction):
    """Exact inner product of the interaction with the correlation vector."""
    if config.group != interaction.group:
        raise GroupFormatError("configuration and interaction live on different groups")
    corr = correlate_fast(config)
    total = sum(j * a for j, a in zip(interaction.values, corr.values))
    return int(total) if isinstance(total, int) or total.denominator == 1 else total


def even_projection(interaction: Interaction) -> Interaction:
    """Orthogonal projection onto vectors with j_{-f} = j_f; preserves all energies."""
    neg = neg_table(interaction.group)
    vals = []
    for f, v in enumerate(interaction.values):
        w = Fraction(v + interaction.values[neg[f]], 2)
        vals.append(int(w) if w.denominator == 1 else w)
    return Interaction(interaction.group, tuple(vals))


def fourier_power_check(config: SpinConfig) -> tuple[float, float]:
    """(min real part, max |imaginary part|) of the correlation's Fourier transform.

    The transform equals the squared modulus of the configuration's transform,
    so the real part must be nonnegative and the imaginary part zero up to
    floating-point error.
    """
    corr = correlate_fast(config)
    arr = np.asarray(corr.values, dtype=np.float64).reshape(config.group.factors)
    spectrum = np.fft.fftn(arr)
    return float(spectrum.real.min()), float(np.abs(spectrum.imag).max())
