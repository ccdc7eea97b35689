"""Words over a two-letter alphabet whose letters are short sign strings.

Reversing the letter order of such a word (keeping each letter's signs
intact) always preserves the correlation of the flattened configuration,
which is the engine behind configurations whose stable degeneracy exceeds the
symmetry bound.  Words stay symbolic so substitution can be iterated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .correlation import CorrelationVector, SpinConfig, correlate_fast
from .groups import GroupSpec
from .symmetry import phi_orbit_bits


def _parse_signs(value) -> tuple[int, ...]:
    if isinstance(value, str):
        out = []
        for ch in value:
            if ch == "+":
                out.append(1)
            elif ch == "-":
                out.append(-1)
            else:
                raise ValueError(f"sign strings use '+' and '-', got {ch!r}")
        return tuple(out)
    signs = tuple(value)
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    return signs


@dataclass(frozen=True)
class SubstitutionWord:
    """A word over {U, V} together with the sign strings the letters stand for."""

    letters: str
    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.letters or any(ch not in "UV" for ch in self.letters):
            raise ValueError("letters must be a nonempty string over 'U' and 'V'")
        if "U" in self.letters and not self.u:
            raise ValueError("letter U is used but its sign string is empty")
        if "V" in self.letters and not self.v:
            raise ValueError("letter V is used but its sign string is empty")

    @property
    def flat_length(self) -> int:
        return self.letters.count("U") * len(self.u) + self.letters.count("V") * len(self.v)


def word(letters: str, u, v) -> SubstitutionWord:
    return SubstitutionWord(letters, _parse_signs(u), _parse_signs(v))


def flatten(w: SubstitutionWord) -> SpinConfig:
    """Concatenate the letters' sign strings into a cyclic configuration."""
    signs: list[int] = []
    for ch in w.letters:
        signs.extend(w.u if ch == "U" else w.v)
    if len(signs) < 2:
        raise ValueError("flattened length must be at least 2")
    return SpinConfig.from_signs(GroupSpec((len(signs),)), signs)


def reverse_word(w: SubstitutionWord) -> SubstitutionWord:
    """Reverse the letter order; the letters themselves are kept intact."""
    return SubstitutionWord(w.letters[::-1], w.u, w.v)


def substitute(outer_letters: str, u_word: SubstitutionWord, v_word: SubstitutionWord) -> SubstitutionWord:
    """Replace U and V in an outer word by whole words over the same sign strings."""
    if u_word.u != v_word.u or u_word.v != v_word.v:
        raise ValueError("substituted words must share their base sign strings")
    expanded = "".join(u_word.letters if ch == "U" else v_word.letters for ch in outer_letters)
    return SubstitutionWord(expanded, u_word.u, u_word.v)


@dataclass(frozen=True)
class ReversalReport:
    corr_word: CorrelationVector
    corr_reversed: CorrelationVector
    equal: bool
    same_phi_orbit: bool


def verify_reversal_identity(w: SubstitutionWord) -> ReversalReport:
    """Correlations of a word and its letter-reversal, plus orbit membership."""
    sigma = flatten(w)
    tau = flatten(reverse_word(w))
    a_w = correlate_fast(sigma)
    a_x = correlate_fast(tau)
    return ReversalReport(
        a_w,
        a_x,
        a_w.values == a_x.values,
        tau.bits in phi_orbit_bits(sigma),
    )
