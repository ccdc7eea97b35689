"""The symmetry action on configurations: spin flip, translation, reflection.

These generate a group of order 4|F| whose orbits bound every stable
degeneracy from below; automorphisms of F act on top of that, permuting
orbits while preserving correlation fibers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .correlation import CorrelationVector, SpinConfig
from .groups import Automorphism, GroupElement, GroupFormatError, GroupSpec, add_table, neg_table


@dataclass(frozen=True)
class SymElement:
    """A triple (s, t, r): spin-flip sign, translation, reflection sign."""

    s: int
    t: GroupElement
    r: int

    def __post_init__(self) -> None:
        if self.s not in (1, -1) or self.r not in (1, -1):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, group: GroupSpec) -> "SymElement":
        return cls(1, group.zero(), 1)

    def compose(self, other: "SymElement") -> "SymElement":
        """The element satisfying act_phi(self, act_phi(other, c)) == act_phi(self.compose(other), c)."""
        if self.t.group != other.t.group:
            raise GroupFormatError("symmetry elements over different groups")
        t = (self.t if other.r == 1 else -self.t) + other.t
        return SymElement(self.s * other.s, t, self.r * other.r)

    def inverse(self) -> "SymElement":
        t = -self.t if self.r == 1 else self.t
        return SymElement(self.s, t, self.r)


def all_sym_elements(group: GroupSpec) -> list[SymElement]:
    """All 4|F| symmetry elements, in a fixed deterministic order."""
    out = []
    for s in (1, -1):
        for r in (1, -1):
            for t in group.elements():
                out.append(SymElement(s, t, r))
    return out


def act_phi(g: SymElement, config: SpinConfig) -> SpinConfig:
    """Image configuration with value s * sigma_{r*f + t} at element f."""
    group = config.group
    if g.t.group != group:
        raise GroupFormatError("symmetry element and configuration over different groups")
    add_row = add_table(group)[g.t.index]
    neg = neg_table(group)
    n = group.order
    bits = config.bits
    out = 0
    for i in range(n):
        src = add_row[i] if g.r == 1 else add_row[neg[i]]
        if (bits >> src) & 1:
            out |= 1 << i
    if g.s == -1:
        out ^= (1 << n) - 1
    return SpinConfig(group, out)


@dataclass(frozen=True)
class Orbit:
    """A symmetry orbit, named by its minimal bit pattern."""

    representative: SpinConfig
    size: int


def phi_orbit_bits(config: SpinConfig) -> set[int]:
    """Bit patterns of all images under the 4|F| symmetry elements."""
    group = config.group
    n = group.order
    mask = (1 << n) - 1
    bits = config.bits
    rev = 0
    if group.is_cyclic:
        for i in range(n):
            if (bits >> i) & 1:
                rev |= 1 << ((n - i) % n)
        patterns = set()
        for t in range(n):
            a = ((bits >> t) | (bits << (n - t))) & mask
            b = ((rev >> t) | (rev << (n - t))) & mask
            patterns.update((a, a ^ mask, b, b ^ mask))
        return patterns
    patterns = set()
    for g in all_sym_elements(group):
        patterns.add(act_phi(g, config).bits)
    return patterns


def orbit(config: SpinConfig) -> Orbit:
    patterns = phi_orbit_bits(config)
    return Orbit(SpinConfig(config.group, min(patterns)), len(patterns))


def canonical(config: SpinConfig) -> SpinConfig:
    return SpinConfig(config.group, min(phi_orbit_bits(config)))


def d_sym(config: SpinConfig) -> int:
    return len(phi_orbit_bits(config))


def stabilizer(config: SpinConfig) -> list[SymElement]:
    """All symmetry elements fixing the configuration, by direct testing."""
    return [g for g in all_sym_elements(config.group) if act_phi(g, config).bits == config.bits]


def act_psi_config(phi: Automorphism, config: SpinConfig) -> SpinConfig:
    """Relabel spins along the automorphism: value at f becomes the value at phi^{-1}(f)."""
    if phi.group != config.group:
        raise GroupFormatError("automorphism and configuration over different groups")
    inv = phi.inverse().perm
    bits = config.bits
    out = 0
    for i in range(config.group.order):
        if (bits >> inv[i]) & 1:
            out |= 1 << i
    return SpinConfig(config.group, out)


def act_psi_corr(phi: Automorphism, corr: CorrelationVector) -> CorrelationVector:
    """The matching relabeling on correlation vectors (equivariant with act_psi_config)."""
    if phi.group != corr.group:
        raise GroupFormatError("automorphism and correlation over different groups")
    inv = phi.inverse().perm
    return CorrelationVector(corr.group, tuple(corr.values[inv[i]] for i in range(corr.group.order)))


def joint_orbit(config: SpinConfig) -> set[Orbit]:
    """All symmetry orbits reachable from the configuration under Aut(F) relabelings.

    Automorphisms permute symmetry orbits, so a breadth-first search over
    canonical representatives terminates with the full joint orbit.
    """
    from .groups import automorphisms

    auts = automorphisms(config.group)
    start = orbit(config)
    found = {start.representative.bits: start}
    frontier = [start.representative]
    while frontier:
        nxt = []
        for rep in frontier:
            for a in auts:
                image = act_psi_config(a, rep)
                ob = orbit(image)
                if ob.representative.bits not in found:
                    found[ob.representative.bits] = ob
                    nxt.append(ob.representative)
        frontier = nxt
    return set(found.values())
