"""Finite abelian groups F = Z/n_1 x ... x Z/n_d with a fixed element indexing.

Element indices are mixed-radix with the first declared factor most
significant; every other module relies on this single indexing, so bit i of a
spin configuration always refers to the same group element.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator


class GroupFormatError(ValueError):
    """Raised for malformed group-spec strings or invalid factors."""


_GROUP_RE = re.compile(r"Z(\d+)(?:xZ(\d+))*$")


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group given as an ordered direct sum of cyclic factors."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for n in self.factors:
            if not isinstance(n, int) or n < 2:
                raise GroupFormatError(f"cyclic factor must be an integer >= 2, got {n!r}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) == 1

    def to_text(self) -> str:
        return "x".join(f"Z{n}" for n in self.factors) if self.factors else "Z1"

    def __str__(self) -> str:
        return self.to_text()

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factors))

    def element(self, *residues: int) -> "GroupElement":
        if len(residues) != len(self.factors):
            raise GroupFormatError(
                f"expected {len(self.factors)} residues for {self}, got {len(residues)}"
            )
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.factors)))

    def from_index(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise GroupFormatError(f"index {index} out of range for {self}")
        residues = []
        for n in reversed(self.factors):
            index, r = divmod(index, n)
            residues.append(r)
        return GroupElement(self, tuple(reversed(residues)))

    def elements(self) -> Iterator["GroupElement"]:
        for i in range(self.order):
            yield self.from_index(i)


@dataclass(frozen=True)
class GroupElement:
    """An element of a GroupSpec, stored as a residue tuple."""

    group: GroupSpec
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.residues) != len(self.group.factors):
            raise GroupFormatError("residue tuple does not match group rank")
        for r, n in zip(self.residues, self.group.factors):
            if not 0 <= r < n:
                raise GroupFormatError(f"residue {r} out of range for factor Z{n}")

    @property
    def index(self) -> int:
        i = 0
        for r, n in zip(self.residues, self.group.factors):
            i = i * n + r
        return i

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise GroupFormatError("elements belong to different groups")
        return GroupElement(
            self.group,
            tuple((a + b) % n for a, b, n in zip(self.residues, other.residues, self.group.factors)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group, tuple((-a) % n for a, n in zip(self.residues, self.group.factors))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a `Z<n>(xZ<n>)*` string, preserving the written factor order."""
    if not _GROUP_RE.fullmatch(text.strip()):
        raise GroupFormatError(f"malformed group spec {text!r}; expected e.g. Z7 or Z2xZ4")
    factors = tuple(int(part[1:]) for part in text.strip().split("x"))
    for n in factors:
        if n < 2:
            raise GroupFormatError(f"cyclic factor must be >= 2, got Z{n}")
    return GroupSpec(factors)


@lru_cache(maxsize=None)
def add_table(spec: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """Row t = the index permutation i -> index(element_i + element_t)."""
    elems = list(spec.elements())
    return tuple(tuple((e + t).index for e in elems) for t in elems)


@lru_cache(maxsize=None)
def neg_table(spec: GroupSpec) -> tuple[int, ...]:
    return tuple((-e).index for e in spec.elements())


@dataclass(frozen=True)
class Automorphism:
    """An additive automorphism of F, stored as an index permutation.

    For cyclic F the multiplier `unit` (gcd(unit, N) = 1) is kept so callers
    can name the map; explicit tables are accepted for any F but are validated
    to be bijective homomorphisms.
    """

    group: GroupSpec
    perm: tuple[int, ...]
    unit: int | None = None

    @classmethod
    def from_unit(cls, spec: GroupSpec, a: int) -> "Automorphism":
        if not spec.is_cyclic:
            raise GroupFormatError("unit automorphisms are defined for cyclic groups only")
        n = spec.order
        a %= n
        if math.gcd(a, n) != 1:
            raise GroupFormatError(f"{a} is not a unit mod {n}")
        perm = tuple((a * i) % n for i in range(n))
        return cls(spec, perm, a)

    @classmethod
    def from_table(cls, spec: GroupSpec, perm: tuple[int, ...]) -> "Automorphism":
        if sorted(perm) != list(range(spec.order)):
            raise GroupFormatError("table is not a permutation of element indices")
        add = add_table(spec)
        for i in range(spec.order):
            for j in range(spec.order):
                if perm[add[i][j]] != add[perm[i]][perm[j]]:
                    raise GroupFormatError("table is not additive: phi(x+y) != phi(x)+phi(y)")
        unit = None
        if spec.is_cyclic:
            unit = perm[1] if spec.order > 1 else 1
        return cls(spec, perm, unit)

    def apply_index(self, i: int) -> int:
        return self.perm[i]

    def apply(self, e: GroupElement) -> GroupElement:
        if e.group != self.group:
            raise GroupFormatError("element does not belong to the automorphism's group")
        return self.group.from_index(self.perm[e.index])

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        inv_unit = None
        if self.unit is not None:
            inv_unit = pow(self.unit, -1, self.group.order) if self.group.order > 1 else 1
        return Automorphism(self.group, tuple(inv), inv_unit)

    def __str__(self) -> str:
        if self.unit is not None:
            return f"Unit({self.unit})"
        return f"Table({self.perm})"


def automorphisms(spec: GroupSpec) -> list[Automorphism]:
    """All automorphisms of a cyclic group, as unit multiplications in ascending order."""
    if not spec.is_cyclic:
        raise GroupFormatError(
            "automorphism enumeration is built in for cyclic groups only; "
            "supply explicit tables via Automorphism.from_table otherwise"
        )
    n = spec.order
    return [Automorphism.from_unit(spec, a) for a in range(1, n + 1) if math.gcd(a, n) == 1]


def subgroup_span(spec: GroupSpec, generators: list[GroupElement]) -> tuple[int, ...]:
    """Indices of the subgroup generated by the given elements, sorted."""
    for g in generators:
        if g.group != spec:
            raise GroupFormatError("generator does not belong to the group")
    add = add_table(spec)
    seen = {0}
    frontier = [0]
    gen_idx = [g.index for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gen_idx:
                y = add[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def _smith_diagonal(rows: list[list[int]], width: int) -> tuple[list[int], list[list[int]]]:
    """Diagonalize the row lattice; returns (diagonal, column transform C).

    Row operations leave the lattice spanned by the rows unchanged; column
    operations are accumulated in C so that rowspan(input) * C = rowspan(diag).
    """
    a = [row[:] for row in rows]
    h = len(a)
    c = [[1 if i == j else 0 for j in range(width)] for i in range(width)]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in c:
            row[i], row[j] = row[j], row[i]

    def addmul_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in c:
            row[dst] += k * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def addmul_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]

    diag = []
    t = 0
    while t < width and t < h:
        # move a nonzero pivot of minimal magnitude into (t, t)
        while True:
            best = None
            for i in range(t, h):
                for j in range(t, width):
                    v = abs(a[i][j])
                    if v and (best is None or v < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, h):
                q = a[i][t] // pivot
                if q:
                    addmul_row(i, t, -q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, width):
                q = a[t][j] // pivot
                if q:
                    addmul_col(j, t, -q)
                if a[t][j]:
                    dirty = True
            if not dirty:
                break
        if a[t][t] == 0:
            break
        diag.append(abs(a[t][t]))
        t += 1
    while len(diag) < width:
        diag.append(0)
    return diag, c


@dataclass(frozen=True)
class QuotientMap:
    """Surjective homomorphism pi: F -> F/U, stored per element index."""

    source: GroupSpec
    target: GroupSpec
    image_indices: tuple[int, ...]

    def __call__(self, e: GroupElement) -> GroupElement:
        if e.group != self.source:
            raise GroupFormatError("element does not belong to the quotient's source group")
        return self.target.from_index(self.image_indices[e.index])


def quotient_map(spec: GroupSpec, generators: list[GroupElement]) -> tuple[GroupSpec, QuotientMap]:
    """Quotient F/U for the subgroup U generated by the given elements.

    The quotient is computed by diagonalizing the relation lattice
    (factor orders plus generator rows), which yields both the cyclic
    decomposition of F/U and an explicit projection.
    """
    d = len(spec.factors)
    rows = [[spec.factors[i] if j == i else 0 for j in range(d)] for i in range(d)]
    for g in generators:
        if g.group != spec:
            raise GroupFormatError("generator does not belong to the group")
        rows.append(list(g.residues))
    diag, c = _smith_diagonal(rows, d)
    keep = [(i, v) for i, v in enumerate(diag) if v > 1]
    target = GroupSpec(tuple(v for _, v in keep))
    images = []
    for e in spec.elements():
        y = [sum(e.residues[i] * c[i][j] for i in range(d)) for j in range(d)]
        residues = tuple(y[i] % v for i, v in keep)
        images.append(GroupElement(target, residues).index if keep else 0)
    pi = QuotientMap(spec, target, tuple(images))
    u_size = len(subgroup_span(spec, generators))
    if u_size * target.order != spec.order:
        raise AssertionError("quotient order mismatch; relation lattice reduction failed")
    return target, pi
