"""Special configurations: Legendre signs, Singer difference sets, products, lifts.

The Singer construction walks the orbit of a projective point under the
collineation induced by a companion matrix of a primitive cubic over GF(q);
the steps landing on a fixed line through the first two orbit points form a
perfect difference set mod q^2+q+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .correlation import SpinConfig
from .groups import GroupFormatError, GroupSpec, QuotientMap


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def euler_phi(n: int) -> int:
    out = n
    d = 2
    while d * d <= n:
        if n % d == 0:
            out -= out // d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out -= out // n
    return out


def legendre_symbol(k: int, p: int) -> int:
    k %= p
    if k == 0:
        return 0
    return 1 if pow(k, (p - 1) // 2, p) == 1 else -1


def legendre_config(n: int, sign: int = 1) -> SpinConfig:
    """Quadratic-residue signs on Z/N for an odd prime N; index 0 carries `sign`.

    Index 0 plays the role of the extra slot at k = N in the 1-based listing,
    so the stored configuration is a translate of that listing.
    """
    if not is_odd_prime(n):
        raise ValueError(f"{n} is not an odd prime")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    group = GroupSpec((n,))
    signs = [sign] + [legendre_symbol(k, n) for k in range(1, n)]
    return SpinConfig.from_signs(group, signs)


# ---------------------------------------------------------------------------
# GF(p^n) as polynomials over F_p modulo a monic irreducible
# ---------------------------------------------------------------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def _poly_irreducible(m: list[int], p: int) -> bool:
    """Trial division by all monic polynomials up to half the degree."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for coeffs in iter_product(range(p), repeat=d):
            divisor = list(coeffs) + [1]
            if not _poly_mod(m, divisor, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) with elements encoded as base-p integers of their coefficient vectors."""

    p: int
    n: int
    modulus: tuple[int, ...]

    @classmethod
    def make(cls, p: int, n: int, modulus: tuple[int, ...] | None = None) -> "FieldSpec":
        if n < 1:
            raise ValueError("field degree must be positive")
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        if modulus is not None:
            mod = list(modulus)
            if len(mod) != n + 1 or mod[-1] % p != 1:
                raise ValueError("modulus must be monic of the field degree")
            if not _poly_irreducible([c % p for c in mod], p):
                raise ValueError("modulus is not irreducible")
            return cls(p, n, tuple(c % p for c in mod))
        for k in range(p**n):
            low = _digits(k, p, n)
            cand = low + [1]
            if _poly_irreducible(cand, p):
                return cls(p, n, tuple(cand))
        raise AssertionError("no irreducible polynomial found")

    @property
    def order(self) -> int:
        return self.p**self.n

    def from_value(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self.order:
            raise ValueError(f"field element value {v} out of range")
        return tuple(_digits(v, self.p, self.n))

    def value(self, a: tuple[int, ...]) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = _poly_mul(_poly_trim(list(a)), _poly_trim(list(b)), self.p)
        rem = _poly_mod(prod, list(self.modulus), self.p)
        return tuple(rem + [0] * (self.n - len(rem)))

    def scale(self, a, k: int):
        return tuple(x * k % self.p for x in a)

    def zero(self):
        return (0,) * self.n

    def one(self):
        return tuple([1] + [0] * (self.n - 1))

    def inv(self, a):
        if a == self.zero():
            raise ZeroDivisionError("zero has no inverse")
        out = self.one()
        e = self.order - 2
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out


def _digits(v: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        v, r = divmod(v, p)
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# Singer difference sets from PG(2, q)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DifferenceSet:
    """A perfect difference set mod q^2+q+1 with q+1 members."""

    modulus: int
    members: tuple[int, ...]
    q: int


def is_perfect_difference_set(members, modulus: int) -> bool:
    """Every nonzero residue must be d2 - d1 for exactly one ordered member pair."""
    seen = [0] * modulus
    members = list(members)
    for a in members:
        for b in members:
            if a != b:
                seen[(b - a) % modulus] += 1
    return all(c == 1 for c in seen[1:])


def _normalize_point(field: FieldSpec, v):
    for coord in v:
        if coord != field.zero():
            inv = field.inv(coord)
            return tuple(field.mul(inv, x) for x in v)
    raise ValueError("zero vector is not a projective point")


def _collineation_step(field: FieldSpec, cubic, v):
    c2, c1, c0 = cubic
    a, b, c = v
    return (
        field.add(field.mul(c2, a), b),
        field.add(field.mul(c1, a), c),
        field.mul(c0, a),
    )


def _projective_orbit(field: FieldSpec, cubic, start):
    """Orbit of a projective point under the companion-matrix collineation."""
    q = field.order
    n_points = q * q + q + 1
    point = _normalize_point(field, start)
    first = point
    orbit = []
    for _ in range(n_points + 1):
        orbit.append(point)
        point = _normalize_point(field, _collineation_step(field, cubic, point))
        if point == first:
            return orbit
    return orbit  # longer than the plane; impossible for valid input


def _cubic_has_root(field: FieldSpec, cubic) -> bool:
    c2, c1, c0 = cubic
    for v in range(field.order):
        x = field.from_value(v)
        x2 = field.mul(x, x)
        x3 = field.mul(x2, x)
        rhs = field.add(field.add(field.mul(c2, x2), field.mul(c1, x)), c0)
        if x3 == rhs:
            return True
    return False


def singer_difference_set(
    p: int,
    n: int = 1,
    cubic: tuple[int, int, int] | None = None,
    modulus: tuple[int, ...] | None = None,
) -> DifferenceSet:
    """Perfect difference set from the Singer orbit on PG(2, q), q = p^n.

    The cubic is given by coefficient values (c2, c1, c0) of X^3 - c2 X^2 -
    c1 X - c0; when omitted, the smallest cubic whose collineation has full
    projective order q^2+q+1 is used.  The returned set contains 0 and 1.
    """
    field = FieldSpec.make(p, n, modulus)
    q = field.order
    n_points = q * q + q + 1
    start = (field.one(), field.zero(), field.zero())

    def try_cubic(c) -> list | None:
        if _cubic_has_root(field, c):
            return None
        orbit_pts = _projective_orbit(field, c, start)
        if len(orbit_pts) != n_points:
            return None
        return orbit_pts

    if cubic is not None:
        coeffs = tuple(field.from_value(v) for v in cubic)
        if _cubic_has_root(field, coeffs):
            raise ValueError("supplied cubic is reducible over GF(q)")
        orbit_pts = _projective_orbit(field, coeffs, start)
        if len(orbit_pts) != n_points:
            raise ValueError(
                f"supplied cubic is not primitive: projective order {len(orbit_pts)} < {n_points}"
            )
    else:
        orbit_pts = None
        for values in iter_product(range(q), repeat=3):
            coeffs = tuple(field.from_value(v) for v in values)
            orbit_pts = try_cubic(coeffs)
            if orbit_pts is not None:
                break
        if orbit_pts is None:
            raise AssertionError("no primitive cubic found")

    a0, a1 = orbit_pts[0], orbit_pts[1]
    # the line through A0 and A1: all projective combinations of the two vectors
    line = {a1}
    for v in range(q):
        mu = field.from_value(v)
        combo = tuple(field.add(x, field.mul(mu, y)) for x, y in zip(a0, a1))
        line.add(_normalize_point(field, combo))
    members = tuple(k for k, pt in enumerate(orbit_pts) if pt in line)
    if len(members) != q + 1 or not is_perfect_difference_set(members, n_points):
        raise AssertionError("Singer orbit did not produce a perfect difference set")
    return DifferenceSet(n_points, members, q)


def config_from_subset(group: GroupSpec, subset) -> SpinConfig:
    """The configuration with spin -1 exactly on the subset."""
    bits = 0
    for k in subset:
        if not 0 <= k < group.order:
            raise ValueError(f"subset member {k} outside 0..{group.order - 1}")
        bits |= 1 << k
    return SpinConfig(group, bits)


def reduced_difference_sets(q: int) -> list[DifferenceSet]:
    """All perfect difference sets mod q^2+q+1 containing 0 and 1, by full search.

    The search is a backtracking scan over ascending member lists with a
    used-difference table, independent of the Singer construction, so the
    predicted count phi(N)/(3n) is genuinely verified.
    """
    if q > 8:
        raise ValueError("reduced difference-set search is limited to q <= 8")
    size = q + 1
    n_mod = q * q + q + 1
    results: list[DifferenceSet] = []
    used = [False] * n_mod

    def try_add(members: list[int], e: int) -> list[int] | None:
        """Mark the differences e creates; roll back and refuse on any repeat."""
        touched: list[int] = []
        for d in members:
            for diff in ((e - d) % n_mod, (d - e) % n_mod):
                if used[diff]:
                    for t in touched:
                        used[t] = False
                    return None
                used[diff] = True
                touched.append(diff)
        return touched

    def extend(members: list[int]) -> None:
        if len(members) == size:
            results.append(DifferenceSet(n_mod, tuple(members), q))
            return
        for e in range(members[-1] + 1, n_mod):
            touched = try_add(members, e)
            if touched is None:
                continue
            members.append(e)
            extend(members)
            members.pop()
            for t in touched:
                used[t] = False

    root = try_add([0], 1)
    if root is None:
        return []
    extend([0, 1])
    for t in root:
        used[t] = False
    return results


def product_config(c1: SpinConfig, c2: SpinConfig) -> SpinConfig:
    """Tensor configuration on the direct sum, with multiplicative correlation."""
    group = GroupSpec(c1.group.factors + c2.group.factors)
    n2 = c2.group.order
    bits = 0
    for i1 in range(c1.group.order):
        s1 = c1.sign(i1)
        for i2 in range(n2):
            if s1 * c2.sign(i2) == -1:
                bits |= 1 << (i1 * n2 + i2)
    return SpinConfig(group, bits)


def periodic_lift(tau: SpinConfig, pi: QuotientMap) -> SpinConfig:
    """Pull back a configuration on F/U to a U-periodic configuration on F."""
    if tau.group != pi.target:
        raise GroupFormatError("configuration does not live on the quotient group")
    bits = 0
    for i, img in enumerate(pi.image_indices):
        if (tau.bits >> img) & 1:
            bits |= 1 << i
    return SpinConfig(pi.source, bits)
