"""Residue classes, orbits and residue-class profiles in Z_R.

The affine maps ``lam -> lam*l + u*mu`` (``l`` a unit of Z_R) permute the
mu-subsets of Z_R and shift their sums accordingly, so the subset-sum counts
are constant on the orbits of these maps.  With ``D = gcd(R, mu)`` the
translations alone (``l = 1``) give the ``D`` residue classes mod ``D``; the
full group glues some of those classes together.

A profile ("ch-vector") of a mu-subset is the tuple ``(N_0, ..., N_{D-1})``
where ``N_xi`` counts the members congruent to ``xi`` mod ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .errors import MuOutOfRange, NonIntegralCount


@dataclass(frozen=True)
class RingContext:
    R: int
    mu: int
    D: int = field(init=False)
    phi_R: int = field(init=False)
    phi_mu: int = field(init=False)

    def __post_init__(self):
        if self.R < 2 or not 1 <= self.mu < self.R:
            raise MuOutOfRange(f"need R >= 2 and 1 <= mu < R, got R={self.R}, mu={self.mu}")
        D = gcd(self.R, self.mu)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "phi_R", self.R // D)
        object.__setattr__(self, "phi_mu", self.mu // D)

    @property
    def units(self):
        return [l for l in range(1, self.R) if gcd(l, self.R) == 1]


@dataclass(frozen=True)
class OrbitPartition:
    """``oplus_orbits[j]`` is the class of ``j`` mod D; ``full_orbits`` are
    unions of those classes, ordered by smallest member."""

    ctx: RingContext
    oplus_orbits: tuple
    full_orbits: tuple

    def orbit_index(self, lam):
        lam %= self.ctx.R
        for i, orbit in enumerate(self.full_orbits):
            if lam in orbit:
                return i
        raise AssertionError("orbits must cover Z_R")

    def label(self, lam):
        return f"O{self.orbit_index(lam)}"

    def representatives(self):
        return [min(orbit) for orbit in self.full_orbits]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            # keep the smaller index as root so labels are stable
            if y < x:
                x, y = y, x
            self.parent[y] = x


def orbit_partition(ctx):
    """Partition Z_R into the orbits of ``lam -> lam*l + u*mu``.

    Translations by multiples of ``mu`` stay inside a class mod D, so only the
    unit multipliers can merge classes: class ``j`` is glued to ``j*l mod D``.
    """
    R, D = ctx.R, ctx.D
    oplus = tuple(frozenset(range(j, R, D)) for j in range(D))
    uf = _UnionFind(D)
    for l in ctx.units:
        for j in range(D):
            uf.union(j, (j * l) % D)
    groups = {}
    for j in range(D):
        groups.setdefault(uf.find(j), set()).update(oplus[j])
    full = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    return OrbitPartition(ctx, oplus, full)


def ch_vector(ctx, subset):
    """Residue-class profile of an actual subset of Z_R."""
    counts = [0] * ctx.D
    for x in subset:
        counts[x % ctx.D] += 1
    return tuple(counts)


def enumerate_profiles(ctx, lambda_mod_D):
    """All profiles with sum ``mu``, parts at most ``phi_R`` and
    ``sum(xi * N_xi) == lambda_mod_D (mod D)``.

    Listed in descending lexicographic order, so ``(4, 0)`` precedes ``(0, 4)``.
    """
    D, mu, cap = ctx.D, ctx.mu, ctx.phi_R
    if not 0 <= lambda_mod_D < D:
        raise ValueError(f"residue must lie in 0..{D - 1}")
    out = []
    parts = [0] * D

    def place(xi, left, weighted):
        if xi == D - 1:
            if left <= cap and (weighted + xi * left) % D == lambda_mod_D:
                parts[xi] = left
                out.append(tuple(parts))
            return
        # the remaining D-1-xi slots can absorb at most (D-1-xi)*cap
        lo = max(0, left - (D - 1 - xi) * cap)
        for n in range(min(cap, left), lo - 1, -1):
            parts[xi] = n
            place(xi + 1, left - n, weighted + xi * n)

    place(0, mu, 0)
    return out


def cyclic_shifts(c):
    """The set of distinct rotations of a profile; its size is the multiplicity m."""
    c = tuple(c)
    return {c[-s:] + c[:-s] if s else c for s in range(len(c))}


def n_sigma(ctx, c, two_orbit_prime_D=False):
    """``m / phi_R * prod C(phi_R, N_xi)`` as an exact Fraction.

    This counts the subsets carrying ``c`` or one of its rotations when D is a
    prime and there are exactly two orbits.  Pass ``two_orbit_prime_D=True``
    to have a non-integral value raise; otherwise the value is diagnostic only.
    """
    c = tuple(c)
    if len(c) != ctx.D or sum(c) != ctx.mu or any(not 0 <= n <= ctx.phi_R for n in c):
        raise ValueError(f"{c} is not a profile for R={ctx.R}, mu={ctx.mu}")
    prod = 1
    for n in c:
        prod *= comb(ctx.phi_R, n)
    value = Fraction(len(cyclic_shifts(c)) * prod, ctx.phi_R)
    if two_orbit_prime_D and value.denominator != 1:
        raise NonIntegralCount(f"N_sigma({c}) = {value} is not an integer for R={ctx.R}, mu={ctx.mu}")
    return value


def is_two_orbit_prime_D(ctx):
    D = ctx.D
    if D < 2 or any(D % f == 0 for f in range(2, int(D**0.5) + 1)):
        return False
    return len(orbit_partition(ctx).full_orbits) == 2
