"""Normalized GDRS codes and the weight distributions of their cosets.

The code of length ``n = q + 1`` and distance ``d`` is the kernel of the
``(d-1) x n`` matrix whose first ``q`` columns are ``(1, a, a^2, ..., a^(d-2))``
for the locators ``a = beta^0, ..., beta^(q-2), 0`` and whose last column is
``(0, ..., 0, 1)``.  Positions are 1-based, matching that column order.

Formula routes live next to two enumeration oracles: bucketing every
weight-(d-2) vector by syndrome, and translating every codeword by a leader.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb, gcd

import numpy as np

from .errors import BudgetExceeded, DistanceTooSmall, MassMismatch, NotUniformCase
from .fields import make_field
from .peculiarity import profile_table
from .ring_orbits import RingContext, orbit_partition

ORACLE_CODEWORD_BUDGET = 10**6
ORACLE_SYNDROME_BUDGET = 10**7


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"negative count in {counts}")
        object.__setattr__(self, "counts", counts)

    def __getitem__(self, w):
        return self.counts[w]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    @property
    def n(self):
        return len(self.counts) - 1

    @property
    def total(self):
        return sum(self.counts)


@dataclass(frozen=True)
class CosetLeader2:
    """Weight-2 vector with ``gamma1`` at position ``j1`` and ``gamma2`` at ``j2``.

    Positions are 1-based; a pair given with ``j1 > j2`` is swapped together
    with its values.
    """

    j1: int
    j2: int
    gamma1: int
    gamma2: int

    def __post_init__(self):
        if self.j1 == self.j2:
            raise ValueError("a weight-2 leader needs two distinct positions")
        if self.gamma1 == 0 or self.gamma2 == 0:
            raise ValueError("leader values must be nonzero")
        if self.j1 > self.j2:
            j1, j2, g1, g2 = self.j2, self.j1, self.gamma2, self.gamma1
            object.__setattr__(self, "j1", j1)
            object.__setattr__(self, "j2", j2)
            object.__setattr__(self, "gamma1", g1)
            object.__setattr__(self, "gamma2", g2)

    def vector(self, n):
        if not 1 <= self.j1 < self.j2 <= n:
            raise ValueError(f"positions {self.j1}, {self.j2} out of range 1..{n}")
        v = [0] * n
        v[self.j1 - 1] = self.gamma1
        v[self.j2 - 1] = self.gamma2
        return v


def _nullspace(fs, rows_in, ncols):
    rows = [list(r) for r in rows_in]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = fs.inv(rows[r][c])
        rows[r] = [fs.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [fs.sub(x, fs.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = fs.neg(rows[i][free])
        basis.append(v)
    return basis, len(pivots)


def rank(fs, rows):
    return _nullspace(fs, rows, len(rows[0]))[1] if rows else 0


class GdrsCode:
    """The normalized ``[q+1, q+2-d, d]_q`` GDRS code."""

    def __init__(self, field, d):
        q = field.q
        if d < 3:
            raise DistanceTooSmall(f"GDRS codes here need d >= 3, got {d}")
        if d > q + 1:
            raise ValueError(f"d={d} exceeds q+1={q + 1}")
        self.field = field
        self.q = q
        self.n = q + 1
        self.d = d
        self.k = q + 2 - d
        self.locators = tuple(field.exp(i) for i in range(q - 1)) + (0,)
        H = [[field.power(a, r) for a in self.locators] + [0] for r in range(d - 1)]
        H[d - 2][q] = 1
        self.H = tuple(tuple(row) for row in H)
        self._generator = None
        self._codewords = None
        self._syndrome_counts = None

    def __repr__(self):
        return f"GdrsCode(q={self.q}, n={self.n}, k={self.k}, d={self.d})"

    @property
    def generator(self):
        if self._generator is None:
            basis, r = _nullspace(self.field, self.H, self.n)
            assert r == self.d - 1 and len(basis) == self.k
            self._generator = tuple(tuple(v) for v in basis)
        return self._generator

    def column(self, j):
        """Column of H for 1-based position ``j``."""
        return tuple(row[j - 1] for row in self.H)

    def syndrome(self, vector):
        fs = self.field
        out = []
        for row in self.H:
            s = 0
            for h, x in zip(row, vector):
                if h and x:
                    s = fs.add(s, fs.mul(h, x))
            out.append(s)
        return tuple(out)

    def is_mds(self):
        """Every set of d-1 columns of H is independent (exhaustive)."""
        cols = [self.column(j) for j in range(1, self.n + 1)]
        for subset in combinations(cols, self.d - 1):
            if rank(self.field, [list(c) for c in subset]) < self.d - 1:
                return False
        return True

    def codewords(self, budget=None):
        """All q^k codewords as an integer array of shape (q^k, n)."""
        limit = ORACLE_CODEWORD_BUDGET if budget is None else budget
        if self.q**self.k > limit:
            raise BudgetExceeded(f"{self.q}^{self.k} codewords exceeds budget {limit}")
        if self._codewords is None:
            add, mul = self.field.add_table(), self.field.mul_table()
            words = np.zeros((1, self.n), dtype=np.int64)
            for g in self.generator:
                g = np.asarray(g, dtype=np.int64)
                shifted = [add[words, mul[a, g][None, :]] for a in range(self.q)]
                words = np.concatenate(shifted, axis=0)
            self._codewords = words
        return self._codewords


def make_code(q, d, field=None):
    return GdrsCode(make_field(q) if field is None else field, d)


# -- closed formulas --------------------------------------------------------


def mds_code_wd(n, d, q):
    """Weight distribution of any ``[n, n-d+1, d]_q`` MDS code."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    counts = [0] * (n + 1)
    counts[0] = 1
    for w in range(d, n + 1):
        s = sum((-1) ** j * comb(w, j) * (q ** (w - d + 1 - j) - 1) for j in range(w - d + 1))
        counts[w] = comb(n, w) * s
    return WeightDistribution(tuple(counts))


def omega(w, v, n, d):
    # w - d may be negative; take the sign from parity to stay in integers
    sign = -1 if (w - d) % 2 else 1
    return sign * comb(n - v, w - v) * comb(w - 1 - v, d - 2 - v)


def bonneau_extend(n, d, q, prefix):
    """Complete a coset weight distribution from ``B_0 .. B_{d-2}``."""
    prefix = [int(b) for b in prefix]
    if d < 2 or len(prefix) != d - 1:
        raise ValueError(f"expected {d - 1} leading counts, got {len(prefix)}")
    code = mds_code_wd(n, d, q)
    counts = prefix + [0] * (n + 1 - len(prefix))
    for w in range(d - 1, n + 1):
        counts[w] = code[w] - omega(w, 0, n, d) + sum(omega(w, v, n, d) * b for v, b in enumerate(prefix))
    expected = q ** (n - d + 1)
    if sum(counts) != expected:
        raise MassMismatch(f"coset sums to {sum(counts)}, expected q^k = {expected}")
    if any(c < 0 for c in counts):
        raise MassMismatch(f"prefix {prefix} yields negative counts: {counts}")
    return WeightDistribution(tuple(counts))


def coset_wd_weight1(code):
    prefix = [0] * (code.d - 1)
    prefix[1] = 1
    return bonneau_extend(code.n, code.d, code.q, prefix)


def leader_lambda(code, leader):
    """Residue ``dlog(-gamma2/gamma1)`` that decides the weight-2 coset class."""
    fs = code.field
    return fs.dlog(fs.neg(fs.div(leader.gamma2, leader.gamma1)))


def _weight2_from_bd2(code, bd2):
    prefix = [0] * (code.d - 1)
    prefix[2] = 1
    prefix[code.d - 2] = bd2
    return bonneau_extend(code.n, code.d, code.q, prefix)


def _require_d5(code):
    if code.d < 5:
        raise DistanceTooSmall(f"weight-2 cosets need d >= 5, got d={code.d}")


def coset_wd_weight2(code, leader, table=None):
    """Weight distribution of the coset led by a weight-2 vector.

    ``B_{d-2}`` is the number of (d-2)-subsets of Z_{q-1} summing to the
    leader's residue; ``table`` may carry that count table precomputed.
    """
    _require_d5(code)
    if table is None:
        table = profile_table(code.q - 1, code.d - 2)
    return _weight2_from_bd2(code, table[leader_lambda(code, leader)])


def coset_wd_weight2_uniform(code):
    _require_d5(code)
    R, mu = code.q - 1, code.d - 2
    if gcd(R, mu) != 1:
        raise NotUniformCase(f"gcd(q-1, d-2) = gcd({R}, {mu}) != 1")
    return _weight2_from_bd2(code, comb(R, mu) // R)


def necessary_condition(q, d):
    """Whether ``C(n-2, d-2) / (q-1)`` is an integer, with ``n = q + 1``."""
    return comb(q - 1, d - 2) % (q - 1) == 0


def bd2_total(q, d):
    """Weight-(d-2) vectors summed over all weight-2 cosets."""
    n = q + 1
    return (q - 1) * comb(n, 2) * comb(n - 2, d - 2)


def symmetry_residual(wd_a, wd_b, n, d):
    """Whether ``(-1)^(n+d) B_w - B_(n+d-2-w)`` agrees for the two cosets
    at every ``w = d-1 .. n``."""
    for wd in (wd_a, wd_b):
        if len(wd) != n + 1 or wd[0] or wd[1] or wd[2] != 1:
            raise ValueError("symmetry residual is defined for weight-2 coset distributions only")
    sign = (-1) ** (n + d)
    return all(
        sign * wd_a[w] - wd_a[n + d - 2 - w] == sign * wd_b[w] - wd_b[n + d - 2 - w]
        for w in range(d - 1, n + 1)
    )


# -- leader sets and classes ------------------------------------------------


def canonical_weight2_leaders(code):
    """``gamma1 = 1`` at position 1, ``gamma2`` over all nonzero values at position 2."""
    return [CosetLeader2(1, 2, 1, g) for g in code.field.nonzero]


def all_weight2_leaders(code):
    fs = code.field
    for j1, j2 in combinations(range(1, code.n + 1), 2):
        for g1 in fs.nonzero:
            for g2 in fs.nonzero:
                yield CosetLeader2(j1, j2, g1, g2)


def all_weight1_leaders(code):
    for j in range(code.n):
        for g in code.field.nonzero:
            v = [0] * code.n
            v[j] = g
            yield tuple(v)


@dataclass(frozen=True)
class Weight2Class:
    """Weight-2 cosets whose leader residue falls in one orbit of Z_{q-1}."""

    index: int
    lambdas: tuple
    gamma: int
    bd2: int
    n_cosets: int
    wd: WeightDistribution

    @property
    def label(self):
        return f"O{self.index}"


def weight2_classes(code, table=None):
    """One entry per orbit of Z_{q-1}; each orbit holds ``|orbit| * C(n,2) * (q-1)`` cosets."""
    _require_d5(code)
    R, mu = code.q - 1, code.d - 2
    if table is None:
        table = profile_table(R, mu)
    out = []
    for i, orbit in enumerate(orbit_partition(RingContext(R, mu)).full_orbits):
        lam = min(orbit)
        out.append(
            Weight2Class(
                index=i,
                lambdas=tuple(sorted(orbit)),
                gamma=code.field.exp(lam),
                bd2=table[lam],
                n_cosets=len(orbit) * comb(code.n, 2) * (code.q - 1),
                wd=_weight2_from_bd2(code, table[lam]),
            )
        )
    return out


# -- enumeration oracles ----------------------------------------------------


def _syndrome_key(code, synd):
    key = 0
    for r, s in enumerate(synd):
        key += int(s) * code.q**r
    return key


def syndrome_bucket_counts(code, budget=None):
    """Histogram of syndromes over every weight-(d-2) vector of F_q^n.

    Index ``sum s_r q^r`` holds the number of such vectors with syndrome ``s``.
    """
    limit = ORACLE_SYNDROME_BUDGET if budget is None else budget
    w = code.d - 2
    work = (code.q - 1) ** w * comb(code.n, w)
    if work > limit:
        raise BudgetExceeded(f"{work} syndrome evaluations exceeds budget {limit}")
    if code._syndrome_counts is None:
        fs = code.field
        add, mul = fs.add_table(), fs.mul_table()
        H = np.asarray(code.H, dtype=np.int64)
        coeffs = np.array(list(product(range(1, code.q), repeat=w)), dtype=np.int64)
        weights = code.q ** np.arange(code.d - 1, dtype=np.int64)
        counts = np.zeros(code.q ** (code.d - 1), dtype=np.int64)
        for support in combinations(range(code.n), w):
            synd = np.zeros((len(coeffs), code.d - 1), dtype=np.int64)
            for i, j in enumerate(support):
                synd = add[synd, mul[coeffs[:, i][:, None], H[:, j][None, :]]]
            counts += np.bincount(synd @ weights, minlength=len(counts))
        code._syndrome_counts = counts
    return code._syndrome_counts


def oracle_bd2(code, leader, budget=None):
    """``B_{d-2}`` of the coset of ``leader`` by exhaustive syndrome bucketing."""
    _require_d5(code)
    counts = syndrome_bucket_counts(code, budget)
    return int(counts[_syndrome_key(code, code.syndrome(leader.vector(code.n)))])


def oracle_full_coset_wd(code, leader=None, budget=None):
    """Weight distribution of ``leader + C`` by translating every codeword.

    ``leader`` may be a CosetLeader2, any length-n vector, or None for the
    code itself.
    """
    words = code.codewords(budget)
    if leader is None:
        vec = [0] * code.n
    elif isinstance(leader, CosetLeader2):
        vec = leader.vector(code.n)
    else:
        vec = list(leader)
    if len(vec) != code.n:
        raise ValueError(f"leader must have length {code.n}")
    add = code.field.add_table()
    weights = np.count_nonzero(words, axis=1)
    for j, x in enumerate(vec):
        if x:
            col = words[:, j]
            weights = weights - (col != 0) + (add[col, x] != 0)
    return WeightDistribution(tuple(np.bincount(weights, minlength=code.n + 1).tolist()))


def check_2_regular(code, budget=None):
    """Exhaustively compare every weight-1 and every weight-2 coset.

    Returns ``(True, None)`` or ``(False, (leader_a, leader_b))`` for the
    first pair of same-weight cosets whose distributions differ.
    """
    _require_d5(code)
    for leaders in (list(all_weight1_leaders(code)), list(all_weight2_leaders(code))):
        first = leaders[0]
        ref = oracle_full_coset_wd(code, first, budget)
        for other in leaders[1:]:
            if oracle_full_coset_wd(code, other, budget) != ref:
                return False, (first, other)
    return True, None
