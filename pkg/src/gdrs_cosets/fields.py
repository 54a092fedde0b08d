"""Small finite fields GF(p^m) with a fixed primitive element.

Elements are plain ints.  An element of GF(p^m) with coefficient vector
``(c_0, ..., c_{m-1})`` over GF(p) (``c_i`` multiplies ``x^i``) is encoded as
``sum(c_i * p**i)``.  Integer order on the encoding is therefore the
lexicographic order on ``(c_{m-1}, ..., c_0)``, and that is the canonical
ordering used to pick the primitive element.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations
from math import comb

from .config import DEFAULT_MAX_Q, resolve_budget
from .errors import BudgetExceeded, LogOfZero, MuOutOfRange, NoModulusAvailable, NotPrimePower

# Conway polynomials, coefficients listed from x^0 up to the leading 1.
CONWAY_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (3, 6, 1),
    64: (1, 1, 0, 1, 1, 0, 1),
    81: (2, 0, 0, 2, 1),
    121: (2, 7, 1),
    125: (3, 3, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
    169: (2, 12, 1),
    243: (1, 2, 0, 0, 0, 1),
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),
}


def prime_factors(n):
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q):
    """Return ``(p, m)`` with ``q == p**m``, or raise NotPrimePower."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    p = ps[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


def is_prime_power(q):
    try:
        prime_power(q)
    except NotPrimePower:
        return False
    return True


def prime_powers(lo, hi):
    return [q for q in range(max(lo, 2), hi + 1) if is_prime_power(q)]


def _poly_divides(divisor, poly, p):
    """True if monic ``divisor`` divides ``poly`` over GF(p); both low-to-high."""
    r = list(poly)
    dd = len(divisor) - 1
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i] % p
        if c:
            for j in range(dd + 1):
                r[i - dd + j] = (r[i - dd + j] - c * divisor[j]) % p
    return not any(x % p for x in r[:dd])


def is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(modulus) - 1
    for deg in range(1, m // 2 + 1):
        for code in range(p**deg):
            low = [(code // p**i) % p for i in range(deg)]
            if _poly_divides(low + [1], modulus, p):
                return False
    return True


class FieldSpec:
    """GF(q) with a primitive element ``beta`` and a full discrete-log table.

    Immutable after construction.  ``mul``/``inv``/``dlog`` go through the
    exp/log tables; ``mul_direct`` multiplies polynomials modulo ``modulus``
    and never touches the tables.
    """

    def __init__(self, p, m, modulus=(), beta=None):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        if m > 1:
            if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {m}")
            if not is_irreducible(self.modulus, p):
                raise ValueError(f"modulus {self.modulus} is reducible over GF({p})")
        elif self.modulus:
            raise ValueError("prime fields take no modulus")

        if beta is None:
            beta = next(g for g in range(1, self.q) if self.is_primitive(g))
        elif not (0 < beta < self.q and self.is_primitive(beta)):
            raise ValueError(f"{beta} is not a primitive element of GF({self.q})")
        self.beta = beta

        order = self.q - 1
        exp = [1] * order
        for i in range(1, order):
            exp[i] = self.mul_direct(exp[i - 1], beta)
        log = [None] * self.q
        for i, a in enumerate(exp):
            log[a] = i
        self._exp = exp
        self._log = log
        self._add_table = None
        self._mul_table = None

    def __repr__(self):
        return f"FieldSpec(q={self.q}, beta={self.beta})"

    # -- encoding ---------------------------------------------------------

    def coeffs(self, a):
        """Coefficient vector ``(c_0, ..., c_{m-1})`` of element ``a``."""
        return tuple((a // self.p**i) % self.p for i in range(self.m))

    def element(self, coeffs):
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    @property
    def elements(self):
        return range(self.q)

    @property
    def nonzero(self):
        return range(1, self.q)

    # -- arithmetic -------------------------------------------------------

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.element([(-c) % self.p for c in self.coeffs(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k):
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def exp(self, k):
        """``beta**k``."""
        return self._exp[k % (self.q - 1)]

    def dlog(self, a):
        """The residue ``k`` in ``Z_{q-1}`` with ``beta**k == a``."""
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of GF({self.q})")
        if a == 0:
            raise LogOfZero("discrete log of 0 is undefined")
        return self._log[a]

    # -- table-free multiplication ---------------------------------------

    def mul_direct(self, a, b):
        """Multiply by schoolbook polynomial product and reduction."""
        p, m = self.p, self.m
        if m == 1:
            return (a * b) % p
        x, y = self.coeffs(a), self.coeffs(b)
        r = [0] * (2 * m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    r[i + j] += xi * yj
        f = self.modulus
        for i in range(2 * m - 2, m - 1, -1):
            c = r[i] % p
            if c:
                for j in range(m + 1):
                    r[i - m + j] -= c * f[j]
        return self.element(r[:m])

    def pow_direct(self, a, k):
        result = 1
        while k:
            if k & 1:
                result = self.mul_direct(result, a)
            a = self.mul_direct(a, a)
            k >>= 1
        return result

    def is_primitive(self, g):
        if g == 0:
            return False
        order = self.q - 1
        if self.pow_direct(g, order) != 1:
            return False
        return all(self.pow_direct(g, order // r) != 1 for r in prime_factors(order)) if order > 1 else g == 1

    # -- numpy tables for the enumeration oracles ------------------------

    def add_table(self):
        import numpy as np

        if self._add_table is None:
            q = self.q
            t = np.empty((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(q):
                    t[a, b] = self.add(a, b)
            self._add_table = t
        return self._add_table

    def mul_table(self):
        import numpy as np

        if self._mul_table is None:
            q = self.q
            t = np.zeros((q, q), dtype=np.int64)
            for a in range(1, q):
                for b in range(1, q):
                    t[a, b] = self.mul(a, b)
            self._mul_table = t
        return self._mul_table


def make_field(q, modulus=None, beta=None, max_q=DEFAULT_MAX_Q):
    """Build GF(q).

    The primitive element defaults to the smallest one in canonical order;
    pass ``beta`` to pick another.  Extension fields use ``CONWAY_MODULI``
    unless ``modulus`` (low-to-high coefficients, monic) is given.
    """
    p, m = prime_power(q)
    if q > max_q:
        raise ValueError(f"q={q} exceeds the configured bound {max_q}")
    if m == 1:
        return FieldSpec(p, 1, (), beta)
    if modulus is None:
        if q not in CONWAY_MODULI:
            raise NoModulusAvailable(f"no built-in modulus for q={q}; pass one explicitly")
        modulus = CONWAY_MODULI[q]
    return FieldSpec(p, m, modulus, beta)


def _check_mu(fs, mu):
    if not 1 <= mu < fs.q - 1:
        raise MuOutOfRange(f"need 1 <= mu < q-1 = {fs.q - 1}, got mu={mu}")


def product_peculiarity_table(fs, mu, budget=None):
    """Count mu-subsets of GF(q)^* by their product, for every product at once.

    Returns a dict ``{gamma: count}`` over all nonzero ``gamma``.  Products are
    formed with ``mul_direct`` so the count is independent of the log table.
    """
    _check_mu(fs, mu)
    total = comb(fs.q - 1, mu)
    if total > resolve_budget(budget):
        raise BudgetExceeded(f"C({fs.q - 1},{mu}) = {total} subsets exceeds budget")
    counts = dict.fromkeys(fs.nonzero, 0)
    mul = fs.mul_direct
    for subset in combinations(fs.nonzero, mu):
        counts[reduce(mul, subset)] += 1
    return counts


def product_peculiarity_bruteforce(fs, mu, gamma, budget=None):
    """Number of mu-subsets of distinct nonzero elements whose product is ``gamma``."""
    _check_mu(fs, mu)
    if not 0 < gamma < fs.q:
        raise ValueError(f"gamma must be a nonzero element of GF({fs.q})")
    return product_peculiarity_table(fs, mu, budget)[gamma]
