"""Subset-sum counts in Z_R: brute force, profile engine, closed forms.

``P(R, mu, lam)`` is the number of mu-subsets of Z_R (distinct elements,
unordered) whose sum is ``lam`` mod R.  Three independent routes compute the
full table ``lam -> P`` and ``reconcile`` insists they agree.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Optional

from .config import resolve_budget
from .errors import BudgetExceeded, MuOutOfRange, NonIntegralResult, RouteMismatch
from .fields import is_prime_power, prime_factors
from .report import FAIL, PASS, UNTESTED, WARN, Check, Report
from .ring_orbits import RingContext, orbit_partition

BRUTE_FORCE = "brute_force"
PROFILE_ENGINE = "profile_engine"
CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class PeculiarityTable:
    ctx: RingContext
    values: tuple
    method: str
    closed_form_case: Optional[str] = None

    def __post_init__(self):
        if len(self.values) != self.ctx.R:
            raise ValueError("one value per residue is required")

    def __getitem__(self, lam):
        return self.values[lam % self.ctx.R]

    def __len__(self):
        return len(self.values)

    def delta(self, lam1, lam2):
        return self[lam1] - self[lam2]

    @property
    def mass(self):
        return sum(self.values)

    @property
    def is_uniform(self):
        return len(set(self.values)) == 1


def _check(R, mu):
    if R < 2 or not 1 <= mu < R:
        raise MuOutOfRange(f"need 1 <= mu < R, got R={R}, mu={mu}")


def _exact_div(num, den, what):
    q, r = divmod(num, den)
    if r:
        raise NonIntegralResult(f"{what}: {num}/{den} is not an integer")
    return q


# -- brute force ------------------------------------------------------------


def _sums_with_min(args):
    # all mu-subsets whose smallest member is `first`
    R, mu, first = args
    counts = [0] * R
    tally = Counter(map(sum, combinations(range(first + 1, R), mu - 1)))
    for s, c in tally.items():
        counts[(s + first) % R] += c
    return counts


def bruteforce_table(R, mu, budget=None, jobs=1):
    """Enumerate all C(R, mu) subsets and tally their sums mod R."""
    _check(R, mu)
    total = comb(R, mu)
    if total > resolve_budget(budget):
        raise BudgetExceeded(f"C({R},{mu}) = {total} subsets exceeds the brute-force budget")
    ctx = RingContext(R, mu)
    if jobs > 1:
        tasks = [(R, mu, first) for first in range(R - mu + 1)]
        counts = [0] * R
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_sums_with_min, tasks):
                counts = [a + b for a, b in zip(counts, part)]
    else:
        counts = [0] * R
        for s, c in Counter(map(sum, combinations(range(R), mu))).items():
            counts[s % R] += c
    return PeculiarityTable(ctx, tuple(counts), BRUTE_FORCE)


def sum_peculiarity_bruteforce(R, mu, lam, budget=None, jobs=1):
    return bruteforce_table(R, mu, budget, jobs)[lam]


# -- profile engine ---------------------------------------------------------


def profile_class_totals(ctx):
    """Subsets counted by their sum mod D, aggregated over profiles.

    Entry ``j`` equals the sum of ``prod C(phi_R, N_xi)`` over every profile
    returned by ``enumerate_profiles(ctx, j)``.  The sum is accumulated one
    residue class at a time so the number of profiles never matters.
    """
    D, mu, cap = ctx.D, ctx.mu, ctx.phi_R
    ways = [comb(cap, n) for n in range(min(cap, mu) + 1)]
    # acc[k][r]: ways to pick k elements so far with weighted residue r
    acc = [[0] * D for _ in range(mu + 1)]
    acc[0][0] = 1
    for xi in range(D):
        nxt = [[0] * D for _ in range(mu + 1)]
        for k in range(mu + 1):
            row = acc[k]
            for r in range(D):
                a = row[r]
                if not a:
                    continue
                for n in range(min(cap, mu - k) + 1):
                    nxt[k + n][(r + xi * n) % D] += a * ways[n]
        acc = nxt
    return acc[mu]


def sum_peculiarity_profile(ctx, lam):
    """Count via residue-class profiles.

    Sums of subsets with a given profile are fixed mod D, and P is constant
    on each class mod D, so every class member receives 1/phi_R of the class
    total.
    """
    total = profile_class_totals(ctx)[lam % ctx.D]
    return _exact_div(total, ctx.phi_R, f"profile count R={ctx.R} mu={ctx.mu}")


def profile_table(R, mu):
    _check(R, mu)
    ctx = RingContext(R, mu)
    what = f"profile count R={R} mu={mu}"
    per_class = [_exact_div(t, ctx.phi_R, what) for t in profile_class_totals(ctx)]
    return PeculiarityTable(ctx, tuple(per_class[lam % ctx.D] for lam in range(R)), PROFILE_ENGINE)


# -- closed forms -----------------------------------------------------------


def _two_orbit(R, mu, D, p0_num, p1_num, den):
    # (value on lam = 0 mod D, value elsewhere), both as exact quotients
    what = f"closed form R={R} mu={mu}"
    p0 = _exact_div(p0_num, den, what)
    p1 = _exact_div(p1_num, den, what)
    return tuple(p0 if lam % D == 0 else p1 for lam in range(R))


def closed_form_case(R, mu):
    """Tag of the solved case covering ``(R, mu)``, or None."""
    if gcd(R, mu) == 1:
        return "coprime"
    if mu == 3 and R % 3 == 0:
        return "mu3_D3"
    if mu == 4 and R % 4 == 2:
        return "mu4_D2"
    if mu == 4 and R % 4 == 0:
        return "mu4_D4"
    if mu == 5 and R % 5 == 0:
        return "mu5_D5"
    if mu == 6 and R % 6 in (2, 4):
        return "mu6_D2"
    if mu == 6 and R % 6 == 3:
        return "mu6_D3"
    if mu == 7 and R % 7 == 0:
        return "mu7_D7"
    if mu == 8 and R % 4 == 2:
        return "mu8_D2"
    if mu == 9 and R % 9 in (3, 6):
        return "mu9_D3"
    return None


def sum_peculiarity_closed_form(ctx):
    """Full table from the known closed formulas, or None if no case applies."""
    R, mu = ctx.R, ctx.mu
    case = closed_form_case(R, mu)
    if case is None:
        return None
    B = comb(R - 1, mu - 1)
    if case == "coprime":
        v = _exact_div(B, mu, f"coprime closed form R={R} mu={mu}")
        values = (v,) * R
    elif case in ("mu3_D3", "mu5_D5", "mu7_D7"):
        # Delta(0,1) = 1 for a prime mu dividing R
        values = _two_orbit(R, mu, mu, B - 1 + mu, B - 1, mu)
    elif case == "mu4_D2":
        values = _two_orbit(R, mu, 2, B + (R - 2) // 2, B - (R - 2) // 2, 4)
    elif case == "mu6_D2":
        e = comb(R // 2 - 1, 2)
        values = _two_orbit(R, mu, 2, B - e, B + e, 6)
    elif case == "mu6_D3":
        # P0 = (B/2 + (R-3)/3) / 3, P1 = (B - (R-3)/3) / 6
        e = (R - 3) // 3
        values = _two_orbit(R, mu, 3, B + 2 * e, B - e, 6)
    elif case == "mu8_D2":
        e = comb(R // 2 - 1, 3)
        values = _two_orbit(R, mu, 2, B + e, B - e, 8)
    elif case == "mu9_D3":
        e = comb(R // 3 - 1, 2)
        values = _two_orbit(R, mu, 3, B + 2 * e, B - e, 9)
    elif case == "mu4_D4":
        what = f"closed form R={R} mu=4"
        p0 = _exact_div(B + (R - 6) // 2, 4, what)
        p1 = _exact_div(B - (R - 2) // 2, 4, what)
        p2 = _exact_div(B + (R + 2) // 2, 4, what)
        values = tuple((p0, p1, p2, p1)[lam % 4] for lam in range(R))
    else:  # pragma: no cover
        raise AssertionError(case)
    return PeculiarityTable(ctx, values, CLOSED_FORM, case)


def closed_form_table(R, mu):
    _check(R, mu)
    return sum_peculiarity_closed_form(RingContext(R, mu))


# -- reconciliation ---------------------------------------------------------


@dataclass
class ReconcileReport:
    R: int
    mu: int
    routes: list = field(default_factory=list)
    skipped: dict = field(default_factory=dict)
    closed_form_case: Optional[str] = None
    delta_01: Optional[int] = None
    delta_02: Optional[int] = None
    orbits: tuple = ()


def compute_table(R, mu, method="profile", budget=None, jobs=1):
    """Single-route table; ``method`` is one of brute, profile, closed."""
    if method == "brute":
        return bruteforce_table(R, mu, budget, jobs)
    if method == "profile":
        return profile_table(R, mu)
    if method == "closed":
        table = closed_form_table(R, mu)
        if table is None:
            raise LookupError(f"no closed form covers R={R}, mu={mu}")
        return table
    raise ValueError(f"unknown method {method!r}")


def reconcile(R, mu, budget=None, jobs=1, require_bruteforce=True):
    """Run every applicable route and demand exact agreement.

    Returns ``(table, report)`` where ``table`` is the profile-engine result.
    Brute force is skipped (and noted) when over budget unless
    ``require_bruteforce`` is set, in which case BudgetExceeded propagates.
    """
    _check(R, mu)
    ctx = RingContext(R, mu)
    report = ReconcileReport(R, mu)
    tables = {}
    tables[PROFILE_ENGINE] = profile_table(R, mu)
    report.routes.append(PROFILE_ENGINE)
    try:
        tables[BRUTE_FORCE] = bruteforce_table(R, mu, budget, jobs)
        report.routes.append(BRUTE_FORCE)
    except BudgetExceeded as exc:
        if require_bruteforce:
            raise
        report.skipped[BRUTE_FORCE] = str(exc)
    closed = sum_peculiarity_closed_form(ctx)
    if closed is None:
        report.skipped[CLOSED_FORM] = "no closed form covers this (R, mu)"
    else:
        tables[CLOSED_FORM] = closed
        report.routes.append(CLOSED_FORM)
        report.closed_form_case = closed.closed_form_case

    for lam in range(R):
        seen = {name: t[lam] for name, t in tables.items()}
        if len(set(seen.values())) > 1:
            raise RouteMismatch(R, mu, lam, seen)

    table = tables[PROFILE_ENGINE]
    if R > 1:
        report.delta_01 = table.delta(0, 1)
    if R > 2:
        report.delta_02 = table.delta(0, 2)
    report.orbits = tuple(tuple(sorted(o)) for o in orbit_partition(ctx).full_orbits)
    return table, report


CONJ_UNIFORMITY = "4a"
CONJ_PRIME_MU = "mu-prime"
CONJ_D_P2 = "d-p2"
ALL_CONJECTURES = (CONJ_UNIFORMITY, CONJ_PRIME_MU, CONJ_D_P2)

# Prime mu for which the two-orbit values are theorems rather than conjectures.
PROVED_PRIME_MU = (3, 5, 7)


def _is_prime(n):
    return n >= 2 and prime_factors(n) == [n]


def _sweep_table(R, mu, route, budget, jobs):
    """Table for a sweep instance, or None when brute force is required and too big."""
    if route in ("auto", "brute"):
        try:
            return bruteforce_table(R, mu, budget, jobs)
        except BudgetExceeded:
            if route == "brute":
                return None
    return profile_table(R, mu)


def _two_value_pattern(table, mu):
    base = (comb(table.ctx.R - 1, mu - 1) - 1) // mu
    expected = {"delta_01": 1, "P0": base + 1, "P1": base}
    actual = {"delta_01": table.delta(0, 1), "P0": table[0], "P1": table[1]}
    ok = actual == expected and all(
        table[lam] == (base + 1 if lam % mu == 0 else base) for lam in range(table.ctx.R)
    )
    return ok, expected, actual


def verify_conjectures(R_values, mus=None, budget=None, jobs=1, which=ALL_CONJECTURES, route="auto"):
    """Sweep (R, mu) pairs and grade the uniformity and two-value statements.

    ``route`` is ``auto`` (brute force when affordable, else profile engine),
    ``brute`` (over-budget instances are UNTESTED) or ``profile``.
    Statements that are theorems get FAIL on mismatch; open ones get WARN.
    """
    report = Report(
        "verify_conjectures",
        {"R": list(R_values), "mu": None if mus is None else list(mus), "which": list(which), "route": route},
    )
    for R in R_values:
        mu_list = range(1, R) if mus is None else [m for m in mus if 1 <= m < R]
        for mu in mu_list:
            D = gcd(R, mu)
            wants_4a = CONJ_UNIFORMITY in which
            wants_prime = CONJ_PRIME_MU in which and mu >= 3 and _is_prime(mu) and D == mu
            wants_dp2 = (
                CONJ_D_P2 in which and mu >= 3 and _is_prime(mu) and R % mu == 0
                and R // mu >= 2 and is_prime_power(R + 1)
            )
            if not (wants_4a or wants_prime or wants_dp2):
                continue
            table = _sweep_table(R, mu, route, budget, jobs)
            tag = f"R={R} mu={mu}"
            if table is None:
                for flag, label in ((wants_4a, "uniformity"), (wants_prime, "prime-mu"), (wants_dp2, "d=p+2")):
                    if flag:
                        report.checks.append(Check(f"{label} {tag}", UNTESTED, detail="over brute-force budget"))
                continue
            report.rows.append({
                "R": R, "mu": mu, "D": D, "route": table.method,
                "uniform": table.is_uniform, "delta_01": table.delta(0, 1),
                "values": list(table.values),
            })
            if wants_4a:
                uniform = table.is_uniform
                if D == 1:
                    # coprime implies uniform is proved
                    status = PASS if uniform else FAIL
                    detail = "coprime direction"
                else:
                    status = PASS if not uniform else WARN
                    detail = "converse direction (open)"
                report.checks.append(Check(f"uniformity {tag}", status, D == 1, uniform, detail))
                if D > 1:
                    orbits = orbit_partition(table.ctx).full_orbits
                    distinct = len({table[min(o)] for o in orbits})
                    report.checks.append(Check(
                        f"distinct orbit values {tag}", PASS if distinct == len(orbits) else WARN,
                        len(orbits), distinct, "open",
                    ))
            if wants_prime:
                ok, expected, actual = _two_value_pattern(table, mu)
                proved = mu in PROVED_PRIME_MU
                status = PASS if ok else (FAIL if proved else WARN)
                report.checks.append(Check(
                    f"prime-mu {tag}", status, expected, actual, "proved" if proved else "open",
                ))
            if wants_dp2:
                ok, expected, actual = _two_value_pattern(table, mu)
                proved = mu in PROVED_PRIME_MU
                status = PASS if ok else (FAIL if proved else WARN)
                report.checks.append(Check(
                    f"d=p+2 q={R + 1} d={mu + 2}", status, expected, actual, "proved" if proved else "open",
                ))
    return report
