"""Verification batteries behind ``gdrs-cosets verify``.

Each suite returns a :class:`Report` whose rows list every instance checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import BudgetExceeded
from .fields import prime_powers
from .gdrs import (
    CosetLeader2,
    bd2_total,
    canonical_weight2_leaders,
    coset_wd_weight2,
    make_code,
    oracle_bd2,
    oracle_full_coset_wd,
    symmetry_residual,
    weight2_classes,
)
from .peculiarity import CONJ_D_P2, CONJ_PRIME_MU, CONJ_UNIFORMITY, profile_table, verify_conjectures
from .report import FAIL, PASS, UNTESTED, Check, Report, check_equal


def _exact(num, den):
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not integral")
    return q


@dataclass(frozen=True)
class ClassFormula:
    label: str
    matches: object  # lam -> bool
    value: object  # q -> int


@dataclass(frozen=True)
class CatalogueRow:
    """Closed-form B_{d-2} values for one (d, q residue) family."""

    d: int
    family: str
    applies: object  # q -> bool
    classes: tuple

    def instances(self, q_max):
        return [q for q in prime_powers(self.d, q_max) if self.applies(q)]


def _c(q, d):
    return comb(q - 2, d - 3)


def _prime_mu_row(d):
    mu = d - 2
    return CatalogueRow(
        d, f"q={mu}t+1", lambda q: (q - 1) % mu == 0 and q >= 2 * mu + 1,
        (
            ClassFormula(f"lam=0 mod {mu}", lambda lam: lam % mu == 0, lambda q: _exact(_c(q, d) - 1, mu) + 1),
            ClassFormula(f"lam!=0 mod {mu}", lambda lam: lam % mu != 0, lambda q: _exact(_c(q, d) - 1, mu)),
        ),
    )


def _even(lam):
    return lam % 2 == 0


def _odd(lam):
    return lam % 2 == 1


CLOSED_FORM_CATALOGUE = (
    _prime_mu_row(5),
    CatalogueRow(6, "q=4t+3", lambda q: q % 4 == 3, (
        ClassFormula("lam even", _even, lambda q: _exact(_c(q, 6) + (q - 3) // 2, 4)),
        ClassFormula("lam odd", _odd, lambda q: _exact(_c(q, 6) - (q - 3) // 2, 4)),
    )),
    CatalogueRow(6, "q=4t+1", lambda q: q % 4 == 1, (
        ClassFormula("lam=0 mod 4", lambda lam: lam % 4 == 0, lambda q: _exact(_c(q, 6) + (q - 7) // 2, 4)),
        ClassFormula("lam odd", _odd, lambda q: _exact(_c(q, 6) - (q - 3) // 2, 4)),
        ClassFormula("lam=2 mod 4", lambda lam: lam % 4 == 2, lambda q: _exact(_c(q, 6) + (q + 1) // 2, 4)),
    )),
    _prime_mu_row(7),
    CatalogueRow(8, "q=6t+3 or 6t+5", lambda q: q % 6 in (3, 5), (
        ClassFormula("lam even", _even, lambda q: _exact(_c(q, 8) - comb((q - 3) // 2, 2), 6)),
        ClassFormula("lam odd", _odd, lambda q: _exact(_c(q, 8) + comb((q - 3) // 2, 2), 6)),
    )),
    CatalogueRow(8, "q=6t+4", lambda q: q % 6 == 4, (
        ClassFormula("lam=0 mod 3", lambda lam: lam % 3 == 0, lambda q: _exact(_c(q, 8) + 2 * ((q - 4) // 3), 6)),
        ClassFormula("lam!=0 mod 3", lambda lam: lam % 3 != 0, lambda q: _exact(_c(q, 8) - (q - 4) // 3, 6)),
    )),
    _prime_mu_row(9),
    CatalogueRow(10, "q=4t+3", lambda q: q % 4 == 3, (
        ClassFormula("lam even", _even, lambda q: _exact(_c(q, 10) + comb((q - 3) // 2, 3), 8)),
        ClassFormula("lam odd", _odd, lambda q: _exact(_c(q, 10) - comb((q - 3) // 2, 3), 8)),
    )),
    CatalogueRow(11, "q=9t+4 or 9t+7", lambda q: q % 9 in (4, 7), (
        ClassFormula("lam=0 mod 3", lambda lam: lam % 3 == 0, lambda q: _exact(_c(q, 11) + 2 * comb((q - 4) // 3, 2), 9)),
        ClassFormula("lam!=0 mod 3", lambda lam: lam % 3 != 0, lambda q: _exact(_c(q, 11) - comb((q - 4) // 3, 2), 9)),
    )),
)


def table4_suite(q_max=31):
    report = Report("verify", {"suite": "table4", "q_max": q_max})
    for row in CLOSED_FORM_CATALOGUE:
        for q in row.instances(q_max):
            table = profile_table(q - 1, row.d - 2)
            for cls in row.classes:
                expected = cls.value(q)
                lams = [lam for lam in range(q - 1) if cls.matches(lam)]
                engine = sorted({table[lam] for lam in lams})
                ok = engine == [expected]
                report.rows.append({
                    "d": row.d, "family": row.family, "q": q, "class": cls.label,
                    "formula": expected, "engine": engine[0] if len(engine) == 1 else engine,
                    "status": PASS if ok else FAIL,
                })
                report.checks.append(Check(
                    f"table4 d={row.d} q={q} {cls.label}", PASS if ok else FAIL, expected, engine[0] if len(engine) == 1 else engine,
                ))
    return report


def _conjecture_suite(name, which, R_values, budget, jobs):
    sweep = verify_conjectures(R_values, budget=budget, jobs=jobs, which=which)
    params = {"suite": name, "R_min": min(R_values), "R_max": max(R_values)}
    return Report("verify", params, sweep.rows, sweep.checks)


def conjecture_4a_suite(R_max=20, budget=None, jobs=1):
    return _conjecture_suite("conjecture-4a", (CONJ_UNIFORMITY,), range(2, R_max + 1), budget, jobs)


def conjecture_mu_prime_suite(R_max=22, budget=None, jobs=1):
    return _conjecture_suite("conjecture-mu-prime", (CONJ_PRIME_MU,), range(3, R_max + 1), budget, jobs)


def conjecture_d_p2_suite(q_max=31, budget=None, jobs=1):
    report = _conjecture_suite("conjecture-d-p2", (CONJ_D_P2,), range(2, q_max), budget, jobs)
    report.params = {"suite": "conjecture-d-p2", "q_max": q_max}
    return report


def oracle_suite(qs=(5, 7, 8), d=5, budget=None):
    """Formula routes against exhaustive enumeration for small codes."""
    report = Report("verify", {"suite": "oracle", "q": list(qs), "d": d})
    for q in qs:
        code = make_code(q, d)
        try:
            classes = weight2_classes(code)
            for leader in canonical_weight2_leaders(code):
                formula = coset_wd_weight2(code, leader)
                oracle = oracle_full_coset_wd(code, leader, budget)
                bd2 = oracle_bd2(code, leader, budget)
                report.rows.append({
                    "q": q, "d": d, "gamma2": leader.gamma2, "B_d-2": bd2,
                    "formula": list(formula.counts), "oracle": list(oracle.counts),
                })
                tag = f"q={q} d={d} leader=(1,2;1,{leader.gamma2})"
                report.checks.append(check_equal(f"coset wd {tag}", list(formula.counts), list(oracle.counts)))
                report.checks.append(check_equal(f"B_d-2 syndrome count {tag}", formula[d - 2], bd2))
            # every position pair gives the same B_{d-2} for a fixed (1, gamma2)
            for leader in canonical_weight2_leaders(code):
                values = {
                    oracle_bd2(code, CosetLeader2(j1, j2, 1, leader.gamma2), budget)
                    for j1 in range(1, code.n + 1) for j2 in range(j1 + 1, code.n + 1)
                }
                report.checks.append(check_equal(
                    f"position independence q={q} gamma2={leader.gamma2}", 1, len(values),
                ))
            total = sum(c.bd2 * c.n_cosets for c in classes)
            report.checks.append(check_equal(f"integral spectrum q={q} d={d}", bd2_total(q, d), total))
            ref = classes[0].wd
            report.checks.append(check_equal(
                f"symmetry residual q={q} d={d}", True,
                all(symmetry_residual(ref, c.wd, code.n, d) for c in classes),
            ))
        except BudgetExceeded as exc:
            report.checks.append(Check(f"oracle q={q} d={d}", UNTESTED, detail=str(exc)))
    return report


SUITES = ("table4", "conjecture-4a", "conjecture-mu-prime", "conjecture-d-p2", "oracle")


def run_suite(name, q_max=None, R_max=None, budget=None, jobs=1):
    if name == "table4":
        return table4_suite(31 if q_max is None else q_max)
    if name == "conjecture-4a":
        return conjecture_4a_suite(20 if R_max is None else R_max, budget, jobs)
    if name == "conjecture-mu-prime":
        return conjecture_mu_prime_suite(22 if R_max is None else R_max, budget, jobs)
    if name == "conjecture-d-p2":
        return conjecture_d_p2_suite(31 if q_max is None else q_max, budget, jobs)
    if name == "oracle":
        return oracle_suite(budget=budget)
    raise ValueError(f"unknown suite {name!r}")
