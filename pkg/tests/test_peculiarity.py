from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdrs_cosets import peculiarity as pec
from gdrs_cosets.errors import BudgetExceeded, MuOutOfRange, NonIntegralResult, RouteMismatch
from gdrs_cosets.peculiarity import (
    bruteforce_table,
    closed_form_case,
    closed_form_table,
    compute_table,
    profile_table,
    reconcile,
    sum_peculiarity_bruteforce,
    sum_peculiarity_closed_form,
    sum_peculiarity_profile,
    verify_conjectures,
)
from gdrs_cosets.report import PASS, UNTESTED, WARN
from gdrs_cosets.ring_orbits import RingContext, orbit_partition


def _naive(R, mu):
    counts = Counter(sum(s) % R for s in combinations(range(R), mu))
    return tuple(counts[lam] for lam in range(R))


def test_bruteforce_examples():
    assert sum_peculiarity_bruteforce(4, 2, 0) == 1
    assert all(sum_peculiarity_bruteforce(9, 1, lam) == 1 for lam in range(9))
    assert sum_peculiarity_bruteforce(10, 4, 0) == 22
    assert bruteforce_table(10, 4).values == _naive(10, 4)


def test_profile_examples():
    assert sum_peculiarity_profile(RingContext(10, 4), 1) == 20
    assert sum_peculiarity_profile(RingContext(9, 3), 0) == 10
    assert sum_peculiarity_profile(RingContext(7, 3), 5) == 5


def test_closed_form_examples():
    t = sum_peculiarity_closed_form(RingContext(6, 3))
    assert t.values == (4, 3, 3, 4, 3, 3)
    assert t.mass == comb(6, 3)
    t = sum_peculiarity_closed_form(RingContext(12, 4))
    assert [t[lam] for lam in range(12)] == [42, 40, 43, 40] * 3
    assert t.mass == 495
    assert sum_peculiarity_closed_form(RingContext(10, 3)).values == (12,) * 10
    assert sum_peculiarity_closed_form(RingContext(30, 15)) is None


def test_closed_form_case_tags():
    assert closed_form_case(10, 3) == "coprime"
    assert closed_form_case(9, 3) == "mu3_D3"
    assert closed_form_case(10, 4) == "mu4_D2"
    assert closed_form_case(12, 4) == "mu4_D4"
    assert closed_form_case(10, 5) == "mu5_D5"
    assert closed_form_case(10, 6) == "mu6_D2"
    assert closed_form_case(9, 6) == "mu6_D3"
    assert closed_form_case(14, 7) == "mu7_D7"
    assert closed_form_case(14, 8) == "mu8_D2"
    assert closed_form_case(12, 9) == "mu9_D3"
    assert closed_form_case(12, 6) is None
    assert closed_form_case(16, 8) is None


def test_reconcile_examples():
    table, rep = reconcile(10, 4)
    assert set(rep.routes) == {"profile_engine", "brute_force", "closed_form"}
    assert rep.delta_01 == 2 == (10 - 2) // 4
    assert reconcile(9, 3)[1].delta_01 == 1
    table, rep = reconcile(14, 8)
    assert rep.delta_01 == comb(6, 3) // 4 == 5
    assert rep.closed_form_case == "mu8_D2"


def test_reconcile_skips_brute_force_over_budget():
    with pytest.raises(BudgetExceeded):
        reconcile(20, 10, budget=1000)
    table, rep = reconcile(20, 10, budget=1000, require_bruteforce=False)
    assert "brute_force" in rep.skipped
    assert table.mass == comb(20, 10)


def test_route_mismatch_is_reported(monkeypatch):
    real = pec.sum_peculiarity_closed_form

    def corrupted(ctx):
        t = real(ctx)
        vals = list(t.values)
        vals[3] += 1
        return pec.PeculiarityTable(t.ctx, tuple(vals), t.method, t.closed_form_case)

    monkeypatch.setattr(pec, "sum_peculiarity_closed_form", corrupted)
    with pytest.raises(RouteMismatch) as info:
        reconcile(10, 4)
    err = info.value
    assert (err.R, err.mu, err.lam) == (10, 4, 3)
    assert err.values["closed_form"] == err.values["brute_force"] + 1


def test_profile_engine_rejects_non_integral_totals(monkeypatch):
    real = pec.profile_class_totals
    monkeypatch.setattr(pec, "profile_class_totals", lambda ctx: [t + 1 for t in real(ctx)])
    with pytest.raises(NonIntegralResult):
        profile_table(10, 4)


def test_invalid_arguments():
    for R, mu in [(10, 11), (10, 10), (10, 0), (1, 1)]:
        with pytest.raises(MuOutOfRange):
            profile_table(R, mu)
        with pytest.raises(MuOutOfRange):
            bruteforce_table(R, mu)
    with pytest.raises(LookupError):
        compute_table(30, 15, "closed")
    with pytest.raises(ValueError):
        compute_table(10, 4, "guess")


def test_budget_and_env_override(monkeypatch):
    with pytest.raises(BudgetExceeded):
        bruteforce_table(20, 10, budget=comb(20, 10) - 1)
    assert bruteforce_table(20, 10, budget=comb(20, 10)).mass == comb(20, 10)
    monkeypatch.setenv("GDRS_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        bruteforce_table(12, 5)
    monkeypatch.setenv("GDRS_BUDGET", "0")
    with pytest.raises(ValueError):
        bruteforce_table(12, 5)


def test_parallel_brute_force_matches_serial():
    assert bruteforce_table(18, 7, jobs=2).values == bruteforce_table(18, 7).values


@pytest.mark.parametrize("R", range(2, 25))
def test_route_equivalence_brute_vs_profile(R):
    for mu in range(1, R):
        if comb(R, mu) > 10**6:
            continue
        brute = bruteforce_table(R, mu)
        assert brute.values == profile_table(R, mu).values
        closed = closed_form_table(R, mu)
        if closed is not None:
            assert closed.values == brute.values


@pytest.mark.parametrize("R", range(2, 31))
def test_closed_forms_agree_with_profile_engine(R):
    for mu in range(1, R):
        closed = closed_form_table(R, mu)
        if closed is not None:
            assert closed.values == profile_table(R, mu).values, (R, mu, closed.closed_form_case)


@pytest.mark.parametrize("R", range(2, 21))
def test_translation_dilation_invariance(R):
    units = [l for l in range(1, R) if gcd(l, R) == 1]
    for mu in range(1, R):
        t = profile_table(R, mu)
        for lam in range(R):
            for l in units:
                for u in range(R):
                    assert t[lam] == t[lam * l + u * mu]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 80).flatmap(lambda R: st.tuples(st.just(R), st.integers(1, R - 1))))
def test_profile_table_invariants(args):
    R, mu = args
    t = profile_table(R, mu)
    assert t.mass == comb(R, mu)
    assert all(t[lam] == t[-lam] for lam in range(R))
    part = orbit_partition(t.ctx)
    assert all(len({t[lam] for lam in o}) == 1 for o in part.oplus_orbits)
    if gcd(R, mu) == 1:
        assert t.is_uniform and t[0] == comb(R - 1, mu - 1) // mu


def test_large_instance_is_exact():
    t = profile_table(200, 100)
    assert t.mass == comb(200, 100)
    assert t.mass > 2**190


def test_verify_conjectures_examples():
    rep = verify_conjectures([8], [3])
    [check] = [c for c in rep.checks if c.name.startswith("uniformity")]
    assert check.status == PASS
    assert rep.rows[0]["values"] == [7] * 8

    rep = verify_conjectures([12], [4], which=("4a",))
    statuses = {c.name: (c.status, c.actual) for c in rep.checks}
    assert statuses["distinct orbit values R=12 mu=4"] == (PASS, 3)

    rep = verify_conjectures([22], [11])
    statuses = {c.name: c.status for c in rep.checks}
    assert statuses["prime-mu R=22 mu=11"] == PASS
    assert rep.rows[0]["delta_01"] == 1

    rep = verify_conjectures(range(3, 31), [3, 5, 7], which=("mu-prime",))
    assert len(rep.checks) == 9 + 5 + 3
    assert all(c.status == PASS for c in rep.checks)
    assert all(row["delta_01"] == 1 for row in rep.rows)


def test_verify_conjectures_untested_when_brute_force_is_required():
    rep = verify_conjectures([22], [11], budget=1000, route="brute")
    assert {c.status for c in rep.checks} == {UNTESTED}
    rep = verify_conjectures([22], [11], budget=1000)
    assert rep.rows[0]["route"] == "profile_engine"


def test_open_statements_only_warn(monkeypatch):
    # flip every table to uniform so the converse direction is contradicted
    def flat(R, mu, budget=None, jobs=1):
        ctx = RingContext(R, mu)
        return pec.PeculiarityTable(ctx, (1,) * R, pec.BRUTE_FORCE)

    monkeypatch.setattr(pec, "bruteforce_table", flat)
    rep = verify_conjectures([12], [4, 5, 11], which=("4a",))
    statuses = {c.name: c.status for c in rep.checks}
    assert statuses["uniformity R=12 mu=4"] == WARN
    assert statuses["uniformity R=12 mu=5"] == PASS
