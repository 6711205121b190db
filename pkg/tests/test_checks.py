import json

import pytest

from overq.checks import (
    REGISTRY,
    SeriesBank,
    all_check_ids,
    check_conjecture_40,
    check_families,
    check_final_step_thm1,
    check_id_4n3,
    check_mod8_criterion,
    check_thm_main,
    check_thm_mod9,
    coverage_manifest,
    replay_proof_steps,
    run_checks,
)
from overq.reporting import Budget, finalize_report, summary_counts

from oracles import overpartitions_counted, rk_lattice_naive

SMALL = Budget(max_argument=700, max_prime=23, max_alpha=3)


@pytest.fixture(scope="module")
def bank():
    return SeriesBank(SMALL)


# -- budget and report plumbing -------------------------------------------------


def test_budget_defaults_and_validation():
    b = Budget()
    assert (b.max_argument, b.max_prime, b.max_alpha) == (10_000, 23, 3)
    with pytest.raises(ValueError):
        Budget(max_argument=0)
    with pytest.raises(ValueError):
        Budget(max_prime=-1)


def test_finalize_report_status_rules():
    fail = finalize_report("x", {}, (1, 10), [{"args": {}}], 10, 1)
    assert fail.status == "fail"
    ok = finalize_report("x", {}, (1, 10), [], 10, 1)
    assert ok.status == "pass" and ok.reason is None
    skipped = finalize_report("x", {}, (1, 0), [], 0, 1)
    assert skipped.status == "skipped"
    assert skipped.reason == "no grid points within budget"


def test_report_json_shape():
    rep = finalize_report("x", {"m": 5}, (1, 3), [], 3, 7)
    d = rep.to_json_dict()
    assert list(d) == [
        "check_id",
        "status",
        "parameters",
        "range_tested",
        "counterexamples",
        "skipped_points",
        "elapsed_ms",
    ]
    json.dumps(d)  # must be serializable as-is


def test_summary_counts():
    reports = [
        finalize_report("a", {}, (1, 1), [], 1, 0),
        finalize_report("b", {}, (1, 1), [{"args": {}}], 1, 0),
        finalize_report("c", {}, (0, 0), [], 0, 0),
    ]
    assert summary_counts(reports) == {"pass": 1, "fail": 1, "skipped": 1}


# -- registry ---------------------------------------------------------------------


def test_registry_covers_every_statement():
    ids = all_check_ids()
    assert len(ids) == len(set(ids)) == 19
    manifest = coverage_manifest()
    assert set(manifest) == set(ids)
    assert all(manifest[c] for c in ids)


# -- single checkers at a small budget ---------------------------------------------


def test_thm_main_passes_and_counts(bank):
    rep = check_thm_main(SMALL, bank)
    assert rep.status == "pass"
    assert rep.range_tested == (1, 700 // 5)
    assert rep.counterexamples == []


def test_thm_main_example_values(bank):
    # pbar(5) = 24 and r3(1) = 6: 24 == -6 == 4 (mod 5)
    gf5 = bank.overpartition(5)
    assert gf5.coeffs[5] == 24 % 5 == 4
    assert (-rk_lattice_naive(3, 1)) % 5 == 4
    # r3(7) = 0 forces pbar(35) == 0 (mod 5)
    assert rk_lattice_naive(3, 7) == 0
    assert gf5.coeffs[35] == 0


def test_thm_mod9_passes(bank):
    rep = check_thm_mod9(SMALL, bank)
    assert rep.status == "pass"
    # pbar(3) = 8 and r5(1) = 10: 8 == -10 (mod 9)
    gf9 = bank.overpartition(9)
    assert gf9.coeffs[3] == 8 and (-10) % 9 == 8
    # pbar(6) = 40 and r5(2) = 40, even index: equal residues directly
    assert gf9.coeffs[6] == 40 % 9


def test_conj40_crt_consistency(bank):
    rep = check_conjecture_40(SMALL, bank)
    assert rep.status == "pass"
    assert rep.parameters["instances"] >= 17  # 35..675 step 40, plus 140, 560
    assert rep.parameters["alpha_max"] == 2  # 16 * 35 = 560 <= 700 < 4^3 * 35


def test_mod8_criterion_and_exemptions(bank):
    rep = check_mod8_criterion(SMALL, bank)
    assert rep.status == "pass"
    # the exemptions are necessary: squares and twice-squares break the pattern
    gf = bank.overpartition(8)
    assert gf.coeffs[4] != 0  # pbar(4) = 14
    assert gf.coeffs[50] != 0  # pbar(50) is not divisible by 8 either
    assert overpartitions_counted(4) == 14


def test_id_4n3_exact_terms(bank):
    rep = check_id_4n3(SMALL, bank)
    assert rep.status == "pass"
    assert rep.parameters["terms"] == (700 - 3) // 4 + 1


def test_families_statuses(bank):
    reports = {r.check_id: r for r in check_families(SMALL, bank)}
    assert set(reports) == {
        "fam-5power",
        "fam-5p3",
        "fam-5p-high",
        "fam-3p-high",
        "cor-5-4alpha",
    }
    fam5 = reports["fam-5power"]
    assert fam5.status == "pass"  # alpha = 1 has instances 125 and 500 within 700
    assert any(p["residue"] == 4 for p in fam5.skipped_points)  # alpha >= 2 is out of reach
    fam5p3 = reports["fam-5p3"]
    assert fam5p3.status == "pass"  # recursion route tested; direct instances skipped
    assert fam5p3.skipped_points[0]["minimal_argument"] == str(5 * 19**3)
    high5 = reports["fam-5p-high"]
    assert high5.status == "pass"
    assert all(s["family"] == "direct" for s in high5.skipped_points)
    assert reports["fam-3p-high"].status == "pass"
    assert reports["cor-5-4alpha"].status == "pass"


def test_cor_5_4alpha_spot_value(bank):
    # pbar(5 * 4 * 5) == -pbar(5 * 5) (mod 5): pbar(100) against pbar(25), n = 5 odd
    gf5 = bank.overpartition(5)
    assert gf5.coeffs[100] == (5 - gf5.coeffs[25]) % 5
    # and an even-index instance compares directly: pbar(40) == pbar(10) (mod 5)
    assert gf5.coeffs[40] == gf5.coeffs[10]


def test_fam_5p3_skipped_when_no_prime_in_budget():
    tight = Budget(max_argument=700, max_prime=17, max_alpha=2)
    rep = next(r for r in check_families(tight) if r.check_id == "fam-5p3")
    assert rep.status == "skipped"
    assert "19" not in json.dumps(rep.parameters)
    assert rep.reason.startswith("no primes")


def test_replay_and_final_step(bank):
    reports = replay_proof_steps(SMALL, bank)
    assert [r.check_id for r in reports] == ["replay-phi5", "replay-phi9", "lemma-euler-power"]
    assert all(r.status == "pass" for r in reports)
    final = check_final_step_thm1(SMALL, bank)
    assert final.status == "pass"
    assert final.parameters["terms_mod_5"] == 700 // 5 + 1


def test_lemma_euler_power_respects_budget_caps():
    capped = Budget(max_argument=120, max_prime=3, max_alpha=2)
    rep = next(r for r in replay_proof_steps(capped) if r.check_id == "lemma-euler-power")
    assert rep.status == "pass"
    assert rep.parameters["pairs"] == 4  # (2,1), (2,2), (3,1), (3,2) survive the caps
    assert len(rep.skipped_points) == 3  # (2,3) exceeds max_alpha; (5,1), (5,2) exceed max_prime


# -- runner ------------------------------------------------------------------------


def test_run_checks_summary_and_order():
    ids = ["replay-phi5", "thm-main", "lemma-r48-scaling"]
    small = Budget(max_argument=300, max_prime=7, max_alpha=2)
    reports, summary = run_checks(ids, small)
    assert [r.check_id for r in reports] == ids
    assert summary == {"pass": 3, "fail": 0, "skipped": 0}


def test_run_checks_unknown_id_raises_before_work():
    with pytest.raises(KeyError):
        run_checks(["definitely-not-a-check"], SMALL)


def test_run_checks_parallel_matches_serial():
    ids = ["replay-phi5", "replay-phi9", "lemma-euler-power", "thm-main"]
    small = Budget(max_argument=400, max_prime=5, max_alpha=2)
    serial, _ = run_checks(ids, small)
    parallel, _ = run_checks(ids, small, jobs=4)
    strip = lambda r: {**r.to_json_dict(), "elapsed_ms": 0}
    assert [strip(r) for r in serial] == [strip(r) for r in parallel]


def test_runs_are_deterministic_apart_from_timing():
    ids = all_check_ids()
    small = Budget(max_argument=500, max_prime=11, max_alpha=2)
    first, _ = run_checks(ids, small)
    second, _ = run_checks(ids, small)
    strip = lambda r: {**r.to_json_dict(), "elapsed_ms": 0}
    assert [strip(r) for r in first] == [strip(r) for r in second]


def test_skipped_never_silently_passes():
    # a budget too small for any qualifying 40n+35 instance must report skipped
    rep = check_conjecture_40(Budget(max_argument=30, max_prime=3, max_alpha=1))
    assert rep.status == "skipped"
    assert rep.reason


def _poisoned_bank(budget):
    """A bank whose r3 mod-5 series is wrong, to exercise the failure path."""
    from overq.series import TruncatedSeries, mod_ring

    bank = SeriesBank(budget)
    order = budget.max_argument
    bad = TruncatedSeries.make(mod_ring(5), [1] * (order + 1))
    bank._cache[("rk", 3, 5, order)] = bad
    return bank


def test_counterexamples_are_reproducible_from_the_report():
    budget = Budget(max_argument=100, max_prime=3, max_alpha=1)
    rep = check_thm_main(budget, _poisoned_bank(budget))
    assert rep.status == "fail"
    assert rep.counterexamples
    ce = rep.counterexamples[0]
    # argument tuple plus both observed residues: enough to replay the mismatch
    assert "n" in ce["args"]
    assert set(ce["observed"]) == {"pbar_5n_mod_5", "signed_r3_mod_5"}
    assert ce["expected"]


def test_stop_on_first_halts_the_stream():
    from overq.checks import iter_check_reports

    budget = Budget(max_argument=100, max_prime=3, max_alpha=1)
    bank = _poisoned_bank(budget)
    reports = list(
        iter_check_reports(["thm-main", "replay-phi5"], budget, stop_on_first=True, bank=bank)
    )
    assert len(reports) == 1
    assert reports[0].status == "fail"
    # without the flag both run
    bank2 = _poisoned_bank(budget)
    reports = list(iter_check_reports(["thm-main", "replay-phi5"], budget, bank=bank2))
    assert [r.status for r in reports] == ["fail", "pass"]
