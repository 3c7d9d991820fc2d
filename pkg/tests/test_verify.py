import json
import os
import re

from spinbfv.config import Bounds
from spinbfv.report import Status
from spinbfv.sampling import random_x_function, rng_for
from spinbfv.verify import CATALOG, CHECKS_BY_ID, check_ids, run_suite

README = os.path.join(os.path.dirname(__file__), "..", "README.md")
SMALL = Bounds(kmax=2, fdeg_max=1, tmax=4)

PASSING = [
    "mc_poisson",
    "mc_moyal",
    "s_hbar_equals_s",
    "pi_bracket_table",
    "pi_pi_theta",
    "x_closed_form",
    "eta_constructions",
    "page0_cocycles",
    "page2_a",
    "page2_gamma_a",
    "page2_b",
    "lift_x",
    "q1_cross_check",
    "double_complex",
]

RANDOMIZED = [
    "mc_random_backgrounds",
    "generic_s_mc",
    "star_associativity",
    "ck_symmetry",
    "bracket_expansion",
    "poisson_jacobi",
    "poisson_leibniz",
    "qtotal_nilpotent",
    "clifford_corollary",
]

FLAGGED = [
    "pi_theta_bracket",
    "lemma_pi_pi_ftheta",
    "y_closed_form",
    "cocycles_closed",
    "lift_y",
    "q1_explicit",
    "q1_xi",
    "q1_x",
    "ad_s_generators",
]


def by_id(results):
    return {r.check_id: r for r in results}


class TestCatalog:
    def test_ids_unique(self):
        ids = check_ids()
        assert len(ids) == len(set(ids)) == len(CATALOG)
        assert set(PASSING + RANDOMIZED + FLAGGED) <= set(ids)

    def test_locations_documented(self):
        with open(README, encoding="utf-8") as f:
            readme = f.read()
        for check in CATALOG:
            assert check.location
            assert f"| `{check.check_id}` | {check.location} |" in readme, check.check_id

    def test_randomized_checks_record_seed(self):
        for cid in RANDOMIZED:
            assert CHECKS_BY_ID[cid].randomized
            assert "seed" in CHECKS_BY_ID[cid].params


class TestStatuses:
    def test_exact_identities_pass(self, m1):
        results = by_id(run_suite(m1, PASSING, SMALL))
        for cid in PASSING:
            assert results[cid].status is Status.PASS, (cid, results[cid].note)
            assert results[cid].residual == "0"

    def test_randomized_identities_pass(self, m1):
        results = by_id(run_suite(m1, RANDOMIZED, SMALL, seed=7, samples=2))
        for cid in RANDOMIZED:
            assert results[cid].status is Status.PASS, (cid, results[cid].note)
            assert results[cid].params["seed"] == 7

    def test_printed_discrepancies_are_flagged(self, m1):
        results = by_id(run_suite(m1, FLAGGED, SMALL))
        for cid in FLAGGED:
            assert results[cid].status is Status.FLAGGED, (cid, results[cid].note)
            assert results[cid].residual != "0"

    def test_flag_notes(self, m1):
        results = by_id(run_suite(m1, ["pi_theta_bracket", "q1_xi", "lemma_pi_pi_ftheta"], SMALL))
        assert "holds up to constant -1" in results["pi_theta_bracket"].note
        assert "holds up to constant -1" in results["q1_xi"].note
        assert "sign reversed" in results["lemma_pi_pi_ftheta"].note

    def test_cohomology_checks(self, m1):
        bounds = Bounds(kmax=2, fdeg_max=1, tmax=3)
        results = by_id(run_suite(m1, ["cohomology_theorem", "e2_vanishing"], bounds))
        assert results["cohomology_theorem"].status is Status.PASS
        assert results["e2_vanishing"].status is Status.PASS
        assert results["e2_vanishing"].params == {"d": 1, "tmax": 3, "gamma_min": 0}

    def test_magnetic_field(self, m2b):
        bounds = Bounds(kmax=1, fdeg_max=1, tmax=2)
        results = by_id(run_suite(m2b, ["mc_poisson", "pi_bracket_table", "q1_explicit", "e2_vanishing"], bounds))
        assert results["mc_poisson"].status is Status.PASS
        assert results["pi_bracket_table"].status is Status.PASS
        for cid in ("q1_explicit", "e2_vanishing"):
            assert results[cid].status is Status.SKIPPED
            assert "flat" in results[cid].note


class TestRunSuite:
    def test_unknown_id_is_skipped(self, m1):
        results = run_suite(m1, ["no_such_check", "mc_poisson"], SMALL)
        assert [r.check_id for r in results] == ["mc_poisson", "no_such_check"]
        assert results[1].status is Status.SKIPPED
        assert results[1].note == "unknown check id"

    def test_catalog_order(self, m1):
        results = run_suite(m1, ["s_hbar_equals_s", "mc_poisson", "mc_poisson"], SMALL)
        assert [r.check_id for r in results] == ["mc_poisson", "s_hbar_equals_s"]

    def test_deterministic(self, m1):
        ids = ["star_associativity", "qtotal_nilpotent", "generic_s_mc"]
        first = [r.to_dict() for r in run_suite(m1, ids, SMALL, seed=3, samples=2)]
        second = [r.to_dict() for r in run_suite(m1, ids, SMALL, seed=3, samples=2)]
        assert first == second

    def test_corollary_draws_seeded_functions(self, m1):
        first = run_suite(m1, ["clifford_corollary"], SMALL, seed=11, samples=3)
        second = run_suite(m1, ["clifford_corollary"], SMALL, seed=11, samples=3)
        assert [r.to_dict() for r in first] == [r.to_dict() for r in second]
        assert first[0].status is Status.PASS, first[0].note
        assert first[0].params == {"d": 1, "fdeg_max": 1, "seed": 11, "samples": 3}

    def test_result_shape(self, m1):
        (result,) = run_suite(m1, ["x_closed_form"], SMALL)
        data = result.to_dict()
        assert set(data) == {"check_id", "paper_location", "params", "status", "residual", "note"}
        assert data["params"] == {"d": 1, "kmax": 2, "fdeg_max": 1}
        assert data["status"] == "pass"

    def test_readme_report_example(self, m1):
        with open(README, encoding="utf-8") as f:
            block = re.search(r"### Report Format\s+```json\n(.*?)```", f.read(), re.S).group(1)
        (example,) = json.loads(block)["results"]
        (result,) = run_suite(m1, ["mc_poisson"], SMALL)
        assert result.to_dict() == example


class TestSampling:
    def test_random_x_function_stays_in_x(self, m2):
        f = random_x_function(rng_for(5, "x"), m2, max_degree=2)
        assert f
        for mono in f.terms:
            powers = dict(zip(m2.table.names, mono))
            assert all(not e for name, e in powers.items() if not name.startswith("x"))
            assert sum(mono) <= 2

    def test_random_x_function_is_seeded(self, m2):
        a = random_x_function(rng_for(5, "x"), m2)
        b = random_x_function(rng_for(5, "x"), m2)
        assert a == b
