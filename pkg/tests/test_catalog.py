"""Identity registry: structure, determinism, comparison semantics, and
the structural checks that go beyond plain value comparison."""

import dataclasses
import math

import pytest

from hyperharmonic import (DEFAULT_SEED, DomainError, Identity, REGISTRY,
                           UnknownIdentityError, build_registry, eval_lhs,
                           eval_rhs, finite_sum_instance, get_identity,
                           ode_residual, verify, with_perturbed_rhs)

# frozen at 40 digits: twice the weighted half-argument series of the
# first doubling identity at a = 0.3+0.1i, b = 0.2
A1_ANCHOR = complex(0.4229624741123296821076775726203319023677,
                    0.1150825930482065571198596934557606971966)
# gamma-prefactor closed form of the terminating instance at b = 2
THME_B2 = 0.5545177444479562475337856971665412544604

EXPECTED_IDS = (
    "THM-A1", "THM-A2", "COR-A1", "COR-A2",
    "EX-1", "EX-2", "EX-3", "EX-4",
    "SUM-CHOI", "SUM-MIX", "GF-K1", "GF-K2",
    "THM-B", "EQ-H3N", "VAL-ALG",
    "THM-C", "SUM-GAUSSD", "THM-D", "COR-D", "THM-E",
    "TR-2.11.2", "TR-2.11.7", "TR-2.11.5", "TR-4.5.1",
    "SUM-2.8.46", "SUM-2.8.50", "SUM-2.8.51",
    "WATSON", "WATSON-PM",
)


class TestRegistryShape:
    def test_ids_and_order(self):
        assert tuple(REGISTRY) == EXPECTED_IDS

    def test_entries_are_well_formed(self):
        for ident in REGISTRY.values():
            assert ident.kind in ("identity", "transformation")
            assert ident.description
            assert ident.tol > 0
            assert ident.sample_points
            for pt in ident.sample_points:
                assert set(pt) == set(ident.param_names)
            assert ident.lhs or ident.rhs_series

    def test_point_counts(self):
        counts = {
            "THM-A1": 12, "THM-A2": 8, "COR-A1": 9, "THM-B": 36,
            "THM-C": 6, "SUM-GAUSSD": 6, "THM-D": 5, "THM-E": 4,
            "TR-2.11.2": 10, "TR-2.11.7": 10, "TR-2.11.5": 10,
            "TR-4.5.1": 10, "WATSON": 4, "WATSON-PM": 4,
        }
        for ident_id, n in counts.items():
            assert len(REGISTRY[ident_id].sample_points) == n

    def test_documented_domain_constraints(self):
        for seed in (DEFAULT_SEED, 7, 5150):
            reg = build_registry(seed)
            for pt in reg["THM-C"].sample_points:
                assert (pt["a"] + pt["b"]).real <= 0.2 + 1e-12
            for pt in reg["THM-A2"].sample_points:
                assert (pt["a"] + pt["b"]).real <= 0.75 + 1e-12
            for pt in reg["THM-D"].sample_points:
                assert (pt["a"] + pt["b"]).real > 0.0
            for pt in reg["TR-2.11.2"].sample_points:
                z = pt["z"]
                assert abs(4.0 * z * (1.0 - z)) <= 0.9 + 1e-12

    def test_same_seed_reproduces_points(self):
        r1 = build_registry(321)
        r2 = build_registry(321)
        for ident_id in EXPECTED_IDS:
            assert r1[ident_id].sample_points == r2[ident_id].sample_points

    def test_different_seed_moves_points(self):
        r1 = build_registry(DEFAULT_SEED)
        r2 = build_registry(DEFAULT_SEED + 1)
        assert any(r1[i].sample_points != r2[i].sample_points
                   for i in EXPECTED_IDS)

    def test_fixed_point_ids_ignore_seed(self):
        r2 = build_registry(DEFAULT_SEED + 1)
        for ident_id in ("EX-1", "COR-A1", "GF-K1", "THM-B", "VAL-ALG",
                         "SUM-2.8.50", "WATSON"):
            assert r2[ident_id].sample_points == REGISTRY[ident_id].sample_points


class TestLookup:
    def test_get_identity_by_id(self):
        ident = get_identity("EX-1")
        assert ident.id == "EX-1"

    def test_get_identity_passthrough(self):
        ident = REGISTRY["EX-2"]
        assert get_identity(ident) is ident

    def test_unknown_id(self):
        with pytest.raises(UnknownIdentityError):
            get_identity("THM-Z9")
        with pytest.raises(UnknownIdentityError):
            verify("nope")

    def test_custom_registry(self):
        reg = build_registry(909)
        ident = get_identity("THM-C", registry=reg)
        assert ident.sample_points == reg["THM-C"].sample_points


class TestVerifySemantics:
    def test_report_structure(self):
        report = verify("COR-A1")
        assert report.identity_id == "COR-A1"
        assert report.tol == 1e-9
        assert len(report.checks) == 9
        assert report.passed and not report.failures
        for c in report.checks:
            assert set(c.params) == {"a"}
            assert c.terms_used > 0
            assert c.method == "direct"
            assert c.rel_err is not None
            assert c.abs_err <= 1e-9 * max(1.0, abs(c.rhs))

    def test_anchor_value(self):
        got = eval_lhs("THM-A1", a=0.3 + 0.1j, b=0.2)
        assert abs(got - A1_ANCHOR) < 1e-8

    def test_eval_sides_agree(self):
        lhs = eval_lhs("EX-3")
        rhs = eval_rhs("EX-3")
        assert abs(lhs - rhs) < 1e-10

    def test_closed_form_pole_raises_cleanly(self):
        from hyperharmonic import PoleError
        with pytest.raises(PoleError):
            eval_rhs("THM-C", a=0.5, b=0.15)

    def test_mismatch_is_reported_not_raised(self):
        bad = with_perturbed_rhs("EX-1", 1e-6)
        report = verify(bad)
        assert not report.passed
        assert len(report.failures) == 1
        assert report.failures[0].abs_err > 1e-8

    def test_negligible_perturbation_passes(self):
        assert verify(with_perturbed_rhs("EX-1", 1e-13)).passed

    def test_perturbation_does_not_touch_registry(self):
        before = REGISTRY["EX-1"].rhs
        with_perturbed_rhs("EX-1", 0.5)
        assert REGISTRY["EX-1"].rhs is before

    def test_explicit_points_override(self):
        report = verify("COR-A1", points=[{"a": 0.35}, {"a": 0.65}])
        assert len(report.checks) == 2
        assert report.passed
        assert report.checks[0].params == {"a": 0.35}

    def test_tol_override_can_fail(self):
        report = verify(with_perturbed_rhs("EX-1", 1e-13), tol=1e-15)
        assert not report.passed

    @pytest.mark.parametrize("ident_id", [
        "EX-1", "EX-2", "SUM-2.8.50", "SUM-2.8.51", "TR-2.11.2",
    ])
    def test_margin_survives_tighter_tolerance(self, ident_id):
        # a genuine identity keeps passing when asked for 10x more accuracy;
        # a lucky cancellation would not
        ident = REGISTRY[ident_id]
        tight = dataclasses.replace(ident, tol=ident.tol / 10.0,
                                    max_terms=4 * ident.max_terms)
        assert verify(tight).passed


class TestStructuralChecks:
    def test_ode_residual_small_on_solution(self):
        assert ode_residual(0.3, 0.45) < 1e-5

    def test_ode_residual_homogeneous(self):
        assert ode_residual(0.25, 0.3, homogeneous=True) < 1e-5

    def test_finite_sum_termination(self):
        inst = finite_sum_instance("THM-E", 2)
        assert inst["termination_index"] == 1
        assert inst["term_count"] == 1
        assert inst["vanishing_term"] == 0.0
        assert inst["identity_holds"]
        assert abs(inst["closed_form"] - THME_B2) < 1e-12
        assert inst["residual"] <= 1e-6

    def test_finite_sum_b3(self):
        inst = finite_sum_instance("THM-E", 3)
        assert inst["termination_index"] == 2
        assert inst["term_count"] == 2
        assert inst["vanishing_term"] == 0.0
        assert inst["identity_holds"]

    def test_finite_sum_bad_args(self):
        with pytest.raises(DomainError):
            finite_sum_instance("THM-E", 1)
        with pytest.raises(DomainError):
            finite_sum_instance("THM-E", 2.5)
        with pytest.raises(UnknownIdentityError):
            finite_sum_instance("THM-D", 3)
