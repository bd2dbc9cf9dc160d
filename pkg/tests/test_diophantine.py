"""Tests for the arithmetic layer: intervals, convergents, Ψ/Λ/Δ and lattices."""

import gc
import math
import weakref
from fractions import Fraction

import numpy as np
import pytest

from hamstab.core.config import reset_settings
from hamstab.core.diophantine import (
    RationalInterval,
    ResonanceLattice,
    build_profile,
    convergents,
    diophantine_constant,
    diophantine_profile,
    dirichlet_approximation,
    dist_to_integers,
    find_resonance,
    frequency_from_preset,
    integer_kernel_basis,
    is_nonresonant_mod_lattice,
    psi,
    rational_frequency,
)
from hamstab.core.diophantine.lattice import half_space_count, half_space_vectors
from hamstab.core.errors import (
    AmbiguousBracket,
    BudgetExceeded,
    OutOfRange,
    PrecisionExhausted,
    ResonanceDetected,
)


class TestRationalInterval:
    def test_arithmetic_keeps_exact_endpoints(self):
        x = RationalInterval(Fraction(1, 3), Fraction(1, 2))
        y = x * -2 + 1
        assert y.lo == Fraction(0) and y.hi == Fraction(1, 3)

    def test_interval_product_covers_sign_changes(self):
        x = RationalInterval(-1, 2)
        assert (x * x).as_floats() == (-2.0, 4.0)

    def test_reciprocal_of_interval_containing_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            RationalInterval(-1, 1).reciprocal()

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            RationalInterval(1, 0)


class TestDistToIntegers:
    @pytest.mark.parametrize(
        "x,expected",
        [(Fraction(1, 2), Fraction(1, 2)), (Fraction(3), Fraction(0)), (Fraction(-1, 4), Fraction(1, 4))],
    )
    def test_point_values(self, x, expected):
        d = dist_to_integers(RationalInterval.point(x))
        assert (d.lo, d.hi) == (expected, expected)

    def test_interval_inside_unit_cell(self):
        d = dist_to_integers(RationalInterval(Fraction(3, 10), Fraction(4, 10)))
        assert (d.lo, d.hi) == (Fraction(3, 10), Fraction(4, 10))

    def test_interval_around_an_integer(self):
        d = dist_to_integers(RationalInterval(Fraction(9, 10), Fraction(11, 10)))
        assert (d.lo, d.hi) == (0, Fraction(1, 10))

    def test_interval_straddling_half_integer(self):
        d = dist_to_integers(RationalInterval(Fraction(45, 100), Fraction(55, 100)))
        assert (d.lo, d.hi) == (Fraction(45, 100), Fraction(1, 2))

    def test_wide_interval_is_ambiguous(self):
        with pytest.raises(AmbiguousBracket):
            dist_to_integers(RationalInterval(0, Fraction(1, 2)))


class TestFrequencyPresets:
    def test_surd_bracket_contains_value(self, sqrt2m1):
        box = sqrt2m1.components[0].bracket(80)
        assert abs(float(box.midpoint) - (math.sqrt(2) - 1)) < 1e-15

    def test_brackets_cached_per_instance(self):
        surd = frequency_from_preset("golden").components[0]
        assert surd.bracket(96) is surd.bracket(96)
        ref = weakref.ref(surd)
        del surd
        gc.collect()
        assert ref() is None

    def test_liouville_bracket(self):
        freq = frequency_from_preset("liouville(10)")
        box = freq.components[0].bracket(64)
        assert abs(float(box.midpoint) - 0.110001) < 1e-12

    def test_comma_list_builds_higher_dimension(self):
        freq = frequency_from_preset("sqrt2m1,golden")
        assert freq.dim == 3
        assert np.allclose(freq.omega(), [1.0, math.sqrt(2) - 1, (math.sqrt(5) - 1) / 2])

    def test_rational_preset_is_exact(self):
        freq = frequency_from_preset("rational:1/2")
        assert freq.is_exact
        assert freq.exact_vector() == (Fraction(1), Fraction(1, 2))

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            frequency_from_preset("pi")


class TestConvergents:
    def test_sqrt2m1_denominators(self, sqrt2m1):
        convs = convergents(sqrt2m1, 0, 8)
        assert [c.q for c in convs] == [1, 2, 5, 12, 29, 70, 169, 408]
        assert [c.p for c in convs] == [0, 1, 2, 5, 12, 29, 70, 169]

    def test_error_brackets_between_consecutive_denominators(self, sqrt2m1):
        convs = convergents(sqrt2m1, 0, 9)
        for current, following in zip(convs, convs[1:]):
            assert current.err.lo >= Fraction(1, current.q + following.q)
            assert current.err.hi <= Fraction(1, following.q)

    def test_golden_drops_duplicate_leading_denominator(self, golden):
        assert [c.q for c in convergents(golden, 0, 5)] == [1, 2, 3, 5, 8]

    def test_rational_expansion_terminates(self):
        convs = convergents(rational_frequency("3/8"), 0, 10)
        assert convs[-1].value == Fraction(3, 8)
        assert convs[-1].err.is_exact and convs[-1].err.lo == 0

    def test_refinement_budget_exhausted(self, sqrt2m1, monkeypatch):
        monkeypatch.setenv("HAMSTAB_REFINEMENT_BITS", "64")
        reset_settings()
        with pytest.raises(PrecisionExhausted):
            convergents(sqrt2m1, 0, 400)

    def test_dirichlet_approximation(self, sqrt2m1):
        best = dirichlet_approximation(sqrt2m1, 6)
        assert (best.p, best.q) == (2, 5)
        assert best.err.hi <= Fraction(1, 6)

    def test_dirichlet_requires_two_frequencies(self):
        with pytest.raises(ValueError):
            dirichlet_approximation(frequency_from_preset("sqrt2m1,golden"), 10)


class TestProfile:
    def test_psi_values_sqrt2m1(self, sqrt2m1):
        assert float(psi(sqrt2m1, 1).midpoint) == pytest.approx(1 / (math.sqrt(2) - 1), rel=1e-12)
        assert float(psi(sqrt2m1, 2).midpoint) == pytest.approx(1 / (3 - 2 * math.sqrt(2)), rel=1e-12)

    def test_golden_first_rows(self, golden):
        profile = build_profile(golden, 3)
        phi = (math.sqrt(5) - 1) / 2
        expected = [1 / (1 - phi), 1 / (2 * phi - 1), 1 / (2 - 3 * phi)]
        got = [float(value.midpoint) for _, value in profile.psi_table]
        assert got == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("preset", ["sqrt2m1", "golden"])
    def test_psi_matches_best_convergent(self, preset):
        freq = frequency_from_preset(preset)
        profile = build_profile(freq, 200)
        convs = convergents(freq, 0, 14)
        for K, value in profile.psi_table:
            best = max((c for c in convs if c.q <= K), key=lambda c: c.q)
            assert float(value.midpoint) == pytest.approx(1 / float(best.err.midpoint), rel=1e-12)

    @pytest.mark.parametrize("preset", ["sqrt2m1", "golden"])
    def test_psi_at_convergents_is_sandwiched(self, preset):
        freq = frequency_from_preset(preset)
        profile = build_profile(freq, 200)
        convs = convergents(freq, 0, 14)
        for current, following in zip(convs, convs[1:]):
            if current.q > 200:
                break
            value = float(profile.psi_table[current.q - 1][1].midpoint)
            assert following.q <= value <= current.q + following.q

    def test_lambda_inversion_example(self, sqrt2m1_profile):
        assert sqrt2m1_profile.lam(2) == pytest.approx(11.657, abs=1e-3)
        assert sqrt2m1_profile.delta(sqrt2m1_profile.lam(2)) == pytest.approx(2.0, rel=1e-9)

    @pytest.mark.parametrize("preset", ["sqrt2m1", "golden"])
    def test_delta_inverts_lambda(self, preset):
        profile = build_profile(frequency_from_preset(preset), 60)
        for x in np.linspace(1, 60, 100):
            assert profile.delta(profile.lam(x)) == pytest.approx(x, rel=1e-9)

    def test_delta_below_range(self, sqrt2m1_profile):
        with pytest.raises(OutOfRange):
            sqrt2m1_profile.delta(1.0)

    def test_delta_above_range(self, sqrt2m1_profile):
        with pytest.raises(OutOfRange):
            sqrt2m1_profile.delta(10 * sqrt2m1_profile.lam(200))

    def test_k_max_zero_rejected(self, sqrt2m1):
        with pytest.raises(ValueError):
            build_profile(sqrt2m1, 0)

    def test_k_max_one_allowed(self, sqrt2m1):
        profile = build_profile(sqrt2m1, 1)
        assert len(profile.rows()) == 1
        assert profile.delta(profile.lam(1)) == 1.0

    def test_exact_resonance_detected(self):
        with pytest.raises(ResonanceDetected):
            psi(rational_frequency("1/2"), 2)

    def test_profile_is_nondecreasing(self, sqrt2m1_profile):
        values = [float(v.midpoint) for _, v in sqrt2m1_profile.psi_table]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_three_frequency_profile(self):
        profile = build_profile(frequency_from_preset("sqrt2m1,golden"), 4)
        values = [float(v.midpoint) for _, v in profile.psi_table]
        assert values[0] >= 1 / (math.sqrt(2) - 1) - 1e-9
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_closed_form_profile(self):
        profile = diophantine_profile(gamma=1.0, tau=1.0)
        assert profile.lam(3.0) == 9.0
        assert profile.delta(4.0) == pytest.approx(2.0)
        with pytest.raises(OutOfRange):
            profile.delta(0.5)

    def test_diophantine_constant_of_golden(self, golden):
        gamma = diophantine_constant(build_profile(golden, 50), tau=1.0)
        phi = (math.sqrt(5) - 1) / 2
        assert 0 < gamma <= (1 - phi) * (1 + 1e-12)


class TestLattices:
    def test_find_resonance_of_half(self):
        assert find_resonance((1, Fraction(1, 2))) == (1, -2)

    def test_find_resonance_is_primitive(self):
        k = find_resonance((1, Fraction(2, 5)))
        assert k == (2, -5)
        assert math.gcd(*k) == 1

    def test_kernel_basis_spans_relations(self):
        v = (Fraction(1), Fraction(1, 3), Fraction(1, 2))
        basis = integer_kernel_basis(v)
        assert len(basis) == 2
        for k in basis:
            assert sum(Fraction(ki) * vi for ki, vi in zip(k, v)) == 0

    def test_half_space_enumeration_count(self):
        assert len(list(half_space_vectors(2, 3))) == half_space_count(2, 3) == 24

    def test_lattice_membership(self):
        lattice = ResonanceLattice.kernel_of((1, Fraction(2, 5)))
        assert lattice.contains((2, -5)) and lattice.contains((-4, 10))
        assert not lattice.contains((1, 0))
        mask = lattice.contains_many(np.array([[2, -5], [1, 1], [0, 0]]))
        assert mask.tolist() == [True, False, True]

    def test_nonresonance_witness(self, sqrt2m1):
        w = sqrt2m1.omega()
        trivial = ResonanceLattice.trivial(2)
        assert is_nonresonant_mod_lattice(w, trivial, 0.1, 2).ok
        check = is_nonresonant_mod_lattice(w, trivial, 0.2, 2)
        assert not check.ok
        assert check.witness == (1, -2)
        assert check.min_divisor == pytest.approx(3 - 2 * math.sqrt(2))

    def test_lattice_dimension_must_match(self):
        with pytest.raises(ValueError):
            is_nonresonant_mod_lattice([1.0, 0.5, 0.25], ResonanceLattice.trivial(2), 0.1, 2)

    def test_nonresonance_modulo_kernel_is_exact(self):
        w = (Fraction(1), Fraction(1, 2))
        check = is_nonresonant_mod_lattice(w, ResonanceLattice.kernel_of(w), 0.5, 3)
        assert check.ok and check.min_divisor == 0.5

    def test_enumeration_budget(self, sqrt2m1):
        with pytest.raises(BudgetExceeded):
            is_nonresonant_mod_lattice(sqrt2m1.omega(), ResonanceLattice.trivial(2), 0.1, 10, budget=10)

    @pytest.mark.slow
    def test_resonant_modes_of_rational_direction_are_long(self):
        for q in range(2, 21):
            bound = 10 * q
            axis = np.arange(-bound, bound + 1)
            grid = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1).reshape(-1, 2)
            grid = grid[grid.any(axis=1)]
            for p in range(1, q):
                if math.gcd(p, q) != 1:
                    continue
                lattice = ResonanceLattice.kernel_of((1, Fraction(p, q)))
                members = grid[lattice.contains_many(grid)]
                assert np.abs(members).max(axis=1).min() >= q
