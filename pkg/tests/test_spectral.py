"""
Tests for the Fourier calculus on the torus
"""
import numpy as np
import pytest

from src.errors import GridMismatchError, MeanNotZeroError
from src.spectral.grid import (
    Grid,
    RealField,
    SpectralField,
    analyze,
    coarsen,
    field_from_function,
    refine,
    synthesize,
    to_physical,
    to_spectral,
)
from src.spectral.io import field_from_bytes, field_from_json, field_to_bytes, field_to_json
from src.spectral.norms import inner_product, lebesgue_norm, sobolev_norm, sobolev_norms
from src.spectral.operators import (
    ProjectionKind,
    antiderivative,
    derivative,
    fractional,
    free_evolve,
    hilbert,
    pad_product,
    project,
)


def cos_field(grid, N, amplitude=1.0):
    return field_from_function(grid, lambda x: amplitude * np.cos(N * x))


class TestGrid:
    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            Grid(lam=1.0, n_modes=48)

    def test_rejects_small_lambda(self):
        with pytest.raises(ValueError):
            Grid(lam=0.5, n_modes=64)

    def test_frequencies_scale_with_lambda(self, wide_grid):
        assert wide_grid.period == pytest.approx(4 * np.pi)
        assert wide_grid.xi[1] == pytest.approx(0.5)
        assert wide_grid.measure == pytest.approx(1 / (4 * np.pi))

    def test_mismatched_grids(self, grid, wide_grid):
        a = to_spectral(cos_field(grid, 1))
        b = to_spectral(cos_field(wide_grid, 1))
        with pytest.raises(GridMismatchError):
            a + b


class TestTransform:
    @pytest.mark.parametrize("N", [1, 3, 17])
    def test_cosine_coefficients(self, grid, N):
        coeffs = to_spectral(cos_field(grid, N)).coeffs
        expected = np.zeros(grid.n_modes, dtype=complex)
        expected[N] = expected[-N] = np.pi
        np.testing.assert_allclose(coeffs, expected, atol=1e-12)

    def test_constant(self, grid):
        g = to_spectral(RealField(grid, np.ones(grid.n_modes)))
        assert g.coeffs[0] == pytest.approx(2 * np.pi)
        assert not g.is_mean_zero

    def test_round_trip(self, random_fields):
        for f in random_fields(5, band=20):
            back = to_physical(to_spectral(f))
            np.testing.assert_allclose(back.samples, f.samples, rtol=0, atol=1e-12 * np.max(np.abs(f.samples)))

    def test_parseval(self, random_fields):
        for f in random_fields(5):
            g = to_spectral(f)
            assert lebesgue_norm(f, 2) ** 2 == pytest.approx(sobolev_norm(g, 0.0) ** 2, rel=1e-12)

    def test_real_symmetry(self, random_fields, grid):
        g = to_spectral(random_fields(1)[0])
        mirrored = np.conj(g.coeffs[(-grid.wavenumbers) % grid.n_modes])
        np.testing.assert_allclose(g.coeffs, mirrored, atol=1e-12)

    def test_nyquist_zeroed(self, grid):
        coeffs = np.ones(grid.n_modes, dtype=complex)
        assert SpectralField(grid, coeffs).coeffs[grid.nyquist_index] == 0

    def test_refine_interpolates(self, grid, wide_grid):
        for g in (grid, wide_grid):
            fine = refine(g, to_spectral(cos_field(g, 3)).coeffs, 4 * g.n_modes)
            x = g.period * np.arange(4 * g.n_modes) / (4 * g.n_modes)
            np.testing.assert_allclose(fine.real, np.cos(3 * x), atol=1e-12)
            assert np.max(np.abs(fine.imag)) <= 1e-12

    def test_coarsen_inverts_refine(self, random_fields, grid):
        coeffs = np.stack([to_spectral(f).coeffs for f in random_fields(3, band=20)])
        np.testing.assert_allclose(coarsen(grid, refine(grid, coeffs, 3 * grid.n_modes)), coeffs, atol=1e-12)

    def test_complex_field_refuses_real_samples(self, grid):
        g = analyze(grid, np.exp(1j * grid.x))
        with pytest.raises(ValueError):
            to_physical(g)


class TestProjections:
    def test_plus_of_two_cosine(self, grid):
        g = project(to_spectral(cos_field(grid, 1, 2.0)), ProjectionKind.PLUS)
        np.testing.assert_allclose(synthesize(g), np.exp(1j * grid.x), atol=1e-12)

    def test_zero_of_cosine(self, grid):
        g = project(to_spectral(cos_field(grid, 5)), "zero")
        assert np.max(np.abs(g.coeffs)) < 1e-12

    def test_q1_is_strict(self, grid):
        f = field_from_function(grid, lambda x: np.cos(x) + np.cos(2 * x))
        g = project(to_spectral(f), ProjectionKind.GT_A, 1.0)
        np.testing.assert_allclose(to_physical(g).samples, np.cos(2 * grid.x), atol=1e-12)

    def test_le_a_keeps_the_tie(self, grid):
        f = field_from_function(grid, lambda x: np.cos(x) + np.cos(2 * x))
        g = project(to_spectral(f), ProjectionKind.LE_A, 1.0)
        np.testing.assert_allclose(to_physical(g).samples, np.cos(grid.x), atol=1e-12)

    def test_algebra(self, random_fields):
        g = to_spectral(random_fields(1)[0])
        plus, minus, zero = (project(g, k) for k in ("plus", "minus", "zero"))
        np.testing.assert_allclose((plus + minus + zero).coeffs, g.coeffs, atol=1e-12)
        np.testing.assert_allclose(project(plus, "plus").coeffs, plus.coeffs)
        assert np.max(np.abs(project(plus, "minus").coeffs)) == 0

    def test_conjugate_swaps_halves(self, random_fields):
        g = to_spectral(random_fields(1)[0])
        np.testing.assert_allclose(
            project(g, "plus").conj().coeffs, project(g.conj(), "minus").coeffs, atol=1e-12
        )

    def test_negative_threshold(self, grid):
        with pytest.raises(ValueError):
            project(to_spectral(cos_field(grid, 1)), ProjectionKind.GT_A, -1.0)


class TestMultipliers:
    @pytest.mark.parametrize("N", [1, 4])
    def test_hilbert_of_cosine(self, grid, N):
        h = to_physical(hilbert(to_spectral(cos_field(grid, N))))
        np.testing.assert_allclose(h.samples, np.sin(N * grid.x), atol=1e-12)

    def test_hilbert_squared(self, random_fields):
        g = to_spectral(random_fields(1)[0])
        np.testing.assert_allclose(hilbert(hilbert(g)).coeffs, -g.coeffs, atol=1e-12)

    def test_hilbert_kills_constant(self, grid):
        g = to_spectral(RealField(grid, np.full(grid.n_modes, 3.0)))
        assert np.max(np.abs(hilbert(g).coeffs)) < 1e-12

    def test_hilbert_is_skew(self, random_fields):
        g = to_spectral(random_fields(1)[0])
        assert abs(inner_product(hilbert(g), g)) < 1e-10

    def test_hilbert_commutes(self, random_fields):
        g = to_spectral(random_fields(1)[0])
        np.testing.assert_allclose(
            hilbert(free_evolve(derivative(g), 0.3)).coeffs,
            derivative(free_evolve(hilbert(g), 0.3)).coeffs,
            atol=1e-10,
        )

    def test_antiderivative(self, grid):
        g = antiderivative(to_spectral(cos_field(grid, 3)))
        np.testing.assert_allclose(to_physical(g).samples, np.sin(3 * grid.x) / 3, atol=1e-12)
        s = antiderivative(to_spectral(field_from_function(grid, np.sin)))
        np.testing.assert_allclose(to_physical(s).samples, -np.cos(grid.x), atol=1e-12)

    def test_antiderivative_inverts_derivative(self, random_fields):
        g = to_spectral(random_fields(1)[0])
        np.testing.assert_allclose(derivative(antiderivative(g)).coeffs, g.coeffs, atol=1e-10)

    def test_antiderivative_needs_zero_mean(self, grid):
        f = field_from_function(grid, lambda x: 0.1 + np.cos(x))
        with pytest.raises(MeanNotZeroError):
            antiderivative(to_spectral(f))

    def test_jx(self, grid):
        g = analyze(grid, np.exp(5j * grid.x))
        out = fractional(g, "Jx", 1.5)
        np.testing.assert_allclose(out.coeffs, (1 + 25) ** 0.75 * g.coeffs, atol=1e-10)
        np.testing.assert_allclose(fractional(g, "Jx", 0.0).coeffs, g.coeffs)

    def test_dx_half(self, grid):
        out = to_physical(fractional(to_spectral(cos_field(grid, 4)), "Dx", 0.5))
        np.testing.assert_allclose(out.samples, 2.0 * np.cos(4 * grid.x), atol=1e-12)

    def test_dx_negative_needs_zero_mean(self, grid):
        f = field_from_function(grid, lambda x: 1.0 + np.cos(x))
        with pytest.raises(MeanNotZeroError):
            fractional(to_spectral(f), "Dx", -0.5)


class TestNorms:
    @pytest.mark.parametrize("N", [1, 2, 7])
    @pytest.mark.parametrize("s", [0.0, 0.5, -1.0])
    def test_cosine(self, grid, N, s):
        g = to_spectral(cos_field(grid, N))
        assert sobolev_norm(g, s) == pytest.approx(np.sqrt(np.pi) * (1 + N ** 2) ** (s / 2), rel=1e-12)

    def test_zero(self, grid):
        assert sobolev_norm(SpectralField(grid, np.zeros(grid.n_modes)), 1.0) == 0.0

    def test_lebesgue_cosine(self, grid):
        assert lebesgue_norm(cos_field(grid, 3), 2) == pytest.approx(np.sqrt(np.pi), rel=1e-12)
        assert lebesgue_norm(cos_field(grid, 3), np.inf) == pytest.approx(1.0)

    def test_lebesgue_rejects_q(self, grid):
        with pytest.raises(ValueError):
            lebesgue_norm(cos_field(grid, 1), 3)

    def test_rows(self, random_fields, grid):
        fields = [to_spectral(f) for f in random_fields(3)]
        stacked = np.stack([g.coeffs for g in fields])
        expected = [sobolev_norm(g, 0.5) for g in fields]
        np.testing.assert_allclose(sobolev_norms(grid, stacked, 0.5), expected, rtol=1e-12)


class TestFreeGroup:
    def test_cosine(self, grid):
        out = to_physical(free_evolve(to_spectral(cos_field(grid, 3)), 0.7))
        np.testing.assert_allclose(out.samples, np.cos(3 * grid.x - 9 * 0.7), atol=1e-12)

    def test_exponential(self, grid):
        out = free_evolve(analyze(grid, np.exp(2j * grid.x)), 0.25)
        np.testing.assert_allclose(synthesize(out), np.exp(1j * (2 * grid.x - 4 * 0.25)), atol=1e-12)

    @pytest.mark.parametrize("t, s", [(0.3, 1.1), (-2.0, 5.5), (10.0, -10.0)])
    def test_group_law_and_unitarity(self, random_fields, t, s):
        g = to_spectral(random_fields(1)[0])
        np.testing.assert_allclose(
            free_evolve(free_evolve(g, t), s).coeffs, free_evolve(g, t + s).coeffs, atol=1e-10
        )
        assert sobolev_norm(free_evolve(g, t), 0) == pytest.approx(sobolev_norm(g, 0), rel=1e-12)

    def test_commutes_with_projections(self, random_fields):
        g = to_spectral(random_fields(1)[0])
        np.testing.assert_allclose(
            project(free_evolve(g, 0.4), "plus").coeffs,
            free_evolve(project(g, "plus"), 0.4).coeffs,
            atol=1e-12,
        )


class TestPaddedProduct:
    def test_trig_product(self, grid):
        a = to_spectral(cos_field(grid, 1))
        b = to_spectral(cos_field(grid, 2))
        out = to_physical(pad_product(a, b))
        np.testing.assert_allclose(out.samples, 0.5 * (np.cos(grid.x) + np.cos(3 * grid.x)), atol=1e-12)

    def test_matches_pointwise_for_resolved_band(self, random_fields, grid):
        f, h = random_fields(2, band=10)
        out = to_physical(pad_product(to_spectral(f), to_spectral(h)))
        np.testing.assert_allclose(out.samples, f.samples * h.samples, atol=1e-10)


class TestSerialization:
    def test_json_and_binary(self, wide_grid, rng):
        from src.spectral.grid import random_band_limited

        f = random_band_limited(wide_grid, 12, rng)
        g = to_spectral(f)
        np.testing.assert_array_equal(field_from_json(field_to_json(f)).samples, f.samples)
        np.testing.assert_array_equal(field_from_bytes(field_to_bytes(g)).coeffs, g.coeffs)
        assert field_from_bytes(field_to_bytes(f)).grid == wide_grid

    def test_binary_keeps_real_flag(self, grid, random_fields):
        g = to_spectral(random_fields(1)[0])
        assert field_from_bytes(field_to_bytes(g)).real
        h = analyze(grid, np.exp(1j * grid.x))
        assert not field_from_bytes(field_to_bytes(h)).real

    def test_unknown_kind(self, grid):
        blob = bytearray(field_to_bytes(to_spectral(cos_field(grid, 1))))
        blob[16] = 9
        with pytest.raises(ValueError):
            field_from_bytes(bytes(blob))

    def test_bad_magic(self, grid):
        blob = bytearray(field_to_bytes(cos_field(grid, 1)))
        blob[:4] = b"XXXX"
        with pytest.raises(ValueError):
            field_from_bytes(bytes(blob))
