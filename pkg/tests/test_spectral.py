import numpy as np
import pytest

from speccap.errors import ValidationError
from speccap.spectral import (
    FlatResponse,
    GaussianAmplitude,
    GaussianPeakResponse,
    TabulatedAmplitude,
    TabulatedResponse,
    load_tabulated_amplitude,
    load_tabulated_response,
    make_gaussian_basis,
    modulated_overlap,
    survival_probability,
)

PEAK_VALUE = 0.631618777746064701  # (2 pi)^(-1/4)


def test_gaussian_amplitude_peak_value():
    amp = GaussianAmplitude(0.0, 1.0)
    assert amp.value(0.0) == pytest.approx(PEAK_VALUE, abs=1e-12)


def test_gaussian_amplitude_translated_peak():
    amp = GaussianAmplitude(3.0, 1.0)
    assert amp.value(3.0) == pytest.approx(PEAK_VALUE, abs=1e-12)


def test_gaussian_amplitude_rejects_bad_width():
    with pytest.raises(ValidationError):
        GaussianAmplitude(0.0, 0.0)


def test_tabulated_amplitude_zero_outside_grid():
    tab = TabulatedAmplitude([0.0, 1.0], [1.0, 1.0])
    assert tab.value(-0.5) == 0.0
    assert tab.value(1.5) == 0.0


def test_tabulated_amplitude_is_renormalized():
    grid = np.linspace(-6.0, 6.0, 401)
    tab = TabulatedAmplitude(grid, 7.3 * np.exp(-(grid**2) / 4.0))
    norm = survival_probability(tab, FlatResponse(1.0))
    assert norm == pytest.approx(1.0, abs=1e-8)


def test_tabulated_amplitude_interpolates_linearly():
    tab = TabulatedAmplitude([0.0, 1.0], [0.0, 1.0 + 1.0j])
    mid = tab.value(0.25)
    scale = tab.values[1]
    assert mid == pytest.approx(0.25 * scale, abs=1e-12)


@pytest.mark.parametrize(
    "grid,values",
    [
        ([0.0], [1.0]),
        ([0.0, 0.0], [1.0, 1.0]),
        ([1.0, 0.0], [1.0, 1.0]),
        ([0.0, 1.0, 2.0], [0.0, 0.0, 0.0]),
    ],
)
def test_tabulated_amplitude_validation(grid, values):
    with pytest.raises(ValidationError):
        TabulatedAmplitude(grid, values)


def test_channel_response_validation():
    with pytest.raises(ValidationError):
        FlatResponse(1.2)
    with pytest.raises(ValidationError):
        GaussianPeakResponse(-0.1, 1.0)
    with pytest.raises(ValidationError):
        GaussianPeakResponse(0.5, 0.0)
    with pytest.raises(ValidationError):
        TabulatedResponse([0.0, 1.0], [-0.2, 0.5])
    with pytest.raises(ValidationError):
        TabulatedResponse([0.0, 1.0], [0.5, 1.5])


def test_overlap_identical_through_matched_gaussian_channel():
    amp = GaussianAmplitude(0.0, 1.0)
    value = modulated_overlap(amp, amp, GaussianPeakResponse(1.0, 1.0))
    assert value.real == pytest.approx(0.707106781186547524, abs=1e-12)


def test_overlap_identical_through_transparent_channel():
    amp = GaussianAmplitude(1.7, 0.8)
    value = modulated_overlap(amp, amp, FlatResponse(1.0))
    assert value == pytest.approx(1.0, abs=1e-10)


def test_overlap_separated_gaussians_flat_channel():
    value = modulated_overlap(
        GaussianAmplitude(-1.0, 1.0), GaussianAmplitude(1.0, 1.0), FlatResponse(1.0)
    )
    assert value.real == pytest.approx(0.606530659712633424, abs=1e-12)


def test_analytic_path_matches_quadrature_on_parameter_grid():
    responses = [FlatResponse(0.3), FlatResponse(1.0)]
    responses += [
        GaussianPeakResponse(p_peak, sigma_eta)
        for sigma_eta in (0.5, 1.0, 5.0)
        for p_peak in (0.3, 1.0)
    ]
    worst = 0.0
    for d_a in range(-3, 4):
        for d_b in range(-3, 4):
            for width in (0.5, 1.0, 2.0):
                a = GaussianAmplitude(float(d_a), width)
                b = GaussianAmplitude(float(d_b), width)
                for response in responses:
                    closed = modulated_overlap(a, b, response, method="analytic")
                    quad = modulated_overlap(a, b, response, method="quadrature")
                    worst = max(worst, abs(closed - quad))
    assert worst <= 1e-10


def test_overlap_conjugate_symmetry():
    rng = np.random.default_rng(5)
    grid = np.linspace(-5.0, 5.0, 41)
    tab = TabulatedAmplitude(grid, rng.normal(size=41) + 1j * rng.normal(size=41))
    gauss = GaussianAmplitude(0.5, 1.0)
    response = GaussianPeakResponse(0.9, 2.0)
    ab = modulated_overlap(tab, gauss, response)
    ba = modulated_overlap(gauss, tab, response)
    assert ab == pytest.approx(np.conj(ba), abs=1e-12)


def test_overlap_cauchy_schwarz():
    rng = np.random.default_rng(8)
    for _ in range(10):
        a = GaussianAmplitude(rng.uniform(-2, 2), rng.uniform(0.5, 2.0))
        b = GaussianAmplitude(rng.uniform(-2, 2), rng.uniform(0.5, 2.0))
        response = GaussianPeakResponse(rng.uniform(0.2, 1.0), rng.uniform(0.5, 3.0))
        cross = abs(modulated_overlap(a, b, response)) ** 2
        bound = survival_probability(a, response) * survival_probability(b, response)
        assert cross <= bound + 1e-10


def test_overlaps_invariant_under_common_translation_flat_channel():
    response = FlatResponse(0.7)
    for shift in (0.0, 1.5, -20.0):
        a = GaussianAmplitude(-1.0 + shift, 1.0)
        b = GaussianAmplitude(1.0 + shift, 1.0)
        value = modulated_overlap(a, b, response)
        assert value.real == pytest.approx(0.49 * 0.606530659712633424, abs=1e-12)


def test_survival_probability_gaussian_channel_closed_form():
    # Displaced letter through a wider passband, peak transmission 0.9.
    q = survival_probability(GaussianAmplitude(1.0, 1.0), GaussianPeakResponse(0.9, 2.0))
    assert q == pytest.approx(0.728380071112967948, abs=1e-12)
    q_quad = survival_probability(
        GaussianAmplitude(1.0, 1.0), GaussianPeakResponse(0.9, 2.0), method="quadrature"
    )
    assert q_quad == pytest.approx(q, abs=1e-10)


def test_survival_probability_flat_channel():
    amp = GaussianAmplitude(4.2, 1.3)
    assert survival_probability(amp, FlatResponse(0.8)) == pytest.approx(0.64, abs=1e-12)
    assert survival_probability(amp, FlatResponse(0.0)) == 0.0


def test_make_gaussian_basis_symmetric_pair():
    basis = make_gaussian_basis(2, 4.0, 1.0, "symmetric")
    assert [amp.center for amp in basis] == [-2.0, 2.0]


def test_make_gaussian_basis_single_letter():
    assert [amp.center for amp in make_gaussian_basis(1, 3.0, 1.0, "symmetric")] == [0.0]
    assert [amp.center for amp in make_gaussian_basis(1, 3.0, 1.0, "zero-start")] == [0.0]


def test_make_gaussian_basis_zero_start():
    basis = make_gaussian_basis(5, 1.0, 1.0, "zero-start")
    assert [amp.center for amp in basis] == [0.0, 1.0, 2.0, 3.0, 4.0]


@pytest.mark.parametrize(
    "n,spacing,width,centering",
    [(0, 1.0, 1.0, "symmetric"), (3, -1.0, 1.0, "symmetric"), (3, 1.0, 0.0, "symmetric"), (3, 1.0, 1.0, "diagonal")],
)
def test_make_gaussian_basis_validation(n, spacing, width, centering):
    with pytest.raises(ValidationError):
        make_gaussian_basis(n, spacing, width, centering)


def test_tabulated_amplitude_file_roundtrip(tmp_path):
    path = tmp_path / "amp.csv"
    path.write_text(
        "# omega, re, im\n"
        "-2.0, 0.1, 0.0\n"
        "-1.0, 0.5, 0.25\n"
        " 0.0, 1.0, 0.0\n"
        " 1.0, 0.5, -0.25\n"
        " 2.0, 0.1, 0.0\n",
        encoding="utf-8",
    )
    amp = load_tabulated_amplitude(path)
    assert survival_probability(amp, FlatResponse(1.0)) == pytest.approx(1.0, abs=1e-8)


def test_tabulated_response_file_roundtrip(tmp_path):
    path = tmp_path / "channel.csv"
    path.write_text("-5,0.2\n0,1.0\n5,0.2\n", encoding="utf-8")
    response = load_tabulated_response(path)
    assert response.value(0.0) == 1.0
    assert response.value(10.0) == 0.0


def test_tabulated_file_parse_error_names_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1,0\n1,oops,0\n2,1,0\n", encoding="utf-8")
    with pytest.raises(ValidationError, match=r"bad\.csv:2"):
        load_tabulated_amplitude(path)


def test_tabulated_file_wrong_column_count(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1\n1,1\n", encoding="utf-8")
    with pytest.raises(ValidationError, match=r"bad\.csv:1"):
        load_tabulated_amplitude(path)


def test_tabulated_file_non_ascending_grid(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1,0\n0,1,0\n", encoding="utf-8")
    with pytest.raises(ValidationError, match="ascending"):
        load_tabulated_amplitude(path)
