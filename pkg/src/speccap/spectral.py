"""Spectral amplitudes, channel responses, and their overlap integrals.

Frequencies are dimensionless offsets from a carrier; amplitudes are
unit-normalized (``integral |psi|^2 = 1``) and channels are amplitude
transmissions in [0, 1].  Overlaps of Gaussian amplitudes through flat or
Gaussian-passband channels have closed forms; everything else falls back to
adaptive quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .numerics import DEFAULT_QUADRATURE, integrate


@dataclass(frozen=True)
class GaussianAmplitude:
    """Real Gaussian amplitude: peak at ``center``, intensity std ``width``."""

    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValidationError("amplitude width must be positive")

    def value(self, omega):
        norm = (2.0 * math.pi * self.width**2) ** -0.25
        return norm * np.exp(-((omega - self.center) ** 2) / (4.0 * self.width**2))

    def _extent(self):
        return self.center, self.width, False


@dataclass(frozen=True)
class TabulatedAmplitude:
    """Complex amplitude sampled on an ascending grid, zero outside it.

    Linear interpolation between samples; renormalized at construction so
    the interpolant carries unit probability.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        values = np.array(self.values, dtype=complex)
        if grid.ndim != 1 or grid.size < 2:
            raise ValidationError("tabulated grid needs at least 2 points")
        if values.shape != grid.shape:
            raise ValidationError("grid and values must have equal length")
        if not np.all(np.diff(grid) > 0):
            raise ValidationError("tabulated grid must be strictly ascending")
        norm_sq = _interp_norm_squared(grid, values)
        if norm_sq <= 0.0:
            raise ValidationError("tabulated amplitude is identically zero")
        values = values / math.sqrt(norm_sq)
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def value(self, omega):
        re = np.interp(omega, self.grid, self.values.real, left=0.0, right=0.0)
        im = np.interp(omega, self.grid, self.values.imag, left=0.0, right=0.0)
        return re + 1j * im

    def _extent(self):
        lo, hi = float(self.grid[0]), float(self.grid[-1])
        return 0.5 * (lo + hi), 0.5 * (hi - lo), True


def _interp_norm_squared(grid, values):
    """Exact integral of |linear interpolant|^2 (quadratic per segment)."""
    steps = np.diff(grid)
    left = values[:-1]
    delta = np.diff(values)
    seg = np.abs(left) ** 2 + np.real(np.conj(left) * delta) + np.abs(delta) ** 2 / 3.0
    return float(np.sum(steps * seg))


@dataclass(frozen=True)
class FlatResponse:
    """Frequency-independent amplitude transmission."""

    transmission: float

    def __post_init__(self):
        if not 0.0 <= self.transmission <= 1.0:
            raise ValidationError("flat transmission must lie in [0, 1]")

    def value(self, omega):
        return self.transmission + 0.0 * np.asarray(omega, dtype=float)

    def _extent(self):
        return None


@dataclass(frozen=True)
class GaussianPeakResponse:
    """Gaussian passband centred at zero with peak transmission probability."""

    peak_probability: float
    width: float

    def __post_init__(self):
        if not 0.0 <= self.peak_probability <= 1.0:
            raise ValidationError("peak transmission probability must lie in [0, 1]")
        if not self.width > 0:
            raise ValidationError("channel width must be positive")

    def value(self, omega):
        omega = np.asarray(omega, dtype=float)
        return math.sqrt(self.peak_probability) * np.exp(
            -(omega**2) / (4.0 * self.width**2)
        )

    def _extent(self):
        return 0.0, self.width, False


@dataclass(frozen=True)
class TabulatedResponse:
    """Amplitude transmission sampled on an ascending grid, zero outside."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        values = np.array(self.values, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise ValidationError("tabulated grid needs at least 2 points")
        if values.shape != grid.shape:
            raise ValidationError("grid and values must have equal length")
        if not np.all(np.diff(grid) > 0):
            raise ValidationError("tabulated grid must be strictly ascending")
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ValidationError("channel transmission values must lie in [0, 1]")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def value(self, omega):
        return np.interp(omega, self.grid, self.values, left=0.0, right=0.0)

    def _extent(self):
        lo, hi = float(self.grid[0]), float(self.grid[-1])
        return 0.5 * (lo + hi), 0.5 * (hi - lo), True


def _integration_window(parts, truncation_sigmas):
    """Enclosing (center, width) so that center +- sigmas*width covers all parts."""
    centers = []
    widths = []
    for part in parts:
        extent = part._extent()
        if extent is None:
            continue
        center, width, _hard = extent
        centers.append(center)
        widths.append(width)
    lo = min(centers) - truncation_sigmas * max(widths)
    hi = max(centers) + truncation_sigmas * max(widths)
    return 0.5 * (lo + hi), (hi - lo) / (2.0 * truncation_sigmas)


def _gaussian_pair_overlap(amp_a, amp_b, response):
    """Closed form for integral eta^2 psi_a* psi_b over Gaussian inputs.

    The integrand is C * exp(-(A w^2 - 2 B w + D)); completing the square
    gives C * sqrt(pi/A) * exp(B^2/A - D).
    """
    sa, sb = amp_a.width, amp_b.width
    da, db = amp_a.center, amp_b.center
    quad_a = 1.0 / (4.0 * sa**2) + 1.0 / (4.0 * sb**2)
    lin_b = da / (4.0 * sa**2) + db / (4.0 * sb**2)
    const_d = da**2 / (4.0 * sa**2) + db**2 / (4.0 * sb**2)
    if isinstance(response, FlatResponse):
        power = response.transmission**2
    else:
        power = response.peak_probability
        quad_a += 1.0 / (2.0 * response.width**2)
    norm = (2.0 * math.pi) ** -0.5 * (sa * sb) ** -0.5
    return complex(power * norm * math.sqrt(math.pi / quad_a) * math.exp(lin_b**2 / quad_a - const_d))


def modulated_overlap(amp_a, amp_b, response, spec=DEFAULT_QUADRATURE, method="auto"):
    """Inner product of two channel-modulated amplitudes.

    Computes ``integral eta(w)^2 conj(psi_a(w)) psi_b(w) dw``.  With
    ``method="auto"`` the Gaussian closed form is used whenever both
    amplitudes are Gaussian and the channel is flat or a Gaussian peak;
    ``"analytic"`` and ``"quadrature"`` force one route (mainly for
    cross-validation).
    """
    analytic_ok = (
        isinstance(amp_a, GaussianAmplitude)
        and isinstance(amp_b, GaussianAmplitude)
        and isinstance(response, (FlatResponse, GaussianPeakResponse))
    )
    if method not in ("auto", "analytic", "quadrature"):
        raise ValidationError(f"unknown overlap method {method!r}")
    if method == "analytic" and not analytic_ok:
        raise ValidationError("analytic overlap requires Gaussian amplitudes and a flat or Gaussian channel")
    if analytic_ok and method != "quadrature":
        return _gaussian_pair_overlap(amp_a, amp_b, response)

    def integrand(omega):
        eta = response.value(omega)
        return eta * eta * np.conj(amp_a.value(omega)) * amp_b.value(omega)

    parts = (amp_a, amp_b, response)
    center, width = _integration_window(parts, spec.truncation_sigmas)
    sigmas = spec.truncation_sigmas
    lo, hi = center - sigmas * width, center + sigmas * width
    # Tabulated factors kink the integrand at every grid point; integrating
    # span by span keeps each piece smooth for the Gauss-Legendre panels.
    kinks = sorted(
        {
            float(point)
            for part in parts
            if isinstance(part, (TabulatedAmplitude, TabulatedResponse))
            for point in part.grid
            if lo < point < hi
        }
    )
    if not kinks:
        return integrate(integrand, center, width, spec)
    total = 0.0 + 0.0j
    edges = [lo, *kinks, hi]
    for left, right in zip(edges, edges[1:]):
        if right > left:
            total += integrate(integrand, 0.5 * (left + right), (right - left) / (2.0 * sigmas), spec)
    return total


def survival_probability(amp, response, spec=DEFAULT_QUADRATURE, method="auto"):
    """Probability that the photon is transmitted rather than absorbed."""
    q = modulated_overlap(amp, amp, response, spec=spec, method=method).real
    if q < -1e-10 or q > 1.0 + 1e-10:
        raise ValidationError(f"survival probability {q!r} outside [0, 1]")
    return min(max(q, 0.0), 1.0)


def make_gaussian_basis(n, spacing, width, centering="symmetric"):
    """Equally spaced identical Gaussian letters.

    ``zero-start`` puts the first letter at 0; ``symmetric`` shifts the comb
    so its mean sits at 0 (two letters end up at -spacing/2, +spacing/2).
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValidationError("letter count must be a positive integer")
    if spacing < 0:
        raise ValidationError("letter spacing must be non-negative")
    if not width > 0:
        raise ValidationError("letter width must be positive")
    if centering == "zero-start":
        offset = 0.0
    elif centering == "symmetric":
        offset = -0.5 * (n - 1) * spacing
    else:
        raise ValidationError(f"unknown centering {centering!r}")
    return [GaussianAmplitude(offset + j * spacing, width) for j in range(n)]


def _parse_table(path, columns):
    rows = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [field.strip() for field in line.split(",")]
            if len(fields) != columns:
                raise ValidationError(
                    f"{path}:{lineno}: expected {columns} comma-separated values, got {len(fields)}"
                )
            try:
                rows.append([float(field) for field in fields])
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from None
    if len(rows) < 2:
        raise ValidationError(f"{path}: needs at least 2 data rows")
    return np.array(rows, dtype=float)


def load_tabulated_amplitude(path):
    """Read ``omega,re,im`` lines (``#`` comments allowed) into an amplitude."""
    table = _parse_table(path, 3)
    try:
        return TabulatedAmplitude(table[:, 0], table[:, 1] + 1j * table[:, 2])
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def load_tabulated_response(path):
    """Read ``omega,eta`` lines (``#`` comments allowed) into a channel response."""
    table = _parse_table(path, 2)
    try:
        return TabulatedResponse(table[:, 0], table[:, 1])
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None
