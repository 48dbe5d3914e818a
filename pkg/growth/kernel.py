"""
Correlation kernel of the growth process and its correlation functions

eval_K supports three evaluation kinds:

    residue             default; the u-integral is done exactly by residues
                        at u = x and u = 1, leaving a Jacobi coefficient of an
                        explicit analytic function, computed in mpmath with a
                        precision chosen from a majorant of the integrand
    joukowski-ellipse   double integral: Gauss-Legendre in x = cos(theta),
                        trapezoid on the ellipse u = (R e^{i phi} + e^{-i phi}/R)/2
    circle-coordinates  the same double integral with x = (z + 1/z)/2 on the
                        unit circle and u = (v + 1/v)/2 on |v| = R

The contour kinds work in double precision and are meant for small levels.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import ceil, e, log, log10, sqrt
from typing import List, Sequence, Tuple

import mpmath
import numpy as np

from config.settings import CONTOUR_RADIUS, IMAG_TOLERANCE, KERNEL_METHOD, U_NODES, X_NODES
from growth.characters import CharacterParams, log_E_complex
from growth.chebyshev_jacobi import (
    MINUS_HALF, PLUS_HALF, eval_J_complex, eval_J_table, normalization_W,
    taylor_at_one, theta_rule, theta_weight,
)
from growth.errors import ContourError, DomainError, DuplicatePointError
from growth.paths import LevelIndex, iota, iota_inverse

logger = logging.getLogger(__name__)

KINDS = ('residue', 'joukowski-ellipse', 'circle-coordinates')

# Below |x - 1| < _NEAR_ONE the strictly-below branch is summed as a series
_NEAR_ONE = 0.5
_GUARD_DIGITS = 25


@dataclass(frozen=True)
class KernelPoint:
    level: LevelIndex
    s: int

    def __post_init__(self):
        if int(self.s) != self.s or self.s < 0:
            raise DomainError(f"s must be a nonnegative integer, got {self.s}")
        object.__setattr__(self, 's', int(self.s))

    @classmethod
    def of(cls, n: int, a, s: int) -> 'KernelPoint':
        return cls(LevelIndex(n, a), s)

    @classmethod
    def from_particle(cls, y: int, m: int) -> 'KernelPoint':
        s, level = iota_inverse(y, m)
        return cls(level, s)

    @property
    def n(self) -> int:
        return self.level.n

    @property
    def a(self) -> float:
        return self.level.a

    def to_particle(self) -> Tuple[int, int]:
        return iota(self.s, self.level)

    def __str__(self) -> str:
        return f"({self.n},{'+' if self.a > 0 else '-'}1/2,{self.s})"


@dataclass(frozen=True)
class ContourSpec:
    kind: str = KERNEL_METHOD
    radius: float = CONTOUR_RADIUS
    u_nodes: int = U_NODES
    x_nodes: int = X_NODES

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown kernel kind {self.kind!r}, expected one of {KINDS}")
        if not self.radius > 1.0:
            raise DomainError(f"contour radius must exceed 1, got {self.radius}")
        if self.u_nodes < 8 or self.x_nodes < 8:
            raise DomainError("contour resolutions must be at least 8 nodes")

    def validate_for(self, omega: CharacterParams) -> None:
        """Reject characters whose E vanishes inside the u-contour."""
        omega.require_kernel_admissible()
        if self.kind == 'residue':
            return
        semi_axis = (self.radius + 1.0 / self.radius) / 2.0
        for zero in omega.zeros_of_E():
            if abs(zero) <= semi_axis:
                raise ContourError(
                    f"zero {zero:.6g} of E lies inside the contour of radius {self.radius}")


DEFAULT_CONTOUR = ContourSpec()


def at_or_above(p1: KernelPoint, p2: KernelPoint) -> bool:
    """True when level(p1) is at or above level(p2) in the level order."""
    return p1.level.key >= p2.level.key


# ==================== RESIDUE EVALUATION ====================

def _inverse_E_series(omega: CharacterParams, order: int, majorant: bool) -> List:
    """Taylor coefficients of 1/E in y = x - 1 (or of its positive majorant)."""
    gamma = mpmath.mpf(omega.gamma)
    sign = 1 if majorant else -1
    series = [mpmath.mpf(1)]
    for i in range(1, order + 1):
        series.append(series[-1] * sign * gamma / i)
    for c in omega.c_coefficients:
        c = mpmath.mpf(c)
        for i in range(order, 0, -1):
            series[i] = series[i] + (c if majorant else -c) * series[i - 1]
    for b in omega.b_coefficients:
        b = mpmath.mpf(b)
        for i in range(1, order + 1):
            series[i] = series[i] + (b if majorant else -b) * series[i - 1]
    return series


def _convolve(left: Sequence, right: Sequence, order: int) -> List:
    out = []
    for j in range(order + 1):
        total = mpmath.mpf(0)
        for k in range(max(0, j - len(right) + 1), min(j, len(left) - 1) + 1):
            total += left[k] * right[j - k]
        out.append(total)
    return out


def _E_fourier_width(omega: CharacterParams, digits: float) -> int:
    """Index past which the cosine coefficients of E(cos theta) are below 10^-digits."""
    ln_target = digits * log(10.0)
    width = ceil(sqrt(2.0 * omega.gamma * ln_target)) if omega.gamma > 0 else 0
    for c in omega.c_coefficients:
        if c > 0:
            width += ceil(ln_target / np.arccosh(1.0 + 1.0 / c))
    return width + len(omega.b_coefficients) + 8


@dataclass(frozen=True)
class _Samples:
    nodes: int
    dps: int
    values: Tuple


@lru_cache(maxsize=256)
def _residue_samples(omega: CharacterParams, n1: int, a1: float, n2: int, a2: float,
                     s2: int, s1_cap: int) -> _Samples:
    """
    Values of the reduced integrand h at theta_m = 2 pi m / M, m = 0..M/2

    At or above:  h = E y^(n1-n2) P(y)
    Below:        h = y^(n1-n2) (E P(y) - J2(x)),  P = first n2 Taylor terms of J2/E
    """
    above = 2 * n1 + a1 >= 2 * n2 + a2
    d = n2 - n1
    c_exact = taylor_at_one(a2, s2)

    # |g_j| <= A_j, the coefficients of |J2| times the majorant of 1/E
    with mpmath.workdps(15):
        c_abs = [abs(mpmath.mpf(x.numerator) / x.denominator) for x in c_exact]
        A = _convolve(c_abs, _inverse_E_series(omega, n2 - 1, majorant=True), n2 - 1)
        head = sum(A[j] * mpmath.mpf(2) ** j for j in range(n2))
        magnitude = float(mpmath.log10(max(head, mpmath.mpf(1))))

    digits = magnitude + abs(n1 - n2) * log10(2.0) + _GUARD_DIGITS
    if not above:
        digits += d * log10(1.0 / _NEAR_ONE)
    dps = int(ceil(digits)) + 5

    order = n2 - 1
    if not above:
        # extend the series until its terms at |y| = _NEAR_ONE drop below 10^-digits
        order = n2 + ceil(e * omega.gamma * _NEAR_ONE) + 64
        with mpmath.workdps(15):
            threshold = mpmath.mpf(10) ** (-digits)
            while True:
                A = _convolve(c_abs, _inverse_E_series(omega, order, majorant=True), order)
                last = [A[j] * mpmath.mpf(_NEAR_ONE) ** (j - d) for j in range(order - 31, order + 1)]
                if max(last) < threshold:
                    break
                order += 64
                if order > n2 + 20000:
                    raise ContourError("series for the strictly-below branch does not settle")
    band = n1 + n2 + s2 + _E_fourier_width(omega, digits)
    nodes = 2 * (s1_cap + 2 + band)
    nodes += (-nodes) % 8

    with mpmath.workdps(dps):
        c = [mpmath.mpf(x.numerator) / x.denominator for x in c_exact]
        g = _convolve(c, _inverse_E_series(omega, order, majorant=False), order)
        head_desc = list(reversed(g[:n2]))
        tail_desc = list(reversed(g[n2:])) if not above else []
        gamma = mpmath.mpf(omega.gamma)
        b_coeffs = [mpmath.mpf(b) for b in omega.b_coefficients]
        c_coeffs = [mpmath.mpf(x) for x in omega.c_coefficients]
        values = []
        for m in range(nodes // 2 + 1):
            theta = 2 * mpmath.pi * m / nodes
            y = mpmath.cos(theta) - 1
            E = mpmath.exp(gamma * y)
            for b in b_coeffs:
                E *= 1 + b * y
            for cc in c_coeffs:
                E /= 1 - cc * y
            P = mpmath.polyval(head_desc, y) if head_desc else mpmath.mpf(0)
            if above:
                h = E * y ** (n1 - n2) * P
            elif abs(y) < _NEAR_ONE:
                h = -E * y ** n1 * mpmath.polyval(tail_desc, y)
            else:
                if a2 == MINUS_HALF:
                    J2 = mpmath.cos(s2 * theta)
                else:
                    J2 = mpmath.sin((s2 + mpmath.mpf(1) / 2) * theta) / mpmath.sin(theta / 2)
                h = (E * P - J2) / y ** d
            values.append(h)
    logger.debug("residue samples n1=%d n2=%d s2=%d: %d nodes at %d digits", n1, n2, s2, nodes, dps)
    return _Samples(nodes, dps, tuple(values))


def _cosine_coefficient(samples: _Samples, s: int):
    """(1/pi) * integral over [0, pi] of h(cos theta) cos(s theta)."""
    M = samples.nodes
    values = samples.values
    with mpmath.workdps(samples.dps):
        total = values[0] + (-1) ** s * values[-1]
        for m in range(1, M // 2):
            total += 2 * values[m] * mpmath.cos(2 * mpmath.pi * s * m / M)
        return total / M


def _residue_entry(omega: CharacterParams, p1: KernelPoint, p2: KernelPoint) -> float:
    s1_cap = p1.s + 1
    s1_cap += (-s1_cap) % 16
    samples = _residue_samples(omega, p1.n, p1.a, p2.n, p2.a, p2.s, s1_cap)
    if p1.a == MINUS_HALF:
        value = normalization_W(MINUS_HALF, p1.s) * _cosine_coefficient(samples, p1.s)
    else:
        value = _cosine_coefficient(samples, p1.s) - _cosine_coefficient(samples, p1.s + 1)
    return float(value)


# ==================== CONTOUR EVALUATION ====================

def _x_rule(c: ContourSpec, a: float) -> Tuple[np.ndarray, np.ndarray]:
    """theta nodes and weights so that sum(w f(cos theta)) = integral(f weight_a dx)."""
    if c.kind == 'joukowski-ellipse':
        theta, weights = theta_rule(c.x_nodes)
        return np.asarray(theta), np.asarray(weights) * theta_weight(a, np.asarray(theta))
    # full circle, each x visited twice
    theta = 2.0 * np.pi * (np.arange(c.x_nodes) + 0.5) / c.x_nodes
    weights = np.full(c.x_nodes, np.pi / c.x_nodes)
    return theta, weights * theta_weight(a, theta)


def _contour_entry(omega: CharacterParams, p1: KernelPoint, p2: KernelPoint, c: ContourSpec) -> float:
    theta, wx = _x_rule(c, p1.a)
    x = np.cos(theta)
    J1 = eval_J_table(p1.a, p1.s, theta)[p1.s]
    log_x = log_E_complex(omega, x) + p1.n * np.log((x - 1.0).astype(complex))

    phi = 2.0 * np.pi * np.arange(c.u_nodes) / c.u_nodes
    v = c.radius * np.exp(1j * phi)
    u = (v + 1.0 / v) / 2.0
    du = 0.5j * (v - 1.0 / v) * (2.0 * np.pi / c.u_nodes)
    log_u = -log_E_complex(omega, u) - p2.n * np.log(u - 1.0)
    J2 = eval_J_complex(p2.a, p2.s, u)

    exponent = log_x[:, np.newaxis] + log_u[np.newaxis, :]
    integrand = np.exp(exponent) * (J2 * du)[np.newaxis, :] / (x[:, np.newaxis] - u[np.newaxis, :])
    double = np.sum((wx * J1)[:, np.newaxis] * integrand) / (2j * np.pi)
    value = normalization_W(p1.a, p1.s) / np.pi * double

    if at_or_above(p1, p2):
        J2x = eval_J_table(p2.a, p2.s, theta)[p2.s]
        single = np.sum(wx * J1 * J2x * (x - 1.0) ** (p1.n - p2.n))
        value += normalization_W(p1.a, p1.s) / np.pi * single

    if abs(value.imag) > IMAG_TOLERANCE * (1.0 + abs(value.real)):
        raise ContourError(
            f"kernel at {p1}, {p2} has imaginary part {value.imag:.3e} (real {value.real:.6g})")
    return float(value.real)


# ==================== PUBLIC API ====================

def eval_K(omega: CharacterParams, p1: KernelPoint, p2: KernelPoint,
           c: ContourSpec = DEFAULT_CONTOUR) -> float:
    """Correlation kernel K(p1, p2) in its natural gauge."""
    c.validate_for(omega)
    if c.kind == 'residue':
        return _residue_entry(omega, p1, p2)
    return _contour_entry(omega, p1, p2, c)


def eval_K_hole(omega: CharacterParams, p1: KernelPoint, p2: KernelPoint,
                c: ContourSpec = DEFAULT_CONTOUR) -> float:
    """Kernel of the complementary (hole) process: delta - K."""
    return (1.0 if p1 == p2 else 0.0) - eval_K(omega, p1, p2, c)


def kernel_matrix(omega: CharacterParams, points: Sequence[KernelPoint],
                  c: ContourSpec = DEFAULT_CONTOUR, hole: bool = False) -> np.ndarray:
    evaluate = eval_K_hole if hole else eval_K
    return np.array([[evaluate(omega, p, q, c) for q in points] for p in points])


def correlation(omega: CharacterParams, points: Sequence[KernelPoint],
                c: ContourSpec = DEFAULT_CONTOUR, hole: bool = False) -> float:
    """
    k-point correlation det[K(p_i, p_j)]

    With hole=True this is the probability that every point is empty.
    """
    if len(set(points)) != len(points):
        raise DuplicatePointError("correlation points must be pairwise distinct")
    if not points:
        return 1.0
    return float(np.linalg.det(kernel_matrix(omega, points, c, hole)))


def inclusion_exclusion_holes(omega: CharacterParams, window: Sequence[KernelPoint],
                              c: ContourSpec = DEFAULT_CONTOUR) -> float:
    """Probability that the window is empty, summed from particle correlations over subsets."""
    matrix = kernel_matrix(omega, window, c)
    total = 0.0
    for size in range(len(window) + 1):
        for subset in combinations(range(len(window)), size):
            block = matrix[np.ix_(subset, subset)]
            total += (-1) ** size * (np.linalg.det(block) if size else 1.0)
    return float(total)
