"""
Saddle-point asymptotics: frozen boundary, limit shape and limit kernels

Scaled coordinates (t, d, l) stand for gamma ~ tN, s ~ dN, n ~ lN. The
critical points of

    S(z) = t (z + 1/z)/2 + l log((z + 1/z)/2 - 1) - d log z

are the roots of R(z) = t + (2l + 2d - t) z + (2l - 2d - t) z^2 + t z^3, since
S'(z) = R(z) / (2 z^2 (z - 1)).
"""
import logging
from dataclasses import dataclass
from math import ceil, pi, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from growth.characters import CharacterParams
from growth.chebyshev_jacobi import (
    DEFAULT_QUADRATURE, MINUS_HALF, QuadratureSpec, eval_J_table, normalization_W, theta_weight,
)
from growth.errors import ConvergenceError, DegenerateSaddleError, DomainError
from growth.kernel import DEFAULT_CONTOUR, ContourSpec, KernelPoint, at_or_above, correlation
from growth.pearcey import PearceyPoint, symmetric_pearcey_K  # noqa: F401

logger = logging.getLogger(__name__)

LIQUID = 'liquid'
FROZEN_RIGHT = 'frozen-right'
FROZEN_LEFT = 'frozen-left'
DEGENERATE = 'degenerate'

_DEGENERATE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ScaledPoint:
    t: float
    d: float
    l: float

    def __post_init__(self):
        if not (self.t > 0 and self.d > 0 and self.l > 0):
            raise DomainError(f"t, d, l must be positive, got ({self.t}, {self.d}, {self.l})")


@dataclass(frozen=True)
class SaddleData:
    point: ScaledPoint
    roots: Tuple[complex, complex, complex]
    z0: complex
    region: str


# ==================== CUBIC AND BOUNDARY ====================

def cubic_R(t: float, d: float, l: float) -> Tuple[float, float, float, float]:
    """Coefficients of R in increasing powers of z."""
    return (t, 2 * l + 2 * d - t, 2 * l - 2 * d - t, t)


def quartic_Q(t: float, l: float, z):
    """Q_{t,l}(z); the discriminant of R in z is 16 Q_{t,l}(d)."""
    return l * (l - 2 * t) ** 3 - (2 * l * l + 10 * l * t - t * t) * z ** 2 + z ** 4


def frozen_boundary(t: float, l: float) -> Tuple[float, float]:
    """(q1, q2): the frozen boundary sits at d = l q1 and d = l q2."""
    if not (t > 0 and l > 0):
        raise DomainError(f"t and l must be positive, got ({t}, {l})")
    tau = t / l
    base = -tau * tau / 2.0 + 5.0 * tau + 1.0
    root = 0.5 * tau * tau * (1.0 + 4.0 / tau) ** 1.5
    q2 = sqrt(base + root)
    q1 = sqrt(max(base - root, 0.0)) if tau < 0.5 else 0.0
    return q1, q2


def _polish(coefficients: Tuple[float, ...], z: complex) -> complex:
    poly = np.polynomial.Polynomial(coefficients)
    derivative = poly.deriv()
    slope = derivative(z)
    return z - poly(z) / slope if slope != 0 else z


def saddle(t: float, d: float, l: float) -> SaddleData:
    """
    Roots of R, the region of (t, d, l) and the governing root z0

    Liquid: the root in the upper half-plane. Frozen-right: the largest real
    root. Frozen-left: the smallest real root.
    """
    point = ScaledPoint(t, d, l)
    coefficients = cubic_R(t, d, l)
    roots = tuple(_polish(coefficients, complex(z)) for z in np.roots(coefficients[::-1]))

    terms = (abs(l * (l - 2 * t) ** 3), abs((2 * l * l + 10 * l * t - t * t) * d * d), d ** 4)
    q = quartic_Q(t, l, d)
    if abs(q) <= _DEGENERATE_TOLERANCE * max(terms):
        raise DegenerateSaddleError(f"(t, d, l) = ({t}, {d}, {l}) lies on the frozen boundary")

    if q < 0:
        z0 = max(roots, key=lambda z: z.imag)
        region = LIQUID
    else:
        real = sorted(z.real for z in roots)
        q1, _ = frozen_boundary(t, l)
        if t / l < 0.5 and d <= l * q1:
            z0, region = complex(real[0]), FROZEN_LEFT
        else:
            z0, region = complex(real[-1]), FROZEN_RIGHT
    return SaddleData(point, roots, z0, region)


def action_S(z: complex, t: float, d: float, l: float) -> complex:
    w = (z + 1.0 / z) / 2.0
    return t * w + l * np.log(w - 1.0) - d * np.log(z)


def action_S_prime(z: complex, t: float, d: float, l: float) -> complex:
    return np.polynomial.Polynomial(cubic_R(t, d, l))(z) / (2.0 * z * z * (z - 1.0))


# ==================== LIMIT SHAPE ====================

def _arg_z0(t: float, d: float, l: float) -> float:
    try:
        return float(np.angle(saddle(t, d, l).z0))
    except DegenerateSaddleError:
        return float(np.angle(saddle(t, d * (1.0 + 1e-9), l).z0))


def limit_density(t: float, d: float, l: float) -> float:
    """One-point density arg(z0)/pi: 0 on the right frozen region, 1 on the left."""
    return _arg_z0(t, d, l) / pi


def _h_principal(t: float, d: float, l: float) -> float:
    data = saddle(t, d, l)
    if data.region == FROZEN_RIGHT:
        return 0.0
    return float(action_S(data.z0, t, d, l).imag / (2.0 * pi))


def _h_ladder(t: float, d: float, l: float, steps: int = 400) -> float:
    _, q2 = frozen_boundary(t, l)
    far = max(2.0 * l * q2, d) + 1.0
    ladder = np.linspace(far, d, steps)
    # nudge rungs that land on the boundary
    ladder = np.array([x * (1.0 + 1e-9) if abs(quartic_Q(t, l, x)) < 1e-10 else x for x in ladder])
    ladder[-1] = d
    z = np.array([saddle(t, x, l).z0 for x in ladder])
    w = (z + 1.0 / z) / 2.0 - 1.0
    arg_w = np.unwrap(np.angle(w))
    arg_z = np.unwrap(np.angle(z))
    imag = t * ((z + 1.0 / z) / 2.0).imag[-1] + l * arg_w[-1] - d * arg_z[-1]
    return float(imag / (2.0 * pi))


def limit_shape_h(t: float, d: float, l: float, ladder: bool = False) -> float:
    """
    Limit height Im S(z0) / (2 pi), normalized so that h -> 0 as d -> infinity

    z0 stays in the closed upper half-plane with |z0| >= 1, so the principal
    logarithms are already continuous in d; ladder=True recomputes the value by
    unwinding both arguments along a decreasing d-ladder instead.
    """
    return _h_ladder(t, d, l) if ladder else _h_principal(t, d, l)


def limit_shape_integral(t: float, d: float, l: float) -> float:
    """(1/(2 pi)) * integral from d to infinity of arg z0."""
    _, q2 = frozen_boundary(t, l)
    upper = l * q2
    if d >= upper:
        return 0.0
    value, error = integrate.quad(lambda x: _arg_z0(t, x, l), d, upper, limit=400)
    if error > 1e-6:
        raise ConvergenceError(f"limit-shape integral error estimate {error:.2e}")
    return value / (2.0 * pi)


def height_grid(t: float, d_values: Sequence[float], l_values: Sequence[float]) -> List[Dict]:
    """Rows of (t, d, l, region, h, density, q1, q2, status, error_message)."""
    rows = []
    for l in l_values:
        q1, q2 = frozen_boundary(t, l)
        for d in d_values:
            row = {'t': t, 'd': d, 'l': l, 'region': '', 'h': float('nan'),
                   'density': float('nan'), 'q1': q1, 'q2': q2,
                   'status': 'ok', 'error_message': ''}
            try:
                data = saddle(t, d, l)
                row['region'] = data.region
                row['h'] = _h_principal(t, d, l)
                row['density'] = float(np.angle(data.z0)) / pi
            except DegenerateSaddleError as exc:
                row['region'] = DEGENERATE
                row['status'] = 'degenerate'
                row['error_message'] = str(exc)
            rows.append(row)
    return rows


# ==================== LIMIT KERNELS ====================

def incomplete_beta_kernel(k: int, l: int, zeta: complex, nodes: int = 200,
                           crossing: Optional[float] = None) -> float:
    """
    (1/(2 pi i)) * integral from conj(zeta) to zeta of (1-z)^k z^(-l-1) dz

    The path is the two segments conj(zeta) -> crossing -> zeta; crossing
    defaults to 1/2 when k >= 0 and to -1 when k < 0.
    """
    zeta = complex(zeta)
    if not zeta.imag > 0:
        raise DomainError(f"zeta must lie in the upper half-plane, got {zeta}")
    if crossing is None:
        crossing = 0.5 if k >= 0 else -1.0
    if (k >= 0 and not 0 < crossing < 1) or (k < 0 and not crossing < 0):
        raise DomainError(f"crossing point {crossing} is not allowed for k = {k}")
    t, w = np.polynomial.legendre.leggauss(nodes)
    total = 0j
    for start, end in ((zeta.conjugate(), complex(crossing)), (complex(crossing), zeta)):
        z = start + (end - start) * (t + 1.0) / 2.0
        total += np.sum(w * (1.0 - z) ** k * z ** (-l - 1)) * (end - start) / 2.0
    value = total / (2j * pi)
    if abs(value.imag) > 1e-10 * (1.0 + abs(value.real)):
        raise ConvergenceError(f"incomplete beta kernel has imaginary part {value.imag:.3e}")
    return float(value.real)


def discrete_jacobi_L(p1: KernelPoint, p2: KernelPoint, u: float,
                      q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    Discrete Jacobi kernel at u in (-1, 1)

    At or above: (W(s1)/pi) * integral over [u, 1] of J1 J2 (x-1)^(n1-n2) weight_a1.
    Strictly below: minus the same integral over [-1, u].
    """
    if not -1.0 < u < 1.0:
        raise DomainError(f"u must lie in (-1, 1), got {u}")
    v = float(np.arccos(u))
    above = at_or_above(p1, p2)
    low, high = (0.0, v) if above else (v, pi)
    t, w = np.polynomial.legendre.leggauss(q.theta_nodes)
    theta = low + (high - low) * (t + 1.0) / 2.0
    weights = w * (high - low) / 2.0 * theta_weight(p1.a, theta)
    J1 = eval_J_table(p1.a, p1.s, theta)[p1.s]
    J2 = eval_J_table(p2.a, p2.s, theta)[p2.s]
    power = (np.cos(theta) - 1.0) ** (p1.n - p2.n)
    value = normalization_W(p1.a, p1.s) / pi * np.sum(weights * J1 * J2 * power)
    return float(value if above else -value)


def discrete_jacobi_closed_form(s1: int, s2: int, u: float) -> float:
    """Equal-level (-1/2, -1/2) discrete Jacobi kernel in closed form."""
    v = float(np.arccos(u))

    def sinc_term(k: int) -> float:
        return v / pi if k == 0 else np.sin(v * k) / (pi * k)

    prefactor = 0.5 if s1 == 0 else 1.0
    return prefactor * (sinc_term(s1 - s2) + sinc_term(s1 + s2))


# ==================== FINITE-N COMPARISONS ====================

def _scaled_points(base_n: int, base_s: int,
                   offsets: Sequence[Tuple[int, float, int]]) -> List[KernelPoint]:
    return [KernelPoint.of(base_n + dn, a, base_s + ds) for dn, a, ds in offsets]


def bulk_kernel_limit_check(t: float, d: float, l: float, N: int,
                            offsets: Sequence[Tuple[int, float, int]] = ((0, MINUS_HALF, 0),),
                            c: ContourSpec = DEFAULT_CONTOUR) -> Tuple[float, float]:
    """
    Exact correlation at gamma = tN, s = ceil(dN), n = ceil(lN) shifted by
    offsets (dn, a, ds), against its bulk prediction

    In the liquid region the prediction is det[B(n~_i - n~_j, s~_i + n~_i - s~_j - n~_j; z0)]
    with n~ = 2n + a - 1/2 and s~ = s - n; in a frozen region it is the
    product of the 0/1 densities.

    Returns:
        (exact, predicted)
    """
    data = saddle(t, d, l)
    points = _scaled_points(ceil(l * N), ceil(d * N), offsets)
    exact = correlation(CharacterParams.plancherel(t * N), points, c)
    if data.region == LIQUID:
        n_tilde = [2 * p.n + p.a - 0.5 for p in points]
        s_tilde = [p.s - p.n for p in points]
        matrix = np.array([[
            incomplete_beta_kernel(int(round(n_tilde[i] - n_tilde[j])),
                                   int(round(s_tilde[i] + n_tilde[i] - s_tilde[j] - n_tilde[j])),
                                   data.z0)
            for j in range(len(points))] for i in range(len(points))])
        predicted = float(np.linalg.det(matrix))
    else:
        predicted = (1.0 if data.region == FROZEN_LEFT else 0.0) ** len(points)
    logger.info("bulk check (t,d,l)=(%g,%g,%g) N=%d %s: exact %.6f predicted %.6f",
                t, d, l, N, data.region, exact, predicted)
    return exact, predicted


def wall_kernel_limit_check(t: float, l: float, N: int,
                            points: Sequence[Tuple[int, float, int]],
                            c: ContourSpec = DEFAULT_CONTOUR,
                            q: QuadratureSpec = DEFAULT_QUADRATURE) -> Tuple[float, float]:
    """
    Exact correlation near the wall at gamma = tN, n = ceil(lN) + dn and fixed
    s, against det[L(.; u)] with u = 1 - l/t

    points holds (dn, a, s) triples.

    Returns:
        (exact, predicted)
    """
    u = 1.0 - l / t
    if not -1.0 < u < 1.0:
        raise DomainError(f"1 - l/t = {u} is outside (-1, 1)")
    kernel_points = [KernelPoint.of(ceil(l * N) + dn, a, s) for dn, a, s in points]
    exact = correlation(CharacterParams.plancherel(t * N), kernel_points, c)
    matrix = np.array([[discrete_jacobi_L(p, r, u, q) for r in kernel_points] for p in kernel_points])
    predicted = float(np.linalg.det(matrix))
    logger.info("wall check t=%g l=%g N=%d: exact %.6f predicted %.6f", t, l, N, exact, predicted)
    return exact, predicted
