"""
Symmetric Pearcey kernel and its finite-N approximation from the exact kernel

The kernel is

    (2 / (pi^2 i)) int_0^inf dx int_C du exp(-eta1 x^2 + eta2 u^2 + u^4 - x^4)
        cos(sigma1 x) cos(sigma2 u) u / (u^2 - x^2)

with C running from inf e^{i pi/4} through 0 to inf e^{-i pi/4}, plus a
Gaussian term when eta1 > eta2. Parametrizing the two rays by r >= 0 turns
the u-integral into -2i Im of one ray, and the quadrant x, r >= 0 is split
along x = r so that both halves are smooth after a polar-type substitution.
pearcey_integral_polar evaluates the same integral on a polar grid instead.

The two points enter differently (a real half-line for x, the rays for u),
so K(p1, p2) and K(p2, p1) differ; only determinants are gauge-free.
"""
import logging
from dataclasses import dataclass
from math import ceil, pi, sqrt
from typing import Dict

import numpy as np

from config.settings import PEARCEY_CUTOFF, PEARCEY_NODES
from growth.characters import CharacterParams
from growth.errors import ConvergenceError, DomainError
from growth.kernel import DEFAULT_CONTOUR, ContourSpec, KernelPoint, eval_K_hole

logger = logging.getLogger(__name__)

_TAIL_TOLERANCE = 1e-14
_ROTATION = np.exp(0.25j * np.pi)


@dataclass(frozen=True)
class PearceyPoint:
    sigma: float
    eta: float

    def __post_init__(self):
        if self.sigma < 0:
            raise DomainError(f"sigma must be nonnegative, got {self.sigma}")


def gaussian_term(p1: PearceyPoint, p2: PearceyPoint) -> float:
    """The correction added when eta1 > eta2; zero otherwise."""
    gap = p1.eta - p2.eta
    if gap <= 0:
        return 0.0
    plus = np.exp(-(p1.sigma + p2.sigma) ** 2 / (4.0 * gap))
    minus = np.exp(-(p1.sigma - p2.sigma) ** 2 / (4.0 * gap))
    return float(-(plus + minus) / (2.0 * sqrt(pi * gap)))


def _gauss_legendre(nodes: int, upper: float):
    t, w = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * upper * (t + 1.0), 0.5 * upper * w


def _check_tail(p1: PearceyPoint, p2: PearceyPoint, cutoff: float) -> None:
    growth = max(0.0, -p1.eta) ** 2 / 4.0 if p1.eta < 0 else 0.0
    log_a = -cutoff ** 4 + p2.sigma * cutoff / sqrt(2.0) + growth
    log_b = -cutoff ** 4 - p1.eta * cutoff ** 2 + p2.sigma * cutoff / sqrt(2.0)
    if max(log_a, log_b) > np.log(_TAIL_TOLERANCE):
        raise ConvergenceError(
            f"Pearcey integrand is not negligible at cutoff {cutoff} "
            f"(sigma={p2.sigma}, eta1={p1.eta})")


def _x_part(p: PearceyPoint, x):
    return np.exp(-p.eta * x ** 2 - x ** 4) * np.cos(p.sigma * x)


def _ray_part(p: PearceyPoint, r):
    # u = r e^{i pi/4}: u^2 = i r^2, u^4 = -r^4
    return np.exp(1j * p.eta * r ** 2 - r ** 4) * np.cos(p.sigma * r * _ROTATION)


def pearcey_integral(p1: PearceyPoint, p2: PearceyPoint, nodes: int = PEARCEY_NODES,
                     cutoff: float = PEARCEY_CUTOFF) -> float:
    """The double-integral part of the symmetric Pearcey kernel."""
    _check_tail(p1, p2, cutoff)
    outer, w_outer = _gauss_legendre(nodes, cutoff)
    inner, w_inner = _gauss_legendre(nodes, 1.0)

    # x <= r: x = r t
    r = outer[:, np.newaxis]
    t = inner[np.newaxis, :]
    lower = _x_part(p1, r * t) * _ray_part(p2, r) * (1j / (1j - t ** 2))
    # r <= x: r = x s
    x = outer[:, np.newaxis]
    s = inner[np.newaxis, :]
    upper = _x_part(p1, x) * _ray_part(p2, x * s) * (1j * s / (1j * s ** 2 - 1.0))

    weights = w_outer[:, np.newaxis] * w_inner[np.newaxis, :]
    total = np.sum(weights * (lower + upper))
    return float(-4.0 / pi ** 2 * total.imag)


def pearcey_integral_polar(p1: PearceyPoint, p2: PearceyPoint, nodes: int = PEARCEY_NODES,
                           cutoff: float = PEARCEY_CUTOFF) -> float:
    """
    The same double integral in polar coordinates x = rho cos(phi), r = rho sin(phi).

    The Jacobian rho cancels the 1/rho singularity at the origin, so the
    integrand is smooth on [0, cutoff] x [0, pi/2] without any splitting.
    """
    _check_tail(p1, p2, cutoff)
    rho, w_rho = _gauss_legendre(nodes, cutoff)
    phi, w_phi = _gauss_legendre(nodes, pi / 2.0)
    rho = rho[:, np.newaxis]
    cos_phi, sin_phi = np.cos(phi)[np.newaxis, :], np.sin(phi)[np.newaxis, :]
    integrand = (_x_part(p1, rho * cos_phi) * _ray_part(p2, rho * sin_phi)
                 * (1j * sin_phi / (1j * sin_phi ** 2 - cos_phi ** 2)))
    total = np.sum(w_rho[:, np.newaxis] * w_phi[np.newaxis, :] * integrand)
    return float(-4.0 / pi ** 2 * total.imag)


def symmetric_pearcey_K(p1: PearceyPoint, p2: PearceyPoint, nodes: int = PEARCEY_NODES,
                        cutoff: float = PEARCEY_CUTOFF) -> float:
    return pearcey_integral(p1, p2, nodes, cutoff) + gaussian_term(p1, p2)


def finite_n_pearcey(sigma: float, eta: float, N: int, a=-0.5,
                     c: ContourSpec = DEFAULT_CONTOUR) -> Dict:
    """
    Rescaled exact hole-kernel diagonal near the point where the frozen
    boundary meets the wall

    Uses gamma = N/2, n = N + ceil(2^(-1/2) eta N^(1/2)), s = ceil(2^(-5/4) sigma N^(1/4)).

    Returns:
        Dictionary with the lattice point, the effective (sigma_N, eta_N) it
        represents, and the rescaled value (N^(1/4) / 2^(5/4)) K_hole
    """
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    n = N + ceil(2 ** -0.5 * eta * sqrt(N))
    s = ceil(2 ** -1.25 * sigma * N ** 0.25)
    if n < 1:
        raise DomainError(f"eta={eta} puts the level below 1 at N={N}")
    point = KernelPoint.of(n, a, s)
    value = eval_K_hole(CharacterParams.plancherel(N / 2.0), point, point, c)
    scale = N ** 0.25 / 2 ** 1.25
    logger.info("finite-N Pearcey N=%d n=%d s=%d: K_hole=%.6g", N, n, s, value)
    return {
        'N': N,
        'n': n,
        's': s,
        'sigma_N': s * 2 ** 1.25 / N ** 0.25,
        'eta_N': (n - N) * sqrt(2.0) / sqrt(N),
        'value': scale * value,
    }
