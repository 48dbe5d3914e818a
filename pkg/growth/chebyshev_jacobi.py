"""
Normalized Jacobi polynomials J_s^(a,-1/2) for a = -1/2, +1/2

With x = cos(theta):
    a = -1/2:  J_s(x) = cos(s theta)                      (Chebyshev, J_s(1) = 1)
    a = +1/2:  J_s(x) = sin((s + 1/2) theta) / sin(theta/2)  (J_s(1) = 2s + 1)

The weight (1-x)^a (1+x)^(-1/2) dx becomes d(theta) for a = -1/2 and
2 sin^2(theta/2) d(theta) for a = +1/2, so every weighted integral here is a
smooth integral over theta in [0, pi].
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np

from config.settings import QUAD_NODES
from growth.errors import DomainError

logger = logging.getLogger(__name__)

MINUS_HALF = -0.5
PLUS_HALF = 0.5

# Below this sin(theta/2) the +1/2 ratio is summed as 1 + 2 sum cos(r theta)
_SMALL_HALF_ANGLE = 1e-4


@dataclass(frozen=True)
class QuadratureSpec:
    """Number of Gauss-Legendre nodes in theta on [0, pi]."""
    theta_nodes: int = QUAD_NODES

    def __post_init__(self):
        if int(self.theta_nodes) != self.theta_nodes or self.theta_nodes < 2:
            raise DomainError(f"theta_nodes must be an integer >= 2, got {self.theta_nodes}")


DEFAULT_QUADRATURE = QuadratureSpec()


def check_half_int(a) -> float:
    """Return a as a float, rejecting anything but -1/2 and +1/2."""
    try:
        value = float(a)
    except (TypeError, ValueError):
        raise DomainError(f"a must be -1/2 or +1/2, got {a!r}")
    if value == MINUS_HALF or value == PLUS_HALF:
        return value
    raise DomainError(f"a must be -1/2 or +1/2, got {a!r}")


def normalization_W(a, k: int) -> float:
    """
    Weight W(k) with h_k = pi c_k^2 / W(k)

    Returns:
        2 for k > 0 and a = -1/2, 1 for k = 0 and a = -1/2, 1 for a = +1/2
    """
    a = check_half_int(a)
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    if a == PLUS_HALF:
        return 1.0
    return 2.0 if k > 0 else 1.0


def _theta_of(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise DomainError("eval_J needs |x| <= 1")
    return np.arccos(np.clip(x, -1.0, 1.0))


def _plus_half_from_theta(s: int, theta: np.ndarray) -> np.ndarray:
    half = np.sin(theta / 2.0)
    small = np.abs(half) < _SMALL_HALF_ANGLE
    safe = np.where(small, 1.0, half)
    values = np.sin((s + 0.5) * theta) / safe
    if np.any(small):
        r = np.arange(1, s + 1)
        near = 1.0 + 2.0 * np.cos(np.multiply.outer(theta[small], r)).sum(axis=-1)
        values = np.where(small, 0.0, values)
        values[small] = near
    return values


def eval_J(a, s: int, x):
    """
    Evaluate J_s^(a,-1/2)(x) for |x| <= 1

    Accepts a scalar or an array for x and returns the same shape.
    """
    a = check_half_int(a)
    if s < 0:
        raise DomainError(f"degree must be nonnegative, got {s}")
    scalar = np.ndim(x) == 0
    theta = np.atleast_1d(_theta_of(x))
    if a == MINUS_HALF:
        values = np.cos(s * theta)
    else:
        values = _plus_half_from_theta(s, theta)
    return float(values[0]) if scalar else values


def eval_J_table(a, s_max: int, theta: np.ndarray) -> np.ndarray:
    """Rows J_0..J_{s_max} evaluated at the given theta values."""
    a = check_half_int(a)
    theta = np.asarray(theta, dtype=float)
    cosines = np.cos(np.multiply.outer(np.arange(s_max + 1), theta))
    if a == MINUS_HALF:
        return cosines
    # J_s^+ = J_{s-1}^+ + 2 cos(s theta)
    table = 2.0 * cosines
    table[0] = 1.0
    return np.cumsum(table, axis=0)


def eval_J_complex(a, s: int, u):
    """Polynomial continuation of J_s to complex u via the three-term recurrence."""
    a = check_half_int(a)
    u = np.asarray(u, dtype=complex)
    previous = np.ones_like(u)
    if s == 0:
        return previous
    current = u.copy() if a == MINUS_HALF else 2.0 * u + 1.0
    for _ in range(1, s):
        previous, current = current, 2.0 * u * current - previous
    return current


def taylor_at_one(a, s: int, order: Optional[int] = None) -> List[Fraction]:
    """
    Exact Taylor coefficients of J_s in y = x - 1

    Returns coefficients of y^0..y^order; order defaults to the degree s,
    and entries past the degree are zero.
    """
    a = check_half_int(a)
    order = s if order is None else order
    coefficients = [Fraction(1) if a == MINUS_HALF else Fraction(2 * s + 1)]
    for k in range(order):
        c = coefficients[-1]
        if a == MINUS_HALF:
            c = c * (s * s - k * k) / ((k + 1) * (2 * k + 1))
        else:
            c = c * (s + k + 1) * (s - k) / ((k + 1) * (2 * k + 3))
        coefficients.append(c)
    return coefficients


@lru_cache(maxsize=32)
def theta_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, pi]."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    theta = 0.5 * np.pi * (t + 1.0)
    weights = 0.5 * np.pi * w
    theta.setflags(write=False)
    weights.setflags(write=False)
    return theta, weights


def theta_weight(a, theta: np.ndarray) -> np.ndarray:
    """The measure factor multiplying d(theta)."""
    if check_half_int(a) == MINUS_HALF:
        return np.ones_like(theta)
    return 2.0 * np.sin(theta / 2.0) ** 2


def _sample(f: Callable, x: np.ndarray) -> np.ndarray:
    values = np.asarray(f(x), dtype=float)
    if values.shape != x.shape:
        values = np.broadcast_to(values, x.shape)
    return values


def weighted_integral(f: Callable, a, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    Integral of f(x) (1-x)^a (1+x)^(-1/2) over [-1, 1]

    f must accept a numpy array of x values.
    """
    theta, weights = theta_rule(q.theta_nodes)
    x = np.cos(theta)
    return float(np.sum(weights * theta_weight(a, theta) * _sample(f, x)))


def expansion_coefficients(f: Callable, a, s_max: int,
                           q: QuadratureSpec = DEFAULT_QUADRATURE) -> np.ndarray:
    """Coefficients (W(s)/pi) * integral(f J_s weight) for s = 0..s_max."""
    theta, weights = theta_rule(q.theta_nodes)
    values = _sample(f, np.cos(theta)) * weights * theta_weight(a, theta)
    moments = eval_J_table(a, s_max, theta) @ values
    w = np.array([normalization_W(a, s) for s in range(s_max + 1)])
    return w * moments / np.pi


def orthogonality_matrix(a, size: int, q: QuadratureSpec = DEFAULT_QUADRATURE) -> np.ndarray:
    """(W(k)/pi) * integral(J_j J_k weight); the identity up to quadrature error."""
    theta, weights = theta_rule(q.theta_nodes)
    table = eval_J_table(a, size - 1, theta)
    gram = (table * (weights * theta_weight(a, theta))) @ table.T
    w = np.array([normalization_W(a, k) for k in range(size)])
    return gram * w[np.newaxis, :] / np.pi


def delta_reproduction_check(T: Callable, zeta: float, a, cutoff: int,
                             q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Partial sum of the J-expansion of T evaluated at zeta."""
    if abs(zeta) > 1.0:
        raise DomainError("zeta must lie in [-1, 1]")
    coefficients = expansion_coefficients(T, a, cutoff, q)
    at_zeta = eval_J_table(a, cutoff, np.array([np.arccos(zeta)]))[:, 0]
    return float(np.dot(coefficients, at_zeta))


def tail_sum_identity(T: Callable, s: int, a, terms: int,
                      q: QuadratureSpec = DEFAULT_QUADRATURE) -> Tuple[float, float]:
    """
    Truncated tail of the J-expansion of T against its closed form

    For a = -1/2 the tail runs over r > s and equals
    (1/pi) integral(J^+_s (T(1) - T(x)) w^-); for a = +1/2 it runs over r >= s
    and equals (1/pi) integral(J^-_s T w^-).

    Returns:
        (truncated tail up to s + terms, closed form)
    """
    a = check_half_int(a)
    coefficients = expansion_coefficients(T, a, s + terms, q)
    if a == MINUS_HALF:
        tail = float(np.sum(coefficients[s + 1:]))
        at_one = float(np.asarray(T(np.array([1.0])), dtype=float).ravel()[0])
        closed = weighted_integral(
            lambda x: eval_J(PLUS_HALF, s, x) * (at_one - _sample(T, x)), MINUS_HALF, q
        ) / np.pi
    else:
        tail = float(np.sum(coefficients[s:]))
        closed = weighted_integral(lambda x: eval_J(MINUS_HALF, s, x) * _sample(T, x),
                                   MINUS_HALF, q) / np.pi
    return tail, closed


def coefficient_decay(T: Callable, r_max: int,
                      q: QuadratureSpec = DEFAULT_QUADRATURE) -> np.ndarray:
    """Unnormalized moments integral(J^-_r T w^-) for r = 0..r_max; they tend to 0."""
    theta, weights = theta_rule(q.theta_nodes)
    values = _sample(T, np.cos(theta)) * weights
    return eval_J_table(MINUS_HALF, r_max, theta) @ values
