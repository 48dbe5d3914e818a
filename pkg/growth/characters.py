"""
Extreme characters, dimensions and the exact finite-level measures

A character is labelled by omega = (alpha, beta, gamma). It enters every
formula through

    E(x) = exp(gamma (x-1)) * prod (1 + b_i (x-1)) / prod (1 - c_i (x-1))

with b = beta - beta^2/2 and c = alpha + alpha^2/2. The Plancherel character
is (), (), t and gives E(x) = exp(t (x-1)).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, log, sqrt
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ive

from growth.chebyshev_jacobi import (
    MINUS_HALF, PLUS_HALF, QuadratureSpec, check_half_int,
    expansion_coefficients, normalization_W,
)
from growth.errors import ContourError, DomainError

logger = logging.getLogger(__name__)

# r^T below exp(-46) counts as zero in the geometric alpha factors
_FOURIER_LOG_CUTOFF = 46.0


def _nonincreasing_nonnegative(values: Sequence[float], name: str) -> Tuple[float, ...]:
    values = tuple(float(v) for v in values)
    if any(v < 0 for v in values):
        raise DomainError(f"{name} entries must be nonnegative, got {values}")
    if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
        raise DomainError(f"{name} must be nonincreasing, got {values}")
    return values


@dataclass(frozen=True)
class CharacterParams:
    """Finite character parameters omega = (alpha, beta, gamma)."""
    alpha: Tuple[float, ...] = field(default_factory=tuple)
    beta: Tuple[float, ...] = field(default_factory=tuple)
    gamma: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _nonincreasing_nonnegative(self.alpha, 'alpha'))
        object.__setattr__(self, 'beta', _nonincreasing_nonnegative(self.beta, 'beta'))
        if self.gamma < 0:
            raise DomainError(f"gamma must be nonnegative, got {self.gamma}")
        object.__setattr__(self, 'gamma', float(self.gamma))

    @classmethod
    def plancherel(cls, t: float) -> 'CharacterParams':
        return cls((), (), t)

    @classmethod
    def trivial(cls) -> 'CharacterParams':
        return cls((), (), 0.0)

    @property
    def delta(self) -> float:
        return self.gamma + sum(self.alpha) + sum(self.beta)

    @property
    def is_plancherel(self) -> bool:
        return not self.alpha and not self.beta

    @property
    def b_coefficients(self) -> Tuple[float, ...]:
        return tuple(b - b * b / 2.0 for b in self.beta)

    @property
    def c_coefficients(self) -> Tuple[float, ...]:
        return tuple(a + a * a / 2.0 for a in self.alpha)

    def zeros_of_E(self) -> List[float]:
        """Real zeros 1 - 1/b of E; all lie below -1 when beta_1 < 1."""
        return [1.0 - 1.0 / b for b in self.b_coefficients if b > 0]

    def require_kernel_admissible(self) -> None:
        if self.beta and self.beta[0] >= 1.0:
            raise ContourError(f"kernel needs beta_1 < 1, got beta_1 = {self.beta[0]}")


@dataclass(frozen=True)
class SignaturePartition:
    """Nonincreasing tuple of N nonnegative integers."""
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise DomainError(f"partition parts must be nonnegative, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"partition must be nonincreasing, got {parts}")
        object.__setattr__(self, 'parts', parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @classmethod
    def zero(cls, N: int) -> 'SignaturePartition':
        return cls((0,) * N)


def _as_parts(lam) -> Tuple[int, ...]:
    return lam.parts if isinstance(lam, SignaturePartition) else SignaturePartition(tuple(lam)).parts


# ==================== E FUNCTION ====================

def eval_E(omega: CharacterParams, x):
    """E^omega at real x in [-1, 1] (scalar or array)."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0 + 1e-12):
        raise DomainError("eval_E needs |x| <= 1")
    y = x_arr - 1.0
    value = np.exp(omega.gamma * y)
    for b in omega.b_coefficients:
        value = value * (1.0 + b * y)
    for c in omega.c_coefficients:
        value = value / (1.0 - c * y)
    return float(value) if np.ndim(x) == 0 else value


def eval_E_complex(omega: CharacterParams, u):
    """Analytic continuation of E^omega to complex u."""
    y = np.asarray(u, dtype=complex) - 1.0
    value = np.exp(omega.gamma * y)
    for b in omega.b_coefficients:
        value = value * (1.0 + b * y)
    for c in omega.c_coefficients:
        value = value / (1.0 - c * y)
    return complex(value) if np.ndim(u) == 0 else value


def log_E_complex(omega: CharacterParams, u):
    """log E^omega(u), summed factor by factor so large gamma does not overflow."""
    y = np.asarray(u, dtype=complex) - 1.0
    value = omega.gamma * y
    for b in omega.b_coefficients:
        value = value + np.log(1.0 + b * y)
    for c in omega.c_coefficients:
        value = value - np.log(1.0 - c * y)
    return value


# ==================== DIMENSIONS ====================

def _dimension(l: List[Fraction], m: List[Fraction], with_linear: bool) -> Fraction:
    value = Fraction(1)
    N = len(l)
    for i in range(N):
        for j in range(i + 1, N):
            value *= (l[i] ** 2 - l[j] ** 2) / (m[i] ** 2 - m[j] ** 2)
        if with_linear:
            value *= l[i] / m[i]
    return value


def dim_odd(N: int, lam) -> Fraction:
    """Dimension of the SO(2N+1) irreducible with highest weight lam."""
    parts = _as_parts(lam)
    if len(parts) != N:
        raise DomainError(f"partition length {len(parts)} does not match N = {N}")
    l = [Fraction(2 * (parts[i] + N - i - 1) + 1, 2) for i in range(N)]
    m = [Fraction(2 * (N - i - 1) + 1, 2) for i in range(N)]
    return _dimension(l, m, with_linear=True)


def dim_even(N: int, lam) -> Fraction:
    """Dimension of the SO(2N) representation lam; lam and its conjugate share it."""
    parts = _as_parts(lam)
    if len(parts) != N:
        raise DomainError(f"partition length {len(parts)} does not match N = {N}")
    l = [Fraction(parts[i] + N - i - 1) for i in range(N)]
    m = [Fraction(N - i - 1) for i in range(N)]
    return _dimension(l, m, with_linear=False)


def dimension(N: int, a, lam) -> Fraction:
    """dim_odd for a = +1/2, dim_even for a = -1/2."""
    return dim_odd(N, lam) if check_half_int(a) == PLUS_HALF else dim_even(N, lam)


# ==================== FINITE LEVEL MEASURES ====================

def normalizing_constant(N: int, a) -> float:
    a = check_half_int(a)
    if a == PLUS_HALF:
        return 2.0 ** ((N - 1) * N // 2)
    return 2.0 ** ((N - 2) * (N - 1) // 2)


@lru_cache(maxsize=64)
def _quadrature_f_matrix(omega: CharacterParams, N: int, a: float, k_max: int,
                         nodes: int) -> np.ndarray:
    q = QuadratureSpec(nodes)
    rows = []
    for j in range(1, N + 1):
        power = N - j
        rows.append(expansion_coefficients(
            lambda x, power=power: x ** power * eval_E(omega, x), a, k_max, q))
    matrix = np.vstack(rows)
    matrix.setflags(write=False)
    return matrix


def _centered(sequence: np.ndarray, half_width: int) -> np.ndarray:
    offset = (len(sequence) - 2 * half_width - 1) // 2
    return sequence[offset:offset + 2 * half_width + 1]


def _symmetric(nonnegative: np.ndarray) -> np.ndarray:
    return np.concatenate([nonnegative[:0:-1], nonnegative])


def _fourier_tail(omega: CharacterParams) -> int:
    """Indices past which every factor of E(cos theta) is below double precision."""
    tail = int(omega.gamma + 10.0 * sqrt(omega.gamma) + 40)
    for c in omega.c_coefficients:
        r = c / (1.0 + c + sqrt(1.0 + 2.0 * c))
        if r > 0:
            tail = max(tail, int(ceil(_FOURIER_LOG_CUTOFF / -log(r))))
    return tail


def fourier_coefficients(omega: CharacterParams, half_width: int) -> np.ndarray:
    """
    g_k for k = -half_width..half_width, where E(cos theta) = sum g_k e^{ik theta}.

    Each factor of E has a nonnegative Fourier series (Bessel for gamma,
    a three-term stencil for beta, a geometric sequence for alpha), so the
    convolutions never cancel and small coefficients keep full relative accuracy.
    """
    width = half_width + _fourier_tail(omega)
    k = np.arange(width + 1)
    g = _symmetric(ive(k, omega.gamma))
    for b in omega.b_coefficients:
        g = _centered(np.convolve(g, [b / 2.0, 1.0 - b, b / 2.0]), width)
    for c in omega.c_coefficients:
        s = sqrt(1.0 + 2.0 * c)
        r = c / (1.0 + c + s)
        g = _centered(np.convolve(g, _symmetric(r ** k / s)), width)
    return _centered(g, half_width)


@lru_cache(maxsize=64)
def _f_matrix(omega: CharacterParams, N: int, a: float, k_max: int) -> np.ndarray:
    # x = cos theta acts on Fourier sequences as the stencil [1/2, 0, 1/2]
    half_width = k_max + N
    g = fourier_coefficients(omega, half_width)
    rows = []
    for j in range(1, N + 1):
        shifted = g
        for _ in range(N - j):
            shifted = _centered(np.convolve(shifted, [0.5, 0.0, 0.5]), half_width)
        tail = shifted[half_width:]
        if a == PLUS_HALF:
            rows.append(tail[:k_max + 1] - tail[1:k_max + 2])
        else:
            weights = np.where(np.arange(k_max + 1) > 0, 2.0, 1.0)
            rows.append(weights * tail[:k_max + 1])
    matrix = np.vstack(rows)
    matrix.setflags(write=False)
    return matrix


def _coefficients(omega: CharacterParams, N: int, a: float, k_max: int,
                  q: Optional[QuadratureSpec]) -> np.ndarray:
    if q is None:
        return _f_matrix(omega, N, a, k_max)
    return _quadrature_f_matrix(omega, N, a, k_max, q.theta_nodes)


def _equilibrated_det(matrices: np.ndarray) -> np.ndarray:
    """det over the last two axes, with each row scaled to unit max first."""
    scales = np.max(np.abs(matrices), axis=-1, keepdims=True)
    scales[scales == 0.0] = 1.0
    return np.linalg.det(matrices / scales) * np.prod(scales[..., 0], axis=-1)


def f_coefficient(omega: CharacterParams, N: int, a, j: int, k: int,
                  q: Optional[QuadratureSpec] = None) -> float:
    """
    f_j^(N,a)(k) = (W(k)/pi) * integral(x^(N-j) E(x) J_k(x) weight)

    Args:
        omega: Character parameters
        N: Level size
        a: -1/2 or +1/2
        j: Row index in 1..N
        k: Polynomial degree
        q: Quadrature resolution for the direct integral; None sums the
           Fourier series of E exactly

    Returns:
        The coefficient as a float
    """
    a = check_half_int(a)
    if not 1 <= j <= N:
        raise DomainError(f"j must lie in 1..{N}, got {j}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    return float(_coefficients(omega, N, a, k, q)[j - 1, k])


def measure_P(omega: CharacterParams, N: int, a, lam,
              q: Optional[QuadratureSpec] = None) -> float:
    """Probability of lam under the level-(N, a) measure."""
    a = check_half_int(a)
    parts = _as_parts(lam)
    if len(parts) != N:
        raise DomainError(f"partition length {len(parts)} does not match N = {N}")
    shifted = [parts[i] - i - 1 + N for i in range(N)]
    F = _coefficients(omega, N, a, shifted[0], q)
    det = float(_equilibrated_det(F[:, shifted].T))
    return normalizing_constant(N, a) * det * float(dimension(N, a, parts))


def enumerate_partitions(N: int, max_part: int) -> Iterator[Tuple[int, ...]]:
    """All nonincreasing N-tuples with parts in 0..max_part."""
    for parts in combinations_with_replacement(range(max_part, -1, -1), N):
        yield parts


def measure_table(omega: CharacterParams, N: int, a, max_part: int,
                  q: Optional[QuadratureSpec] = None) -> Dict[Tuple[int, ...], float]:
    """measure_P over every partition with lam_1 <= max_part."""
    a = check_half_int(a)
    partitions = list(enumerate_partitions(N, max_part))
    F = _coefficients(omega, N, a, max_part + N - 1, q)
    index = np.array(partitions, dtype=int) - np.arange(1, N + 1) + N
    matrices = np.transpose(F[:, index], (1, 2, 0))
    dets = _equilibrated_det(matrices)
    constant = normalizing_constant(N, a)
    table = {}
    for parts, det in zip(partitions, dets):
        table[parts] = constant * float(det) * float(dimension(N, a, parts))
    logger.debug("measure table N=%d a=%+.1f max_part=%d: %d partitions, mass %.12f",
                 N, a, max_part, len(table), sum(table.values()))
    return table


def plancherel_marginal(k: int, t: float) -> float:
    """exp(-t) W(k) I_k(t): law of lam_1 at level (1, -1/2) under Plancherel."""
    return normalization_W(MINUS_HALF, k) * float(ive(k, t))
