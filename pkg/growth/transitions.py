"""
Discrete-time one-level chains T^phi_{N,a}, link matrices between levels and
the sequential-update chain on paths

For phi(x) = p0 + p1 x the entries of I^phi are banded, so T^phi only moves
each part by -1, 0 or +1 and every row is a finite sum computed exactly.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from growth.characters import dim_even, dim_odd, dimension, enumerate_partitions
from growth.chebyshev_jacobi import (
    DEFAULT_QUADRATURE, MINUS_HALF, PLUS_HALF, QuadratureSpec, check_half_int,
    eval_J, normalization_W, weighted_integral,
)
from growth.errors import DomainError, ForbiddenTransitionError
from growth.paths import LevelIndex, PathConfig, levels_up_to, precedes

logger = logging.getLogger(__name__)

Partition = Tuple[int, ...]


@dataclass(frozen=True)
class LinearPhi:
    """phi(x) = p0 + p1 x with phi(1) = 1."""
    p0: float
    p1: float

    def __post_init__(self):
        if abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise DomainError(f"phi(1) must equal 1, got {self.p0 + self.p1}")

    @classmethod
    def step(cls, p: float) -> 'LinearPhi':
        """phi = 1 - p + p x."""
        return cls(1.0 - p, p)

    def __call__(self, x):
        return self.p0 + self.p1 * np.asarray(x, dtype=float)


Phi = Union[LinearPhi, Callable]


def _band_value(a: float, k: int, l: int) -> float:
    """(W(l)/pi) * integral(x J_k J_l weight)."""
    if abs(k - l) == 1:
        if a == MINUS_HALF and k == 0:
            return 1.0
        return 0.5
    if a == PLUS_HALF and k == 0 and l == 0:
        return -0.5
    return 0.0


def I_phi(a, phi: Phi, k: int, l: int, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """
    (W(l)/pi) * integral(J_k J_l phi weight)

    The normalization W sits on the second index l.
    """
    a = check_half_int(a)
    if k < 0 or l < 0:
        raise DomainError(f"indices must be nonnegative, got ({k}, {l})")
    if isinstance(phi, LinearPhi):
        return phi.p0 * (1.0 if k == l else 0.0) + phi.p1 * _band_value(a, k, l)
    integral = weighted_integral(lambda x: eval_J(a, k, x) * eval_J(a, l, x) * phi(x), a, q)
    return normalization_W(a, l) * integral / np.pi


def _shifted(parts: Sequence[int]) -> List[int]:
    N = len(parts)
    return [parts[i] - i - 1 + N for i in range(N)]


def transition_T(N: int, a, phi: Phi, mu: Sequence[int], lam: Sequence[int],
                 q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """T^phi_{N,a}(mu, lam) = det[I(mu_i - i + N, lam_j - j + N)] dim(lam) / dim(mu)."""
    a = check_half_int(a)
    if len(mu) != N or len(lam) != N:
        raise DomainError(f"both partitions need {N} parts")
    x, y = _shifted(mu), _shifted(lam)
    matrix = np.array([[I_phi(a, phi, xi, yj, q) for yj in y] for xi in x])
    ratio = float(dimension(N, a, tuple(lam)) / dimension(N, a, tuple(mu)))
    return float(np.linalg.det(matrix)) * ratio


def transition_row(N: int, a, phi: LinearPhi, mu: Sequence[int]) -> Dict[Partition, float]:
    """All nonzero entries T(mu, .) for a linear phi."""
    a = check_half_int(a)
    choices = [range(max(part - 1, 0), part + 2) for part in mu]
    row = {}
    for lam in product(*choices):
        if any(lam[i] < lam[i + 1] for i in range(N - 1)):
            continue
        value = transition_T(N, a, phi, mu, lam)
        if value != 0.0:
            row[tuple(lam)] = value
    return row


def transition_matrix(N: int, a, phi: Phi, max_part: int,
                      q: QuadratureSpec = DEFAULT_QUADRATURE) -> Tuple[List[Partition], np.ndarray]:
    """T^phi over every partition with parts <= max_part."""
    states = list(enumerate_partitions(N, max_part))
    index = {s: i for i, s in enumerate(states)}
    matrix = np.zeros((len(states), len(states)))
    for i, mu in enumerate(states):
        if isinstance(phi, LinearPhi):
            for lam, value in transition_row(N, a, phi, mu).items():
                if lam in index:
                    matrix[i, index[lam]] = value
        else:
            for j, lam in enumerate(states):
                matrix[i, j] = transition_T(N, a, phi, mu, lam, q)
    return states, matrix


# ==================== LINKS ====================

def _same_N_entry(x: int, y: int) -> int:
    if y == 0 and x >= 0:
        return 1
    if x >= y > 0:
        return 2
    return 0


def link_same_N(N: int, mu: Sequence[int], lam: Sequence[int]) -> float:
    """Link from mu at level (N,+1/2) down to lam at level (N,-1/2)."""
    if len(mu) != N or len(lam) != N:
        raise DomainError(f"both partitions need {N} parts")
    x, y = _shifted(mu), _shifted(lam)
    det = np.linalg.det(np.array([[_same_N_entry(xi, yj) for yj in y] for xi in x], dtype=float))
    # leading coefficients of the two polynomial families differ by 2^(N-1)
    return float(dim_even(N, tuple(lam)) / dim_odd(N, tuple(mu))) * float(det) * 2.0 ** (1 - N)


def link_down_N(N: int, mu: Sequence[int], lam: Sequence[int]) -> float:
    """Link from mu at level (N,-1/2) down to lam at level (N-1,+1/2)."""
    if len(mu) != N or len(lam) != N - 1:
        raise DomainError(f"mu needs {N} parts and lam {N - 1}")
    x = _shifted(mu)
    # lam padded with a virtual zero part gives the column of ones
    y = [lam[j] - j - 1 + N - 1 for j in range(N - 1)] + [-1]
    det = np.linalg.det(np.array([[1.0 if xi > yj else 0.0 for yj in y] for xi in x]))
    return float(dim_odd(N - 1, tuple(lam)) / dim_even(N, tuple(mu))) * float(det)


def link_between(upper: LevelIndex, mu: Sequence[int], lam: Sequence[int]) -> float:
    """Link from level upper to the level directly below it."""
    if upper.a == PLUS_HALF:
        return link_same_N(upper.n, mu, lam)
    if upper.n < 2:
        raise DomainError("level (1,-1/2) has no level below it")
    return link_down_N(upper.n, mu, lam)


def central_conditional(path: PathConfig) -> float:
    """Probability of the lower levels of path given its top level, as a product of links."""
    weight = 1.0
    for m in range(len(path.partitions), 1, -1):
        upper = LevelIndex.from_row(m)
        weight *= link_between(upper, path.partitions[m - 1], path.partitions[m - 2])
        if weight == 0.0:
            break
    return weight


def link_matrix(upper: LevelIndex, max_part: int) -> Tuple[List[Partition], List[Partition], np.ndarray]:
    lower = LevelIndex.from_row(upper.row - 1)
    rows = list(enumerate_partitions(upper.n, max_part))
    cols = list(enumerate_partitions(lower.n, max_part))
    matrix = np.array([[link_between(upper, mu, lam) if precedes(lam, mu) else 0.0
                        for lam in cols] for mu in rows])
    return rows, cols, matrix


def commutation_residual(upper: LevelIndex, phi: LinearPhi, max_part: int) -> float:
    """
    Max |T_upper Link - Link T_lower| over rows whose one-step support stays
    inside the truncation
    """
    lower = LevelIndex.from_row(upper.row - 1)
    rows, cols, link = link_matrix(upper, max_part)
    _, T_upper = transition_matrix(upper.n, upper.a, phi, max_part)
    _, T_lower = transition_matrix(lower.n, lower.a, phi, max_part)
    residual = T_upper @ link - link @ T_lower
    interior = [i for i, mu in enumerate(rows) if mu[0] <= max_part - 1]
    return float(np.max(np.abs(residual[interior]))) if interior else 0.0


# ==================== SMALLEST DETERMINANT ====================

def d_r_recurrence(r: int, p0: float, p1: float) -> float:
    """D_r = p0 D_{r-1} - (p1^2/4) D_{r-2} with D_0 = 1 and D_1 = p0 - p1/2 (the wall entry)."""
    if r < 0:
        raise DomainError(f"r must be nonnegative, got {r}")
    previous, current = 1.0, p0 - 0.5 * p1
    if r == 0:
        return previous
    for _ in range(r - 1):
        previous, current = current, p0 * current - 0.25 * p1 * p1 * previous
    return current


def d_r_bound(r: int, p0: float, p1: float) -> float:
    """
    Closed-form lower bound for diagonal entries of T^phi at level size r

    (R+^r (R+ - p1/2) - R-^r (R- - p1/2)) / sqrt(p0^2 - p1^2), with the
    confluent limit (p0/2)^r when p0 = p1.
    """
    disc = p0 * p0 - p1 * p1
    if disc < 0:
        raise DomainError(f"needs p0 >= p1 >= 0, got p0={p0}, p1={p1}")
    if disc <= 1e-14 * max(p0 * p0, 1e-300):
        return (p0 / 2.0) ** r
    root = np.sqrt(disc)
    plus, minus = (p0 + root) / 2.0, (p0 - root) / 2.0
    return float((plus ** r * (plus - p1 / 2.0) - minus ** r * (minus - p1 / 2.0)) / root)


def cauchy_binet_check(N: int, a, phi: LinearPhi, zeta: Sequence[int], ell: Sequence[int],
                       cutoff: int, psi: Optional[LinearPhi] = None) -> Tuple[float, float]:
    """
    Multiplicativity of I^phi through the sum over ordered indices

    Compares det[I^{phi psi}(zeta_i, ell_j)] with the sum over
    k_1 > ... > k_N >= 0 (k_1 <= cutoff) of det[I^phi(zeta_i, k_j)] det[I^psi(k_i, ell_j)].
    psi defaults to phi. The product phi psi is quadratic, so its side uses quadrature.
    """
    a = check_half_int(a)
    psi = phi if psi is None else psi
    direct = np.linalg.det(np.array([
        [I_phi(a, lambda x: phi(x) * psi(x), z, l) for l in ell] for z in zeta
    ]))
    total = 0.0
    for parts in enumerate_partitions(N, cutoff - N + 1):
        k = [parts[i] - i - 1 + N for i in range(N)]
        left = np.linalg.det(np.array([[I_phi(a, phi, z, kj) for kj in k] for z in zeta]))
        if left == 0.0:
            continue
        right = np.linalg.det(np.array([[I_phi(a, psi, ki, l) for l in ell] for ki in k]))
        total += left * right
    return float(total), float(direct)


# ==================== SEQUENTIAL UPDATE ON PATHS ====================

def _conditional(level: LevelIndex, phi: LinearPhi, current: Partition,
                 below_new: Optional[Partition]) -> Dict[Partition, float]:
    row = transition_row(level.n, level.a, phi, current)
    if below_new is None:
        return row
    weights = {}
    for lam, value in row.items():
        if not precedes(below_new, lam):
            continue
        weight = value * link_between(level, lam, below_new)
        if weight != 0.0:
            weights[lam] = weight
    total = sum(weights.values())
    if total <= 0.0:
        raise ForbiddenTransitionError(
            f"no admissible move at level {level} from {current} over {below_new}")
    return {lam: w / total for lam, w in weights.items()}


def multivariate_distribution(phi: LinearPhi, path: PathConfig) -> Dict[Tuple[Partition, ...], float]:
    """
    Exact one-step law of the sequential-update chain from path

    The bottom level moves by T^phi; each higher level is drawn from
    T(x_k, y_k) Link(y_k, y_{k-1}) normalized over y_k.
    """
    laws: Dict[Tuple[Partition, ...], float] = {(): 1.0}
    for level in levels_up_to(path.top):
        current = path.at(level)
        extended: Dict[Tuple[Partition, ...], float] = {}
        for prefix, weight in laws.items():
            below = prefix[-1] if prefix else None
            for lam, p in _conditional(level, phi, current, below).items():
                key = prefix + (lam,)
                extended[key] = extended.get(key, 0.0) + weight * p
        laws = extended
    return laws


def multivariate_step(phi: LinearPhi, path: PathConfig, rng: np.random.Generator) -> PathConfig:
    """Sample one sequential-update step."""
    new_parts: List[Partition] = []
    for level in levels_up_to(path.top):
        law = _conditional(level, phi, path.at(level), new_parts[-1] if new_parts else None)
        options = list(law)
        probabilities = np.array([law[o] for o in options])
        choice = rng.choice(len(options), p=probabilities / probabilities.sum())
        new_parts.append(options[choice])
    return PathConfig(tuple(new_parts))


def propagate(phi: LinearPhi, distribution: Dict[Tuple[Partition, ...], float],
              steps: int) -> Dict[Tuple[Partition, ...], float]:
    """Push a law on paths through steps sequential-update steps."""
    for step in range(steps):
        updated: Dict[Tuple[Partition, ...], float] = {}
        for parts, weight in distribution.items():
            for target, p in multivariate_distribution(phi, PathConfig(parts)).items():
                updated[target] = updated.get(target, 0.0) + weight * p
        distribution = updated
        logger.debug("propagated step %d: %d paths in support", step + 1, len(distribution))
    return distribution


def composed_law(t: float, start: PathConfig, steps: int,
                 extrapolate: bool = False) -> Dict[Tuple[Partition, ...], float]:
    """
    Law of the path after steps updates with phi = 1 + (t/steps)(x - 1).

    (1 + t(x-1)/m)^m misses exp(t(x-1)) at first order in 1/m. With
    extrapolate the m- and 2m-step laws are combined as 2 P_2m - P_m,
    which cancels that term.
    """
    initial = {start.partitions: 1.0}
    law = propagate(LinearPhi.step(t / steps), initial, steps)
    if not extrapolate:
        return law
    finer = propagate(LinearPhi.step(t / (2 * steps)), initial, 2 * steps)
    return {parts: 2.0 * finer.get(parts, 0.0) - law.get(parts, 0.0)
            for parts in finer.keys() | law.keys()}


def total_variation(reference: np.ndarray, states: Sequence[PathConfig],
                    law: Dict[Tuple[Partition, ...], float]) -> float:
    """TV distance to a vector over states; mass off the states counts in full."""
    inside = np.array([law.get(state.partitions, 0.0) for state in states])
    listed = {state.partitions for state in states}
    outside = sum(abs(weight) for parts, weight in law.items() if parts not in listed)
    return 0.5 * (float(np.abs(reference - inside).sum()) + outside)
