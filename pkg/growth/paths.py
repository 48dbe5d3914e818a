"""
Level indices, particle configurations and paths in the branching graph

Levels are ordered (1,-1/2) < (1,+1/2) < (2,-1/2) < ...; level (n, a) is row
m = 2n + a - 1/2 of the particle picture. A partition lam at level (n, a)
places particles at y = 2 lam_k + m + 1 - 2k, k = 1..n.
"""
import logging
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator, List, Optional, Sequence, Tuple

from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF, check_half_int
from growth.errors import DomainError, StateCapError

logger = logging.getLogger(__name__)


@total_ordering
@dataclass(frozen=True)
class LevelIndex:
    n: int
    a: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"level n must be a positive integer, got {self.n}")
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'a', check_half_int(self.a))

    @property
    def key(self) -> float:
        return 2 * self.n + self.a

    @property
    def row(self) -> int:
        """Flat row coordinate m = 2n + a - 1/2."""
        return int(round(2 * self.n + self.a - 0.5))

    @classmethod
    def from_row(cls, m: int) -> 'LevelIndex':
        if int(m) != m or m < 1:
            raise DomainError(f"row must be a positive integer, got {m}")
        if m % 2 == 1:
            return cls((m + 1) // 2, MINUS_HALF)
        return cls(m // 2, PLUS_HALF)

    def distance(self, other: 'LevelIndex') -> int:
        return int(round(abs(2 * (other.n - self.n) + other.a - self.a)))

    def __lt__(self, other: 'LevelIndex') -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"({self.n},{'+' if self.a > 0 else '-'}1/2)"


def iota(x: int, level: LevelIndex) -> Tuple[int, int]:
    """Map x in the level-(n, a) line to (y, m) in the particle lattice."""
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    return int(round(2 * x + level.a + 0.5)), level.row


def iota_inverse(y: int, m: int) -> Tuple[int, LevelIndex]:
    if y < 0:
        raise DomainError(f"y must be nonnegative, got {y}")
    if (y - m - 1) % 2 != 0:
        raise DomainError(f"position {y} on row {m} has the wrong parity")
    level = LevelIndex.from_row(m)
    return int(round((y - level.a - 0.5) / 2)), level


def row_size(m: int) -> int:
    """Number of particles on row m."""
    return (m + 1) // 2


# ==================== INTERLACING ====================

def precedes(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """
    lam < mu in the branching graph: mu_{i+1} <= lam_i <= mu_i

    mu has the same length as lam (step (N,-1/2) -> (N,+1/2)) or one more
    part (step (N,+1/2) -> (N+1,-1/2)).
    """
    if len(mu) not in (len(lam), len(lam) + 1):
        return False
    for i, part in enumerate(lam):
        below = mu[i + 1] if i + 1 < len(mu) else 0
        if not below <= part <= mu[i]:
            return False
    return True


def kappa(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Edge multiplicity: 2 on a same-N step with lam_N > 0, otherwise 1, and 0 off the graph."""
    if not precedes(lam, mu):
        return 0
    if len(mu) == len(lam) and len(lam) > 0 and lam[-1] > 0:
        return 2
    return 1


# ==================== PARTICLE CONFIGURATIONS ====================

@dataclass(frozen=True)
class ParticleConfig:
    """Rows 1..M of strictly decreasing particle positions."""
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'rows', tuple(tuple(int(y) for y in row) for row in self.rows))

    @property
    def levels(self) -> int:
        return len(self.rows)

    def row(self, m: int) -> Tuple[int, ...]:
        return self.rows[m - 1]

    def violations(self) -> List[str]:
        """Human-readable list of broken invariants; empty when valid."""
        problems = []
        for m, row in enumerate(self.rows, start=1):
            if len(row) != row_size(m):
                problems.append(f"row {m} has {len(row)} particles, expected {row_size(m)}")
                continue
            for k, y in enumerate(row, start=1):
                if y < 0:
                    problems.append(f"y[{m}][{k}] = {y} is negative")
                if (y - m - 1) % 2:
                    problems.append(f"y[{m}][{k}] = {y} has the wrong parity")
            for k in range(len(row) - 1):
                if row[k] <= row[k + 1]:
                    problems.append(f"row {m} is not strictly decreasing")
        for m in range(1, len(self.rows)):
            lower, upper = self.rows[m - 1], self.rows[m]
            if len(lower) != row_size(m) or len(upper) != row_size(m + 1):
                continue
            for k, y in enumerate(lower):
                if not y < upper[k]:
                    problems.append(f"y[{m}][{k + 1}] = {y} is not left of y[{m + 1}][{k + 1}]")
                if k + 1 < len(upper) and not upper[k + 1] < y:
                    problems.append(f"y[{m + 1}][{k + 2}] is not left of y[{m}][{k + 1}]")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    def to_records(self) -> List[dict]:
        return [{'row': m, 'positions': list(row)} for m, row in enumerate(self.rows, start=1)]


def packed_config(M: int) -> ParticleConfig:
    """Densely packed initial state y^m_k = m - 2k + 1."""
    if M < 1:
        raise DomainError(f"M must be a positive integer, got {M}")
    return ParticleConfig(tuple(
        tuple(m - 2 * k + 1 for k in range(1, row_size(m) + 1)) for m in range(1, M + 1)
    ))


def partition_of_row(positions: Sequence[int], m: int) -> Tuple[int, ...]:
    return tuple((y - m - 1 + 2 * k) // 2 for k, y in enumerate(positions, start=1))


def row_of_partition(parts: Sequence[int], m: int) -> Tuple[int, ...]:
    return tuple(2 * lam + m + 1 - 2 * k for k, lam in enumerate(parts, start=1))


# ==================== PATHS ====================

def levels_up_to(top: LevelIndex) -> Iterator[LevelIndex]:
    for m in range(1, top.row + 1):
        yield LevelIndex.from_row(m)


@dataclass(frozen=True)
class PathConfig:
    """Partitions at levels (1,-1/2), (1,+1/2), ... up to a top level."""
    partitions: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        parts = tuple(tuple(int(p) for p in lam) for lam in self.partitions)
        object.__setattr__(self, 'partitions', parts)
        for m, lam in enumerate(parts, start=1):
            level = LevelIndex.from_row(m)
            if len(lam) != level.n:
                raise DomainError(f"level {level} needs {level.n} parts, got {lam}")
        for m in range(1, len(parts)):
            if not precedes(parts[m - 1], parts[m]):
                raise DomainError(f"partitions {parts[m - 1]} and {parts[m]} do not interlace")

    @property
    def top(self) -> LevelIndex:
        return LevelIndex.from_row(len(self.partitions))

    def at(self, level: LevelIndex) -> Tuple[int, ...]:
        return self.partitions[level.row - 1]

    @classmethod
    def zero(cls, top: LevelIndex) -> 'PathConfig':
        return cls(tuple((0,) * level.n for level in levels_up_to(top)))

    def to_particles(self) -> ParticleConfig:
        return ParticleConfig(tuple(
            row_of_partition(lam, m) for m, lam in enumerate(self.partitions, start=1)
        ))


def project_to_path(config: ParticleConfig, N: int, a) -> PathConfig:
    """Read the path up to level (N, a) off the bottom rows of a configuration."""
    top = LevelIndex(N, a)
    if top.row > config.levels:
        raise DomainError(f"configuration has {config.levels} rows, level {top} needs {top.row}")
    return PathConfig(tuple(
        partition_of_row(config.row(m), m) for m in range(1, top.row + 1)
    ))


def enumerate_paths(top: LevelIndex, max_part: int, limit: Optional[int] = None) -> List[PathConfig]:
    """
    Every path up to top with all parts <= max_part, in a fixed deterministic order

    Raises StateCapError as soon as more than limit paths would be produced.
    """
    result: List[Tuple[Tuple[int, ...], ...]] = [()]
    for level in levels_up_to(top):
        extended = []
        for prefix in result:
            for lam in _interlacing_children(prefix[-1] if prefix else None, level.n, max_part):
                extended.append(prefix + (lam,))
                if limit is not None and len(extended) > limit:
                    raise StateCapError(
                        f"more than {limit} paths up to level {top} with parts <= {max_part}")
        result = extended
    return [PathConfig(p) for p in result]


def _interlacing_children(lam, size: int, max_part: int) -> Iterator[Tuple[int, ...]]:
    """All mu of the given size with lam < mu and mu_1 <= max_part."""
    if lam is None:
        for value in range(max_part + 1):
            yield (value,)
        return

    def build(i: int, prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if i == size:
            yield prefix
            return
        low = lam[i] if i < len(lam) else 0
        high = max_part if i == 0 else min(prefix[-1], lam[i - 1])
        for value in range(high, low - 1, -1):
            yield from build(i + 1, prefix + (value,))

    yield from build(0, ())
