"""
Continuous-time growth dynamics with a reflecting wall

Every particle carries two independent rate-1/2 clocks, one per direction.
A right move of y^m_k is blocked by y^{m-1}_{k-1} = y + 1 and otherwise pushes
the column y^{m+i}_k = y + i; a left move is blocked by y^{m-1}_k = y - 1 and
otherwise pushes the diagonal y^{m+j}_{k+j} = y - j. A left move at y = 0 is
reflected into a right move.

Rows 1..M are exact: no move on a row ever depends on rows above it, so the
law of the bottom M rows does not depend on the truncation.
"""
import logging
import multiprocessing
from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply
from tqdm import tqdm

from config.settings import DEBUG_INVARIANTS, MASS_DEFECT_TOL, OBSERVABLE_MARGIN, STATE_CAP
from growth.errors import DomainError, MassDefectError
from growth.paths import (
    LevelIndex, ParticleConfig, PathConfig, enumerate_paths, packed_config, row_size,
)

logger = logging.getLogger(__name__)

RIGHT = 'right'
LEFT = 'left'

Seed = Union[int, np.random.SeedSequence]


class Event(NamedTuple):
    time: float
    row: int
    index: int
    direction: str
    push: int


@dataclass
class EventLog:
    """Executed moves in time order."""
    events: List[Event] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def to_records(self) -> List[dict]:
        return [event._asdict() for event in self.events]


# ==================== MOVES ====================

def _move_right(rows: List[List[int]], r: int, i: int) -> Optional[int]:
    """Move row r (0-based), particle i (0-based) right; return the push extent or None if blocked."""
    y = rows[r][i]
    if r > 0 and i > 0 and rows[r - 1][i - 1] == y + 1:
        return None
    rows[r][i] = y + 2
    pushed = 0
    j = 1
    while r + j < len(rows) and rows[r + j][i] == y + j:
        rows[r + j][i] += 2
        pushed += 1
        j += 1
    return pushed


def _move_left(rows: List[List[int]], r: int, i: int) -> Optional[int]:
    y = rows[r][i]
    if r > 0 and i < len(rows[r - 1]) and rows[r - 1][i] == y - 1:
        return None
    rows[r][i] = y - 2
    pushed = 0
    j = 1
    while r + j < len(rows) and i + j < len(rows[r + j]) and rows[r + j][i + j] == y - j:
        rows[r + j][i + j] -= 2
        pushed += 1
        j += 1
    return pushed


def apply_move(rows: List[List[int]], m: int, k: int, direction: str) -> Tuple[Optional[int], str]:
    """
    Try one clock ring in place

    Args:
        rows: Mutable rows, row m at index m - 1
        m: Row (1-based)
        k: Particle index (1-based)
        direction: 'right' or 'left'

    Returns:
        (push extent or None if blocked, executed direction)
    """
    r, i = m - 1, k - 1
    if direction == LEFT and rows[r][i] == 0:
        direction = RIGHT
    if direction == RIGHT:
        return _move_right(rows, r, i), RIGHT
    return _move_left(rows, r, i), LEFT


def _particle_index(M: int) -> List[Tuple[int, int]]:
    return [(m, k) for m in range(1, M + 1) for k in range(1, row_size(m) + 1)]


def _check(rows: List[List[int]], event: Event) -> None:
    problems = ParticleConfig(tuple(tuple(r) for r in rows)).violations()
    assert not problems, f"invariant broken after {event}: {problems[0]}"


def _rng(seed: Seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def replica_seed(seed: int, replica: int) -> np.random.SeedSequence:
    """The replica-th child of SeedSequence(seed), independent of how replicas are scheduled."""
    return np.random.SeedSequence(seed, spawn_key=(replica,))


def simulate(t: float, M: int, seed: Seed, record_events: bool = True,
             check_invariants: bool = DEBUG_INVARIANTS) -> Tuple[ParticleConfig, EventLog]:
    """
    Run the dynamics on rows 1..M from the packed state up to time t

    The number of clock rings is Poisson(P t) for P particles, their times are
    uniform order statistics and each ring picks a (particle, direction)
    uniformly. Blocked moves are dropped from the log.
    """
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    start = packed_config(M)
    rows = [list(row) for row in start.rows]
    log = EventLog()
    if t == 0:
        return start, log
    particles = _particle_index(M)
    rng = _rng(seed)
    rings = int(rng.poisson(len(particles) * t))
    times = np.sort(rng.uniform(0.0, t, rings))
    choices = rng.integers(0, 2 * len(particles), rings)
    for time, choice in zip(times, choices):
        m, k = particles[choice // 2]
        push, direction = apply_move(rows, m, k, RIGHT if choice % 2 == 0 else LEFT)
        if push is None:
            continue
        event = Event(float(time), m, k, direction, push)
        if record_events:
            log.events.append(event)
        if check_invariants:
            _check(rows, event)
    logger.debug("simulated t=%.3f M=%d: %d rings, %d moves", t, M, rings, len(log))
    return ParticleConfig(tuple(tuple(r) for r in rows)), log


def replay(events: Iterable[Event], M: int) -> ParticleConfig:
    """Re-apply a log to the packed state; each move must be legal and push as logged."""
    rows = [list(row) for row in packed_config(M).rows]
    for event in events:
        event = Event(**event) if isinstance(event, dict) else Event(*event)
        push, direction = apply_move(rows, event.row, event.index, event.direction)
        if push is None or push != event.push or direction != event.direction:
            raise DomainError(f"event {event} does not replay")
    return ParticleConfig(tuple(tuple(r) for r in rows))


def _simulate_replicas(task: Tuple[float, int, int, Sequence[int]]) -> List[ParticleConfig]:
    t, M, seed, replicas = task
    return [simulate(t, M, replica_seed(seed, r), record_events=False)[0] for r in replicas]


def simulate_many(t: float, M: int, seed: int, replicas: int, jobs: int = 1,
                  progress: bool = False, chunk: int = 500) -> List[ParticleConfig]:
    """
    Final states of independent replicas, in replica order

    Replica r always uses replica_seed(seed, r), so the output does not
    depend on jobs.
    """
    tasks = [(t, M, seed, range(start, min(start + chunk, replicas)))
             for start in range(0, replicas, chunk)]
    results: List[ParticleConfig] = []
    with tqdm(total=replicas, disable=not progress, desc='replicas', unit='rep') as bar:
        if jobs > 1:
            with multiprocessing.Pool(jobs) as pool:
                for batch in pool.imap(_simulate_replicas, tasks):
                    results.extend(batch)
                    bar.update(len(batch))
        else:
            for task in tasks:
                batch = _simulate_replicas(task)
                results.extend(batch)
                bar.update(len(batch))
    return results


# ==================== OBSERVABLES ====================

def observable_rows(M: int, margin: int = OBSERVABLE_MARGIN) -> int:
    """Highest row whose statistics are read from an M-row simulation."""
    return max(M - margin, 1)


def height_profile(config: ParticleConfig, m: int, width: Optional[int] = None) -> np.ndarray:
    """Number of row-m particles strictly right of y, for y = 0..width."""
    row = np.array(config.row(m))
    if width is None:
        width = int(row.max()) + 1 if row.size else 0
    y = np.arange(width + 1)
    return (row[np.newaxis, :] > y[:, np.newaxis]).sum(axis=1)


def occupation_counts(configs: Iterable[ParticleConfig], rows: int, width: int) -> np.ndarray:
    """counts[m-1, y] = number of configurations with a particle at (y, m)."""
    counts = np.zeros((rows, width + 1), dtype=np.int64)
    for config in configs:
        for m in range(1, rows + 1):
            for y in config.row(m):
                if y <= width:
                    counts[m - 1, y] += 1
    return counts


# ==================== TRUNCATED GENERATOR ====================

@dataclass
class GeneratorMatrix:
    """Generator restricted to paths with parts <= max_part."""
    states: List[PathConfig]
    matrix: sparse.csr_matrix
    boundary: np.ndarray

    def index_of(self, path: PathConfig) -> int:
        return self.states.index(path)


def truncated_generator(N: int, a, max_part: int, cap: int = STATE_CAP) -> GeneratorMatrix:
    """
    Generator of the path dynamics up to level (N, a), truncated at max_part

    Rates are 1/2 per clock and 1 to the right at the wall. Moves leaving the
    truncation only feed the diagonal; their rows are flagged as boundary.
    """
    top = LevelIndex(N, a)
    states = enumerate_paths(top, max_part, limit=cap)
    index = {state.partitions: i for i, state in enumerate(states)}
    M = top.row
    particles = _particle_index(M)
    rows_i, cols_i, values = [], [], []
    diagonal = np.zeros(len(states))
    boundary = np.zeros(len(states), dtype=bool)
    for i, state in enumerate(states):
        base = [list(row) for row in state.to_particles().rows]
        for m, k in particles:
            for direction in (RIGHT, LEFT):
                rows = [list(row) for row in base]
                push, _ = apply_move(rows, m, k, direction)
                if push is None:
                    continue
                diagonal[i] -= 0.5
                target = tuple(
                    tuple((y - r - 1 + 2 * j) // 2 for j, y in enumerate(row, start=1))
                    for r, row in enumerate(rows, start=1)
                )
                j = index.get(target)
                if j is None:
                    boundary[i] = True
                    continue
                rows_i.append(i)
                cols_i.append(j)
                values.append(0.5)
    rows_i.extend(range(len(states)))
    cols_i.extend(range(len(states)))
    values.extend(diagonal)
    matrix = sparse.csr_matrix((values, (rows_i, cols_i)), shape=(len(states), len(states)))
    logger.info("truncated generator N=%d a=%+.1f max_part=%d: %d states, %d boundary",
                N, float(top.a), max_part, len(states), int(boundary.sum()))
    return GeneratorMatrix(states, matrix, boundary)


class OracleResult(NamedTuple):
    distribution: np.ndarray
    defect: float


def expm_oracle(Q: Union[GeneratorMatrix, sparse.spmatrix], t: float, initial: np.ndarray,
                tolerance: float = MASS_DEFECT_TOL) -> OracleResult:
    """
    initial e^{tQ} for a row-vector initial law

    Raises MassDefectError if more than tolerance of the mass escaped.
    """
    matrix = Q.matrix if isinstance(Q, GeneratorMatrix) else sparse.csr_matrix(Q)
    initial = np.asarray(initial, dtype=float)
    if t == 0:
        return OracleResult(initial.copy(), 0.0)
    distribution = expm_multiply(t * matrix.T.tocsr(), initial)
    defect = float(initial.sum() - distribution.sum())
    if defect > tolerance:
        raise MassDefectError(f"mass defect {defect:.3e} exceeds {tolerance:.1e} at t={t}", defect)
    return OracleResult(distribution, defect)
