"""
Parsing and validation of command-line parameters
"""
import re
from fractions import Fraction
from typing import Dict, List

from growth.chebyshev_jacobi import check_half_int
from growth.errors import DomainError
from growth.kernel import KINDS, KernelPoint

_POINT_PATTERN = re.compile(r'^\s*(\d+)\s*,\s*([+-]?[\d./]+)\s*,\s*(\d+)\s*$')


def parse_half_int(text: str) -> float:
    """
    Parse -1/2 or +1/2 in any of the forms '-1/2', '-0.5', '+.5', '1/2'

    Raises:
        DomainError: for anything else
    """
    try:
        value = float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"{text!r} is not -1/2 or +1/2") from None
    return check_half_int(value)


def parse_kernel_point(text: str) -> KernelPoint:
    """Parse 'n,a,s', for example '3,-1/2,4'."""
    match = _POINT_PATTERN.match(text or '')
    if not match:
        raise DomainError(f"kernel point {text!r} must look like 'n,a,s'")
    n, a, s = match.groups()
    return KernelPoint.of(int(n), parse_half_int(a), int(s))


def parse_float_list(text: str) -> List[float]:
    """
    Parse '0.1,0.2,0.3' or a range 'start:stop:count' (count points, stop included)
    """
    text = (text or '').strip()
    if not text:
        raise DomainError("empty list of numbers")
    try:
        if ':' in text:
            start, stop, count = text.split(':')
            count = int(count)
            if count < 1:
                raise DomainError(f"range {text!r} needs a positive count")
            if count == 1:
                return [float(start)]
            step = (float(stop) - float(start)) / (count - 1)
            return [float(start) + i * step for i in range(count)]
        return [float(part) for part in text.split(',')]
    except ValueError:
        raise DomainError(f"{text!r} is not a list of numbers") from None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def validate_simulate_config(config: Dict) -> Dict:
    _require(config['time'] >= 0, f"--time must be nonnegative, got {config['time']}")
    _require(config['levels'] >= 1, f"--levels must be at least 1, got {config['levels']}")
    _require(config['replicas'] >= 1, f"--replicas must be at least 1, got {config['replicas']}")
    _require(config['seed'] >= 0, f"--seed must be nonnegative, got {config['seed']}")
    _require(config['jobs'] >= 1, f"--jobs must be at least 1, got {config['jobs']}")
    return config


def validate_kernel_config(config: Dict) -> Dict:
    _require(config['gamma'] >= 0, f"--gamma must be nonnegative, got {config['gamma']}")
    _require(config['kind'] in KINDS, f"--kind must be one of {KINDS}, got {config['kind']!r}")
    _require(len(config['points']) >= 1, "at least one --point is required")
    return config


def validate_shape_config(config: Dict) -> Dict:
    _require(config['t'] > 0, f"--t must be positive, got {config['t']}")
    for name in ('d', 'l'):
        _require(all(v > 0 for v in config[name]), f"--{name} values must be positive")
    return config
