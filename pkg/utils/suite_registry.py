"""
Verification suite lookup by name
"""
from typing import List

from config.settings import SUITE_CONFIG

ALL = 'all'


def detect_suite(name: str) -> str:
    """
    Normalize a user-supplied suite name

    Args:
        name: Suite name as typed (case and '_' / '-' are ignored)

    Returns:
        Suite identifier, 'all', or 'unknown'
    """
    if not name or not isinstance(name, str):
        return 'unknown'
    key = name.strip().lower().replace('_', '-')
    if key == ALL:
        return ALL
    if key in ('kernel', 'kernelmc', 'kernel-monte-carlo'):
        key = 'kernel-mc'
    return key if key in SUITE_CONFIG else 'unknown'


def get_suite_display_name(suite: str) -> str:
    if suite == ALL:
        return 'All suites'
    return SUITE_CONFIG.get(suite, {}).get('name', 'Unknown suite')


def is_supported_suite(suite: str) -> bool:
    return suite == ALL or (suite in SUITE_CONFIG and SUITE_CONFIG[suite]['enabled'])


def expand_suites(suite: str) -> List[str]:
    """The concrete suites behind a name, in configuration order."""
    if suite == ALL:
        return [name for name, entry in SUITE_CONFIG.items() if entry['enabled']]
    return [suite] if is_supported_suite(suite) else []


def get_suite_class(suite: str):
    """Suite class for an identifier; imported lazily so the CLI starts fast."""
    from suites import SUITE_CLASSES
    try:
        return SUITE_CLASSES[suite]
    except KeyError:
        raise KeyError(f"no suite named {suite!r}") from None
