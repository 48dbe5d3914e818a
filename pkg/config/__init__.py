"""Config package for the wall growth toolkit"""

from . import settings

__all__ = ['settings']
