"""Surface-adaptive inspection view planning and simulation."""

from ._firstlook import *  # noqa: F401,F403
from ._firstlook import FirstLookError

__all__ = [name for name in dir() if not name.startswith("_")]
