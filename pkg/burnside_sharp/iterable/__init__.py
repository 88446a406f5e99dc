"""burnside_sharp.iterable"""

from .stream import Stream  # noqa: F401
