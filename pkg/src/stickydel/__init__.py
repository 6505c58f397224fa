"""Codes correcting sticky deletions of limited magnitude.

Modules: ``sequences`` (run profiles), ``galois`` (GF(p^m)), ``bch``,
``channel``, ``nonsystematic``, ``systematic``, ``oracle`` and ``cli``.
"""

from .channel import ChannelSpec
from .errors import DecodeError

__all__ = ["ChannelSpec", "DecodeError"]
__version__ = "0.1.0"
