"""
Tagged console output for the ternary DHT toolkit
Progress lines go to stderr as "[TAG] message"; TERNARY_DHT_QUIET=1 silences them
"""

import os
import sys

from config import get_setting

_quiet = os.environ.get("TERNARY_DHT_QUIET") == "1" or bool(get_setting("quiet", False))


def log(tag: str, message: str):
    """Print a progress line unless quiet mode is on"""
    if _quiet:
        return
    sys.stderr.write(f"[{tag}] {message}\n")
    sys.stderr.flush()


def warn(tag: str, message: str):
    """Warnings are always shown"""
    sys.stderr.write(f"[WARN] [{tag}] {message}\n")
    sys.stderr.flush()


def error(message: str):
    sys.stderr.write(f"[ERROR] {message}\n")
    sys.stderr.flush()
