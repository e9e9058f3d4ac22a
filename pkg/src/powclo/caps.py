"""Enumeration caps.

Defaults keep every exhaustive check at desk scale. The environment variable
``POWCLO_CAPS`` may raise them, e.g. ``POWCLO_CAPS="endo=9,power=5"``; larger
caps can be very slow.
"""

import os
from dataclasses import dataclass, fields, replace

from .errors import CapExceeded


@dataclass(frozen=True)
class Caps:
    endo: int = 8  # carrier size for brute-force endomorphism enumeration
    power: int = 4  # base carrier size for extended power algebras
    congruence: int = 10  # carrier size for congruence lattice enumeration
    bell: int = 7  # carrier size for the partition-scan oracle
    free: int = 4  # generators of the built-in free semilattice
    assignments: int = 1 << 22  # subset assignments scanned by the term-stability check


def parse_caps(text, base=None):
    caps = base or Caps()
    if not text:
        return caps
    known = {f.name for f in fields(Caps)}
    updates = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in known:
            raise ValueError(f"unknown cap {key!r} in POWCLO_CAPS")
        updates[key] = int(value)
    return replace(caps, **updates)


def current():
    return parse_caps(os.environ.get("POWCLO_CAPS", ""))


def check(what, size, cap):
    if size > cap:
        raise CapExceeded(what, size, cap)
