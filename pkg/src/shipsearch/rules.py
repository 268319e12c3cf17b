"""Outer-totalistic rule parsing and row evolution.

Rules are the usual B.../S... digit sets over the Moore neighborhood.
Rows are little-endian machine words: bit j of a row is cell j, so a row
of width w uses bits 0..w-1 and everything outside is dead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

ROW_WIDTH_LIMIT = 32

_RULE_RE = re.compile(r"^B(\d*)/S(\d*)$", re.IGNORECASE)


@dataclass(frozen=True)
class Rule:
    birth: frozenset[int] = field(default_factory=frozenset)
    survive: frozenset[int] = field(default_factory=frozenset)

    def __str__(self) -> str:
        return format_rule(self)


def parse_rule(text: str) -> Rule:
    """Parse "B3/S23"-style notation (case-insensitive, digits in any order).

    Rejects digit 9 (a Moore cell has 8 neighbors) and B0 (an unstable
    background breaks every boundary assumption downstream).
    """
    m = _RULE_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed rule {text!r}: expected B<digits>/S<digits>")
    bpart, spart = m.group(1), m.group(2)
    if "9" in bpart or "9" in spart:
        raise ValueError(f"malformed rule {text!r}: digit 9 exceeds the 8-cell neighborhood")
    birth = frozenset(int(c) for c in bpart)
    if 0 in birth:
        raise ValueError(f"unsupported rule {text!r}: B0 rules have no stable dead background")
    return Rule(birth, frozenset(int(c) for c in spart))


def format_rule(rule: Rule) -> str:
    """Canonical form: ascending digits, "B/S" when both sets are empty."""
    b = "".join(str(d) for d in sorted(rule.birth))
    s = "".join(str(d) for d in sorted(rule.survive))
    return f"B{b}/S{s}"


def evolution_table(rule: Rule) -> tuple[int, ...]:
    """512-entry next-state table indexed by a 3x3 neighborhood.

    Index = above_triple | mid_triple << 3 | below_triple << 6, each triple
    little-endian (bit 0 = leftmost cell). The entry is the next state of
    the center cell of the mid triple.
    """
    table = []
    for idx in range(512):
        above, mid, below = idx & 7, (idx >> 3) & 7, (idx >> 6) & 7
        center = (mid >> 1) & 1
        count = _POP3[above] + _POP3[below] + (mid & 1) + ((mid >> 2) & 1)
        alive = count in rule.survive if center else count in rule.birth
        table.append(1 if alive else 0)
    return tuple(table)


_POP3 = tuple(bin(v).count("1") for v in range(8))


def evolve_cell(table: tuple[int, ...], center: int, neighbors) -> int:
    """Next state of a cell given its 8 neighbors in any order."""
    ns = list(neighbors)
    above = ns[0] | ns[1] << 1 | ns[2] << 2
    mid = ns[3] | center << 1 | ns[4] << 2
    below = ns[5] | ns[6] << 1 | ns[7] << 2
    return table[above | mid << 3 | below << 6]


def evolve_row_triple(table: tuple[int, ...], above: int, mid: int, below: int, width: int) -> int:
    """Evolve the middle row of a three-row strip of the given width."""
    mask = (1 << width) - 1
    above &= mask
    mid &= mask
    below &= mask
    # shifting left once makes (row >> j) & 7 the triple centered on cell j
    a, m, b = above << 1, mid << 1, below << 1
    out = 0
    for j in range(width):
        idx = (a >> j) & 7 | ((m >> j) & 7) << 3 | ((b >> j) & 7) << 6
        out |= table[idx] << j
    return out
