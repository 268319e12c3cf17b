"""Search state space for shifted-row spaceship searches.

A partial ship is a sequence of rows r[0], r[1], ... where row i is row
y(i) of generation t(i) of the evolving pattern, with i = p*y + k*t. Under
that interleaving the evolution rule becomes one local constraint between
rows of the sequence,

    r[i-p+k] = evolve(r[i-2p], r[i-p], r[i])            (the forward form)

together with its restatement around the newest row,

    r[i] = evolve(r[i-p-k], r[i-k], r[i+p-k])           (the lookahead form)

whose last input is a row that does not exist yet. Diagonal translation
stores row y sheared sideways by y cells, which turns a one-cell sideways
drift per k image rows into fixed per-instance sampling offsets; glide
symmetry stores alternate rows mirrored. Both transforms are chosen so the
constraint looks identical at every level, which is what lets one
precomputed table drive the whole search (and what makes "same last 2p
rows" a sound equivalence).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .pattern import Pattern
from .rules import ROW_WIDTH_LIMIT, Rule, evolution_table, evolve_row_triple

ASYMMETRIC = "asymmetric"
EVEN_MIRROR = "even-mirror"
ODD_MIRROR = "odd-mirror"
GLIDE_REFLECT = "glide-reflect"
SYMMETRIES = (ASYMMETRIC, EVEN_MIRROR, ODD_MIRROR, GLIDE_REFLECT)

ORTHOGONAL = "orthogonal"
DIAGONAL = "diagonal"
TRANSLATIONS = (ORTHOGONAL, DIAGONAL)


@dataclass(frozen=True)
class SearchParams:
    rule: Rule
    period: int
    offset: int
    width: int
    symmetry: str = ASYMMETRIC
    translation: str = ORTHOGONAL

    def __post_init__(self):
        p, k, w = self.period, self.offset, self.width
        if k == 0:
            raise ValueError("offset k = 0 would search for oscillators, not ships")
        if not 1 <= k < p:
            raise ValueError(f"offset must satisfy 1 <= k < p (got k={k}, p={p})")
        if math.gcd(k, p) != 1:
            raise ValueError(f"gcd(k, p) must be 1 (got gcd({k}, {p}) = {math.gcd(k, p)})")
        if not 1 <= w <= ROW_WIDTH_LIMIT:
            raise ValueError(f"width must be in 1..{ROW_WIDTH_LIMIT} (got {w})")
        if self.symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        if self.translation not in TRANSLATIONS:
            raise ValueError(f"unknown translation {self.translation!r}")
        if self.symmetry == GLIDE_REFLECT and self.translation != ORTHOGONAL:
            raise ValueError("glide-reflect symmetry requires orthogonal translation")
        if self.translation == DIAGONAL and self.symmetry != ASYMMETRIC:
            raise ValueError("diagonal translation requires asymmetric symmetry")
        if 0 in self.rule.birth:
            raise ValueError("B0 rules are unsupported (unstable background)")

    @property
    def mirrored(self) -> bool:
        return self.symmetry in (EVEN_MIRROR, ODD_MIRROR)

    def generation_of(self, i: int) -> int:
        """t(i): which generation row i belongs to (0 <= t < p)."""
        return (pow(self.offset, -1, self.period) * i) % self.period

    def image_row_of(self, i: int) -> int:
        """y(i): which row of that generation's pattern row i holds."""
        return (i - self.offset * self.generation_of(i)) // self.period

    def row_orientation(self, i: int) -> bool:
        """True when stored row i is the mirror image of the true row.

        Glide-reflect only. With k odd the orientation alternates with the
        image row; with k even (p odd) it alternates with the generation.
        Either assignment makes every constraint instance read the same
        pattern of reversals, which is checked by test_orientation_algebra.
        """
        if self.symmetry != GLIDE_REFLECT:
            return False
        if self.offset % 2 == 1:
            return self.image_row_of(i) % 2 == 1
        return self.generation_of(i) % 2 == 1


def debruijn_size(params: SearchParams) -> int:
    """log2 of the number of distinct search states, shown as a difficulty
    estimate: each state is 2p rows of w cells."""
    return 2 * params.period * params.width


def reverse_row(row: int, width: int) -> int:
    out = 0
    for j in range(width):
        out |= ((row >> j) & 1) << (width - 1 - j)
    return out


# ---------------------------------------------------------------------------
# constraint geometry


@dataclass(frozen=True)
class RowRef:
    """One row's role in a constraint instance.

    shift: the row is sampled at column j + shift when the instance's
    result cell is at column j (+1/-1 under the diagonal shear, since
    stored rows one image row apart are sheared one cell relative to each
    other). reversed: the stored row enters the instance mirrored (glide).
    """

    index: int
    shift: int = 0
    reversed: bool = False


@dataclass(frozen=True)
class Instance:
    above: RowRef
    mid: RowRef
    below: RowRef
    result: RowRef

    @property
    def inputs(self) -> tuple[RowRef, RowRef, RowRef]:
        return (self.above, self.mid, self.below)


@dataclass(frozen=True)
class ConstraintIndices:
    star: Instance
    lookahead: Instance


def _mode_flags(params: SearchParams) -> tuple[tuple[bool, ...], tuple[bool, ...]]:
    # reversal flags (above, mid, below, result), normalized so row i itself
    # is never reversed; derived from the orientation assignment in
    # row_orientation (see that docstring)
    if params.symmetry != GLIDE_REFLECT:
        return (False, False, False, False), (False, False, False, False)
    if params.offset % 2 == 1:
        return (False, True, False, True), (True, False, True, False)
    return (False, False, False, True), (True, True, True, False)


def constraint_indices(params: SearchParams, i: int) -> ConstraintIndices:
    """The two constraint instances whose newest row is r[i]."""
    p, k = params.period, params.offset
    s = 1 if params.translation == DIAGONAL else 0
    star_rev, look_rev = _mode_flags(params)
    star = Instance(
        above=RowRef(i - 2 * p, s, star_rev[0]),
        mid=RowRef(i - p, 0, star_rev[1]),
        below=RowRef(i, -s, star_rev[2]),
        result=RowRef(i - p + k, 0, star_rev[3]),
    )
    lookahead = Instance(
        above=RowRef(i - p - k, s, look_rev[0]),
        mid=RowRef(i - k, 0, look_rev[1]),
        below=RowRef(i + p - k, -s, look_rev[2]),
        result=RowRef(i, 0, look_rev[3]),
    )
    return ConstraintIndices(star, lookahead)


def edge_columns(params: SearchParams) -> range:
    """Column positions at which the successor graph places edges (triples
    of the new rows). Chosen so every cell position where the known rows
    could produce a birth outside the searched strip gets checked:
    asymmetric and glide need one boundary column on each side, mirrors
    only on the outer side, and the diagonal shear widens the reach of the
    sheared inputs by one more column on each side."""
    w = params.width
    if params.translation == DIAGONAL:
        return range(-3, w + 2)
    if params.mirrored:
        return range(0, w + 1)
    return range(-1, w + 1)


# ---------------------------------------------------------------------------
# frame evaluation (shared by is_consistent and the oracle)


def frame_margin(params: SearchParams) -> int:
    return 6


def frame_base(params: SearchParams) -> int:
    """Frame bit position of cell 0 (mirror ghosts sit below it)."""
    return frame_margin(params) + (params.width if params.mirrored else 0)


def frame_width(params: SearchParams) -> int:
    if params.mirrored:
        return 2 * params.width + 2 * frame_margin(params)
    return params.width + 2 * frame_margin(params)


def frame_row(params: SearchParams, row: int, ref: RowRef | None = None) -> int:
    """Place a stored row into frame coordinates (frame bit = cell + base)
    after applying the reference's reversal and shear, extending mirror
    halves so evolution near the axis sees the reflected cells."""
    w, base = params.width, frame_base(params)
    shift = ref.shift if ref else 0
    rev = reverse_row(row, w)
    if ref is not None and ref.reversed:
        row, rev = rev, row
    out = row << (base - shift)
    if params.symmetry == EVEN_MIRROR:
        out |= rev << (base - shift - w)
    elif params.symmetry == ODD_MIRROR:
        out |= rev << (base - shift - w + 1)
    return out


def state_rows(rows: list[int], index: int) -> int:
    """Row at a merged index, dead before the sequence starts."""
    return rows[index] if 0 <= index < len(rows) else 0


def is_consistent(params: SearchParams, rows: list[int]) -> bool:
    """Every fully-in-sequence forward instance holds, and no in-sequence
    strip evolves a live cell outside the searched width."""
    table = evolution_table(params.rule)
    for i in range(2 * params.period, len(rows)):
        inst = constraint_indices(params, i).star
        if not instance_holds(params, table, rows, inst):
            return False
    return True


def instance_holds(params: SearchParams, table, rows, inst: Instance) -> bool:
    """Evaluate one instance over the frame: evolved inputs must equal the
    result row exactly, including every out-of-width position (the frame
    equality covers both the constraint and the boundary condition)."""
    fw = frame_width(params)
    a = frame_row(params, state_rows(rows, inst.above.index), inst.above)
    m = frame_row(params, state_rows(rows, inst.mid.index), inst.mid)
    b = frame_row(params, state_rows(rows, inst.below.index), inst.below)
    want = frame_row(params, state_rows(rows, inst.result.index), inst.result)
    return evolve_row_triple(table, a, m, b, fw) == want


# ---------------------------------------------------------------------------
# node arena, state keys, goal test, extraction


@dataclass(frozen=True)
class SearchNode:
    row: int
    parent: int
    depth: int


class NodeArena:
    """Append-only store of search nodes; compaction builds a fresh one."""

    def __init__(self):
        self.rows: list[int] = []
        self.parents: list[int] = []
        self.depths: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, row: int, parent: int) -> int:
        depth = self.depths[parent] + 1 if parent >= 0 else 0
        self.rows.append(row)
        self.parents.append(parent)
        self.depths.append(depth)
        return len(self.rows) - 1

    def node(self, idx: int) -> SearchNode:
        return SearchNode(self.rows[idx], self.parents[idx], self.depths[idx])

    def rows_back(self, idx: int, count: int) -> list[int]:
        """The last `count` rows ending at idx, oldest first, dead-padded."""
        out = []
        cur = idx
        while cur >= 0 and len(out) < count:
            out.append(self.rows[cur])
            cur = self.parents[cur]
        out.extend(0 for _ in range(count - len(out)))
        out.reverse()
        return out

    def all_rows(self, idx: int) -> list[int]:
        out = []
        cur = idx
        while cur >= 0:
            out.append(self.rows[cur])
            cur = self.parents[cur]
        out.reverse()
        return out


def make_initial_state(params: SearchParams) -> tuple[NodeArena, int]:
    """Root chain of 2p dead rows; returns the arena and the tip index."""
    arena = NodeArena()
    tip = -1
    for _ in range(2 * params.period):
        tip = arena.add(0, tip)
    return arena, tip


def state_key(params: SearchParams, arena: NodeArena, idx: int) -> int:
    """Pack the last 2p rows into one integer; equal keys <=> same rows."""
    key = 0
    for row in arena.rows_back(idx, 2 * params.period):
        key = key << params.width | row
    return key


def is_goal(params: SearchParams, arena: NodeArena, idx: int) -> bool:
    """Last 2p rows dead and something earlier alive."""
    span = 2 * params.period
    cur = idx
    for _ in range(span):
        if cur < 0 or arena.rows[cur]:
            return False
        cur = arena.parents[cur]
    while cur >= 0:
        if arena.rows[cur]:
            return True
        cur = arena.parents[cur]
    return False


def extract_ship(params: SearchParams, arena: NodeArena, idx: int) -> Pattern:
    """One phase of the found ship, in plain coordinates.

    Takes every pth row starting at the first live one, undoes the glide
    reversals and diagonal shears, and mirrors half-rows to full width.
    """
    rows = arena.all_rows(idx)
    first = next(j for j, r in enumerate(rows) if r)
    picked = []
    for n, i in enumerate(range(first, len(rows), params.period)):
        row = rows[i]
        if params.row_orientation(i):
            row = reverse_row(row, params.width)
        picked.append((n, row))

    w = params.width
    if params.symmetry == EVEN_MIRROR:
        # half-row bit 0 sits next to the axis, so the mirrored copy goes low
        out = [reverse_row(r, w) | r << w for _, r in picked]
        return Pattern(tuple(out), 2 * w).trim()
    if params.symmetry == ODD_MIRROR:
        out = [reverse_row(r, w) | r << (w - 1) for _, r in picked]
        return Pattern(tuple(out), 2 * w - 1).trim()
    if params.translation == DIAGONAL:
        out = [r << n for n, r in picked]
        return Pattern(tuple(out), w + len(picked) - 1).trim()
    return Pattern(tuple(r for _, r in picked), w).trim()


# ---------------------------------------------------------------------------
# transposition table


class TranspositionTable:
    """Fixed-capacity open-addressing map from state keys to node indices.

    Stores node references only; equality is confirmed by walking the 2p
    parent rows. On a duplicate, the shorter state is retained. When full,
    inserts degrade to no-ops (dedup is an optimization, never required
    for soundness) and a flag records that this happened.
    """

    def __init__(self, params: SearchParams, arena: NodeArena, capacity: int):
        self.params = params
        self.arena = arena
        size = 1
        while size < capacity:
            size <<= 1
        self.mask = size - 1
        self.slots = [-1] * size
        self.count = 0
        self.limit = max(1, (size * 7) // 8)
        self.saturated = False

    def _hash(self, key: int) -> int:
        h = key & 0xFFFFFFFFFFFFFFFF
        k = key >> 64
        while k:
            h ^= k & 0xFFFFFFFFFFFFFFFF
            h = (h * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
            k >>= 64
        h ^= h >> 33
        h = (h * 0xFF51AFD7ED558CCD) & 0xFFFFFFFFFFFFFFFF
        h ^= h >> 33
        return h

    def insert(self, key: int, idx: int) -> tuple[str, int | None]:
        """Returns ("fresh", None) or ("duplicate", retained node index)."""
        span = 2 * self.params.period
        pos = self._hash(key) & self.mask
        while True:
            slot = self.slots[pos]
            if slot < 0:
                if self.count >= self.limit:
                    self.saturated = True
                    return ("fresh", None)
                self.slots[pos] = idx
                self.count += 1
                return ("fresh", None)
            if self.arena.rows_back(slot, span) == self.arena.rows_back(idx, span):
                if self.arena.depths[idx] < self.arena.depths[slot]:
                    self.slots[pos] = idx
                    return ("duplicate", idx)
                return ("duplicate", slot)
            pos = (pos + 1) & self.mask


def transposition_insert(table: TranspositionTable, key: int, idx: int) -> tuple[str, int | None]:
    return table.insert(key, idx)
