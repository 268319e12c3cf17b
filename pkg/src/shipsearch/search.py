"""Breadth-first ship search with depth-first pruning rounds.

The frontier grows breadth-first so the shortest ships surface first.
When the node arena approaches capacity, a deepening round probes every
frontier state depth-first to a limit that rises each round: roots whose
subtree dies before the limit are dropped, the survivors are kept, and
compaction rebuilds the arena from them. With a tiny capacity this
degrades into plain iterative deepening; with a large one the rounds are
rare. If max_deepening is set and the limit outruns the frontier by more
than that, the strip is narrowed by one column instead.

Every candidate ship is re-verified by evolving the extracted pattern;
a verification failure means the constraint machinery is wrong and is
raised, never swallowed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .pattern import Pattern, ShipDescriptor, classify_ship
from .statespace import (
    DIAGONAL,
    GLIDE_REFLECT,
    ORTHOGONAL,
    NodeArena,
    SearchParams,
    TranspositionTable,
    extract_ship,
    is_goal,
    make_initial_state,
    state_key,
    transposition_insert,
)
from .successor import build_tables, successors

RUNNING = "running"
SHIP_FOUND = "ship_found"
EXHAUSTED = "exhausted"
WIDTH_EXHAUSTED = "width_exhausted"


@dataclass(frozen=True)
class SearchConfig:
    node_capacity: int = 1 << 22
    delta: int | None = None  # deepening increment per round; default: the period
    max_deepening: int | None = None  # narrow the strip once limit - frontier exceeds this
    continue_after_find: bool = False
    lookahead: bool = True
    extended: bool = True
    progress_interval: int = 0  # expansions between progress callbacks; 0 = off


@dataclass
class SearchStatus:
    frontier_level: int = 0
    deepening_limit: int = 0
    nodes_in_arena: int = 0
    states_expanded: int = 0
    current_width: int = 0
    outcome: str = RUNNING


@dataclass
class SearchResult:
    ships: list[tuple[Pattern, ShipDescriptor]]
    status: SearchStatus


class Search:
    """All mutable state of one running search."""

    def __init__(self, params: SearchParams, config: SearchConfig | None = None, progress=None):
        config = config or SearchConfig()
        p, k = params.period, params.offset
        if config.node_capacity < 4 * p:
            raise ValueError(f"node_capacity must be at least 4 periods ({4 * p} nodes)")
        self.delta = config.delta if config.delta is not None else p
        if self.delta < 1:
            raise ValueError("delta must be at least 1")
        if config.progress_interval < 0:
            raise ValueError("progress_interval must not be negative")
        self.params = params
        self.config = config
        self.progress = progress
        self.tables = build_tables(params)
        # history window long enough for every back reference the
        # successor machinery makes (2p for the constraints, p+2k for the
        # chained lookahead rows)
        self.hist = max(2 * p, p + 2 * k)
        self.arena, tip = make_initial_state(params)
        self.base_depth = self.arena.depths[tip]
        self.queue: deque[int] = deque([tip])
        self.tt = TranspositionTable(params, self.arena, config.node_capacity)
        transposition_insert(self.tt, state_key(params, self.arena, tip), tip)
        self.limit: int | None = None  # deepening level reached by previous rounds
        self.ships: list[tuple[Pattern, ShipDescriptor]] = []
        self._ship_keys: set = set()
        self.status = SearchStatus(current_width=params.width)
        self._last_progress = 0

    # -- small helpers ----------------------------------------------------

    def level_of(self, idx: int) -> int:
        """Rows appended beyond the all-dead seed."""
        return self.arena.depths[idx] - self.base_depth

    def _fold_key(self, rows) -> int:
        key = 0
        for r in rows:
            key = key << self.params.width | r
        return key

    def _tick(self, force: bool = False) -> None:
        self.status.nodes_in_arena = len(self.arena)
        if self.queue:
            self.status.frontier_level = self.level_of(self.queue[0])
        if self.progress is None:
            return
        interval = self.config.progress_interval
        due = interval and self.status.states_expanded - self._last_progress >= interval
        if force or due:
            self._last_progress = self.status.states_expanded
            self.progress(replace(self.status))

    def _record_ship(self, idx: int) -> bool:
        """Extract, re-verify and store a ship; True if the search should
        stop now."""
        params = self.params
        ship = extract_ship(params, self.arena, idx)
        desc = classify_ship(params.rule, ship, 2 * params.period)
        p, k = params.period, params.offset
        ok = desc is not None
        if ok:
            if params.translation == ORTHOGONAL:
                ok = desc.dx == 0 and desc.dy != 0 and abs(desc.dy) * p == k * desc.period
            else:
                ok = abs(desc.dx) == abs(desc.dy) != 0 and abs(desc.dy) * p == k * desc.period
        if not ok:
            raise RuntimeError(
                f"extracted pattern failed re-verification (rows={ship.rows}, "
                f"width={ship.width}, classified={desc}); the search tables are inconsistent"
            )
        key = (ship.rows, ship.width, desc.period, desc.dx, desc.dy)
        if key not in self._ship_keys:
            self._ship_keys.add(key)
            self.ships.append((ship, desc))
        if self.config.continue_after_find:
            return False
        self.status.outcome = SHIP_FOUND
        return True


def _ever_live(arena: NodeArena, idx: int) -> bool:
    cur = idx
    while cur >= 0:
        if arena.rows[cur]:
            return True
        cur = arena.parents[cur]
    return False


def _expand_head(search: Search) -> None:
    params, arena, cfg = search.params, search.arena, search.config
    idx = search.queue.popleft()
    window = arena.rows_back(idx, search.hist)
    search.status.states_expanded += 1
    for c in successors(params, search.tables, window, cfg.lookahead, cfg.extended):
        child = arena.add(c, idx)
        if is_goal(params, arena, child):
            if search._record_ship(child):
                return
            continue  # a finished ship only grows dead rows from here
        verdict, _ = transposition_insert(search.tt, state_key(params, arena, child), child)
        if verdict == "fresh":
            search.queue.append(child)
    search._tick()


def _dfs_probe(search: Search, root: int, limit: int) -> bool:
    """Depth-first from one frontier root to the given level. True when
    some descendant is still alive at the limit (the root is kept)."""
    params, arena, cfg = search.params, search.arena, search.config
    span = 2 * params.period
    root_level = search.level_of(root)
    iters = [iter(successors(params, search.tables, arena.rows_back(root, search.hist), cfg.lookahead, cfg.extended))]
    windows = [arena.rows_back(root, search.hist)]
    evers = [_ever_live(arena, root)]
    path: list[int] = []
    seen: dict[int, int] = {}
    search.status.states_expanded += 1
    while iters:
        c = next(iters[-1], None)
        if c is None:
            iters.pop()
            windows.pop()
            evers.pop()
            if path:
                path.pop()
            continue
        window = windows[-1][1:] + [c]
        ever = evers[-1] or c != 0
        level = root_level + len(path) + 1
        if ever and not any(window[-span:]):
            idx = root
            for r in path + [c]:
                idx = arena.add(r, idx)
            if search._record_ship(idx):
                return True
            continue
        key = search._fold_key(window[-span:])
        prev = seen.get(key)
        if prev is not None and prev <= level:
            continue
        seen[key] = level
        if level >= limit:
            return True
        iters.append(iter(successors(params, search.tables, window, cfg.lookahead, cfg.extended)))
        search.status.states_expanded += 1
        windows.append(window)
        evers.append(ever)
        path.append(c)
        search._tick()
    return False


def dfs_round(search: Search) -> None:
    """One deepening round over the whole frontier; prunes dead roots in
    place and raises the limit, or narrows the strip when capped."""
    frontier = search.level_of(search.queue[0])
    limit = frontier + search.delta
    if search.limit is not None:
        limit = max(limit, search.limit + search.delta)
    cap = search.config.max_deepening
    if cap is not None and limit - frontier > cap:
        reduce_width(search)
        return
    search.limit = limit
    search.status.deepening_limit = limit
    survivors = deque()
    while search.queue:
        root = search.queue.popleft()
        keep = _dfs_probe(search, root, limit)
        if search.status.outcome != RUNNING:
            return
        if keep:
            survivors.append(root)
    search.queue = survivors
    search._tick(force=True)


def compact(search: Search) -> None:
    """Rebuild the arena from the frontier and its ancestry; the
    transposition table starts over, reseeded with the live keys."""
    if not search.queue:
        return  # exhaustion is about to be declared; nothing to keep
    params, old = search.params, search.arena
    mark = bytearray(len(old))
    for idx in search.queue:
        cur = idx
        while cur >= 0 and not mark[cur]:
            mark[cur] = 1
            cur = old.parents[cur]
    remap = [-1] * len(old)
    fresh = NodeArena()
    for i in range(len(old)):
        if mark[i]:
            parent = old.parents[i]
            remap[i] = fresh.add(old.rows[i], remap[parent] if parent >= 0 else -1)
    tip = remap[2 * params.period - 1]  # the all-dead seed is everyone's ancestor
    search.queue = deque(remap[i] for i in search.queue)
    search.arena = fresh
    search.base_depth = fresh.depths[tip]
    search.tt = TranspositionTable(params, fresh, search.config.node_capacity)
    transposition_insert(search.tt, state_key(params, fresh, tip), tip)
    for idx in search.queue:
        transposition_insert(search.tt, state_key(params, fresh, idx), idx)
    search._tick(force=True)


def reduce_width(search: Search) -> None:
    """Drop the strip's outermost column: frontier states live there (or,
    under glide, any recent live state, since the reversal axis moves) are
    discarded and the layout is rebuilt one column narrower."""
    params = search.params
    if params.width <= 1:
        search.status.outcome = WIDTH_EXHAUSTED
        return
    bit = params.width - 1
    glide = params.symmetry == GLIDE_REFLECT
    kept = deque()
    for idx in search.queue:
        window = search.arena.rows_back(idx, search.hist)
        if glide:
            if not any(window):
                kept.append(idx)
        elif not any(r >> bit & 1 for r in window):
            kept.append(idx)
    search.queue = kept
    search.params = replace(params, width=params.width - 1)
    search.tables = build_tables(search.params)
    search.status.current_width = search.params.width
    search.limit = None
    compact(search)


def run_search(params: SearchParams, config: SearchConfig | None = None, progress=None) -> SearchResult:
    """Drive a search to completion and return the ships found."""
    search = Search(params, config, progress)
    cfg = search.config
    while search.status.outcome == RUNNING:
        if not search.queue:
            search.status.outcome = EXHAUSTED
            break
        if len(search.arena) + (1 << search.params.width) > cfg.node_capacity:
            dfs_round(search)
            if search.status.outcome == RUNNING:
                compact(search)
            continue
        _expand_head(search)
    search._tick(force=True)
    return SearchResult(ships=search.ships, status=search.status)