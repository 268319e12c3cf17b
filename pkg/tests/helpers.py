"""Shared test fixtures: an independent set-of-cells evolver, known ships,
and construction of the interleaved row sequence a search would walk."""

from shipsearch.statespace import DIAGONAL, reverse_row

LWSS_CELLS = {(1, 0), (4, 0), (0, 1), (0, 2), (4, 2), (0, 3), (1, 3), (2, 3), (3, 3)}
GLIDER_CELLS = {(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)}


def evolve_cells(rule, cells, generations):
    """Set-of-(x, y) evolver, the reference everything else is tested against."""
    out = [set(cells)]
    for _ in range(generations):
        cur = out[-1]
        counts = {}
        for (x, y) in cur:
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    if dx or dy:
                        counts[(x + dx, y + dy)] = counts.get((x + dx, y + dy), 0) + 1
        nxt = set()
        for pos, n in counts.items():
            if pos in cur:
                if n in rule.survive:
                    nxt.add(pos)
            elif n in rule.birth:
                nxt.add(pos)
        for pos in cur:
            if pos not in counts and 0 in rule.survive:
                nxt.add(pos)
        out.append(nxt)
    return out


def orient_upward(cells, period, want_dx, rule=None):
    """Rotate/flip a ship so one period displaces it by (want_dx, -k)."""
    from shipsearch.rules import parse_rule

    rule = rule or parse_rule("B3/S23")
    for flip_x in (False, True):
        for swap in (False, True):
            c = {(-x if flip_x else x, y) for (x, y) in cells}
            if swap:
                c = {(y, x) for (x, y) in c}
            for flip_y in (False, True):
                cc = {(x, -y if flip_y else y) for (x, y) in c}
                gens = evolve_cells(rule, cc, period)
                dxs = {a - b for (a, _), (b, _) in zip(sorted(gens[period]), sorted(cc))}
                dys = {a - b for (_, a), (_, b) in zip(sorted(gens[period]), sorted(cc))}
                if len(dxs) == 1 and len(dys) == 1:
                    (dx,), (dy,) = dxs, dys
                    if dy < 0 and dx == want_dx:
                        return cc
    raise AssertionError("no orientation matched")


def merged_sequence(params, gens, x0, y0, levels):
    """Stored rows r[0..levels) for a true evolution, per the statespace
    conventions: row i holds image row y(i) of generation t(i), sheared by
    y for diagonal translation and mirrored per row_orientation for glide."""
    w = params.width
    rows = []
    for i in range(levels):
        t, y = params.generation_of(i), params.image_row_of(i)
        shear = y if params.translation == DIAGONAL else 0
        row = 0
        for j in range(w):
            if (x0 + j + shear, y0 + y) in gens[t]:
                row |= 1 << j
        if params.row_orientation(i):
            row = reverse_row(row, w)
        rows.append(row)
    return rows


def ship_sequence(params, cells, want_dx=0, pad_rows=3):
    """Embed a known ship as the merged row sequence for params, asserting
    the embedding fits the width. Returns the row list."""
    from shipsearch.statespace import GLIDE_REFLECT

    p = params.period
    # a glide ship only repeats after the mirrored half, so orientation and
    # the x-span are judged over the full period; the stored sequence still
    # samples generations below p, with reflection handled by row parity
    full = 2 * p if params.symmetry == GLIDE_REFLECT else p
    oriented = orient_upward(cells, full, want_dx, params.rule)
    gens = evolve_cells(params.rule, oriented, full)
    if params.translation == DIAGONAL:
        span = [x - y for t in range(full) for (x, y) in gens[t]]
    else:
        span = [x for t in range(full) for (x, _) in gens[t]]
    assert max(span) - min(span) + 1 <= params.width, "ship does not fit the width"
    ys = [y for t in range(p) for (_, y) in gens[t]]
    y0 = min(ys) - pad_rows
    x0 = min(span) + (y0 if params.translation == DIAGONAL else 0)
    levels = p * (max(ys) - min(ys) + 1 + 2 * pad_rows)
    return merged_sequence(params, gens, x0, y0, levels)
