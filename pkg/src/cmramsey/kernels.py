"""Array kernels shared by the matching engine and the search.

Adjacency of one color class is stored bit-packed: ``rows[v, j]`` holds bits
``64*j .. 64*j+63`` of vertex ``v``'s opposite-side neighbourhood.  Every
function here works on plain numpy arrays so that it can be compiled with
numba or run as-is when the JIT is disabled (see ``_jit``).
"""

import numpy as np

from ._jit import njit

UNASSIGNED = -1

# search status codes
EXHAUSTED = 0
FOUND = 1
OVER_BUDGET = 2
ABORTED = 3

_ONE = np.uint64(1)
_FLUSH_EVERY = 4096


@njit(cache=True)
def n_words(n):
    return (n + 63) // 64


@njit(cache=True)
def has_bit(rows, v, w):
    return ((rows[v, w >> 6] >> np.uint64(w & 63)) & _ONE) != 0


@njit(cache=True)
def set_bit(rows, v, w):
    rows[v, w >> 6] |= _ONE << np.uint64(w & 63)


@njit(cache=True)
def clear_bit(rows, v, w):
    rows[v, w >> 6] &= ~(_ONE << np.uint64(w & 63))


@njit(cache=True)
def pack_rows(cells, color):
    n = cells.shape[0]
    nw = n_words(n)
    adj1 = np.zeros((n, nw), dtype=np.uint64)
    adj2 = np.zeros((n, nw), dtype=np.uint64)
    for u in range(n):
        for w in range(n):
            if cells[u, w] == color:
                set_bit(adj1, u, w)
                set_bit(adj2, w, u)
    return adj1, adj2


@njit(cache=True)
def component_labels(adj1, adj2):
    """Label vertices by BFS; V2 vertex w is index n+w.

    Returns (labels, count).  Isolated vertices get -1.  Labels are assigned
    in ascending order of each component's smallest V1 vertex.
    """
    n = adj1.shape[0]
    nw = adj1.shape[1]
    labels = np.full(2 * n, -1, dtype=np.int64)
    queue = np.empty(2 * n, dtype=np.int64)
    count = 0
    for s in range(n):
        if labels[s] != -1:
            continue
        isolated = True
        for j in range(nw):
            if adj1[s, j] != 0:
                isolated = False
                break
        if isolated:
            continue
        labels[s] = count
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            v = queue[head]
            head += 1
            if v < n:
                for w in range(n):
                    if labels[n + w] == -1 and has_bit(adj1, v, w):
                        labels[n + w] = count
                        queue[tail] = n + w
                        tail += 1
            else:
                for u in range(n):
                    if labels[u] == -1 and has_bit(adj2, v - n, u):
                        labels[u] = count
                        queue[tail] = u
                        tail += 1
        count += 1
    return labels, count


@njit(cache=True)
def hopcroft_karp(adj1, n2, active):
    """Maximum matching of the subgraph spanned by the ``active`` V1 vertices.

    Returns (match1, match2, size) with -1 marking unmatched vertices.
    """
    n1 = adj1.shape[0]
    match1 = np.full(n1, -1, dtype=np.int64)
    match2 = np.full(n2, -1, dtype=np.int64)
    dist = np.empty(n1, dtype=np.int64)
    queue = np.empty(n1, dtype=np.int64)
    stack_u = np.empty(n1 + 1, dtype=np.int64)
    stack_w = np.empty(n1 + 1, dtype=np.int64)
    inf = n1 + n2 + 2
    size = 0
    while True:
        head = 0
        tail = 0
        for u in range(n1):
            if active[u] and match1[u] == -1:
                dist[u] = 0
                queue[tail] = u
                tail += 1
            else:
                dist[u] = inf
        limit = inf
        while head < tail:
            u = queue[head]
            head += 1
            if dist[u] + 1 >= limit:
                continue
            for w in range(n2):
                if has_bit(adj1, u, w):
                    v = match2[w]
                    if v == -1:
                        if limit == inf:
                            limit = dist[u] + 1
                    elif dist[v] == inf:
                        dist[v] = dist[u] + 1
                        queue[tail] = v
                        tail += 1
        if limit == inf:
            break
        for u0 in range(n1):
            if not active[u0] or match1[u0] != -1:
                continue
            top = 0
            stack_u[0] = u0
            stack_w[0] = 0
            while top >= 0:
                u = stack_u[top]
                w = stack_w[top]
                pushed = False
                augmented = False
                while w < n2:
                    if has_bit(adj1, u, w):
                        v = match2[w]
                        if v == -1:
                            if dist[u] + 1 == limit:
                                match1[u] = w
                                match2[w] = u
                                for j in range(top - 1, -1, -1):
                                    wj = stack_w[j] - 1
                                    match1[stack_u[j]] = wj
                                    match2[wj] = stack_u[j]
                                augmented = True
                                break
                        elif dist[v] == dist[u] + 1:
                            stack_w[top] = w + 1
                            top += 1
                            stack_u[top] = v
                            stack_w[top] = 0
                            pushed = True
                            break
                    w += 1
                if augmented:
                    size += 1
                    break
                if not pushed:
                    dist[u] = inf
                    top -= 1
    return match1, match2, size


@njit(cache=True)
def koenig_cover(adj1, n2, active, match1, match2):
    """Minimum vertex cover from a maximum matching by alternating reachability.

    Returns boolean masks (cover1, cover2).
    """
    n1 = adj1.shape[0]
    seen1 = np.zeros(n1, dtype=np.bool_)
    seen2 = np.zeros(n2, dtype=np.bool_)
    queue = np.empty(n1, dtype=np.int64)
    tail = 0
    for u in range(n1):
        if active[u] and match1[u] == -1:
            seen1[u] = True
            queue[tail] = u
            tail += 1
    head = 0
    while head < tail:
        u = queue[head]
        head += 1
        for w in range(n2):
            if not seen2[w] and has_bit(adj1, u, w):
                seen2[w] = True
                v = match2[w]
                if v != -1 and not seen1[v]:
                    seen1[v] = True
                    queue[tail] = v
                    tail += 1
    cover1 = np.zeros(n1, dtype=np.bool_)
    for u in range(n1):
        cover1[u] = active[u] and not seen1[u]
    return cover1, seen2


@njit(cache=True)
def class_matching(cells, color):
    """Components and a maximum matching of one color class.

    Returns (labels, count, match1, match2, sizes) where ``sizes[c]`` is the
    maximum matching size inside component c.
    """
    n = cells.shape[0]
    adj1, adj2 = pack_rows(cells, color)
    labels, count = component_labels(adj1, adj2)
    active = np.ones(n, dtype=np.bool_)
    match1, match2, _ = hopcroft_karp(adj1, n, active)
    sizes = np.zeros(count, dtype=np.int64)
    for u in range(n):
        if match1[u] != -1:
            sizes[labels[u]] += 1
    return labels, count, match1, match2, sizes


@njit(cache=True)
def best_sizes(cells, colors):
    """Largest connected-matching size per color."""
    out = np.zeros(colors, dtype=np.int64)
    for c in range(colors):
        _, count, _, _, sizes = class_matching(cells, c)
        for j in range(count):
            if sizes[j] > out[c]:
                out[c] = sizes[j]
    return out


@njit(cache=True)
def _find(parent, v):
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


@njit(cache=True)
def _component_reaches(adj1, parent, root, n, need, active):
    """True if the component with this root has a matching of size >= need."""
    c1 = 0
    c2 = 0
    for v in range(n):
        active[v] = _find(parent, v) == root
        if active[v]:
            c1 += 1
        if _find(parent, n + v) == root:
            c2 += 1
    if c1 < need or c2 < need:
        return False
    _, _, size = hopcroft_karp(adj1, n, active)
    return size >= need


@njit(cache=True)
def _unplace(cells, adj1, adj2, used, u, w):
    x = np.int64(cells[u, w])
    clear_bit(adj1[x], u, w)
    clear_bit(adj2[x], w, u)
    used[x] -= 1
    cells[u, w] = UNASSIGNED


@njit(cache=True, nogil=True)
def search_kernel(
    n,
    colors,
    thresholds,
    prev_same,
    symmetry,
    prefix,
    collect_depth,
    out_prefixes,
    budget,
    shared,
    witness,
    counters,
):
    """Backtracking over row-major cell assignments.

    ``prefix`` forces the first cells (a frontier subproblem); backtracking
    into it ends the run.  When ``collect_depth`` >= 0 every surviving state
    at that depth is written to ``out_prefixes`` (up to its capacity) and not
    expanded.  ``shared`` = [stop flag, nodes spent by all workers].
    ``counters`` receives [nodes, prunes, collected].

    Symmetry breaking keeps only colorings whose rows and columns are both
    lexicographically non-decreasing and whose equal-threshold colors first
    appear in index order; the row-major lex-least member of every orbit
    satisfies all three, so no outcome is lost.
    """
    total = n * n
    nw = n_words(n)
    plen = prefix.shape[0]
    cells = np.full((n, n), UNASSIGNED, dtype=np.int8)
    adj1 = np.zeros((colors, n, nw), dtype=np.uint64)
    adj2 = np.zeros((colors, n, nw), dtype=np.uint64)
    uf = np.empty((total + 1, colors, 2 * n), dtype=np.int64)
    for c in range(colors):
        for v in range(2 * n):
            uf[0, c, v] = v
    used = np.zeros(colors, dtype=np.int64)
    col_eq = np.ones((n, n), dtype=np.bool_)
    row_eq = np.ones((n, n), dtype=np.bool_)
    cur = np.full(total + 1, -1, dtype=np.int64)
    active = np.zeros(n, dtype=np.bool_)

    nodes = 0
    pending = 0
    prunes = 0
    collected = 0
    status = EXHAUSTED
    d = 0
    while True:
        if shared[0] != 0:
            status = ABORTED
            break
        if d == total:
            for u in range(n):
                for w in range(n):
                    witness[u, w] = cells[u, w]
            shared[0] = 1
            status = FOUND
            break
        if d == collect_depth and d >= plen:
            if collected < out_prefixes.shape[0]:
                for j in range(d):
                    out_prefixes[collected, j] = cells[j // n, j % n]
            collected += 1
            d -= 1
            if d < plen:
                break
            _unplace(cells, adj1, adj2, used, d // n, d % n)
            continue

        u = d // n
        w = d % n
        if d < plen:
            if cur[d] != -1:
                break
            x = np.int64(prefix[d])
        else:
            x = cur[d] + 1
        while x < colors:
            ok = True
            if symmetry:
                if w > 0 and (u == 0 or col_eq[u - 1, w]) and cells[u, w - 1] > x:
                    ok = False
                elif u > 0 and (w == 0 or row_eq[u, w - 1]) and cells[u - 1, w] > x:
                    ok = False
                elif prev_same[x] >= 0 and used[prev_same[x]] == 0:
                    ok = False
            if ok or d < plen:
                break
            x += 1
        if x >= colors:
            d -= 1
            if d < plen:
                break
            _unplace(cells, adj1, adj2, used, d // n, d % n)
            continue

        if d >= plen:
            nodes += 1
            pending += 1
            if pending >= _FLUSH_EVERY:
                shared[1] += pending
                pending = 0
            if shared[1] + pending > budget:
                status = OVER_BUDGET
                break

        # place x at (u, w)
        cur[d] = x
        cells[u, w] = x
        set_bit(adj1[x], u, w)
        set_bit(adj2[x], w, u)
        used[x] += 1
        col_eq[u, w] = (u == 0 or col_eq[u - 1, w]) and (w == 0 or cells[u, w - 1] == x)
        row_eq[u, w] = (w == 0 or row_eq[u, w - 1]) and (u == 0 or cells[u - 1, w] == x)
        for c in range(colors):
            for v in range(2 * n):
                uf[d + 1, c, v] = uf[d, c, v]
        parent = uf[d + 1, x]
        ra = _find(parent, u)
        rb = _find(parent, n + w)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
        root = _find(parent, u)
        if _component_reaches(adj1[x], parent, root, n, thresholds[x], active):
            prunes += 1
            _unplace(cells, adj1, adj2, used, u, w)
            if d < plen:
                break
            continue
        d += 1
        cur[d] = -1

    shared[1] += pending
    counters[0] = nodes
    counters[1] = prunes
    counters[2] = collected
    return status
