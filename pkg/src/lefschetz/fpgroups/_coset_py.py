"""Pure-Python HLT coset enumeration kernel (reference implementation).

Columns are ``2*g`` for generator g and ``2*g + 1`` for its inverse.
Cosets of the trivial subgroup are enumerated, so the final count is the
group order.  Coincidences are processed with a union-find queue.
"""


def hlt_enumerate(ncols, relators, max_cosets):
    """Return ``(n_live, table)``; ``n_live == -1`` when ``max_cosets`` is hit.

    ``table`` is the compacted coset table (row-major, ``n_live * ncols``).
    """
    table = [[-1] * ncols]
    parent = [0]
    n = 1
    queue = []

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(a, b):
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        merge(a, b)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(ncols):
                f = row[x]
                if f < 0:
                    continue
                xi = x ^ 1
                table[f][xi] = -1
                e1, f1 = rep(e), rep(f)
                t = table[e1][x]
                if t >= 0:
                    merge(f1, t)
                else:
                    t = table[f1][xi]
                    if t >= 0:
                        merge(e1, t)
                    else:
                        table[e1][x] = f1
                        table[f1][xi] = e1
        queue.clear()

    class Full(Exception):
        pass

    def define(c, x):
        nonlocal n
        if n >= max_cosets:
            raise Full
        table.append([-1] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][x ^ 1] = c
        n += 1

    def scan_and_fill(a, w):
        L = len(w)
        f, i = a, 0
        b, j = a, L - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    coincidence(f, a)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    try:
        a = 0
        while a < n:
            if parent[a] == a:
                for w in relators:
                    scan_and_fill(a, w)
                    if parent[a] != a:
                        break
                if parent[a] == a:
                    for x in range(ncols):
                        if table[a][x] < 0:
                            define(a, x)
            a += 1
    except Full:
        return -1, None

    live = [c for c in range(n) if parent[c] == c]
    index = {c: k for k, c in enumerate(live)}
    flat = []
    for c in live:
        flat.extend(index[rep(t)] if t >= 0 else -1 for t in table[c])
    return len(live), flat
