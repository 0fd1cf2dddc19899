"""Pure-Python LC-orbit breadth-first search (fallback kernel).

Graphs are tuples of integer adjacency bitsets. Any vertex count works.
"""

COMPLETE, FOUND, TRUNCATED = 0, 1, 2


def _hit(rows, mask, target):
    m = mask
    while m:
        low = m & -m
        t = low.bit_length() - 1
        if rows[t] & mask != target[t]:
            return False
        m ^= low
    return True


def _path(parent, via, idx):
    out = []
    while idx > 0:
        out.append(via[idx])
        idx = parent[idx]
    out.reverse()
    return out


def bfs(rows, budget, mask=0, target=None, collect=False):
    """Breadth-first closure of ``rows`` under local complementation.

    Stops early when a member matches ``target`` on the vertices in ``mask``.
    Returns ``(status, size, path, members, parent, via)``; ``path`` is the
    LC vertex sequence reaching the hit, the last three are ``None`` unless
    ``collect`` is set.
    """
    start = tuple(rows)
    n = len(start)
    check = target is not None
    index = {start: 0}
    members = [start]
    parent = [-1]
    via = [-1]
    if check and _hit(start, mask, target):
        return FOUND, 1, [], (members if collect else None), (parent if collect else None), (via if collect else None)
    head = 0
    while head < len(members):
        cur = members[head]
        for v in range(n):
            nb = cur[v]
            if not nb:
                continue
            new = list(cur)
            m = nb
            while m:
                low = m & -m
                u = low.bit_length() - 1
                new[u] ^= nb & ~low
                m ^= low
            key = tuple(new)
            if key in index:
                continue
            if len(members) >= budget:
                return TRUNCATED, len(members), None, None, None, None
            index[key] = len(members)
            members.append(key)
            parent.append(head)
            via.append(v)
            if check and _hit(key, mask, target):
                idx = len(members) - 1
                return (FOUND, len(members), _path(parent, via, idx),
                        members if collect else None, parent if collect else None,
                        via if collect else None)
        head += 1
    return COMPLETE, len(members), None, (members if collect else None), (parent if collect else None), (via if collect else None)
