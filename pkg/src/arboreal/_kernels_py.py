"""Pure-Python implementations of the hot kernels.

Every function here has an identical twin in ``_kernels.pyx``; both take and
return ``int64`` numpy arrays of label codes so they can be swapped freely.
Label codes are indices into the sorted label list, so comparing codes is
the same as comparing labels.
"""
import numpy as np


def tree_triplets(child_ptr, child_idx, leaf_code, root):
    """All triplets displayed by a rooted tree, as an ``(k, 3)`` code array.

    The tree is given in CSR form: the children of node ``v`` are
    ``child_idx[child_ptr[v]:child_ptr[v + 1]]``; ``leaf_code[v]`` is the label
    code of a leaf and ``-1`` for internal nodes. Each row is
    ``(x, y, z)`` with ``x < y`` forming the cherry and ``z`` the outgroup.
    Each triplet is emitted exactly once, at the lca of its three leaves.
    """
    ptr = child_ptr.tolist()
    kids = child_idx.tolist()
    code = leaf_code.tolist()
    m = len(code)
    lo = [0] * m
    hi = [0] * m
    seq = []
    pre = []
    stack = [int(root)]
    while stack:
        v = stack.pop()
        pre.append(v)
        lo[v] = len(seq)
        if code[v] >= 0:
            seq.append(code[v])
        stack.extend(reversed(kids[ptr[v]:ptr[v + 1]]))
    for v in reversed(pre):
        if code[v] >= 0:
            hi[v] = lo[v] + 1
        else:
            hi[v] = max(hi[c] for c in kids[ptr[v]:ptr[v + 1]])

    out = []
    for v in pre:
        if code[v] >= 0:
            continue
        for c in kids[ptr[v]:ptr[v + 1]]:
            inside = seq[lo[c]:hi[c]]
            if len(inside) < 2:
                continue
            outside = seq[lo[v]:lo[c]] + seq[hi[c]:hi[v]]
            for i in range(len(inside)):
                a = inside[i]
                for j in range(i + 1, len(inside)):
                    b = inside[j]
                    x, y = (a, b) if a < b else (b, a)
                    for z in outside:
                        out.append((x, y, z))
    if not out:
        return np.empty((0, 3), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def _find(uf, x):
    root = x
    while uf[root] != root:
        root = uf[root]
    while uf[x] != root:
        uf[x], x = root, uf[x]
    return root


# Above this many leaves the n**3 membership table of the dense path is too
# large and BUILD falls back to passing triplet lists down the recursion.
DENSE_MAX = 384


def build(trip, leaves, n_codes):
    """BUILD on code arrays.

    ``leaves`` must be sorted ascending. Returns ``(parent, failed)``: on
    success ``parent`` is an int64 array where nodes ``0..len(leaves)-1`` are
    the leaves (in input order), later nodes are internal, and the top node
    has parent ``-1``; ``failed`` is ``None``. On incompatibility ``parent`` is
    ``None`` and ``failed`` holds the leaf codes whose cluster graph was
    connected.
    """
    if len(leaves) <= DENSE_MAX:
        return _build_dense(trip, leaves, n_codes)
    return _build_lists(trip, leaves, n_codes)


def _components(adj):
    """Component ids for a symmetric boolean matrix, numbered by first vertex."""
    s = adj.shape[0]
    label = np.arange(s)
    while True:
        nbr = np.where(adj, label[None, :], s).min(axis=1)
        new = np.minimum(label, nbr)
        new = new[new]
        if np.array_equal(new, label):
            break
        label = new
    _, first, comp = np.unique(label, return_index=True, return_inverse=True)
    # np.unique orders by label value, which is the smallest member index
    return comp.reshape(-1), len(first)


def _build_dense(trip, leaves, n_codes):
    # cnt[a, b] counts live triplets ab|c with c still in the current group;
    # entering a child component subtracts only the outgroups left behind
    n = len(leaves)
    pos = np.full(n_codes, -1, dtype=np.int64)
    pos[leaves] = np.arange(n)
    p = pos[trip] if len(trip) else np.empty((0, 3), dtype=np.int64)
    p = p[(p >= 0).all(axis=1)]
    member = np.zeros((n, n, n), dtype=bool)
    member[p[:, 0], p[:, 1], p[:, 2]] = True
    member[p[:, 1], p[:, 0], p[:, 2]] = True
    cnt = member.sum(axis=2, dtype=np.int64)
    parent = np.full(max(2 * n - 1, 1), -1, dtype=np.int64)
    next_id = n
    tasks = [(np.arange(n, dtype=np.int64), -1)]
    while tasks:
        group, par = tasks.pop()
        if len(group) == 1:
            parent[group[0]] = par
            continue
        node = next_id
        next_id += 1
        parent[node] = par
        comp, ncomp = _components(cnt[np.ix_(group, group)] > 0)
        if ncomp == 1:
            return None, np.asarray(leaves)[group]
        parts = [group[comp == k] for k in range(ncomp)]
        for k, part in enumerate(parts):
            rest = group[comp != k]
            cnt[np.ix_(part, part)] -= member[np.ix_(part, part, rest)].sum(axis=2)
        for k in range(ncomp - 1, -1, -1):
            tasks.append((parts[k], node))
    return parent[:next_id].copy(), None


def _build_lists(trip, leaves, n_codes):
    leaves = leaves.tolist()
    n = len(leaves)
    pos = {x: i for i, x in enumerate(leaves)}
    rows = [t for t in trip.tolist() if t[0] in pos and t[1] in pos and t[2] in pos]
    parent = [-1] * max(2 * n - 1, 1)
    uf = {}
    next_id = n
    tasks = [(leaves, rows, -1)]
    while tasks:
        group, rows, par = tasks.pop()
        if len(group) == 1:
            parent[pos[group[0]]] = par
            continue
        node = next_id
        next_id += 1
        parent[node] = par
        for x in group:
            uf[x] = x
        for a, b, _ in rows:
            ra, rb = _find(uf, a), _find(uf, b)
            if ra != rb:
                uf[rb] = ra
        comp_index = {}
        comp_of = {}
        for x in group:
            r = _find(uf, x)
            if r not in comp_index:
                comp_index[r] = len(comp_index)
            comp_of[x] = comp_index[r]
        if len(comp_index) == 1:
            return None, np.array(group, dtype=np.int64)
        parts = [[] for _ in comp_index]
        part_rows = [[] for _ in comp_index]
        for x in group:
            parts[comp_of[x]].append(x)
        for t in rows:
            k = comp_of[t[0]]
            if comp_of[t[2]] == k:
                part_rows[k].append(t)
        for k in range(len(parts) - 1, -1, -1):
            tasks.append((parts[k], part_rows[k], node))
    return np.array(parent[:next_id], dtype=np.int64), None


def closure_blocks(trip, duets, n_codes):
    """Queue closure of duet endpoints through shared triplets.

    Returns an int64 array ``which`` mapping each code to the code of the
    duet endpoint that seeded its block, ``-1`` for codes reached by no duet,
    or ``None`` when both endpoints of some duet land in the same closure.
    """
    rows = trip.tolist()
    belong = [[] for _ in range(n_codes)]
    for t, (a, b, c) in enumerate(rows):
        belong[a].append(t)
        belong[b].append(t)
        belong[c].append(t)
    unused = [True] * len(rows)
    which = [-1] * n_codes
    for a, b in duets.tolist():
        for seed in (a, b):
            if which[seed] != -1:
                continue
            which[seed] = seed
            queue = [seed]
            while queue:
                x = queue.pop()
                for t in belong[x]:
                    if not unused[t]:
                        continue
                    unused[t] = False
                    for y in rows[t]:
                        if which[y] == -1:
                            which[y] = seed
                            queue.append(y)
        if which[a] == which[b]:
            return None
    return np.array(which, dtype=np.int64)


def pair_components(a, b, n):
    """Connected components of the graph on ``0..n-1`` with edges ``a[i]-b[i]``.

    Component ids are assigned in order of each component's smallest vertex.
    """
    uf = list(range(n))
    for x, y in zip(a.tolist(), b.tolist()):
        rx, ry = _find(uf, x), _find(uf, y)
        if rx != ry:
            uf[ry] = rx
    ids = {}
    out = [0] * n
    for v in range(n):
        r = _find(uf, v)
        if r not in ids:
            ids[r] = len(ids)
        out[v] = ids[r]
    return np.array(out, dtype=np.int64)
