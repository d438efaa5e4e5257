# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Semantics match ``_kernels_py`` exactly."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef inline i64 _find(i64[::1] uf, i64 x) noexcept:
    cdef i64 root = x
    cdef i64 nxt
    while uf[root] != root:
        root = uf[root]
    while uf[x] != root:
        nxt = uf[x]
        uf[x] = root
        x = nxt
    return root


def tree_triplets(const i64[::1] child_ptr, const i64[::1] child_idx,
                  const i64[::1] leaf_code, i64 root):
    cdef Py_ssize_t m = leaf_code.shape[0]
    cdef i64[::1] lo = np.zeros(m, dtype=np.int64)
    cdef i64[::1] hi = np.zeros(m, dtype=np.int64)
    cdef i64[::1] seq = np.empty(m, dtype=np.int64)
    cdef i64[::1] pre = np.empty(m, dtype=np.int64)
    cdef i64[::1] stack = np.empty(m, dtype=np.int64)
    cdef Py_ssize_t sp = 0, npre = 0, nleaf = 0, k, p, i, j, z
    cdef i64 v, c, a, b, x, y, best
    cdef i64 total = 0, sc, sv

    stack[sp] = root
    sp += 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        pre[npre] = v
        npre += 1
        lo[v] = nleaf
        if leaf_code[v] >= 0:
            seq[nleaf] = leaf_code[v]
            nleaf += 1
        k = child_ptr[v + 1] - 1
        while k >= child_ptr[v]:
            stack[sp] = child_idx[k]
            sp += 1
            k -= 1
    for p in range(npre - 1, -1, -1):
        v = pre[p]
        if leaf_code[v] >= 0:
            hi[v] = lo[v] + 1
        else:
            best = 0
            for k in range(child_ptr[v], child_ptr[v + 1]):
                if hi[child_idx[k]] > best:
                    best = hi[child_idx[k]]
            hi[v] = best

    for p in range(npre):
        v = pre[p]
        if leaf_code[v] >= 0:
            continue
        sv = hi[v] - lo[v]
        for k in range(child_ptr[v], child_ptr[v + 1]):
            c = child_idx[k]
            sc = hi[c] - lo[c]
            total += sc * (sc - 1) // 2 * (sv - sc)

    out_arr = np.empty((total, 3), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef Py_ssize_t row = 0
    for p in range(npre):
        v = pre[p]
        if leaf_code[v] >= 0:
            continue
        for k in range(child_ptr[v], child_ptr[v + 1]):
            c = child_idx[k]
            if hi[c] - lo[c] < 2:
                continue
            for i in range(lo[c], hi[c]):
                a = seq[i]
                for j in range(i + 1, hi[c]):
                    b = seq[j]
                    if a < b:
                        x = a
                        y = b
                    else:
                        x = b
                        y = a
                    for z in range(lo[v], lo[c]):
                        out[row, 0] = x
                        out[row, 1] = y
                        out[row, 2] = seq[z]
                        row += 1
                    for z in range(hi[c], hi[v]):
                        out[row, 0] = x
                        out[row, 1] = y
                        out[row, 2] = seq[z]
                        row += 1
    return out_arr


# Above this many leaves the n**3 byte membership table of the dense path is
# too large and BUILD falls back to passing triplet lists down the recursion.
DENSE_MAX = 384


def build(const i64[:, ::1] trip, const i64[::1] leaves, i64 n_codes):
    if leaves.shape[0] <= DENSE_MAX:
        return _build_dense(trip, leaves, n_codes)
    return _build_lists(trip, leaves, n_codes)


cdef object _build_dense(const i64[:, ::1] trip, const i64[::1] leaves, i64 n_codes):
    # cnt[a, b] counts live triplets ab|c with c still in the current group;
    # moving into a child component only subtracts outgroups left behind, so
    # each level costs |C|^2 * |S \ C| instead of a pass over every triplet.
    cdef Py_ssize_t n = leaves.shape[0]
    cdef Py_ssize_t m = trip.shape[0]
    cdef Py_ssize_t i, j, t, s, q, k
    cdef i64 a, b, c, ra, rb, node, ncomp, ab
    cdef i64[::1] pos = np.full(n_codes, -1, dtype=np.int64)
    cdef cnp.uint8_t[::1] member = np.zeros(n * n * n, dtype=np.uint8)
    cdef cnp.int32_t[::1] cnt = np.zeros(n * n, dtype=np.int32)
    cdef i64[::1] uf = np.arange(n, dtype=np.int64)
    cdef i64[::1] comp_id = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] comp_of = np.full(n, -1, dtype=np.int64)
    parent_arr = np.full(max(2 * n - 1, 1), -1, dtype=np.int64)
    cdef i64[::1] parent = parent_arr
    cdef i64[::1] group
    cdef i64[::1] part
    cdef i64[::1] sizes
    cdef i64 next_id = n

    for i in range(n):
        pos[leaves[i]] = i
    for t in range(m):
        a = pos[trip[t, 0]]
        b = pos[trip[t, 1]]
        c = pos[trip[t, 2]]
        if a < 0 or b < 0 or c < 0 or member[(a * n + b) * n + c]:
            continue
        member[(a * n + b) * n + c] = 1
        member[(b * n + a) * n + c] = 1
        cnt[a * n + b] += 1
        cnt[b * n + a] += 1

    tasks = [(np.arange(n, dtype=np.int64), -1)]
    while tasks:
        group_obj, par = tasks.pop()
        group = group_obj
        s = group.shape[0]
        if s == 1:
            parent[group[0]] = par
            continue
        node = next_id
        next_id += 1
        parent[node] = par
        for i in range(s):
            uf[group[i]] = group[i]
        for i in range(s):
            a = group[i]
            for j in range(i + 1, s):
                b = group[j]
                if cnt[a * n + b] > 0:
                    ra = _find(uf, a)
                    rb = _find(uf, b)
                    if ra != rb:
                        uf[rb] = ra
        ncomp = 0
        for i in range(s):
            a = group[i]
            ra = _find(uf, a)
            if comp_id[ra] == -1:
                comp_id[ra] = ncomp
                ncomp += 1
            comp_of[a] = comp_id[ra]
        for i in range(s):
            comp_id[_find(uf, group[i])] = -1
        if ncomp == 1:
            return None, np.asarray(leaves)[np.asarray(group)]

        sizes = np.zeros(ncomp, dtype=np.int64)
        for i in range(s):
            sizes[comp_of[group[i]]] += 1
        parts = [np.empty(sizes[k], dtype=np.int64) for k in range(ncomp)]
        fill = np.zeros(ncomp, dtype=np.int64)
        cdef_fill(group, comp_of, parts, fill)
        for k in range(ncomp):
            part = parts[k]
            for i in range(part.shape[0]):
                a = part[i]
                for j in range(i + 1, part.shape[0]):
                    b = part[j]
                    ab = a * n + b
                    if cnt[ab] == 0:
                        continue
                    for q in range(s):
                        c = group[q]
                        if comp_of[c] != k and member[ab * n + c]:
                            cnt[ab] -= 1
                            cnt[b * n + a] -= 1
        for k in range(ncomp - 1, -1, -1):
            tasks.append((parts[k], node))
    return parent_arr[:next_id].copy(), None


cdef object _build_lists(const i64[:, ::1] trip, const i64[::1] leaves, i64 n_codes):
    cdef Py_ssize_t n = leaves.shape[0]
    cdef Py_ssize_t m = trip.shape[0]
    cdef Py_ssize_t i, t, k, cnt
    cdef i64 x, ra, rb, node, ncomp
    cdef i64[::1] pos = np.full(n_codes, -1, dtype=np.int64)
    cdef i64[::1] uf = np.arange(n_codes, dtype=np.int64)
    cdef i64[::1] comp_id = np.full(n_codes, -1, dtype=np.int64)
    cdef i64[::1] comp_of = np.full(n_codes, -1, dtype=np.int64)
    parent_arr = np.full(max(2 * n - 1, 1), -1, dtype=np.int64)
    cdef i64[::1] parent = parent_arr
    cdef i64[::1] group
    cdef i64[::1] rows
    cdef i64[::1] sizes
    cdef i64[::1] row_counts
    cdef i64 next_id = n

    for i in range(n):
        pos[leaves[i]] = i
    first = np.empty(m, dtype=np.int64)
    cdef i64[::1] first_v = first
    cnt = 0
    for t in range(m):
        if pos[trip[t, 0]] >= 0 and pos[trip[t, 1]] >= 0 and pos[trip[t, 2]] >= 0:
            first_v[cnt] = t
            cnt += 1

    tasks = [(np.asarray(leaves).copy(), first[:cnt], -1)]
    while tasks:
        group_obj, rows_obj, par = tasks.pop()
        group = group_obj
        rows = rows_obj
        if group.shape[0] == 1:
            parent[pos[group[0]]] = par
            continue
        node = next_id
        next_id += 1
        parent[node] = par
        for i in range(group.shape[0]):
            uf[group[i]] = group[i]
        for i in range(rows.shape[0]):
            t = rows[i]
            ra = _find(uf, trip[t, 0])
            rb = _find(uf, trip[t, 1])
            if ra != rb:
                uf[rb] = ra
        ncomp = 0
        for i in range(group.shape[0]):
            x = group[i]
            ra = _find(uf, x)
            if comp_id[ra] == -1:
                comp_id[ra] = ncomp
                ncomp += 1
            comp_of[x] = comp_id[ra]
        for i in range(group.shape[0]):
            comp_id[_find(uf, group[i])] = -1
        if ncomp == 1:
            return None, np.asarray(group).copy()

        sizes = np.zeros(ncomp, dtype=np.int64)
        row_counts = np.zeros(ncomp, dtype=np.int64)
        for i in range(group.shape[0]):
            sizes[comp_of[group[i]]] += 1
        for i in range(rows.shape[0]):
            t = rows[i]
            k = comp_of[trip[t, 0]]
            if comp_of[trip[t, 2]] == k:
                row_counts[k] += 1
        parts = [np.empty(sizes[k], dtype=np.int64) for k in range(ncomp)]
        part_rows = [np.empty(row_counts[k], dtype=np.int64) for k in range(ncomp)]
        fill = np.zeros(ncomp, dtype=np.int64)
        cdef_fill(group, comp_of, parts, fill)
        fill[:] = 0
        cdef_fill_rows(rows, trip, comp_of, part_rows, fill)
        for k in range(ncomp - 1, -1, -1):
            tasks.append((parts[k], part_rows[k], node))
    return parent_arr[:next_id].copy(), None


cdef void cdef_fill(i64[::1] group, i64[::1] comp_of, list parts, i64[::1] fill):
    cdef Py_ssize_t i
    cdef i64 k
    cdef i64[::1] dst
    for i in range(group.shape[0]):
        k = comp_of[group[i]]
        dst = parts[k]
        dst[fill[k]] = group[i]
        fill[k] += 1


cdef void cdef_fill_rows(i64[::1] rows, const i64[:, ::1] trip, i64[::1] comp_of,
                         list part_rows, i64[::1] fill):
    cdef Py_ssize_t i
    cdef i64 t, k
    cdef i64[::1] dst
    for i in range(rows.shape[0]):
        t = rows[i]
        k = comp_of[trip[t, 0]]
        if comp_of[trip[t, 2]] == k:
            dst = part_rows[k]
            dst[fill[k]] = t
            fill[k] += 1


def closure_blocks(const i64[:, ::1] trip, const i64[:, ::1] duets, i64 n_codes):
    cdef Py_ssize_t m = trip.shape[0]
    cdef Py_ssize_t i, t, k, s, s2
    cdef i64 x, y, seed, a, b
    cdef i64[::1] ptr = np.zeros(n_codes + 1, dtype=np.int64)
    cdef i64[::1] fill = np.zeros(n_codes, dtype=np.int64)
    cdef i64[::1] belong = np.empty(3 * m, dtype=np.int64)
    cdef char[::1] unused = np.ones(m, dtype=np.int8)
    which_arr = np.full(n_codes, -1, dtype=np.int64)
    cdef i64[::1] which = which_arr
    cdef i64[::1] queue = np.empty(n_codes, dtype=np.int64)
    cdef Py_ssize_t qn

    for t in range(m):
        for k in range(3):
            ptr[trip[t, k] + 1] += 1
    for i in range(n_codes):
        ptr[i + 1] += ptr[i]
    for t in range(m):
        for k in range(3):
            x = trip[t, k]
            belong[ptr[x] + fill[x]] = t
            fill[x] += 1

    for i in range(duets.shape[0]):
        a = duets[i, 0]
        b = duets[i, 1]
        for s in range(2):
            seed = a if s == 0 else b
            if which[seed] != -1:
                continue
            which[seed] = seed
            qn = 0
            queue[qn] = seed
            qn += 1
            while qn > 0:
                qn -= 1
                x = queue[qn]
                for k in range(ptr[x], ptr[x + 1]):
                    t = belong[k]
                    if not unused[t]:
                        continue
                    unused[t] = 0
                    for s2 in range(3):
                        y = trip[t, s2]
                        if which[y] == -1:
                            which[y] = seed
                            queue[qn] = y
                            qn += 1
        if which[a] == which[b]:
            return None
    return which_arr


def pair_components(const i64[::1] a, const i64[::1] b, i64 n):
    cdef i64[::1] uf = np.arange(n, dtype=np.int64)
    cdef i64[::1] ids = np.full(n, -1, dtype=np.int64)
    out_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef Py_ssize_t i
    cdef i64 rx, ry, nxt = 0
    for i in range(a.shape[0]):
        rx = _find(uf, a[i])
        ry = _find(uf, b[i])
        if rx != ry:
            uf[ry] = rx
    for i in range(n):
        rx = _find(uf, i)
        if ids[rx] == -1:
            ids[rx] = nxt
            nxt += 1
        out[i] = ids[rx]
    return out_arr
