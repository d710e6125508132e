# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``fincoh.linalg._kernels_py``.

Entries stay Python integers (arbitrary precision); only loop indices are
typed.  Keep the two files in step.
"""


def smith_dense(list a, Py_ssize_t m, Py_ssize_t n, bint inverses=False):
    """Bring the dense ``m x n`` list-of-rows ``a`` to Smith form in place.

    Returns ``(a, U, V, Ui, Vi)`` with ``U * A * V = a`` and ``Ui``, ``Vi`` the
    inverses (``None`` unless *inverses*).  Pivots are chosen by minimal
    absolute value; the diagonal ends up nonnegative with d1 | d2 | ...
    """
    cdef Py_ssize_t t, i, j, bi, bj, bad
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if inverses else None
    Vi = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if inverses else None
    t = 0
    while t < m and t < n:
        best = 0
        bi = bj = -1
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = v if v > 0 else -v
                    if best == 0 or av < best:
                        best = av
                        bi = i
                        bj = j
                        if av == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        _swap_rows(a, U, Ui, t, bi)
        _swap_cols(a, V, Vi, t, bj, m, n)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    q = v // p
                    _row_axpy(a, U, Ui, i, t, -q, n, m)
                    if a[i][t]:
                        dirty = True
            rowt = a[t]
            for j in range(t + 1, n):
                v = rowt[j]
                if v:
                    q = v // p
                    _col_axpy(a, V, Vi, j, t, -q, m, n)
                    if rowt[j]:
                        dirty = True
            if dirty:
                best = 0
                bi = bj = -1
                for i in range(t + 1, m):
                    v = a[i][t]
                    if v and (best == 0 or abs(v) < best):
                        best = abs(v)
                        bi = i
                        bj = t
                for j in range(t + 1, n):
                    v = rowt[j]
                    if v and (best == 0 or abs(v) < best):
                        best = abs(v)
                        bi = t
                        bj = j
                if best < abs(p):
                    if bi != t:
                        _swap_rows(a, U, Ui, t, bi)
                    else:
                        _swap_cols(a, V, Vi, t, bj, m, n)
                continue
            bad = -1
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                _row_axpy(a, U, Ui, t, bad, 1, n, m)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
            if Ui is not None:
                for r in Ui:
                    r[t] = -r[t]
        t += 1
    return a, U, V, Ui, Vi


cdef _swap_rows(list a, list U, object Ui, Py_ssize_t i, Py_ssize_t j):
    if i == j:
        return
    a[i], a[j] = a[j], a[i]
    U[i], U[j] = U[j], U[i]
    if Ui is not None:
        for r in Ui:
            r[i], r[j] = r[j], r[i]


cdef _swap_cols(list a, list V, object Vi, Py_ssize_t i, Py_ssize_t j, Py_ssize_t m, Py_ssize_t n):
    if i == j:
        return
    for r in a:
        r[i], r[j] = r[j], r[i]
    for r in V:
        r[i], r[j] = r[j], r[i]
    if Vi is not None:
        Vi[i], Vi[j] = Vi[j], Vi[i]


cdef _row_axpy(list a, list U, object Ui, Py_ssize_t i, Py_ssize_t t, object c, Py_ssize_t n, Py_ssize_t m):
    # row_i += c * row_t
    cdef Py_ssize_t j
    ri = a[i]
    rt = a[t]
    for j in range(n):
        x = rt[j]
        if x:
            ri[j] += c * x
    ui = U[i]
    ut = U[t]
    for j in range(m):
        x = ut[j]
        if x:
            ui[j] += c * x
    if Ui is not None:
        # inverse: column t -= c * column i
        for r in Ui:
            x = r[i]
            if x:
                r[t] -= c * x


cdef _col_axpy(list a, list V, object Vi, Py_ssize_t j, Py_ssize_t t, object c, Py_ssize_t m, Py_ssize_t n):
    # col_j += c * col_t
    cdef Py_ssize_t k
    for r in a:
        x = r[t]
        if x:
            r[j] += c * x
    for r in V:
        x = r[t]
        if x:
            r[j] += c * x
    if Vi is not None:
        # inverse: row t -= c * row j
        rt = Vi[t]
        rj = Vi[j]
        for k in range(n):
            x = rj[k]
            if x:
                rt[k] -= c * x


def row_hermite(rows, Py_ssize_t ncols):
    """Canonical row Hermite normal form; returns the nonzero rows."""
    cdef Py_ssize_t nr, pr, col, i, j, bi
    rows = [list(r) for r in rows]
    nr = len(rows)
    pr = 0
    for col in range(ncols):
        if pr >= nr:
            break
        while True:
            best = 0
            bi = -1
            for i in range(pr, nr):
                v = rows[i][col]
                if v:
                    av = v if v > 0 else -v
                    if best == 0 or av < best:
                        best = av
                        bi = i
            if bi < 0:
                break
            rows[pr], rows[bi] = rows[bi], rows[pr]
            piv = rows[pr]
            p = piv[col]
            done = True
            for i in range(pr + 1, nr):
                v = rows[i][col]
                if v:
                    q = v // p
                    ri = rows[i]
                    for j in range(col, ncols):
                        x = piv[j]
                        if x:
                            ri[j] -= q * x
                    if ri[col]:
                        done = False
            if done:
                break
        if bi < 0:
            continue
        piv = rows[pr]
        if piv[col] < 0:
            piv = [-x for x in piv]
            rows[pr] = piv
        p = piv[col]
        for i in range(pr):
            v = rows[i][col]
            if v:
                q = v // p
                if q:
                    ri = rows[i]
                    for j in range(col, ncols):
                        x = piv[j]
                        if x:
                            ri[j] -= q * x
        pr += 1
    return rows[:pr]


def _eliminate(k, a, b, cols, rows, up, uprows, down, downrows):
    """Remove the pair ``(a, b)``; the pivot ``u = d[b, a]`` must divide row ``b``."""
    col_a = cols.pop(a)
    u = col_a[b]
    for r in col_a:
        rows[r].discard(a)
    xs = rows.pop(b)
    row_b = {}
    for x in xs:
        cx = cols[x]
        v = cx[b]
        row_b[x] = v
        c = -(v // u)
        for r, w in col_a.items():
            if r == b:
                continue
            nv = cx.get(r, 0) + c * w
            if nv:
                if r not in cx:
                    s = rows.get(r)
                    if s is None:
                        rows[r] = {x}
                    else:
                        s.add(x)
                cx[r] = nv
            else:
                del cx[r]
                rows[r].discard(x)
        del cx[b]
    if up is not None:
        for c in uprows.pop(a, ()):
            del up[c][a]
    if down is not None:
        colb = down.pop(b, None)
        if colb:
            for r in colb:
                downrows[r].discard(b)
    return (k, a, b, u, col_a, row_b)


def _column_op(k, x, y, q, cols, rows, up, uprows):
    """``col_x -= q col_y``, i.e. the basis change ``x' = x - q y``."""
    cx = cols[x]
    for r, w in cols[y].items():
        nv = cx.get(r, 0) - q * w
        if nv:
            if r not in cx:
                rows[r].add(x)
            cx[r] = nv
        elif r in cx:
            del cx[r]
            rows[r].discard(x)
    if up is not None:
        # coordinates change by y' = y + q x
        for c in uprows.get(x, ()):
            uc = up[c]
            nv = uc.get(y, 0) + q * uc[x]
            if nv:
                if y not in uc:
                    s = uprows.get(y)
                    if s is None:
                        uprows[y] = {c}
                    else:
                        s.add(c)
                uc[y] = nv
            else:
                del uc[y]
                uprows[y].discard(c)
    return (k, x, y, q)


def reduce_chain_complex(diffs, split_degree=None):
    """Eliminate all unit entries of a free chain complex, in place.

    ``diffs`` maps degree ``k`` to the columns of ``d_k : C_k -> C_{k-1}`` as
    ``{a: {b: value}}`` (every basis element of ``C_k`` present as a key).
    Each elimination of a pair ``(a, b)`` with ``d_k[b, a] = u = +-1`` removes
    ``a`` from ``C_k`` and ``b`` from ``C_{k-1}``.  Returns the list of steps
    ``(k, a, b, u, col_a, row_b)`` with ``col_a`` the column of ``a`` and
    ``row_b`` the row ``b`` (without ``a``), both taken just before the step.

    In degree ``split_degree`` the reduction goes on once no unit is left:
    column operations (recorded as steps ``(k, x, y, q)`` meaning
    ``col_x -= q col_y``) bring a row down to its gcd, which is then
    eliminated.  These keep the kernel of ``d_k``, hence ``H_k`` and above,
    but not ``H_(k-1)``.
    """
    rowidx = {}
    for k, cols in diffs.items():
        rows = {}
        for a, col in cols.items():
            for b in col:
                s = rows.get(b)
                if s is None:
                    rows[b] = {a}
                else:
                    s.add(a)
        rowidx[k] = rows
    steps = []
    for k in sorted(diffs, reverse=True):
        cols = diffs[k]
        rows = rowidx[k]
        up = diffs.get(k + 1)
        uprows = rowidx.get(k + 1)
        down = diffs.get(k - 1)
        downrows = rowidx.get(k - 1)
        progress = True
        while progress:
            progress = False
            order = sorted(cols, key=lambda c: len(cols[c]))
            for a in order:
                col_a = cols.get(a)
                if not col_a:
                    continue
                best_b = -1
                best_len = -1
                for b, v in col_a.items():
                    if v == 1 or v == -1:
                        ln = len(rows[b])
                        if best_len < 0 or ln < best_len:
                            best_b = b
                            best_len = ln
                            if ln == 1:
                                break
                if best_b < 0:
                    continue
                steps.append(_eliminate(k, a, best_b, cols, rows, up, uprows, down, downrows))
                progress = True
        if k != split_degree:
            continue
        while True:
            b = -1
            best_len = -1
            for r, s in rows.items():
                if s and (best_len < 0 or len(s) < best_len):
                    b = r
                    best_len = len(s)
            if b < 0:
                break
            while len(rows[b]) > 1:
                y = min(rows[b], key=lambda c: (abs(cols[c][b]), len(cols[c])))
                p = cols[y][b]
                for x in list(rows[b]):
                    if x != y:
                        q = cols[x][b] // p
                        if q:
                            steps.append(_column_op(k, x, y, q, cols, rows, up, uprows))
            a = next(iter(rows[b]))
            steps.append(_eliminate(k, a, b, cols, rows, up, uprows, down, downrows))
    return steps


def project_vector(vec, up_steps, drop, ops=()):
    """Apply the reduction projection to ``vec`` (dict) in some degree j.

    ``up_steps``: steps of degree j+1 in order; ``drop``: set of basis
    elements of degree j eliminated as sources; ``ops``: column operations
    of degree j in order.
    """
    v = dict(vec)
    for step in up_steps:
        b = step[2]
        x = v.get(b)
        if x:
            c = -x * step[3]
            for r, w in step[4].items():
                nv = v.get(r, 0) + c * w
                if nv:
                    v[r] = nv
                else:
                    del v[r]
    for _, x, y, q in ops:
        t = v.get(x)
        if t:
            nv = v.get(y, 0) + q * t
            if nv:
                v[y] = nv
            else:
                del v[y]
    for a in drop:
        v.pop(a, None)
    return v


def include_vector(vec, steps):
    """Apply the reduction inclusion to ``vec`` (dict) in degree j.

    ``steps``: steps of degree j in order (applied in reverse here).
    """
    w = dict(vec)
    for step in reversed(steps):
        if len(step) == 4:
            _, x, y, q = step
            t = w.get(x)
            if t:
                nv = w.get(y, 0) - q * t
                if nv:
                    w[y] = nv
                else:
                    w.pop(y, None)
            continue
        row_b = step[5]
        s = 0
        if len(row_b) < len(w):
            for x, v in row_b.items():
                y = w.get(x)
                if y:
                    s += v * y
        else:
            for x, y in w.items():
                v = row_b.get(x)
                if v:
                    s += v * y
        if s:
            a = step[1]
            nv = w.get(a, 0) - s // step[3]
            if nv:
                w[a] = nv
            else:
                w.pop(a, None)
    return w
