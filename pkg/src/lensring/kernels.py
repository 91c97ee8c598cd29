"""Hot integer kernels.

Kernels are compiled with numba when it is available and
``LENSRING_DISABLE_NUMBA`` is unset. Otherwise the vector enumeration and the
embedding search run as plain Python, and the continued-fraction sweep
switches to a numpy version vectorized over all (p, q) pairs at once.

All arithmetic is int64. Callers bound their inputs (norms and lattice
determinants in the low thousands), far from overflow.
"""
import numpy as np

from ._accel import NUMBA_ENABLED, njit


@njit
def _isqrt(n):
    r = int(np.sqrt(n))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit
def _norm_vectors(dim, norm, A, b):
    nrows = A.shape[0]
    tail = np.zeros((dim + 1, nrows), dtype=np.int64)
    for t in range(dim - 1, -1, -1):
        for k in range(nrows):
            tail[t, k] = tail[t + 1, k] + A[k, t] * A[k, t]

    cap = 64
    out = np.empty((cap, dim), dtype=np.int64)
    count = 0

    x = np.zeros(dim, dtype=np.int64)
    budget = np.zeros(dim + 1, dtype=np.int64)
    partial = np.zeros((dim + 1, nrows), dtype=np.int64)
    lo = np.zeros(dim, dtype=np.int64)
    budget[0] = norm

    t = 0
    r = _isqrt(budget[0])
    x[0] = r + 1
    lo[0] = -r
    while t >= 0:
        x[t] -= 1
        if x[t] < lo[t]:
            t -= 1
            continue
        v = x[t]
        rem = budget[t] - v * v
        ok = True
        for k in range(nrows):
            s = partial[t, k] + v * A[k, t]
            partial[t + 1, k] = s
            gap = b[k] - s
            if gap * gap > rem * tail[t + 1, k]:
                ok = False
                break
        if not ok:
            continue
        if t == dim - 1:
            if rem == 0:
                if count == cap:
                    bigger = np.empty((2 * cap, dim), dtype=np.int64)
                    bigger[:cap] = out
                    out = bigger
                    cap *= 2
                out[count] = x
                count += 1
            continue
        budget[t + 1] = rem
        t += 1
        r = _isqrt(rem)
        x[t] = r + 1
        lo[t] = -r
    return out[:count].copy()


def norm_vectors(norm, constraints=None, targets=None, dim=None):
    """All x in Z^dim with x.x == norm and constraints @ x == targets.

    Output rows come in descending lexicographic order. Partial assignments are
    pruned with Cauchy-Schwarz on every linear constraint.
    """
    if constraints is None:
        if dim is None:
            raise ValueError("dim is required without constraints")
        A = np.zeros((0, dim), dtype=np.int64)
        b = np.zeros(0, dtype=np.int64)
    else:
        A = np.ascontiguousarray(constraints, dtype=np.int64)
        if A.ndim == 1:
            A = A.reshape(1, -1)
        b = np.ascontiguousarray(targets, dtype=np.int64).reshape(-1)
        dim = A.shape[1]
    if norm < 0:
        return np.zeros((0, dim), dtype=np.int64)
    if dim == 0:
        return np.zeros((1 if norm == 0 and not b.any() else 0, 0), dtype=np.int64)
    return _norm_vectors(dim, np.int64(norm), A, b)


@njit
def _canonical_ok(v, block):
    # block[i] = -1 on the zero block of sigma, else a block id; sigma is sorted
    for i in range(v.size):
        if block[i] == -1 and v[i] < 0:
            return False
        if i > 0 and block[i] == block[i - 1] and v[i] > v[i - 1]:
            return False
    return True


@njit
def _embed_dfs(norms, rel, sigma, block, node_cap):
    m = norms.size
    N = sigma.size
    chosen = np.zeros((m, N), dtype=np.int64)
    A0 = np.empty((1, N), dtype=np.int64)
    A0[0] = sigma
    raw = _norm_vectors(N, norms[0], A0, np.zeros(1, dtype=np.int64))
    keep = 0
    first = np.empty_like(raw)
    for r in range(raw.shape[0]):
        if _canonical_ok(raw[r], block):
            first[keep] = raw[r]
            keep += 1
    cands = [first[:keep].copy()]
    pos = np.zeros(m, dtype=np.int64)
    nodes = 0
    t = 0
    while t >= 0:
        if pos[t] >= cands[t].shape[0]:
            cands.pop()
            t -= 1
            if t >= 0:
                pos[t] += 1
            continue
        nodes += 1
        if nodes > node_cap:
            return -1, nodes, chosen
        chosen[t] = cands[t][pos[t]]
        if t == m - 1:
            return 1, nodes, chosen
        A = np.empty((t + 2, N), dtype=np.int64)
        b = np.zeros(t + 2, dtype=np.int64)
        A[0] = sigma
        for s in range(t + 1):
            A[s + 1] = chosen[s]
            b[s + 1] = rel[t + 1, s]
        cands.append(_norm_vectors(N, norms[t + 1], A, b))
        t += 1
        pos[t] = 0
    return 0, nodes, chosen


def embed_search(norms, rel, sigma, block, node_cap):
    """Depth-first search for vectors u_0..u_{m-1} in sigma-perp with
    u_t.u_t = norms[t] and u_t.u_s = rel[t, s] for s < t.

    The first vector is restricted to the canonical representatives given by
    ``block`` (see _canonical_ok). Returns (status, nodes, vectors) with
    status 1 found, 0 exhausted, -1 node cap reached.
    """
    status, nodes, chosen = _embed_dfs(
        np.ascontiguousarray(norms, dtype=np.int64),
        np.ascontiguousarray(rel, dtype=np.int64),
        np.ascontiguousarray(sigma, dtype=np.int64),
        np.ascontiguousarray(block, dtype=np.int64),
        np.int64(node_cap),
    )
    return int(status), int(nodes), chosen


@njit
def _sweep_loop(p_max):
    buf = np.zeros(p_max + 1, dtype=np.int64)
    checked = 0
    bad_roundtrip = 0
    bad_det = 0
    first_bad_p = 0
    first_bad_q = 0
    for p in range(2, p_max + 1):
        for q in range(1, p):
            a, g = p, q
            while g:
                a, g = g, a % g
            if a != 1:
                continue
            checked += 1
            # expand p/q
            m = 0
            a, b = p, q
            while b != 0:
                c = (a + b - 1) // b
                buf[m] = c
                m += 1
                a, b = b, c * b - a
            # evaluate right to left
            num, den = buf[m - 1], 1
            for i in range(m - 2, -1, -1):
                num, den = buf[i] * num - den, num
            ok = num == p and den == q
            for i in range(m):
                if buf[i] < 2:
                    ok = False
            if not ok:
                bad_roundtrip += 1
            # tridiagonal determinant, left to right, off-diagonal -1
            d_prev, d = 1, buf[0]
            for i in range(1, m):
                d_prev, d = d, buf[i] * d - d_prev
            if d != p:
                bad_det += 1
            if (not ok or d != p) and first_bad_p == 0:
                first_bad_p = p
                first_bad_q = q
    return checked, bad_roundtrip, bad_det, first_bad_p, first_bad_q


def _sweep_numpy(p_max):
    p_all = np.arange(2, p_max + 1, dtype=np.int64)
    q_all = np.arange(1, p_max, dtype=np.int64)
    P, Q = np.meshgrid(p_all, q_all, indexing="ij")
    mask = (Q < P) & (np.gcd(P, Q) == 1)
    P, Q = P[mask], Q[mask]
    total = P.size

    a, b = P.copy(), Q.copy()
    m00 = np.ones(total, dtype=np.int64)
    m01 = np.zeros(total, dtype=np.int64)
    m10 = np.zeros(total, dtype=np.int64)
    m11 = np.ones(total, dtype=np.int64)
    d_prev = np.zeros(total, dtype=np.int64)
    d = np.ones(total, dtype=np.int64)
    small = np.zeros(total, dtype=bool)
    idx = np.arange(total)
    while idx.size:
        ai, bi = a[idx], b[idx]
        c = -(-ai // bi)
        small[idx] |= c < 2
        # continuant product M <- M [[c, -1], [1, 0]]
        n00 = m00[idx] * c + m01[idx]
        m01[idx] = -m00[idx]
        m00[idx] = n00
        n10 = m10[idx] * c + m11[idx]
        m11[idx] = -m10[idx]
        m10[idx] = n10
        nd = c * d[idx] - d_prev[idx]
        d_prev[idx] = d[idx]
        d[idx] = nd
        a[idx], b[idx] = bi, c * bi - ai
        idx = idx[b[idx] != 0]

    bad_rt = (m00 != P) | (m10 != Q) | small
    bad_det = d != P
    bad = np.flatnonzero(bad_rt | bad_det)
    first_p, first_q = (int(P[bad[0]]), int(Q[bad[0]])) if bad.size else (0, 0)
    return total, int(bad_rt.sum()), int(bad_det.sum()), first_p, first_q


def cf_sweep(p_max):
    """Check expand/evaluate round trips and chain determinants for all p <= p_max.

    Returns (pairs_checked, roundtrip_failures, determinant_failures,
    first_bad_p, first_bad_q); first_bad_* are 0 when nothing failed.
    """
    if p_max < 2:
        return 0, 0, 0, 0, 0
    if NUMBA_ENABLED:
        return tuple(int(v) for v in _sweep_loop(p_max))
    return _sweep_numpy(p_max)
