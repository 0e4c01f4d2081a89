"""Dynamic-programming kernel for walk-generating polynomials.

The table value at (u, l, y, T) is the GF(2^w) sum, over all s-u-walks of
length l whose label xor is y and whose once-only-set visit pattern is
exactly T, of the product of the walk's edge variables under the current
assignment.  The kernel fills the table level by level and reports, for
every length l, the xor over T of the value at (t, l, target, T), batched
over independent assignment columns.

Field multiplication runs through discrete log/antilog tables: the log of
zero is a sentinel past 2(q-1) and the antilog table is zero there, so a
single add-and-lookup multiplies correctly without branching.
"""

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _kernel(adj_ptr, adj_v, adj_e, labels, tmask, s, t, target,
            dsize, psize, lmax, logw, log_table, exp_table):
    n = adj_ptr.shape[0] - 1
    reps = logw.shape[1]
    prev = np.zeros((n, dsize, psize, reps), dtype=np.uint32)
    cur = np.zeros((n, dsize, psize, reps), dtype=np.uint32)
    out = np.zeros((lmax + 1, reps), dtype=np.uint32)
    ts = tmask[s]
    for r in range(reps):
        prev[s, 0, ts, r] = 1
    for level in range(1, lmax + 1):
        cur[:, :, :, :] = 0
        for u in range(n):
            tu = tmask[u]
            for k in range(adj_ptr[u], adj_ptr[u + 1]):
                w = adj_v[k]
                e = adj_e[k]
                gl = labels[e]
                for y in range(dsize):
                    yp = y ^ gl
                    for tt in range(psize):
                        if tt & tu == tu:
                            tp = tt & ~tu
                            for r in range(reps):
                                x = prev[w, yp, tp, r]
                                cur[u, y, tt, r] ^= exp_table[log_table[x] + logw[e, r]]
        for tt in range(psize):
            for r in range(reps):
                out[level, r] ^= cur[t, target, tt, r]
        prev, cur = cur, prev
    return out


def walk_polynomial_values(adj_ptr, adj_v, adj_e, labels, tmask, s, t, target,
                           dsize, psize, lmax, logw, log_table, exp_table):
    """out[l, r] = value of the feasible-walk polynomial at length l, column r."""
    return _kernel(adj_ptr, adj_v, adj_e, labels, tmask,
                   np.int64(s), np.int64(t), np.int64(target),
                   np.int64(dsize), np.int64(psize), np.int64(lmax),
                   logw, log_table, exp_table)
