# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic complex Jacobi eigensolver, partial trace, kron.

The Jacobi solver zeroes one off-diagonal pair per rotation and converges
quadratically; at the matrix sizes used here (<= 27) a handful of sweeps
reaches machine precision. Eigenvalues are returned in descending order with
stable tie order, matching the numpy fallback.
"""
import numpy as np

from libc.math cimport sqrt


def eigh_descending(a):
    a = np.array(a, dtype=np.complex128, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    cdef Py_ssize_t n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    w_arr = np.empty(n, dtype=np.float64)
    vout = np.empty((n, n), dtype=np.complex128)
    idx_arr = np.empty(n, dtype=np.intp)
    # complex128 viewed as interleaved doubles: entry (i, j) = [i, 2j] + i*[i, 2j+1]
    cdef double[:, ::1] A = a.view(np.float64)
    cdef double[:, ::1] V = v.view(np.float64)
    cdef double[:, ::1] VO = vout.view(np.float64)
    cdef double[::1] w = w_arr
    cdef Py_ssize_t[::1] idx = idx_arr
    cdef Py_ssize_t p, q, i, key, sweep, p2, q2
    cdef double off, scale, stop, skip2, r, r2, tau, t, c, s, kw
    cdef double fr, fi, xr, xi, yr, yi, wr, wi

    scale = 0.0
    for p in range(n):
        for q2 in range(2 * n):
            scale += A[p, q2] * A[p, q2]
    scale = sqrt(scale)
    if scale == 0.0:
        return np.zeros(n), v
    stop = (1e-14 * scale) * (1e-14 * scale)
    skip2 = stop / <double>(n * n)

    for sweep in range(60):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += A[p, 2 * q] * A[p, 2 * q] + A[p, 2 * q + 1] * A[p, 2 * q + 1]
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                p2 = 2 * p
                q2 = 2 * q
                r2 = A[p, q2] * A[p, q2] + A[p, q2 + 1] * A[p, q2 + 1]
                if r2 <= skip2:
                    continue
                r = sqrt(r2)
                fr = A[p, q2] / r
                fi = A[p, q2 + 1] / r
                tau = (A[q, q2] - A[p, p2]) / (2.0 * r)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # A <- A G  (columns p, q); w = conj(f) * A[i, q]
                for i in range(n):
                    xr = A[i, p2]
                    xi = A[i, p2 + 1]
                    yr = A[i, q2]
                    yi = A[i, q2 + 1]
                    wr = fr * yr + fi * yi
                    wi = fr * yi - fi * yr
                    A[i, p2] = c * xr - s * wr
                    A[i, p2 + 1] = c * xi - s * wi
                    A[i, q2] = s * xr + c * wr
                    A[i, q2 + 1] = s * xi + c * wi
                # A <- G^H A  (rows p, q); w = f * A[q, i]
                for i in range(n):
                    xr = A[p, 2 * i]
                    xi = A[p, 2 * i + 1]
                    yr = A[q, 2 * i]
                    yi = A[q, 2 * i + 1]
                    wr = fr * yr - fi * yi
                    wi = fr * yi + fi * yr
                    A[p, 2 * i] = c * xr - s * wr
                    A[p, 2 * i + 1] = c * xi - s * wi
                    A[q, 2 * i] = s * xr + c * wr
                    A[q, 2 * i + 1] = s * xi + c * wi
                A[p, q2] = 0.0
                A[p, q2 + 1] = 0.0
                A[q, p2] = 0.0
                A[q, p2 + 1] = 0.0
                A[p, p2 + 1] = 0.0
                A[q, q2 + 1] = 0.0
                # V <- V G
                for i in range(n):
                    xr = V[i, p2]
                    xi = V[i, p2 + 1]
                    yr = V[i, q2]
                    yi = V[i, q2 + 1]
                    wr = fr * yr + fi * yi
                    wi = fr * yi - fi * yr
                    V[i, p2] = c * xr - s * wr
                    V[i, p2 + 1] = c * xi - s * wi
                    V[i, q2] = s * xr + c * wr
                    V[i, q2 + 1] = s * xi + c * wi

    for p in range(n):
        w[p] = A[p, 2 * p]
        idx[p] = p
    # stable insertion sort, descending: equal keys keep original order
    for p in range(1, n):
        key = idx[p]
        kw = w[key]
        q = p - 1
        while q >= 0 and w[idx[q]] < kw:
            idx[q + 1] = idx[q]
            q -= 1
        idx[q + 1] = key
    wout = np.empty(n, dtype=np.float64)
    cdef double[::1] WO = wout
    for p in range(n):
        WO[p] = w[idx[p]]
        q2 = 2 * idx[p]
        for q in range(n):
            VO[q, 2 * p] = V[q, q2]
            VO[q, 2 * p + 1] = V[q, q2 + 1]
    return wout, vout


def partial_trace_ket(amps, dims, keep):
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    dims_t = tuple(int(d) for d in dims)
    keep_t = tuple(sorted(int(k) for k in keep))
    cdef Py_ssize_t nd = len(dims_t)
    cdef Py_ssize_t nk = len(keep_t)

    # row-major strides, then mixed-radix offset tables for both axis groups
    cdef Py_ssize_t MAXD = 16
    cdef long long st[16]
    cdef long long dd[16]
    cdef long long kax[16]
    cdef long long rax[16]
    if nd > MAXD:
        raise ValueError("too many tensor factors")
    cdef Py_ssize_t ax, m
    for ax in range(nd):
        dd[ax] = dims_t[ax]
    st[nd - 1] = 1
    for ax in range(nd - 2, -1, -1):
        st[ax] = st[ax + 1] * dd[ax + 1]
    m = 0
    for ax in range(nd):
        if m < nk and keep_t[m] == ax:
            kax[m] = ax
            m += 1
    m = 0
    for ax in range(nd):
        if ax not in keep_t:
            rax[m] = ax
            m += 1

    cdef Py_ssize_t dk = 1, dr = 1
    for ax in range(nk):
        dk *= dd[kax[ax]]
    for ax in range(nd - nk):
        dr *= dd[rax[ax]]

    kofs_arr = np.zeros(dk, dtype=np.int64)
    rofs_arr = np.zeros(dr, dtype=np.int64)
    cdef long long[::1] kofs = kofs_arr
    cdef long long[::1] rofs = rofs_arr
    cdef Py_ssize_t L, i, j
    cdef long long base, sax, dax
    L = 1
    for ax in range(nk):
        dax = dd[kax[ax]]
        sax = st[kax[ax]]
        for i in range(L - 1, -1, -1):
            base = kofs[i]
            for j in range(dax - 1, -1, -1):
                kofs[i * dax + j] = base + j * sax
        L *= dax
    L = 1
    for ax in range(nd - nk):
        dax = dd[rax[ax]]
        sax = st[rax[ax]]
        for i in range(L - 1, -1, -1):
            base = rofs[i]
            for j in range(dax - 1, -1, -1):
                rofs[i * dax + j] = base + j * sax
        L *= dax

    rho_arr = np.empty((dk, dk), dtype=np.complex128)
    # const views: kets expose read-only buffers
    cdef const double complex[::1] psi = amps
    cdef double complex[:, ::1] rho = rho_arr
    cdef Py_ssize_t tt
    cdef double complex acc
    for i in range(dk):
        for j in range(i, dk):
            acc = 0
            for tt in range(dr):
                acc = acc + psi[kofs[i] + rofs[tt]] * psi[kofs[j] + rofs[tt]].conjugate()
            rho[i, j] = acc
            rho[j, i] = acc.conjugate()
    return rho_arr


def kron_vec(a, b):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    b = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t nb = b.shape[0]
    out_arr = np.empty(na * nb, dtype=np.complex128)
    cdef const double complex[::1] x = a
    cdef const double complex[::1] y = b
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double complex xi
    for i in range(na):
        xi = x[i]
        for j in range(nb):
            out[i * nb + j] = xi * y[j]
    return out_arr
