# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: power iteration, deflation, Gauss-Jordan inverse,
boundary bisection and Hessenberg-QR eigenvalues.

Mirror of ``_pykernels``; signatures and return tuples are identical.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, atan2, cos, sin, hypot

cnp.import_array()

ctypedef double complex cplx

cdef int SQUARE_EVERY = 64
cdef int MAX_SQUARINGS = 40


cdef inline double cabs2(cplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double cabs_(cplx z) noexcept nogil:
    return hypot(z.real, z.imag)


cdef inline cplx cconj(cplx z) noexcept nogil:
    return z.conjugate()


cdef inline cplx csqrt_(cplx z) noexcept nogil:
    cdef double r = sqrt(cabs_(z))
    cdef double t = 0.5 * atan2(z.imag, z.real)
    return r * cos(t) + 1j * (r * sin(t))


cdef double fro(cplx[:, ::1] A) noexcept nogil:
    cdef Py_ssize_t i, j, n = A.shape[0], m = A.shape[1]
    cdef double s = 0.0
    for i in range(n):
        for j in range(m):
            s += cabs2(A[i, j])
    return sqrt(s)


cdef double vnorm(cplx[::1] x) noexcept nogil:
    cdef Py_ssize_t i
    cdef double s = 0.0
    for i in range(x.shape[0]):
        s += cabs2(x[i])
    return sqrt(s)


cdef void matvec(cplx[:, ::1] A, cplx[::1] x, cplx[::1] y) noexcept nogil:
    cdef Py_ssize_t i, j, n = A.shape[0]
    cdef cplx acc
    for i in range(n):
        acc = 0
        for j in range(n):
            acc = acc + A[i, j] * x[j]
        y[i] = acc


cdef void project_out(cplx[::1] x, cplx[:, ::1] Q, int k) noexcept nogil:
    cdef Py_ssize_t i, j, n = x.shape[0]
    cdef cplx c
    for j in range(k):
        c = 0
        for i in range(n):
            c = c + cconj(Q[i, j]) * x[i]
        for i in range(n):
            x[i] = x[i] - Q[i, j] * c


cdef int _power_top(cplx[:, ::1] H, cplx[::1] x, double tol, int maxit,
                    cplx[:, ::1] Q, int k, double* mu_out, int* it_out) noexcept:
    """Core power iteration; x is updated in place. Returns 1 on convergence."""
    cdef Py_ssize_t n = H.shape[0]
    cdef Py_ssize_t i, j, l
    cdef double scale = fro(H)
    cdef double nx, ny, mu = 0.0, r, g
    cdef int it, since = 0, squarings = 0
    cdef cplx acc
    cdef cplx[:, ::1] G = H
    cdef cplx[:, ::1] G2
    cdef cplx[::1] y = np.empty(n, dtype=np.complex128)
    cdef cplx[::1] h = np.empty(n, dtype=np.complex128)
    if k:
        project_out(x, Q, k)
    nx = vnorm(x)
    if nx == 0.0:
        mu_out[0] = 0.0
        it_out[0] = 0
        return 0
    for i in range(n):
        x[i] = x[i] / nx
    if scale == 0.0:
        mu_out[0] = 0.0
        it_out[0] = 0
        return 1
    for it in range(1, maxit + 1):
        matvec(G, x, y)
        if k:
            project_out(y, Q, k)
        ny = vnorm(y)
        if ny <= 1e-300:
            matvec(H, x, h)
            acc = 0
            for i in range(n):
                acc = acc + cconj(x[i]) * h[i]
            mu = acc.real
            r = 0.0
            for i in range(n):
                r += cabs2(h[i] - mu * x[i])
            mu_out[0] = mu
            it_out[0] = it
            return 1 if sqrt(r) <= tol * scale else 0
        for i in range(n):
            x[i] = y[i] / ny
        matvec(H, x, h)
        if k:
            project_out(h, Q, k)
        acc = 0
        for i in range(n):
            acc = acc + cconj(x[i]) * h[i]
        mu = acc.real
        r = 0.0
        for i in range(n):
            r += cabs2(h[i] - mu * x[i])
        if sqrt(r) <= tol * scale:
            mu_out[0] = mu
            it_out[0] = it
            return 1
        since += 1
        if since >= SQUARE_EVERY and squarings < MAX_SQUARINGS:
            G2 = np.empty((n, n), dtype=np.complex128)
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for l in range(n):
                        acc = acc + G[i, l] * G[l, j]
                    G2[i, j] = acc
            g = fro(G2)
            if g == 0.0:
                mu_out[0] = mu
                it_out[0] = it
                return 0
            for i in range(n):
                for j in range(n):
                    G2[i, j] = G2[i, j] / g
            G = G2
            since = 0
            squarings += 1
    mu_out[0] = mu
    it_out[0] = maxit
    return 0


def power_top(H, x0, double tol, int maxit, Q=None, int k=0):
    cdef cplx[:, ::1] Hv = np.ascontiguousarray(H, dtype=np.complex128)
    x = np.array(x0, dtype=np.complex128)
    cdef cplx[::1] xv = x
    cdef cplx[:, ::1] Qv
    if Q is None:
        Qv = np.zeros((Hv.shape[0], 1), dtype=np.complex128)
        k = 0
    else:
        Qv = np.ascontiguousarray(Q, dtype=np.complex128)
    cdef double mu = 0.0
    cdef int it = 0
    cdef int ok = _power_top(Hv, xv, tol, maxit, Qv, k, &mu, &it)
    return mu, x, it, bool(ok)


cdef void gram(cplx[:, ::1] M, cplx[:, ::1] H) noexcept nogil:
    # H = M^H M
    cdef Py_ssize_t i, j, l, n = M.shape[0]
    cdef cplx acc
    for i in range(n):
        for j in range(i, n):
            acc = 0
            for l in range(n):
                acc = acc + cconj(M[l, i]) * M[l, j]
            H[i, j] = acc
            H[j, i] = cconj(acc)


def opnorm(M, x0, double tol, int maxit):
    cdef cplx[:, ::1] Mv = np.ascontiguousarray(M, dtype=np.complex128)
    cdef Py_ssize_t n = Mv.shape[0]
    cdef cplx[:, ::1] H = np.empty((n, n), dtype=np.complex128)
    gram(Mv, H)
    x = np.array(x0, dtype=np.complex128)
    cdef cplx[::1] xv = x
    cdef cplx[:, ::1] Qv = np.zeros((n, 1), dtype=np.complex128)
    cdef double mu = 0.0
    cdef int it = 0
    cdef int ok = _power_top(H, xv, tol, maxit, Qv, 0, &mu, &it)
    return sqrt(mu if mu > 0.0 else 0.0), x, it, bool(ok)


def deflation_eigh(M, X0, double tol, int maxit):
    cdef cplx[:, ::1] Ml = np.array(M, dtype=np.complex128, order="C")
    cdef cplx[:, ::1] X = np.ascontiguousarray(X0, dtype=np.complex128)
    cdef Py_ssize_t d = Ml.shape[0]
    cdef Py_ssize_t i, j, l, e, s
    vals_a = np.zeros(d)
    vecs_a = np.zeros((d, d), dtype=np.complex128, order="C")
    cdef double[::1] vals = vals_a
    cdef cplx[:, ::1] vecs = vecs_a
    cdef cplx[:, ::1] G = np.empty((d, d), dtype=np.complex128)
    cdef cplx[::1] x = np.empty(d, dtype=np.complex128)
    cdef cplx[::1] mv = np.empty(d, dtype=np.complex128)
    cdef cplx[::1] up = np.empty(d, dtype=np.complex128)
    cdef cplx[::1] um = np.empty(d, dtype=np.complex128)
    cdef cplx[::1] u
    cdef double scale0 = fro(Ml)
    cdef double nx, gscale, lam_hat, lam, nu, mu
    cdef int it, ok, all_ok = 1
    cdef cplx acc
    for l in range(d):
        for i in range(d):
            x[i] = X[i, l]
        project_out(x, vecs, l)
        nx = vnorm(x)
        if nx < 1e-8:
            for e in range(d):
                for i in range(d):
                    x[i] = 0
                x[e] = 1
                project_out(x, vecs, l)
                project_out(x, vecs, l)
                nx = vnorm(x)
                if nx > 1e-3:
                    break
        for i in range(d):
            x[i] = x[i] / nx
        for i in range(d):
            for j in range(d):
                acc = 0
                for s in range(d):
                    acc = acc + Ml[i, s] * Ml[s, j]
                G[i, j] = acc
        for i in range(d):
            for j in range(i, d):
                acc = 0.5 * (G[i, j] + cconj(G[j, i]))
                G[i, j] = acc
                G[j, i] = cconj(acc)
        gscale = fro(G)
        if gscale <= (1e-15 * scale0) * (1e-15 * scale0):
            lam = 0.0
            u = x
        else:
            ok = _power_top(G, x, tol, maxit, vecs, l, &mu, &it)
            if not ok:
                all_ok = 0
            matvec(Ml, x, mv)
            lam_hat = vnorm(mv)
            for i in range(d):
                up[i] = mv[i] + lam_hat * x[i]
                um[i] = mv[i] - lam_hat * x[i]
            u = up if vnorm(up) >= vnorm(um) else um
            project_out(u, vecs, l)
            project_out(u, vecs, l)
            nu = vnorm(u)
            if nu > 0.0:
                for i in range(d):
                    u[i] = u[i] / nu
            else:
                u = x
            matvec(Ml, u, mv)
            acc = 0
            for i in range(d):
                acc = acc + cconj(u[i]) * mv[i]
            lam = acc.real
        vals[l] = lam
        for i in range(d):
            vecs[i, l] = u[i]
        for i in range(d):
            for j in range(d):
                Ml[i, j] = Ml[i, j] - lam * u[i] * cconj(u[j])
    return vals_a, vecs_a, bool(all_ok)


def gauss_inverse(M, double piv_tol):
    cdef cplx[:, ::1] A = np.array(M, dtype=np.complex128, order="C")
    cdef Py_ssize_t d = A.shape[0]
    inv_a = np.eye(d, dtype=np.complex128)
    cdef cplx[:, ::1] inv = inv_a
    cdef Py_ssize_t col, r, p, j
    cdef double piv, best, smallest = float("inf")
    cdef cplx f, g, tmp
    for col in range(d):
        p = col
        best = cabs_(A[col, col])
        for r in range(col + 1, d):
            if cabs_(A[r, col]) > best:
                best = cabs_(A[r, col])
                p = r
        piv = best
        if piv < smallest:
            smallest = piv
        if piv < piv_tol:
            return inv_a, False, piv
        if p != col:
            for j in range(d):
                tmp = A[col, j]; A[col, j] = A[p, j]; A[p, j] = tmp
                tmp = inv[col, j]; inv[col, j] = inv[p, j]; inv[p, j] = tmp
        f = 1.0 / A[col, col]
        for j in range(d):
            A[col, j] = A[col, j] * f
            inv[col, j] = inv[col, j] * f
        for r in range(d):
            if r != col:
                g = A[r, col]
                if g.real != 0.0 or g.imag != 0.0:
                    for j in range(d):
                        A[r, j] = A[r, j] - g * A[col, j]
                        inv[r, j] = inv[r, j] - g * inv[col, j]
    return inv_a, True, smallest


cdef double line_norm(cplx[:, ::1] K1, cplx[:, ::1] K21, double a,
                      cplx[:, ::1] M, cplx[:, ::1] H, cplx[::1] x,
                      cplx[:, ::1] Q, double tol, int maxit, int* ok) noexcept:
    cdef Py_ssize_t i, j, n = K1.shape[0]
    cdef double mu = 0.0
    cdef int it = 0
    for i in range(n):
        for j in range(n):
            M[i, j] = K1[i, j] + a * K21[i, j]
    gram(M, H)
    if not _power_top(H, x, tol, maxit, Q, 0, &mu, &it):
        ok[0] = 0
    return sqrt(mu if mu > 0.0 else 0.0)


def boundary_search(K1, K21, int sign, double start, double r0, double eps,
                    double tol, int maxit, x0):
    cdef cplx[:, ::1] A = np.ascontiguousarray(K1, dtype=np.complex128)
    cdef cplx[:, ::1] B = np.ascontiguousarray(K21, dtype=np.complex128)
    cdef Py_ssize_t n = A.shape[0]
    cdef cplx[:, ::1] M = np.empty((n, n), dtype=np.complex128)
    cdef cplx[:, ::1] H = np.empty((n, n), dtype=np.complex128)
    cdef cplx[:, ::1] Q = np.zeros((n, 1), dtype=np.complex128)
    x_a = np.array(x0, dtype=np.complex128)
    cdef cplx[::1] x = x_a
    cdef int ok = 1, evals = 0
    cdef double inner, outer, step, mid, s
    inner = sign * (fabs(start) if fabs(start) > r0 else r0)
    step = fabs(inner) if fabs(inner) > 1e-3 else 1e-3
    outer = inner + sign * step
    while True:
        s = line_norm(A, B, outer, M, H, x, Q, tol, maxit, &ok)
        evals += 1
        if s > 1.0:
            break
        inner = outer
        step *= 2.0
        outer = inner + sign * step
        if evals > 2000:
            return inner, outer, evals, False
    while fabs(outer - inner) > eps:
        mid = 0.5 * (inner + outer)
        if mid == inner or mid == outer:
            break
        s = line_norm(A, B, mid, M, H, x, Q, tol, maxit, &ok)
        evals += 1
        if s > 1.0:
            outer = mid
        else:
            inner = mid
    return inner, outer, evals, bool(ok)


cdef void givens(cplx a, cplx b, double* c, cplx* s) noexcept nogil:
    cdef double aa, r
    if b.real == 0.0 and b.imag == 0.0:
        c[0] = 1.0
        s[0] = 0
        return
    if a.real == 0.0 and a.imag == 0.0:
        c[0] = 0.0
        s[0] = 1
        return
    aa = cabs_(a)
    r = hypot(aa, cabs_(b))
    c[0] = aa / r
    s[0] = (a / aa) * cconj(b) / r


def hessenberg_qr_eigvals(A, double tol, int maxit):
    cdef cplx[:, ::1] H = np.array(A, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = H.shape[0]
    cdef Py_ssize_t k, i, j, lo, hi, top, m
    cdef double nx, nt, sub
    cdef cplx phase, acc, a, b, c, d, half, disc, m1, m2, mu, rk, rk1
    cdef cplx[::1] v = np.empty(n, dtype=np.complex128)
    cdef double[::1] cs = np.empty(n, dtype=np.float64)
    cdef cplx[::1] ss = np.empty(n, dtype=np.complex128)
    cdef double cc
    cdef cplx sv
    eig_a = np.zeros(n, dtype=np.complex128)
    cdef cplx[::1] eig = eig_a
    cdef int its = 0, total = 0
    for k in range(n - 2):
        m = n - k - 1
        nx = 0.0
        nt = 0.0
        for i in range(m):
            v[i] = H[k + 1 + i, k]
            nx += cabs2(v[i])
            if i > 0:
                nt += cabs2(v[i])
        if nx == 0.0 or nt == 0.0:
            continue
        nx = sqrt(nx)
        if v[0].real != 0.0 or v[0].imag != 0.0:
            phase = v[0] / cabs_(v[0])
        else:
            phase = 1
        v[0] = v[0] + phase * nx
        nt = 0.0
        for i in range(m):
            nt += cabs2(v[i])
        nt = sqrt(nt)
        for i in range(m):
            v[i] = v[i] / nt
        for j in range(n):
            acc = 0
            for i in range(m):
                acc = acc + cconj(v[i]) * H[k + 1 + i, j]
            for i in range(m):
                H[k + 1 + i, j] = H[k + 1 + i, j] - 2.0 * v[i] * acc
        for i in range(n):
            acc = 0
            for j in range(m):
                acc = acc + H[i, k + 1 + j] * v[j]
            for j in range(m):
                H[i, k + 1 + j] = H[i, k + 1 + j] - 2.0 * acc * cconj(v[j])
    hi = n - 1
    while hi >= 0:
        if hi == 0:
            eig[0] = H[0, 0]
            break
        lo = hi
        while lo > 0:
            sub = cabs_(H[lo, lo - 1])
            if sub <= tol * (cabs_(H[lo, lo]) + cabs_(H[lo - 1, lo - 1])) or sub < 1e-300:
                H[lo, lo - 1] = 0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        its += 1
        total += 1
        if total > maxit:
            return eig_a, False
        a = H[hi - 1, hi - 1]
        b = H[hi - 1, hi]
        c = H[hi, hi - 1]
        d = H[hi, hi]
        if its % 11 == 10:
            mu = d + 0.75 * cabs_(c)
        else:
            half = 0.5 * (a - d)
            disc = csqrt_(half * half + b * c)
            m1 = 0.5 * (a + d) + disc
            m2 = 0.5 * (a + d) - disc
            mu = m1 if cabs_(m1 - d) <= cabs_(m2 - d) else m2
        for i in range(lo, hi + 1):
            H[i, i] = H[i, i] - mu
        for k in range(lo, hi):
            givens(H[k, k], H[k + 1, k], &cc, &sv)
            cs[k] = cc
            ss[k] = sv
            for j in range(k, hi + 1):
                rk = H[k, j]
                rk1 = H[k + 1, j]
                H[k, j] = cc * rk + sv * rk1
                H[k + 1, j] = -cconj(sv) * rk + cc * rk1
        for k in range(lo, hi):
            cc = cs[k]
            sv = ss[k]
            top = k + 2 if k + 2 < hi else hi
            for i in range(lo, top + 1):
                rk = H[i, k]
                rk1 = H[i, k + 1]
                H[i, k] = cc * rk + cconj(sv) * rk1
                H[i, k + 1] = -sv * rk + cc * rk1
        for i in range(lo, hi + 1):
            H[i, i] = H[i, i] + mu
    return eig_a, True
