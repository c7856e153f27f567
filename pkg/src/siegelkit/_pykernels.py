"""Pure-Python reference kernels.

Same signatures and algorithms as the compiled ``_kernels`` extension. This
module is used when the extension is not built, or when
``SIEGELKIT_PURE_PYTHON=1`` is set. Every array argument is a complex128
ndarray; nothing here raises library exceptions, failures are reported through
returned flags so the two backends stay interchangeable.
"""

import math

import numpy as np

# iterations without convergence before the working matrix is squared
_SQUARE_EVERY = 64
_MAX_SQUARINGS = 40


def _project_out(x, Q, k):
    for j in range(k):
        q = Q[:, j]
        x = x - q * np.vdot(q, x)
    return x


def power_top(H, x0, tol, maxit, Q=None, k=0):
    """Dominant eigenpair of a Hermitian positive semidefinite matrix.

    Normalized power iteration. When the iterate is slow to settle the working
    matrix is replaced by its normalized square, which keeps the eigenvectors
    and squares every eigenvalue ratio. Rayleigh quotients are always taken
    with the original ``H``.

    Returns ``(mu, x, iterations, converged)``.
    """
    scale = math.sqrt(float(np.sum(np.abs(H) ** 2)))
    x = np.array(x0, dtype=np.complex128)
    if k:
        x = _project_out(x, Q, k)
    nx = np.linalg.norm(x)
    if nx == 0.0:
        return 0.0, x, 0, False
    x = x / nx
    if scale == 0.0:
        return 0.0, x, 0, True
    G = H
    since = 0
    squarings = 0
    mu = 0.0
    for it in range(1, maxit + 1):
        y = G @ x
        if k:
            y = _project_out(y, Q, k)
        ny = np.linalg.norm(y)
        if ny <= 1e-300:
            # x sits in the numerical null space of G; the remaining spectrum is zero
            h = H @ x
            mu = float(np.vdot(x, h).real)
            return mu, x, it, bool(np.linalg.norm(h - mu * x) <= tol * scale)
        x = y / ny
        h = H @ x
        if k:
            h = _project_out(h, Q, k)
        mu = float(np.vdot(x, h).real)
        r = np.linalg.norm(h - mu * x)
        if r <= tol * scale:
            return mu, x, it, True
        since += 1
        if since >= _SQUARE_EVERY and squarings < _MAX_SQUARINGS:
            G = G @ G
            g = math.sqrt(float(np.sum(np.abs(G) ** 2)))
            if g == 0.0:
                return mu, x, it, False
            G = G / g
            since = 0
            squarings += 1
    return mu, x, maxit, False


def opnorm(M, x0, tol, maxit):
    """Largest singular value of ``M`` from the top eigenpair of ``M^H M``.

    Returns ``(sigma, x, iterations, converged)``; ``x`` is the converged
    right singular vector and is reused as a warm start by callers.
    """
    H = M.conj().T @ M
    mu, x, it, ok = power_top(H, x0, tol, maxit)
    return math.sqrt(max(mu, 0.0)), x, it, ok


def deflation_eigh(M, X0, tol, maxit):
    """Full spectrum of a Hermitian matrix by power iteration plus deflation.

    Stage ``l`` runs the power method on ``M_l^2`` (positive semidefinite, so
    a pair of eigenvalues ``+lam, -lam`` cannot stall it), splits the
    converged vector into its ``+lam`` or ``-lam`` component, and deflates
    ``M_{l+1} = M_l - lam v v^H``. Iterates are kept orthogonal to the
    eigenvectors already found.

    Returns ``(eigenvalues, eigenvectors, converged)`` in discovery order.
    """
    d = M.shape[0]
    Ml = np.array(M, dtype=np.complex128)
    vals = np.zeros(d)
    vecs = np.zeros((d, d), dtype=np.complex128)
    scale0 = math.sqrt(float(np.sum(np.abs(M) ** 2)))
    all_ok = True
    for l in range(d):
        x = _project_out(np.array(X0[:, l], dtype=np.complex128), vecs, l)
        nx = np.linalg.norm(x)
        if nx < 1e-8:
            # start vector nearly inside the found subspace: fall back to unit vectors
            for e in range(d):
                x = np.zeros(d, dtype=np.complex128)
                x[e] = 1.0
                x = _project_out(x, vecs, l)
                x = _project_out(x, vecs, l)
                nx = np.linalg.norm(x)
                if nx > 1e-3:
                    break
        x = x / nx
        G = Ml @ Ml
        G = 0.5 * (G + G.conj().T)
        gscale = math.sqrt(float(np.sum(np.abs(G) ** 2)))
        if gscale <= (1e-15 * scale0) ** 2:
            lam = 0.0
            u = x
        else:
            _, v, _, ok = power_top(G, x, tol, maxit, vecs, l)
            all_ok = all_ok and ok
            mv = Ml @ v
            lam_hat = np.linalg.norm(mv)
            up = mv + lam_hat * v
            um = mv - lam_hat * v
            u = up if np.linalg.norm(up) >= np.linalg.norm(um) else um
            u = _project_out(u, vecs, l)
            u = _project_out(u, vecs, l)
            nu = np.linalg.norm(u)
            u = u / nu if nu > 0.0 else v
            lam = float(np.vdot(u, Ml @ u).real)
        vals[l] = lam
        vecs[:, l] = u
        Ml = Ml - lam * np.outer(u, u.conj())
    return vals, vecs, all_ok


def gauss_inverse(M, piv_tol):
    """Gauss-Jordan inverse with partial pivoting.

    Returns ``(inverse, ok, smallest_pivot)``; ``ok`` is False when a pivot
    magnitude falls below ``piv_tol``.
    """
    d = M.shape[0]
    A = np.array(M, dtype=np.complex128)
    inv = np.eye(d, dtype=np.complex128)
    smallest = math.inf
    for col in range(d):
        p = col + int(np.argmax(np.abs(A[col:, col])))
        piv = abs(A[p, col])
        smallest = min(smallest, piv)
        if piv < piv_tol:
            return inv, False, piv
        if p != col:
            A[[col, p]] = A[[p, col]]
            inv[[col, p]] = inv[[p, col]]
        f = 1.0 / A[col, col]
        A[col] *= f
        inv[col] *= f
        for r in range(d):
            if r != col and A[r, col] != 0:
                g = A[r, col]
                A[r] -= g * A[col]
                inv[r] -= g * inv[col]
    return inv, True, smallest


def boundary_search(K1, K21, sign, start, r0, eps, tol, maxit, x0):
    """Bracket the boundary crossing of ``K1 + a K21`` on one side.

    ``sign`` is +1 (search ``a > start``) or -1 (search ``a < start``).
    Inner end starts at ``sign * max(|start|, r0)`` (known inside), the outer
    end is found by doubling and the bracket is bisected to width ``eps``.

    Returns ``(inner, outer, evaluations, converged)``.
    """
    x = np.array(x0, dtype=np.complex128)
    evals = 0
    ok = True
    inner = sign * max(abs(start), r0)
    step = max(abs(inner), 1e-3)
    outer = inner + sign * step
    while True:
        s, x, _, conv = opnorm(K1 + outer * K21, x, tol, maxit)
        evals += 1
        ok = ok and conv
        if s > 1.0:
            break
        inner = outer
        step *= 2.0
        outer = inner + sign * step
        if evals > 2000:
            return inner, outer, evals, False
    while abs(outer - inner) > eps:
        mid = 0.5 * (inner + outer)
        if mid == inner or mid == outer:
            break
        s, x, _, conv = opnorm(K1 + mid * K21, x, tol, maxit)
        evals += 1
        ok = ok and conv
        if s > 1.0:
            outer = mid
        else:
            inner = mid
    return inner, outer, evals, ok


def _givens(a, b):
    # rotation [[c, s], [-conj(s), c]] with real c mapping (a, b) to (r, 0)
    if b == 0:
        return 1.0, 0j
    if a == 0:
        return 0.0, 1.0 + 0j
    aa = abs(a)
    r = math.hypot(aa, abs(b))
    c = aa / r
    s = (a / aa) * b.conjugate() / r
    return c, s


def hessenberg_qr_eigvals(A, tol, maxit):
    """Eigenvalues of a general complex matrix.

    Householder reduction to upper Hessenberg form, then single-shift QR
    sweeps with Wilkinson shifts and deflation on small subdiagonals.

    Returns ``(eigenvalues, converged)`` in deflation order.
    """
    H = np.array(A, dtype=np.complex128)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        nx = np.linalg.norm(x)
        if nx == 0.0 or np.linalg.norm(x[1:]) == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * nx
        v /= np.linalg.norm(v)
        H[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, :])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
    eig = np.zeros(n, dtype=np.complex128)
    hi = n - 1
    its = 0
    total = 0
    while hi >= 0:
        if hi == 0:
            eig[0] = H[0, 0]
            break
        lo = hi
        while lo > 0:
            sub = abs(H[lo, lo - 1])
            if sub <= tol * (abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])) or sub < 1e-300:
                H[lo, lo - 1] = 0.0
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
            return eig, False
        a = H[hi - 1, hi - 1]
        b = H[hi - 1, hi]
        c = H[hi, hi - 1]
        d = H[hi, hi]
        if its % 11 == 10:
            mu = d + 0.75 * abs(c)
        else:
            half = 0.5 * (a - d)
            disc = np.sqrt(half * half + b * c)
            m1 = 0.5 * (a + d) + disc
            m2 = 0.5 * (a + d) - disc
            mu = m1 if abs(m1 - d) <= abs(m2 - d) else m2
        for i in range(lo, hi + 1):
            H[i, i] -= mu
        rots = []
        for k in range(lo, hi):
            cc, ss = _givens(H[k, k], H[k + 1, k])
            rots.append((cc, ss))
            rk = H[k, k:hi + 1].copy()
            rk1 = H[k + 1, k:hi + 1].copy()
            H[k, k:hi + 1] = cc * rk + ss * rk1
            H[k + 1, k:hi + 1] = -ss.conjugate() * rk + cc * rk1
        for j, (cc, ss) in enumerate(rots):
            k = lo + j
            top = min(k + 2, hi)
            ck = H[lo:top + 1, k].copy()
            ck1 = H[lo:top + 1, k + 1].copy()
            H[lo:top + 1, k] = cc * ck + ss.conjugate() * ck1
            H[lo:top + 1, k + 1] = -ss * ck + cc * ck1
        for i in range(lo, hi + 1):
            H[i, i] += mu
    return eig, True
