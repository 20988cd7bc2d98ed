# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels. Signatures mirror ``_fallback``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, floor
from libc.stdint cimport int64_t

cnp.import_array()

cdef int DX[8]
cdef int DY[8]
cdef int BACK[8]
DX[:] = [-1, -1, 0, 1, 1, 1, 0, -1]
DY[:] = [0, -1, -1, -1, 0, 1, 1, 1]


cdef void _init_back():
    cdef int d, e, ddx, ddy
    for d in range(8):
        ddx = DX[(d + 7) % 8] - DX[d]
        ddy = DY[(d + 7) % 8] - DY[d]
        for e in range(8):
            if DX[e] == ddx and DY[e] == ddy:
                BACK[d] = e

_init_back()


def largest_component(const unsigned char[:, ::1] mask):
    cdef Py_ssize_t h = mask.shape[0], w = mask.shape[1]
    cdef Py_ssize_t n = h * w
    cdef cnp.int32_t[::1] labels = np.zeros(n, dtype=np.int32)
    cdef cnp.int64_t[::1] stack = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t idx, top, cur, x, y, nx, ny, size
    cdef Py_ssize_t best_size = 0
    cdef int label = 0, best = 0, k
    for idx in range(n):
        if mask[idx // w, idx % w] == 0 or labels[idx] != 0:
            continue
        label += 1
        labels[idx] = label
        stack[0] = idx
        top = 1
        size = 0
        while top > 0:
            top -= 1
            cur = stack[top]
            size += 1
            y = cur // w
            x = cur % w
            for k in range(8):
                nx = x + DX[k]
                ny = y + DY[k]
                if nx < 0 or nx >= w or ny < 0 or ny >= h:
                    continue
                if mask[ny, nx] and labels[ny * w + nx] == 0:
                    labels[ny * w + nx] = label
                    stack[top] = ny * w + nx
                    top += 1
        # labels appear in raster order of their first pixel; strict > keeps the earliest on ties
        if size > best_size:
            best_size = size
            best = label
    out = np.zeros((h, w), dtype=np.uint8)
    cdef unsigned char[:, ::1] o = out
    if best == 0:
        return out
    for idx in range(n):
        if labels[idx] == best:
            o[idx // w, idx % w] = 1
    return out


cdef inline bint _fg(const unsigned char[:, ::1] mask, Py_ssize_t x, Py_ssize_t y,
                     Py_ssize_t w, Py_ssize_t h):
    return 0 <= x < w and 0 <= y < h and mask[y, x] != 0


def moore_trace(const unsigned char[:, ::1] mask):
    cdef Py_ssize_t h = mask.shape[0], w = mask.shape[1]
    cdef Py_ssize_t idx, sx = -1, sy = -1, area = 0
    for idx in range(h * w):
        if mask[idx // w, idx % w]:
            if sx < 0:
                sy = idx // w
                sx = idx % w
            area += 1
    if sx < 0:
        return np.empty((0, 2), dtype=np.int64)

    cdef Py_ssize_t limit = 4 * area + 8
    pts = np.empty((limit + 1, 2), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] p = pts
    cdef Py_ssize_t px = sx, py = sy, cx = 0, cy = 0, fx = -1, fy = -1, count = 0
    cdef int back = 0, nback = 0, k, d
    cdef bint found
    while count <= limit:
        found = False
        for k in range(1, 9):
            d = (back + k) % 8
            if _fg(mask, px + DX[d], py + DY[d], w, h):
                cx = px + DX[d]
                cy = py + DY[d]
                nback = BACK[d]
                found = True
                break
        if not found:
            return np.array([[sx, sy]], dtype=np.int64)
        if px == sx and py == sy and fx >= 0 and cx == fx and cy == fy:
            break
        if fx < 0:
            fx = cx
            fy = cy
        p[count, 0] = px
        p[count, 1] = py
        count += 1
        px = cx
        py = cy
        back = nback
    return pts[:count].copy()


def raw_moments(const unsigned char[:, ::1] mask, int order):
    cdef Py_ssize_t h = mask.shape[0], w = mask.shape[1], x, y
    cdef int i, j
    cdef int64_t xp, yp
    cdef int64_t rows[16]
    out = np.zeros((order + 1, order + 1), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = out
    if order > 15:
        raise ValueError("order too large")
    for y in range(h):
        for i in range(order + 1):
            rows[i] = 0
        for x in range(w):
            if mask[y, x]:
                xp = 1
                for i in range(order + 1):
                    rows[i] += xp
                    xp *= x
        yp = 1
        for j in range(order + 1):
            for i in range(order + 1 - j):
                o[i, j] += rows[i] * yp
            yp *= y
    return out


def zernike_sums(const unsigned char[:, ::1] mask, double cx, double cy, double rmax,
                 const double[:, ::1] coeffs, const cnp.int64_t[::1] reps):
    cdef Py_ssize_t h = mask.shape[0], w = mask.shape[1], x, y
    cdef Py_ssize_t npairs = coeffs.shape[0], ncoef = coeffs.shape[1], p, e
    cdef int m, maxm = 0
    cdef double px, py, rho2, rho, ur, ui, radial, rp, tr, ti
    cdef double powr[64]
    cdef double cre[64]
    cdef double cim[64]
    if ncoef > 64:
        raise ValueError("order too large")
    # only powers m, m+2, ..., n carry nonzero coefficients
    lo = np.zeros(npairs, dtype=np.int64)
    hi = np.zeros(npairs, dtype=np.int64)
    cdef cnp.int64_t[::1] lo_v = lo
    cdef cnp.int64_t[::1] hi_v = hi
    for p in range(npairs):
        if reps[p] > maxm:
            maxm = reps[p]
        lo_v[p] = reps[p]
        hi_v[p] = reps[p]
        for e in range(ncoef):
            if coeffs[p, e] != 0.0:
                hi_v[p] = e
    acc = np.zeros(npairs, dtype=np.complex128)
    cdef double complex[::1] a = acc
    for y in range(h):
        for x in range(w):
            if not mask[y, x]:
                continue
            px = (x - cx) / rmax
            py = (y - cy) / rmax
            rho2 = px * px + py * py
            if rho2 > 1.0:
                continue
            rho = sqrt(rho2)
            if rho > 0:
                ur = px / rho
                ui = -py / rho
            else:
                ur = 1.0
                ui = 0.0
            rp = 1.0
            for e in range(ncoef):
                powr[e] = rp
                rp *= rho
            cre[0] = 1.0
            cim[0] = 0.0
            for m in range(1, maxm + 1):
                cre[m] = cre[m - 1] * ur - cim[m - 1] * ui
                cim[m] = cre[m - 1] * ui + cim[m - 1] * ur
            for p in range(npairs):
                radial = 0.0
                for e in range(lo_v[p], hi_v[p] + 1, 2):
                    radial += coeffs[p, e] * powr[e]
                m = reps[p]
                a[p] = a[p] + radial * (cre[m] + 1j * cim[m])
    return acc


def polar_sample(const unsigned char[:, ::1] mask, double cx, double cy, double rmax,
                 int n_radial, int n_angular):
    cdef Py_ssize_t h = mask.shape[0], w = mask.shape[1]
    cdef int k, i
    cdef Py_ssize_t ix, iy
    cdef double r
    theta = np.arange(n_angular) * (2.0 * np.pi / n_angular)
    cdef double[::1] ct = np.cos(theta)
    cdef double[::1] st = np.sin(theta)
    out = np.zeros((n_radial, n_angular), dtype=np.float64)
    cdef double[:, ::1] o = out
    for k in range(n_radial):
        r = (k + 0.5) * (rmax / n_radial)
        for i in range(n_angular):
            ix = <Py_ssize_t>floor(cx + r * ct[i] + 0.5)
            iy = <Py_ssize_t>floor(cy + r * st[i] + 0.5)
            if 0 <= ix < w and 0 <= iy < h and mask[iy, ix]:
                o[k, i] = 1.0
    return out


def pf2_corner(const double[:, ::1] grid, int m, int n):
    cdef Py_ssize_t nr = grid.shape[0], nt = grid.shape[1], k, i, q
    cdef int rho, phi
    cdef double c, s, v
    # twiddles exp(-2 pi j q / N) indexed by q mod N
    cdef double[::1] tc = np.cos(-2.0 * np.pi * np.arange(nt) / nt)
    cdef double[::1] ts = np.sin(-2.0 * np.pi * np.arange(nt) / nt)
    cdef double[::1] rc = np.cos(-2.0 * np.pi * np.arange(nr) / nr)
    cdef double[::1] rs = np.sin(-2.0 * np.pi * np.arange(nr) / nr)
    # angular pass (R x n), then radial pass
    tmp_re = np.zeros((nr, n), dtype=np.float64)
    tmp_im = np.zeros((nr, n), dtype=np.float64)
    cdef double[:, ::1] tr = tmp_re
    cdef double[:, ::1] ti = tmp_im
    cdef double re_acc[512]
    cdef double im_acc[512]
    if n > 512:
        raise ValueError("too many angular frequencies")
    for k in range(nr):
        for phi in range(n):
            re_acc[phi] = 0.0
            im_acc[phi] = 0.0
        for i in range(nt):
            v = grid[k, i]
            if v == 0.0:
                continue
            # q = (i * phi) mod nt, advanced incrementally
            q = 0
            for phi in range(n):
                re_acc[phi] += v * tc[q]
                im_acc[phi] += v * ts[q]
                q += i
                if q >= nt:
                    q -= nt
        for phi in range(n):
            tr[k, phi] = re_acc[phi]
            ti[k, phi] = im_acc[phi]
    out = np.zeros((m, n), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    for rho in range(m):
        for k in range(nr):
            c = rc[(k * rho) % nr]
            s = rs[(k * rho) % nr]
            for phi in range(n):
                o[rho, phi] = o[rho, phi] + (tr[k, phi] * c - ti[k, phi] * s) \
                    + 1j * (tr[k, phi] * s + ti[k, phi] * c)
    return out
