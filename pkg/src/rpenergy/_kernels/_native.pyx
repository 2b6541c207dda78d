# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Native per-sample kernels; contracts identical to the pure backend."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt, asin

cnp.import_array()

NAME = "native"


def row_norms(object xo):
    cdef double[:, ::1] x = np.ascontiguousarray(xo, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], d = x.shape[1], i, j
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc
    for i in range(m):
        acc = 0.0
        for j in range(d):
            acc += x[i, j] * x[i, j]
        out[i] = sqrt(acc)
    return out_arr


def normalize_rows(object xo):
    cdef double[:, ::1] x = np.ascontiguousarray(xo, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], d = x.shape[1], i, j
    out_arr = np.empty((m, d), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double acc
    for i in range(m):
        acc = 0.0
        for j in range(d):
            acc += x[i, j] * x[i, j]
        acc = sqrt(acc)
        for j in range(d):
            out[i, j] = x[i, j] / acc
    return out_arr


def frobsq(object jo):
    cdef double[:, :, ::1] j = np.ascontiguousarray(jo, dtype=np.float64)
    cdef Py_ssize_t m = j.shape[0], a = j.shape[1], b = j.shape[2], i, p, q
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc
    for i in range(m):
        acc = 0.0
        for p in range(a):
            for q in range(b):
                acc += j[i, p, q] * j[i, p, q]
        out[i] = acc
    return out_arr


def sv2_from_gram(object g11o, object g12o, object g22o):
    cdef double[::1] g11 = np.ascontiguousarray(g11o, dtype=np.float64)
    cdef double[::1] g12 = np.ascontiguousarray(g12o, dtype=np.float64)
    cdef double[::1] g22 = np.ascontiguousarray(g22o, dtype=np.float64)
    cdef Py_ssize_t m = g11.shape[0], i
    s1_arr = np.empty(m, dtype=np.float64)
    s2_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] s1 = s1_arr
    cdef double[::1] s2 = s2_arr
    cdef double h, det, disc, lam1, lam2
    for i in range(m):
        h = 0.5 * (g11[i] + g22[i])
        det = g11[i] * g22[i] - g12[i] * g12[i]
        disc = h * h - det
        if disc < 0.0:
            disc = 0.0
        disc = sqrt(disc)
        lam1 = h + disc
        if lam1 < 0.0:
            lam1 = 0.0
        lam2 = h - disc
        if lam2 < 0.0:
            lam2 = 0.0
        s1[i] = sqrt(lam1)
        s2[i] = sqrt(lam2)
    return s1_arr, s2_arr


def householder_frames(object xo):
    cdef double[:, ::1] x = np.ascontiguousarray(xo, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], dp1 = x.shape[1], i, j, k
    out_arr = np.zeros((m, dp1, dp1 - 1), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef double sign, vv, coef
    cdef double[::1] v = np.empty(dp1, dtype=np.float64)
    for i in range(m):
        sign = 1.0 if x[i, 0] >= 0.0 else -1.0
        vv = 0.0
        for j in range(dp1):
            v[j] = x[i, j]
            if j == 0:
                v[j] += sign
            vv += v[j] * v[j]
        for k in range(dp1 - 1):
            coef = 2.0 * v[k + 1] / vv
            for j in range(dp1):
                out[i, j, k] = -v[j] * coef
            out[i, k + 1, k] += 1.0
    return out_arr


def dilation_factor(object co, double t):
    cdef double[::1] c = np.ascontiguousarray(co, dtype=np.float64)
    cdef Py_ssize_t m = c.shape[0], i
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(m):
        out[i] = 2.0 * t / ((1.0 + c[i]) + t * t * (1.0 - c[i]))
    return out_arr


def dilation_apply(object xo, object poleo, double t):
    cdef double[:, ::1] x = np.ascontiguousarray(xo, dtype=np.float64)
    cdef double[::1] pole = np.ascontiguousarray(poleo, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], dp1 = x.shape[1], i, j
    out_arr = np.empty((m, dp1), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double c, s, den, cos_new, sin_new, scale, acc, sgn
    for i in range(m):
        c = 0.0
        for j in range(dp1):
            c += x[i, j] * pole[j]
        s = 0.0
        for j in range(dp1):
            acc = x[i, j] - c * pole[j]
            out[i, j] = acc
            s += acc * acc
        s = sqrt(s)
        den = (1.0 + c) + t * t * (1.0 - c)
        cos_new = ((1.0 + c) - t * t * (1.0 - c)) / den
        sin_new = 2.0 * t * s / den
        if s < 1e-14:
            sgn = 1.0 if c >= 0.0 else -1.0
            for j in range(dp1):
                out[i, j] = sgn * pole[j]
        else:
            scale = sin_new / s
            for j in range(dp1):
                out[i, j] = cos_new * pole[j] + scale * out[i, j]
        acc = 0.0
        for j in range(dp1):
            acc += out[i, j] * out[i, j]
        acc = sqrt(acc)
        for j in range(dp1):
            out[i, j] /= acc
    return out_arr


def dilation_push(object xo, object wo, object poleo, double t):
    cdef double[:, ::1] x = np.ascontiguousarray(xo, dtype=np.float64)
    cdef double[:, :, ::1] w = np.ascontiguousarray(wo, dtype=np.float64)
    cdef double[::1] pole = np.ascontiguousarray(poleo, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], dp1 = x.shape[1], k = w.shape[2], i, j, q
    out_arr = np.empty((m, dp1, k), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef double[::1] what = np.empty(dp1, dtype=np.float64)
    cdef double[::1] u_x = np.empty(dp1, dtype=np.float64)
    cdef double[::1] u_y = np.empty(dp1, dtype=np.float64)
    cdef double c, s, den, lam, cos_new, sin_new, a, wp
    for i in range(m):
        c = 0.0
        for j in range(dp1):
            c += x[i, j] * pole[j]
        s = 0.0
        for j in range(dp1):
            wp = x[i, j] - c * pole[j]
            what[j] = wp
            s += wp * wp
        s = sqrt(s)
        den = (1.0 + c) + t * t * (1.0 - c)
        lam = 2.0 * t / den
        cos_new = ((1.0 + c) - t * t * (1.0 - c)) / den
        sin_new = 2.0 * t * s / den
        if s < 1e-14:
            for q in range(k):
                for j in range(dp1):
                    out[i, j, q] = lam * w[i, j, q]
            continue
        for j in range(dp1):
            what[j] /= s
            u_x[j] = -s * pole[j] + c * what[j]
            u_y[j] = -sin_new * pole[j] + cos_new * what[j]
        for q in range(k):
            a = 0.0
            for j in range(dp1):
                a += u_x[j] * w[i, j, q]
            for j in range(dp1):
                out[i, j, q] = lam * (u_y[j] * a + (w[i, j, q] - u_x[j] * a))
    return out_arr


def fermi_split(object xo, object poleo):
    cdef double[:, ::1] x = np.ascontiguousarray(xo, dtype=np.float64)
    cdef double[::1] pole = np.ascontiguousarray(poleo, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], dp1 = x.shape[1], i, j
    r_arr = np.empty(m, dtype=np.float64)
    foot_arr = np.empty((m, dp1), dtype=np.float64)
    cdef double[::1] r = r_arr
    cdef double[:, ::1] foot = foot_arr
    cdef double c, nw, wp
    for i in range(m):
        c = 0.0
        for j in range(dp1):
            c += x[i, j] * pole[j]
        if c > 1.0:
            c = 1.0
        elif c < -1.0:
            c = -1.0
        r[i] = asin(c)
        nw = 0.0
        for j in range(dp1):
            wp = x[i, j] - c * pole[j]
            foot[i, j] = wp
            nw += wp * wp
        nw = sqrt(nw)
        for j in range(dp1):
            foot[i, j] /= nw
    return r_arr, foot_arr
