# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels for the dense 6->H->1 network.

Accumulation is naive summation in ascending index order so results are
bit-reproducible across runs.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()

BACKEND = "cython"


def batch_forward(const double[:, ::1] w_in, const double[::1] b_hidden,
                  const double[::1] w_out, double b_out,
                  const double[:, ::1] x, bint sigmoid=False):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef Py_ssize_t h = b_hidden.shape[0]
    cdef cnp.ndarray[double, ndim=2] pre_arr = np.empty((n, h))
    cdef cnp.ndarray[double, ndim=2] post_arr = np.empty((n, h))
    cdef cnp.ndarray[double, ndim=1] y_arr = np.empty(n)
    cdef double[:, ::1] pre = pre_arr
    cdef double[:, ::1] post = post_arr
    cdef double[::1] y = y_arr
    cdef Py_ssize_t k, i, j
    cdef double acc, out
    for k in range(n):
        out = 0.0
        for j in range(h):
            acc = 0.0
            for i in range(d):
                acc += w_in[i, j] * x[k, i]
            acc += b_hidden[j]
            pre[k, j] = acc
            post[k, j] = acc if acc > 0.0 else 0.0
            out += w_out[j] * post[k, j]
        out += b_out
        if sigmoid:
            out = 1.0 / (1.0 + exp(-out))
        y[k] = out
    return pre_arr, post_arr, y_arr


def batch_backward(const double[:, ::1] w_in, const double[::1] b_hidden,
                   const double[::1] w_out, double b_out,
                   const double[:, ::1] x, const double[::1] targets, bint sigmoid=False):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef Py_ssize_t h = b_hidden.shape[0]
    cdef cnp.ndarray[double, ndim=2] g_w_in_arr = np.zeros((d, h))
    cdef cnp.ndarray[double, ndim=1] g_b_arr = np.zeros(h)
    cdef cnp.ndarray[double, ndim=1] g_w_out_arr = np.zeros(h)
    cdef cnp.ndarray[double, ndim=1] y_arr = np.empty(n)
    cdef double[:, ::1] g_w_in = g_w_in_arr
    cdef double[::1] g_b = g_b_arr
    cdef double[::1] g_w_out = g_w_out_arr
    cdef double[::1] y = y_arr
    cdef double g_b_out = 0.0
    cdef double acc, out, delta, dh
    cdef Py_ssize_t k, i, j
    # per-sample hidden state kept in a scratch row
    cdef cnp.ndarray[double, ndim=1] pre_row_arr = np.empty(h)
    cdef cnp.ndarray[double, ndim=1] post_row_arr = np.empty(h)
    cdef double[::1] pre_row = pre_row_arr
    cdef double[::1] post_row = post_row_arr
    for k in range(n):
        out = 0.0
        for j in range(h):
            acc = 0.0
            for i in range(d):
                acc += w_in[i, j] * x[k, i]
            acc += b_hidden[j]
            pre_row[j] = acc
            post_row[j] = acc if acc > 0.0 else 0.0
            out += w_out[j] * post_row[j]
        out += b_out
        if sigmoid:
            out = 1.0 / (1.0 + exp(-out))
        y[k] = out
        delta = 2.0 * (out - targets[k]) / n
        if sigmoid:
            delta = delta * out * (1.0 - out)
        g_b_out += delta
        for j in range(h):
            g_w_out[j] += delta * post_row[j]
            if pre_row[j] > 0.0:
                dh = delta * w_out[j]
                g_b[j] += dh
                for i in range(d):
                    g_w_in[i, j] += dh * x[k, i]
    return g_w_in_arr, g_b_arr, g_w_out_arr, g_b_out, y_arr
