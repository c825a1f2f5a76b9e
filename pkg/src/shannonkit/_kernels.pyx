# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.  Must stay bit-compatible with ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MUL1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MUL2 = 0x94D049BB133111EBULL
cdef double TWO_M53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * MUL1
    z = (z ^ (z >> 27)) * MUL2
    return z ^ (z >> 31)


cdef inline double _uniform(uint64_t key, uint64_t counter) nogil:
    return <double>(_mix(key + (counter + 1) * GAMMA) >> 11) * TWO_M53


def splitmix_uniform(uint64_t key, uint64_t start, Py_ssize_t count):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(count, dtype=np.float64)
    cdef Py_ssize_t i
    with nogil:
        for i in range(count):
            out[i] = _uniform(key, start + <uint64_t>i)
    return out


def polar_pairs(uint64_t key, Py_ssize_t n_pairs):
    """First ``n_pairs`` accepted (u, v, s) of the polar rejection method."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] us = np.empty(n_pairs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vs = np.empty(n_pairs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ss = np.empty(n_pairs, dtype=np.float64)
    cdef Py_ssize_t got = 0
    cdef uint64_t c = 0
    cdef double u, v, s
    with nogil:
        while got < n_pairs:
            u = 2.0 * _uniform(key, 2 * c) - 1.0
            v = 2.0 * _uniform(key, 2 * c + 1) - 1.0
            c += 1
            s = u * u
            s = s + v * v
            if s > 0.0 and s < 1.0:
                us[got] = u
                vs[got] = v
                ss[got] = s
                got += 1
    return us, vs, ss


def dft_direct(const double[::1] x, Py_ssize_t nmax):
    """Cosine and sine sums ``sum_k x_k cos(2 pi n k / M)`` for n = 0..nmax."""
    cdef Py_ssize_t m = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ctab = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] stab = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] csum = np.zeros(nmax + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ssum = np.zeros(nmax + 1, dtype=np.float64)
    cdef Py_ssize_t n, k, idx
    cdef double accc, accs
    ctab[:] = np.cos(2.0 * np.pi * np.arange(m) / m)
    stab[:] = np.sin(2.0 * np.pi * np.arange(m) / m)
    with nogil:
        for n in range(nmax + 1):
            accc = 0.0
            accs = 0.0
            idx = 0
            for k in range(m):
                accc = accc + x[k] * ctab[idx]
                accs = accs + x[k] * stab[idx]
                idx = idx + n
                if idx >= m:
                    idx = idx - m
            csum[n] = accc
            ssum[n] = accs
    return csum, ssum
