# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: log-gamma and blocked Monte Carlo over the unit cube.

Mirrors ``_fallback``; see there for the RNG and Lanczos constants.
"""
from libc.math cimport log, exp, sin
from libc.stdint cimport uint64_t

import numpy as np

NAME = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double INV53 = 1.0 / 9007199254740992.0
cdef double LANCZOS_G = 6.024680040776729583740234375

cdef double LANCZOS_NUM[13]
cdef double LANCZOS_DEN[13]
LANCZOS_NUM[:] = [
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
]
LANCZOS_DEN[:] = [
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
    13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
]

cdef enum:
    KIND_LOGGAMMA = 0
    KIND_POLY = 1
    KIND_EXP = 2
    KIND_SIN = 3
    KIND_RECIP = 4


cdef inline uint64_t mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double draw(uint64_t key, uint64_t idx) noexcept nogil:
    cdef uint64_t z = mix(((idx + 1) * GOLDEN) ^ key)
    return (<double>(z >> 11) + 0.5) * INV53


cdef double lanczos_sum(double x) noexcept nogil:
    cdef double num = 0.0, den = 0.0
    cdef int i
    if x < 5.0:
        for i in range(12, -1, -1):
            num = num * x + LANCZOS_NUM[i]
            den = den * x + LANCZOS_DEN[i]
    else:
        for i in range(13):
            num = num / x + LANCZOS_NUM[i]
            den = den / x + LANCZOS_DEN[i]
    return num / den


cdef double c_loggamma(double x) noexcept nogil:
    cdef double r
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 1e-20:
        return -log(x)
    r = log(lanczos_sum(x)) - LANCZOS_G
    r += (x - 0.5) * (log(x + LANCZOS_G - 0.5) - 1.0)
    return r


def stream_key(unsigned long long seed):
    return mix(<uint64_t>seed + GOLDEN)


def raw_draws(unsigned long long seed, unsigned long long start, Py_ssize_t count):
    cdef uint64_t key = mix(<uint64_t>seed + GOLDEN)
    cdef uint64_t[::1] out = np.empty(count, dtype=np.uint64)
    cdef Py_ssize_t i
    for i in range(count):
        out[i] = mix(((start + i + 1) * GOLDEN) ^ key)
    return np.asarray(out)


def uniforms(unsigned long long seed, unsigned long long start, Py_ssize_t count):
    cdef uint64_t key = mix(<uint64_t>seed + GOLDEN)
    cdef double[::1] out = np.empty(count, dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(count):
        out[i] = draw(key, start + i)
    return np.asarray(out)


def loggamma(double x):
    if not x > 0:
        raise ValueError("log-gamma is only defined here for x > 0")
    return c_loggamma(x)


def loggamma_array(x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] out = np.empty(xv.shape[0], dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        if not xv[i] > 0:
            raise ValueError("log-gamma is only defined here for x > 0")
    with nogil:
        for i in range(xv.shape[0]):
            out[i] = c_loggamma(xv[i])
    return np.asarray(out)


cdef inline double apply_kind(int kind, double s, const double[::1] coeffs) noexcept nogil:
    cdef double acc
    cdef Py_ssize_t j
    if kind == KIND_LOGGAMMA:
        return c_loggamma(s)
    if kind == KIND_POLY:
        acc = 0.0
        for j in range(coeffs.shape[0] - 1, -1, -1):
            acc = acc * s + coeffs[j]
        return acc
    if kind == KIND_EXP:
        return exp(s)
    if kind == KIND_SIN:
        return sin(s)
    return 1.0 / (1.0 + s)


def mc_block(unsigned long long seed, int n, unsigned long long start,
             Py_ssize_t count, int kind, coeffs):
    """Sum and centered sum of squares (Welford) over one block of samples."""
    if kind < 0 or kind > KIND_RECIP:
        raise ValueError(f"unknown integrand kind {kind}")
    cdef const double[::1] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef uint64_t key = mix(<uint64_t>seed + GOLDEN)
    cdef uint64_t base = start * <uint64_t>n
    cdef Py_ssize_t i
    cdef int j
    cdef double s, v, d, total = 0.0, mean = 0.0, m2 = 0.0
    with nogil:
        for i in range(count):
            s = draw(key, base)
            base += 1
            for j in range(1, n):
                s += draw(key, base)
                base += 1
            v = apply_kind(kind, s, cv)
            total += v
            d = v - mean
            mean += d / (i + 1)
            m2 += d * (v - mean)
    return total, m2
