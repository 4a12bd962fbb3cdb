"""Vectorized numpy versions of the hot kernels in ``_kernels.pyx``.

Integer RNG output is bit-identical to the compiled core. Floating results
agree to rounding only: summation order inside a block differs.
"""
import numpy as np

NAME = "numpy"

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INV53 = 2.0 ** -53

# Lanczos approximation, g = 6.024680040776729583740234375, 13 terms; the
# denominator is x (x+1) ... (x+11) expanded. Same table as CPython's lgamma.
LANCZOS_G = 6.024680040776729583740234375
LANCZOS_NUM = np.array([
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
])
LANCZOS_DEN = np.array([
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
    13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
])

KIND_LOGGAMMA, KIND_POLY, KIND_EXP, KIND_SIN, KIND_RECIP = range(5)


def _mix(z):
    z = z ^ (z >> np.uint64(30))
    z = z * _M1
    z = z ^ (z >> np.uint64(27))
    z = z * _M2
    return z ^ (z >> np.uint64(31))


def stream_key(seed: int) -> int:
    z = np.array([seed], dtype=np.uint64) + GOLDEN
    return int(_mix(z)[0])


def raw_draws(seed: int, start: int, count: int):
    """64-bit hash outputs for counters ``start .. start+count-1``."""
    key = np.uint64(stream_key(seed))
    idx = np.arange(start, start + count, dtype=np.uint64)
    return _mix(((idx + np.uint64(1)) * GOLDEN) ^ key)


def uniforms(seed: int, start: int, count: int):
    z = raw_draws(seed, start, count)
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53


def _lanczos_sum(x):
    out = np.empty_like(x)
    lo = x < 5.0
    xs = x[lo]
    num = np.zeros_like(xs)
    den = np.zeros_like(xs)
    for i in range(12, -1, -1):
        num = num * xs + LANCZOS_NUM[i]
        den = den * xs + LANCZOS_DEN[i]
    out[lo] = num / den
    xl = x[~lo]
    num = np.zeros_like(xl)
    den = np.zeros_like(xl)
    for i in range(13):
        num = num / xl + LANCZOS_NUM[i]
        den = den / xl + LANCZOS_DEN[i]
    out[~lo] = num / den
    return out


def loggamma_array(x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    if not np.all(x > 0):
        raise ValueError("log-gamma is only defined here for x > 0")
    r = np.log(_lanczos_sum(x)) - LANCZOS_G
    r += (x - 0.5) * (np.log(x + LANCZOS_G - 0.5) - 1.0)
    tiny = x < 1e-20
    r[tiny] = -np.log(x[tiny])
    r[(x == 1.0) | (x == 2.0)] = 0.0
    return r


def loggamma(x: float) -> float:
    return float(loggamma_array(np.array([x]))[0])


def apply_kind(kind: int, s, coeffs):
    if kind == KIND_LOGGAMMA:
        return loggamma_array(s)
    if kind == KIND_POLY:
        acc = np.zeros_like(s)
        for c in coeffs[::-1]:
            acc = acc * s + c
        return acc
    if kind == KIND_EXP:
        return np.exp(s)
    if kind == KIND_SIN:
        return np.sin(s)
    if kind == KIND_RECIP:
        return 1.0 / (1.0 + s)
    raise ValueError(f"unknown integrand kind {kind}")


def mc_block(seed: int, n: int, start: int, count: int, kind: int, coeffs):
    """Sum and centered sum of squares of f(x1+...+xn) over one block.

    Sample ``i`` uses counters ``i*n .. i*n+n-1``.
    """
    u = uniforms(seed, start * n, count * n).reshape(count, n)
    s = u[:, 0].copy()
    for j in range(1, n):
        s += u[:, j]
    v = apply_kind(kind, s, np.asarray(coeffs, dtype=np.float64))
    total = float(np.sum(v))
    mean = total / count
    return total, float(np.sum((v - mean) ** 2))
