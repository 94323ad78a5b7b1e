# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled series kernel: drop-in replacement for locq._kernel_py.

Coefficients stay arbitrary-precision Python ints; the win comes from
typed loop indices and direct list access in the O(n^2) convolutions.
"""

BACKEND = "cython"


def mul_trunc(list a, list b):
    """Truncated Cauchy product of two equal-length coefficient lists."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i, j
    cdef list out = [0] * n
    cdef object ai, bj
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    return out


def invert_ints(list nums):
    """Reciprocal of an integer-coefficient series; see locq._kernel_py."""
    cdef Py_ssize_t L = len(nums)
    cdef Py_ssize_t n, k
    cdef object n0 = nums[0]
    cdef list p = [0] * L
    cdef object acc, pw, nk
    p[0] = 1
    for n in range(1, L):
        acc = 0
        pw = 1
        for k in range(1, n + 1):
            nk = nums[k]
            if nk:
                acc = acc + nk * p[n - k] * pw
            pw = pw * n0
        p[n] = -acc
    cdef list out = [0] * L
    pw = 1
    for n in range(L - 1, -1, -1):
        out[n] = p[n] * pw
        pw = pw * n0
    return out, pw


def mul_binomial_inplace(list nums, Py_ssize_t exponent, long sign):
    """Multiply a coefficient list in place by (1 + sign * q**exponent)."""
    cdef Py_ssize_t i
    cdef object v
    for i in range(len(nums) - 1, exponent - 1, -1):
        v = nums[i - exponent]
        if v:
            if sign > 0:
                nums[i] = nums[i] + v
            else:
                nums[i] = nums[i] - v
