# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must stay API-compatible with ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def dimino(const int[:, ::1] mul, base, gens):
    """Elements of the subgroup generated by the subgroup ``base`` and ``gens``.

    ``base`` must list every element of a subgroup (empty means trivial) and
    ``gens`` must generate the result together with ``base``. Returns
    ``(elements, mask)`` with ``mask`` a uint8 indicator over the group.
    """
    cdef Py_ssize_t n = mul.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] b = np.ascontiguousarray(base, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] g = np.ascontiguousarray(gens, dtype=np.int32)
    out = np.empty(n, dtype=np.int32)
    mask_arr = np.zeros(n, dtype=np.uint8)
    reps_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] elems = out
    cdef int[::1] reps = reps_arr
    cdef unsigned char[::1] mask = mask_arr
    cdef Py_ssize_t nb = b.shape[0], ng = g.shape[0]
    cdef Py_ssize_t size = 0, hsize, nreps = 1, ri = 0, i, k
    cdef int rep, y, z

    if nb == 0:
        elems[0] = 0
        mask[0] = 1
        size = 1
    else:
        for i in range(nb):
            z = b[i]
            if not mask[z]:
                mask[z] = 1
                elems[size] = z
                size += 1
    hsize = size
    reps[0] = 0
    while ri < nreps:
        rep = reps[ri]
        ri += 1
        for k in range(ng):
            y = mul[rep, g[k]]
            if not mask[y]:
                # whole right coset base*y is new
                for i in range(hsize):
                    z = mul[elems[i], y]
                    mask[z] = 1
                    elems[size] = z
                    size += 1
                reps[nreps] = y
                nreps += 1
    return out[:size], mask_arr


def conjugate_members(const int[:, ::1] mul, const int[::1] inv, members, int g):
    """``{g^-1 x g : x in members}`` as an indicator mask."""
    cdef Py_ssize_t n = mul.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] m = np.ascontiguousarray(members, dtype=np.int32)
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = mask_arr
    cdef int gi = inv[g]
    cdef Py_ssize_t i
    for i in range(m.shape[0]):
        mask[mul[mul[gi, m[i]], g]] = 1
    return mask_arr


def associativity_violation(const int[:, ::1] mul):
    """First triple ``(a, b, c)`` with ``(ab)c != a(bc)``, or ``None``."""
    cdef Py_ssize_t n = mul.shape[0], a, b, c
    cdef int ab
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if mul[ab, c] != mul[a, mul[b, c]]:
                    return (a, b, c)
    return None
