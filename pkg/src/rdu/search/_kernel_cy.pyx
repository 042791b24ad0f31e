# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; same surface as _kernel_py."""

from cpython cimport array
import array

KERNEL_NAME = "cython"

_INT_TEMPLATE = array.array('i', [])


cdef inline int enc9(const unsigned char* m, int q) nogil:
    cdef int e = 0
    cdef int t
    for t in range(9):
        e = e * q + m[t]
    return e


cdef inline void cmul9(const unsigned char* a, const unsigned char* b,
                       unsigned char* out, int q) nogil:
    cdef int i, j, acc
    for i in range(3):
        for j in range(3):
            acc = (a[3*i] * b[j] + a[3*i+1] * b[3+j] + a[3*i+2] * b[6+j])
            out[3*i+j] = <unsigned char>(acc % q)


cdef inline void cinv9(const unsigned char* m, unsigned char* out, int q) nogil:
    cdef int cof[9]
    cdef int det, d_inv, t, i, j, v
    cof[0] = m[4]*m[8] - m[5]*m[7]
    cof[1] = -(m[3]*m[8] - m[5]*m[6])
    cof[2] = m[3]*m[7] - m[4]*m[6]
    cof[3] = -(m[1]*m[8] - m[2]*m[7])
    cof[4] = m[0]*m[8] - m[2]*m[6]
    cof[5] = -(m[0]*m[7] - m[1]*m[6])
    cof[6] = m[1]*m[5] - m[2]*m[4]
    cof[7] = -(m[0]*m[5] - m[2]*m[3])
    cof[8] = m[0]*m[4] - m[1]*m[3]
    det = (m[0]*cof[0] + m[1]*cof[1] + m[2]*cof[2]) % q
    if det < 0:
        det += q
    d_inv = 1
    for t in range(1, q):
        if (det * t) % q == 1:
            d_inv = t
            break
    for i in range(3):
        for j in range(3):
            v = (d_inv * cof[3*j + i]) % q
            if v < 0:
                v += q
            out[3*i + j] = <unsigned char>v


def mul9(const unsigned char[::1] a, const unsigned char[::1] b, int q):
    cdef unsigned char out[9]
    cmul9(&a[0], &b[0], out, q)
    return bytes(out[:9])


def inv9(const unsigned char[::1] m, int q):
    cdef unsigned char out[9]
    cinv9(&m[0], out, q)
    return bytes(out[:9])


def conj_perm(const unsigned char[::1] elems, int count,
              const unsigned char[::1] g, const unsigned char[::1] ginv,
              const int[::1] enc_to_idx, int q):
    cdef array.array out = array.clone(_INT_TEMPLATE, count, zero=False)
    cdef int[::1] ov = out
    cdef unsigned char t1[9]
    cdef unsigned char t2[9]
    cdef int idx
    with nogil:
        for idx in range(count):
            cmul9(&ginv[0], &elems[9*idx], t1, q)
            cmul9(t1, &g[0], t2, q)
            ov[idx] = enc_to_idx[enc9(t2, q)]
    return out


def inverse_map(const unsigned char[::1] elems, int count,
                const int[::1] enc_to_idx, int q):
    cdef array.array out = array.clone(_INT_TEMPLATE, count, zero=False)
    cdef int[::1] ov = out
    cdef unsigned char t1[9]
    cdef int idx
    with nogil:
        for idx in range(count):
            cinv9(&elems[9*idx], t1, q)
            ov[idx] = enc_to_idx[enc9(t1, q)]
    return out


def scan_two_step(const unsigned char[::1] sinv_flats, int count,
                  const unsigned char[::1] target,
                  const unsigned char[::1] mask,
                  const int[::1] enc_to_idx, int q):
    cdef unsigned char t1[9]
    cdef int r
    cdef int found = -1
    with nogil:
        for r in range(count):
            cmul9(&sinv_flats[9*r], &target[0], t1, q)
            if mask[enc_to_idx[enc9(t1, q)]]:
                found = r
                break
    return found


def expand_products(const unsigned char[::1] a_flats, int na,
                    const unsigned char[::1] b_flats, int nb,
                    const int[::1] enc_to_idx, int q):
    cdef array.array out = array.clone(_INT_TEMPLATE, na * nb, zero=False)
    cdef int[::1] ov = out
    cdef unsigned char t1[9]
    cdef int i, j, t
    with nogil:
        t = 0
        for i in range(na):
            for j in range(nb):
                cmul9(&a_flats[9*i], &b_flats[9*j], t1, q)
                ov[t] = enc_to_idx[enc9(t1, q)]
                t += 1
    return out
