"""Pure-Python search kernel: 3x3 matrices mod q flattened row-major into
9-byte strings.  The compiled twin in _kernel_cy.pyx exposes the same
functions; either can back the search driver."""

from array import array

KERNEL_NAME = "python"


def mul9(a, b, q):
    """Flat 3x3 product mod q; a, b indexable byte sequences of length 9."""
    return bytes(
        (
            a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
        )
        % q
        for i in range(3)
        for j in range(3)
    )


def enc9(m, q):
    e = 0
    for t in range(9):
        e = e * q + m[t]
    return e


def det9(m, q):
    return (
        m[0] * (m[4] * m[8] - m[5] * m[7])
        - m[1] * (m[3] * m[8] - m[5] * m[6])
        + m[2] * (m[3] * m[7] - m[4] * m[6])
    ) % q


def inv9(m, q):
    d = det9(m, q)
    d_inv = next(t for t in range(1, q) if (d * t) % q == 1)
    cof = [
        m[4] * m[8] - m[5] * m[7],
        -(m[3] * m[8] - m[5] * m[6]),
        m[3] * m[7] - m[4] * m[6],
        -(m[1] * m[8] - m[2] * m[7]),
        m[0] * m[8] - m[2] * m[6],
        -(m[0] * m[7] - m[1] * m[6]),
        m[1] * m[5] - m[2] * m[4],
        -(m[0] * m[5] - m[2] * m[3]),
        m[0] * m[4] - m[1] * m[3],
    ]
    # inverse = d_inv * adjugate; adjugate is the cofactor transpose
    return bytes((d_inv * cof[3 * j + i]) % q for i in range(3) for j in range(3))


def conj_perm(elems, count, g, ginv, enc_to_idx, q):
    """Index permutation induced by conjugation: idx -> index(g^-1 M g)."""
    out = array("i", bytes(4 * count))
    for idx in range(count):
        m = elems[9 * idx : 9 * idx + 9]
        out[idx] = enc_to_idx[enc9(mul9(mul9(ginv, m, q), g, q), q)]
    return out


def inverse_map(elems, count, enc_to_idx, q):
    out = array("i", bytes(4 * count))
    for idx in range(count):
        m = elems[9 * idx : 9 * idx + 9]
        out[idx] = enc_to_idx[enc9(inv9(m, q), q)]
    return out


def scan_two_step(sinv_flats, count, target, mask, enc_to_idx, q):
    """First r with s_r^-1 * target inside the mask, else -1."""
    for r in range(count):
        s = sinv_flats[9 * r : 9 * r + 9]
        if mask[enc_to_idx[enc9(mul9(s, target, q), q)]]:
            return r
    return -1


def expand_products(a_flats, na, b_flats, nb, enc_to_idx, q):
    """Indices of all pairwise products a_i * b_j (duplicates included)."""
    out = array("i", bytes(4 * na * nb))
    t = 0
    for i in range(na):
        a = a_flats[9 * i : 9 * i + 9]
        for j in range(nb):
            b = b_flats[9 * j : 9 * j + 9]
            out[t] = enc_to_idx[enc9(mul9(a, b, q), q)]
            t += 1
    return out
