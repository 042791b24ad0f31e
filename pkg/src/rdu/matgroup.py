"""Dense matrices over a ring, symbolic transvection words, generalized
permutation routing, and verified invertible pairs.

Indices are 1-based everywhere in the public API, matching the usual
t_ij(x) notation; storage is 0-based.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import IntegrityError, PreconditionError, RingMismatchError
from .rings import El, IntegerRing, MatrixRing, ModRing, PrimeField, ProductRing, Ring

FLAG_FULL = "full"
FLAG_ESTAR = "Estar"
FLAG_EDOUBLESTAR = "Edoublestar"


class Matrix:
    """Immutable n x n matrix; rows hold raw ring values."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: Ring, rows: Sequence[Sequence]):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise PreconditionError("matrix must be square")

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero_raw, ring.one_raw
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_elements(cls, ring: Ring, entries: Sequence[Sequence[El]]) -> "Matrix":
        return cls(ring, [[x.raw for x in row] for row in entries])

    @classmethod
    def from_values(cls, ring: Ring, entries: Sequence[Sequence]) -> "Matrix":
        return cls(ring, [[ring._raw_from_value(v) for v in row] for row in entries])

    def entry(self, i: int, j: int) -> El:
        return El(self.ring, self.rows[i - 1][j - 1])

    def row_el(self, i: int) -> list[El]:
        return [El(self.ring, v) for v in self.rows[i - 1]]

    def mul(self, other: "Matrix") -> "Matrix":
        if other.ring != self.ring or other.n != self.n:
            raise RingMismatchError("matrix size/ring mismatch in product")
        dot = self.ring.dot_raw
        cols = list(zip(*other.rows))
        return Matrix(
            self.ring, [[dot(row, col) for col in cols] for row in self.rows]
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.mul(other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.rows)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.ring, self.n)

    def __repr__(self):
        fmt = self.ring.format_raw
        body = "; ".join(",".join(fmt(v) for v in row) for row in self.rows)
        return f"<{self.n}x{self.n} over {self.ring}: {body}>"


def transvection(ring: Ring, n: int, i: int, j: int, x: El | int) -> Matrix:
    """t_ij(x): identity plus x at position (i, j)."""
    if i == j:
        raise PreconditionError(f"transvection needs i != j, got ({i}, {j})")
    _check_index(n, i, j)
    if isinstance(x, int):
        x = ring.el(x)
    rows = [list(r) for r in Matrix.identity(ring, n).rows]
    rows[i - 1][j - 1] = x.raw
    return Matrix(ring, rows)


def _check_index(n: int, *idx: int):
    for t in idx:
        if not 1 <= t <= n:
            raise PreconditionError(f"index {t} out of range 1..{n}")


class ElemWord:
    """Ordered product of transvection generators t_ij(x), kept unreduced
    except that zero-argument generators are dropped.

    subset flags: "full" (no constraint), "Estar" (every generator has
    i != 1 and j != n), "Edoublestar" (every generator has j = 1).
    """

    __slots__ = ("ring", "n", "gens", "flag")

    def __init__(self, ring: Ring, n: int, gens: Iterable, flag: str = FLAG_FULL):
        self.ring = ring
        self.n = n
        cleaned = []
        zero = ring.zero_raw
        for g in gens:
            i, j, x = g
            if isinstance(x, El):
                x = x.raw
            if i == j:
                raise PreconditionError(f"generator t_{i}{j} needs i != j")
            _check_index(n, i, j)
            if x == zero:
                continue
            cleaned.append((i, j, x))
        self.gens = tuple(cleaned)
        self.flag = flag
        if flag == FLAG_ESTAR and any(i == 1 or j == n for i, j, _ in self.gens):
            raise PreconditionError("Estar word must avoid row 1 and column n")
        if flag == FLAG_EDOUBLESTAR and any(j != 1 for _, j, _ in self.gens):
            raise PreconditionError("Edoublestar word may only use column 1")

    @classmethod
    def empty(cls, ring: Ring, n: int, flag: str = FLAG_FULL) -> "ElemWord":
        return cls(ring, n, [], flag)

    @classmethod
    def single(cls, ring: Ring, n: int, i: int, j: int, x) -> "ElemWord":
        return cls(ring, n, [(i, j, x)])

    def __len__(self):
        return len(self.gens)

    def concat(self, other: "ElemWord") -> "ElemWord":
        if other.ring != self.ring or other.n != self.n:
            raise RingMismatchError("word ring/size mismatch in concat")
        flag = self.flag if self.flag == other.flag else FLAG_FULL
        return ElemWord(self.ring, self.n, self.gens + other.gens, flag)

    def inverse(self) -> "ElemWord":
        neg = self.ring.neg_raw
        return ElemWord(
            self.ring,
            self.n,
            [(i, j, neg(x)) for i, j, x in reversed(self.gens)],
            self.flag,
        )

    def eval(self) -> Matrix:
        rows = [list(r) for r in Matrix.identity(self.ring, self.n).rows]
        add, mul = self.ring.add_raw, self.ring.mul_raw
        for i, j, x in self.gens:
            ci, cj = i - 1, j - 1
            for r in rows:
                r[cj] = add(r[cj], mul(r[ci], x))
        return Matrix(self.ring, rows)

    def satisfies(self, flag: str) -> bool:
        if flag == FLAG_FULL:
            return True
        if flag == FLAG_ESTAR:
            return all(i != 1 and j != self.n for i, j, _ in self.gens)
        if flag == FLAG_EDOUBLESTAR:
            return all(j == 1 for _, j, _ in self.gens)
        raise PreconditionError(f"unknown flag {flag!r}")

    def __eq__(self, other):
        return (
            isinstance(other, ElemWord)
            and self.ring == other.ring
            and self.n == other.n
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.n, self.gens))

    def __repr__(self):
        fmt = self.ring.format_raw
        if not self.gens:
            return "<empty word>"
        return " ".join(f"t{i},{j}({fmt(x)})" for i, j, x in self.gens)


def word_inverse(w: ElemWord) -> ElemWord:
    return w.inverse()


def eval_word(w: ElemWord) -> Matrix:
    return w.eval()


def perm_word(ring: Ring, n: int, i: int, j: int) -> ElemWord:
    """p_ij = t_ij(1) t_ji(-1) t_ij(1), the generalized permutation word."""
    one = ring.one_raw
    neg_one = ring.neg_raw(one)
    return ElemWord(ring, n, [(i, j, one), (j, i, neg_one), (i, j, one)])


class GLElement:
    """A matrix paired with its verified two-sided inverse."""

    __slots__ = ("mat", "inv")

    def __init__(self, mat: Matrix, inv: Matrix):
        ident = Matrix.identity(mat.ring, mat.n)
        if mat.mul(inv) != ident or inv.mul(mat) != ident:
            raise PreconditionError("matrix and claimed inverse do not multiply to e")
        self.mat = mat
        self.inv = inv

    @classmethod
    def from_matrix(cls, mat: Matrix) -> "GLElement":
        inv = invert_matrix(mat)
        if inv is None:
            raise PreconditionError("matrix is not invertible over its ring")
        return cls(mat, inv)

    @classmethod
    def from_word(cls, w: ElemWord) -> "GLElement":
        return cls(w.eval(), w.inverse().eval())

    @property
    def ring(self) -> Ring:
        return self.mat.ring

    @property
    def n(self) -> int:
        return self.mat.n

    def entry(self, i: int, j: int) -> El:
        return self.mat.entry(i, j)

    def inv_entry(self, i: int, j: int) -> El:
        return self.inv.entry(i, j)

    def swapped(self) -> "GLElement":
        """The inverse element, with the roles of mat and inv exchanged."""
        return GLElement(self.inv, self.mat)

    def conjugated(self, w: ElemWord) -> "GLElement":
        g = w.eval()
        ginv = w.inverse().eval()
        return GLElement(ginv.mul(self.mat).mul(g), ginv.mul(self.inv).mul(g))

    def right_mul(self, m: Matrix, m_inv: Matrix) -> "GLElement":
        return GLElement(self.mat.mul(m), m_inv.mul(self.inv))


# -- inversion ---------------------------------------------------------------


def det_raw(ring: Ring, rows) -> object:
    """Cofactor determinant; commutative rings only, small n."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    add, mul, neg = ring.add_raw, ring.mul_raw, ring.neg_raw
    acc = ring.zero_raw
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = mul(rows[0][j], det_raw(ring, minor))
        acc = add(acc, term if j % 2 == 0 else neg(term))
    return acc


def _adjugate_inverse(mat: Matrix) -> Matrix | None:
    ring = mat.ring
    n, rows = mat.n, mat.rows
    d = det_raw(ring, rows)
    d_inv = ring._right_inverse_raw(d)
    if d_inv is None:
        return None
    mul, neg = ring.mul_raw, ring.neg_raw
    out = []
    for i in range(n):
        out_row = []
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = det_raw(ring, minor) if n > 1 else ring.one_raw
            if (i + j) % 2 == 1:
                cof = neg(cof)
            out_row.append(mul(d_inv, cof))
        out.append(out_row)
    return Matrix(ring, out)


def _gauss_inverse_mod_p(rows: list[list[int]], p: int) -> list[list[int]] | None:
    n = len(rows)
    a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], p - 2, p)
        a[col] = [(v * inv) % p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] % p != 0:
                f = a[r][col]
                a[r] = [(v - f * w) % p for v, w in zip(a[r], a[col])]
    return [r[n:] for r in a]


def invert_matrix(mat: Matrix) -> Matrix | None:
    """Exact inverse, or None when the matrix is not invertible.

    Commutative kinds use adjugate over right_inverse(det); matrix-ring
    entries are inverted by flattening to a single matrix over GF(q);
    products invert componentwise.
    """
    ring = mat.ring
    if isinstance(ring, MatrixRing):
        k, q, n = ring.k, ring.q, mat.n
        flat = [
            [mat.rows[bi][bj][ri][rj] for bj in range(n) for rj in range(k)]
            for bi in range(n)
            for ri in range(k)
        ]
        got = _gauss_inverse_mod_p(flat, q)
        if got is None:
            return None
        rows = [
            [
                tuple(
                    tuple(got[bi * k + ri][bj * k + rj] for rj in range(k))
                    for ri in range(k)
                )
                for bj in range(n)
            ]
            for bi in range(n)
        ]
        return Matrix(ring, rows)
    if isinstance(ring, ProductRing):
        comps = []
        for t, comp in enumerate(ring.components):
            sub = Matrix(comp, [[v[t] for v in row] for row in mat.rows])
            sub_inv = invert_matrix(sub)
            if sub_inv is None:
                return None
            comps.append(sub_inv)
        rows = [
            [
                tuple(comps[t].rows[i][j] for t in range(len(ring.components)))
                for j in range(mat.n)
            ]
            for i in range(mat.n)
        ]
        return Matrix(ring, rows)
    return _adjugate_inverse(mat)


# -- routing ------------------------------------------------------------------


def _transposition_track(pos: tuple[int, int], u: int, v: int) -> tuple[int, int]:
    swap = {u: v, v: u}
    return (swap.get(pos[0], pos[0]), swap.get(pos[1], pos[1]))


def _route_transpositions(src: tuple[int, int], dst: tuple[int, int]):
    """Transpositions moving the tracked off-diagonal position src to dst."""
    trans = []
    cur = src
    if cur[0] != dst[0]:
        trans.append((cur[0], dst[0]))
        cur = _transposition_track(cur, cur[0], dst[0])
    if cur[1] != dst[1]:
        trans.append((cur[1], dst[1]))
        cur = _transposition_track(cur, cur[1], dst[1])
    assert cur == dst
    return trans


def _build_route_word(ring, n, trans, sign_fix):
    w = ElemWord.empty(ring, n)
    for u, v in trans:
        w = w.concat(perm_word(ring, n, u, v))
    if sign_fix is not None:
        u, v = sign_fix
        w = w.concat(perm_word(ring, n, u, v)).concat(perm_word(ring, n, u, v))
    return w


def _generic_entry_route(n, src, dst):
    """Decide transpositions and sign fix over Z with a generic matrix."""
    zz = IntegerRing()
    trans = _route_transpositions(src, dst)
    generic = Matrix(zz, [[10 * (a + 1) + (b + 1) for b in range(n)] for a in range(n)])
    expected = generic.rows[src[0] - 1][src[1] - 1]

    def conj_entry(sign_fix):
        w = _build_route_word(zz, n, trans, sign_fix)
        res = w.inverse().eval().mul(generic).mul(w.eval())
        return res.rows[dst[0] - 1][dst[1] - 1]

    got = conj_entry(None)
    if got == expected:
        return trans, None
    spare = next(s for s in range(1, n + 1) if s not in dst)
    fix = (dst[0], spare)
    if conj_entry(fix) != expected:
        raise IntegrityError("route sign correction failed")
    return trans, fix


def route(ring: Ring, n: int, i: int, j: int, k: int, l: int):
    """Words (tau, rho) with (sigma^tau)_kl = sigma_ij for every sigma and
    t_kl(x)^rho = t_ij(x) for every x, exactly (signs included)."""
    if n < 3:
        raise PreconditionError("routing needs n >= 3")
    if i == j or k == l:
        raise PreconditionError("routing needs off-diagonal positions")
    _check_index(n, i, j, k, l)
    trans_t, fix_t = _generic_entry_route(n, (i, j), (k, l))
    tau = _build_route_word(ring, n, trans_t, fix_t)
    trans_r, fix_r = _generic_entry_route(n, (k, l), (i, j))
    rho = _build_route_word(ring, n, trans_r, fix_r)
    # the rho postcondition is about transvections; certify it on t_kl(7)
    zz = IntegerRing()
    probe = transvection(zz, n, k, l, zz.el(7))
    w = _build_route_word(zz, n, trans_r, fix_r)
    res = w.inverse().eval().mul(probe).mul(w.eval())
    if res != transvection(zz, n, i, j, zz.el(7)):
        raise IntegrityError("transvection route failed verification")
    return tau, rho


def transvection_mover(ring: Ring, n: int, src: tuple[int, int], dst: tuple[int, int]) -> ElemWord:
    """Word w with t_src(x)^w = t_dst(x) for all x."""
    if src == dst:
        return ElemWord.empty(ring, n)
    _, rho = route(ring, n, dst[0], dst[1], src[0], src[1])
    return rho


# -- sampling -----------------------------------------------------------------


def random_word(
    ring: Ring, n: int, rng: random.Random, length: int, args: Sequence[El] | None = None
) -> ElemWord:
    """Random elementary word; args default to small nonzero entries."""
    gens = []
    for _ in range(length):
        i = rng.randrange(1, n + 1)
        j = rng.randrange(1, n + 1)
        while j == i:
            j = rng.randrange(1, n + 1)
        if args is not None:
            x = rng.choice(args)
        elif ring.is_finite:
            x = El(ring, rng.choice(_finite_pool(ring)))
        else:
            x = ring.el(rng.choice([-2, -1, 1, 2]))
        gens.append((i, j, x))
    return ElemWord(ring, n, gens)


def _finite_pool(ring: Ring):
    pool = getattr(ring, "_element_pool", None)
    if pool is None:
        pool = list(ring.elements_raw())
        ring._element_pool = pool
    return pool


def random_element(ring: Ring, rng: random.Random) -> El:
    if ring.is_finite:
        return El(ring, rng.choice(_finite_pool(ring)))
    return ring.el(rng.randint(-9, 9))


def random_invertible(ring: Ring, n: int, rng: random.Random) -> GLElement:
    """Uniform rejection sampling for finite rings; random elementary word
    (length 12, small arguments) over Z."""
    if not ring.is_finite:
        return GLElement.from_word(random_word(ring, n, rng, 12))
    pool = _finite_pool(ring)
    while True:
        mat = Matrix(
            ring, [[rng.choice(pool) for _ in range(n)] for _ in range(n)]
        )
        inv = invert_matrix(mat)
        if inv is not None:
            return GLElement(mat, inv)
