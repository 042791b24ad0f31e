"""The simultaneous-reduction calculus on pairs of invertible matrices and
its expansion into explicit signed conjugate products.

Conventions: [g, h] = g h g^-1 h^-1 and g^h = h^-1 g h.  A reduction step
by g maps (a, b) to ([a^-1, g], [g, b]); expanding one step rewrites the
running product P (= a_k b_k) as P^(g^-1 a_k) * (P^-1)^(a_k), doubling the
factor count.
"""

from __future__ import annotations

from typing import Sequence

from .errors import IntegrityError, PreconditionError, RingMismatchError
from .matgroup import ElemWord, GLElement, Matrix, transvection
from .rings import El


class Pair:
    """Two invertible matrices of the same size over the same ring."""

    __slots__ = ("a", "b")

    def __init__(self, a: Matrix, b: Matrix):
        if a.ring != b.ring or a.n != b.n:
            raise RingMismatchError("pair members must share ring and size")
        self.a = a
        self.b = b

    def product(self) -> Matrix:
        return self.a.mul(self.b)


def _commutator(g: Matrix, g_inv: Matrix, h: Matrix, h_inv: Matrix) -> Matrix:
    return g.mul(h).mul(g_inv).mul(h_inv)


def reduce_step(p: Pair, g: ElemWord) -> Pair:
    """One simultaneous reduction: ([a^-1, g], [g, b])."""
    gm = g.eval()
    gi = g.inverse().eval()
    a_inv = _must_invert(p.a)
    b_inv = _must_invert(p.b)
    return Pair(
        _commutator(a_inv, p.a, gm, gi),
        _commutator(gm, gi, p.b, b_inv),
    )


def reduce_chain(p: Pair, gs: Sequence[ElemWord]) -> Pair:
    for g in gs:
        p = reduce_step(p, g)
    return p


def _must_invert(m: Matrix) -> Matrix:
    from .matgroup import invert_matrix

    inv = invert_matrix(m)
    if inv is None:
        raise PreconditionError("pair member is not invertible")
    return inv


class ConjProduct:
    """Ordered product of signed conjugates of a base element:
    prod_t (base^(eps_t))^(eval(c_t)), eps_t in {+1, -1}."""

    __slots__ = ("base", "factors")

    def __init__(self, base: GLElement, factors: Sequence[tuple[int, ElemWord]]):
        self.base = base
        facs = []
        for eps, w in factors:
            if eps not in (1, -1):
                raise PreconditionError(f"factor sign must be +1/-1, got {eps}")
            if w.ring != base.ring or w.n != base.n:
                raise RingMismatchError("conjugator word does not match base")
            facs.append((eps, w))
        self.factors = tuple(facs)

    def __len__(self):
        return len(self.factors)

    def evaluate(self) -> Matrix:
        acc = Matrix.identity(self.base.ring, self.base.n)
        for eps, w in self.factors:
            mid = self.base.mat if eps == 1 else self.base.inv
            acc = acc.mul(w.inverse().eval()).mul(mid).mul(w.eval())
        return acc

    def inverse(self) -> "ConjProduct":
        return ConjProduct(
            self.base, [(-eps, w) for eps, w in reversed(self.factors)]
        )

    def conjugated(self, w: ElemWord) -> "ConjProduct":
        return ConjProduct(
            self.base, [(eps, c.concat(w)) for eps, c in self.factors]
        )

    def concat(self, other: "ConjProduct") -> "ConjProduct":
        if other.base is not self.base and (
            other.base.mat != self.base.mat or other.base.inv != self.base.inv
        ):
            raise PreconditionError("cannot concatenate products over different bases")
        return ConjProduct(self.base, self.factors + other.factors)

    def rebased(
        self, new_base: GLElement, prefix: ElemWord, flip: bool = False
    ) -> "ConjProduct":
        """Reinterpret factors over new_base when base = (new_base^(+-1))^prefix:
        prepend the prefix word to every conjugator, flipping signs if the
        old base was the inverse of the new one."""
        return ConjProduct(
            new_base,
            [
                ((-eps if flip else eps), prefix.concat(c))
                for eps, c in self.factors
            ],
        )

    def inlined(self, base_as_product: "ConjProduct") -> "ConjProduct":
        """Substitute each factor base^(eps) by the given product (over a
        deeper base), conjugating it with the factor's word."""
        out = []
        inv = base_as_product.inverse()
        for eps, c in self.factors:
            sub = base_as_product if eps == 1 else inv
            out.extend(sub.conjugated(c).factors)
        return ConjProduct(base_as_product.base, out)


def split_commutator(
    t: ElemWord, base: GLElement, shape: str, y=None
) -> ConjProduct:
    """Rewrite the chain seeds as signed base-conjugates.

    shape "commutator":     [eval(t), base]    = (base^(t^-1)) * base^-1
    shape "inverse_product": eval(t) * (eval(t)^-1 base^-1) = base^-1
    shape "iii_product":    t_n1(-y) * t_n1(y)^(base*eval(t))
                            = (base^-1)^(t || t_n1(y)) * base^t,
                            valid because t uses only column-1 generators.
    """
    ring, n = base.ring, base.n
    if shape == "commutator":
        prod = ConjProduct(base, [(1, t.inverse()), (-1, ElemWord.empty(ring, n))])
        expected = _commutator(
            t.eval(), t.inverse().eval(), base.mat, base.inv
        )
    elif shape == "inverse_product":
        prod = ConjProduct(base, [(-1, ElemWord.empty(ring, n))])
        expected = base.inv
    elif shape == "iii_product":
        if y is None:
            raise PreconditionError("iii_product needs the ring element y")
        y_el = y if isinstance(y, El) else El(ring, y)
        if any(j != 1 for _, j, _ in t.gens):
            raise PreconditionError(
                "iii_product needs a column-1 word (it must commute with t_n1(y))"
            )
        w_y = ElemWord.single(ring, n, n, 1, y_el)
        prod = ConjProduct(base, [(-1, t.concat(w_y)), (1, t)])
        st = base.mat.mul(t.eval())
        st_inv = t.inverse().eval().mul(base.inv)
        expected = transvection(ring, n, n, 1, -y_el).mul(
            st_inv.mul(transvection(ring, n, n, 1, y_el)).mul(st)
        )
    else:
        raise PreconditionError(f"unknown split shape {shape!r}")
    if prod.evaluate() != expected:
        raise IntegrityError(f"split_commutator({shape}) failed its identity")
    return prod


def expand_conjugates(
    base: GLElement,
    initial: ConjProduct,
    a1: ElemWord,
    gs: Sequence[ElemWord],
    b1: Matrix | None = None,
) -> ConjProduct:
    """Expand a reduction chain into signed conjugates of the base.

    initial must evaluate to eval(a1) * b1; each step by g_k doubles the
    factor list: first every conjugator gains g_k^-1 a_k, then the reversed
    sign-flipped copy gains a_k, and the tracked word becomes
    a_{k+1} = [a_k^-1, g_k].  The result evaluates to the chain's final
    product a_{m+1} b_{m+1}.
    """
    if initial.base is not base:
        raise PreconditionError("initial product must be over the given base")
    a_word = a1
    a_mat = a1.eval()
    if b1 is not None:
        if initial.evaluate() != a_mat.mul(b1):
            raise IntegrityError("initial product does not evaluate to a1 * b1")
    factors = list(initial.factors)
    for g in gs:
        g_inv = g.inverse()
        shift_all = g_inv.concat(a_word)
        first = [(eps, c.concat(shift_all)) for eps, c in factors]
        second = [(-eps, c.concat(a_word)) for eps, c in reversed(factors)]
        factors = first + second
        a_word = a_word.inverse().concat(g).concat(a_word).concat(g_inv)
    return ConjProduct(base, factors)
