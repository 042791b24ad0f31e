import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdu.errors import PreconditionError
from rdu.matgroup import (
    ElemWord,
    GLElement,
    Matrix,
    eval_word,
    invert_matrix,
    perm_word,
    random_invertible,
    random_word,
    route,
    transvection,
    transvection_mover,
    word_inverse,
)
from rdu.rings import parse_ring


def test_transvection_examples(z12):
    assert transvection(z12, 3, 1, 2, z12.el(0)).is_identity()
    t = transvection(z12, 3, 1, 2, z12.el(5))
    tinv = transvection(z12, 3, 1, 2, z12.el(-5))
    assert t.mul(tinv).is_identity()
    with pytest.raises(PreconditionError):
        transvection(z12, 3, 2, 2, z12.el(1))


def test_commutator_relation_r3_example(z12):
    # [t_12(5), t_23(7)] = t_13(35 mod 12) = t_13(11)
    a = transvection(z12, 3, 1, 2, z12.el(5))
    b = transvection(z12, 3, 2, 3, z12.el(7))
    ainv = transvection(z12, 3, 1, 2, z12.el(-5))
    binv = transvection(z12, 3, 2, 3, z12.el(-7))
    comm = a.mul(b).mul(ainv).mul(binv)
    assert comm == transvection(z12, 3, 1, 3, z12.el(11))


def test_eval_word_examples(z12, zz):
    assert eval_word(ElemWord.empty(z12, 3)).is_identity()
    p12 = perm_word(z12, 3, 1, 2)
    m = eval_word(p12)
    want = Matrix.from_values(z12, [[0, 1, 0], [-1, 0, 0], [0, 0, 1]])
    assert m == want
    merged = ElemWord(zz, 3, [(1, 2, zz.el(2)), (1, 2, zz.el(3))])
    assert eval_word(merged) == transvection(zz, 3, 1, 2, zz.el(5))


def test_eval_homomorphism(z12, rng):
    for _ in range(50):
        w1 = random_word(z12, 3, rng, rng.randrange(5))
        w2 = random_word(z12, 3, rng, rng.randrange(5))
        assert eval_word(w1.concat(w2)) == eval_word(w1).mul(eval_word(w2))


def test_word_inverse(z12, rng):
    assert word_inverse(ElemWord.empty(z12, 3)).gens == ()
    w = ElemWord.single(z12, 3, 1, 2, z12.el(4))
    assert word_inverse(w).gens == ((1, 2, 8),)
    for _ in range(30):
        w = random_word(z12, 4, rng, 6)
        assert word_inverse(word_inverse(w)) == w
        assert eval_word(word_inverse(w)).mul(eval_word(w)).is_identity()


@pytest.mark.parametrize("spec", ["Z/12", "GF(3)"])
def test_elementary_relations(spec, rng):
    ring = parse_ring(spec)
    n = 3
    pool = list(ring.elements())
    for _ in range(1000):
        x = rng.choice(pool)
        y = rng.choice(pool)
        i, j = rng.sample(range(1, n + 1), 2)
        # R1
        lhs = transvection(ring, n, i, j, x).mul(transvection(ring, n, i, j, y))
        assert lhs == transvection(ring, n, i, j, x + y)
        # R3: [t_ij(x), t_jk(y)] = t_ik(xy) for i != k
        k = next(t for t in range(1, n + 1) if t not in (i, j))
        a, b = transvection(ring, n, i, j, x), transvection(ring, n, j, k, y)
        ai, bi = transvection(ring, n, i, j, -x), transvection(ring, n, j, k, -y)
        assert a.mul(b).mul(ai).mul(bi) == transvection(ring, n, i, k, x * y)
        # R2: [t_ij(x), t_hk(y)] = e for i != k, j != h; use (h, k) = (k, j)
        c, ci = transvection(ring, n, k, j, y), transvection(ring, n, k, j, -y)
        assert a.mul(c).mul(ai).mul(ci).is_identity()


def test_perm_word_inverse(z12):
    for i, j in [(1, 2), (2, 3), (3, 1)]:
        pij = eval_word(perm_word(z12, 3, i, j))
        pji = eval_word(perm_word(z12, 3, j, i))
        assert pij.mul(pji).is_identity()


def test_route_identity_case(z12):
    tau, rho = route(z12, 3, 1, 2, 1, 2)
    assert tau.gens == () and rho.gens == ()


@pytest.mark.parametrize("spec", ["Z/12", "GF(3)"])
def test_route_postconditions_n3(spec, rng):
    ring = parse_ring(spec)
    n = 3
    pool = list(ring.elements())
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for i, j in pairs:
        for k, l in pairs:
            tau, rho = route(ring, n, i, j, k, l)
            tau_m, tau_i = eval_word(tau), eval_word(word_inverse(tau))
            rho_m, rho_i = eval_word(rho), eval_word(word_inverse(rho))
            for _ in range(5):
                sigma = random_invertible(ring, n, rng)
                conj = tau_i.mul(sigma.mat).mul(tau_m)
                assert conj.entry(k, l) == sigma.mat.entry(i, j)
                x = rng.choice(pool)
                tv = transvection(ring, n, k, l, x)
                assert rho_i.mul(tv).mul(rho_m) == transvection(ring, n, i, j, x)


def test_route_spot_check_n5(gf3, rng):
    for i, j, k, l in [(1, 2, 5, 4), (4, 5, 2, 1), (2, 4, 4, 2), (5, 1, 1, 5)]:
        tau, rho = route(gf3, 5, i, j, k, l)
        sigma = random_invertible(gf3, 5, rng)
        conj = eval_word(word_inverse(tau)).mul(sigma.mat).mul(eval_word(tau))
        assert conj.entry(k, l) == sigma.mat.entry(i, j)
        x = gf3.el(2)
        got = eval_word(word_inverse(rho)).mul(
            transvection(gf3, 5, k, l, x)
        ).mul(eval_word(rho))
        assert got == transvection(gf3, 5, i, j, x)


def test_transvection_mover(z12, rng):
    w = transvection_mover(z12, 3, (2, 1), (1, 3))
    x = z12.el(7)
    got = eval_word(word_inverse(w)).mul(transvection(z12, 3, 2, 1, x)).mul(eval_word(w))
    assert got == transvection(z12, 3, 1, 3, x)


def test_gl_element_rejects_non_invertible(z12):
    singular = Matrix.from_values(z12, [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    with pytest.raises(PreconditionError):
        GLElement.from_matrix(singular)
    good = Matrix.identity(z12, 3)
    bad_inverse = Matrix.from_values(z12, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(PreconditionError):
        GLElement(good, bad_inverse)


@pytest.mark.parametrize("spec,n", [
    ("Z/12", 3), ("Z/12", 4), ("GF(5)", 3), ("M2(GF(2))", 3), ("Z/4xGF(3)", 3),
])
def test_invert_matrix_kinds(spec, n, rng):
    ring = parse_ring(spec)
    for _ in range(10):
        g = random_invertible(ring, n, rng)
        assert g.mat.mul(g.inv).is_identity()
        assert g.inv.mul(g.mat).is_identity()


def test_invert_matrix_integers(zz, rng):
    for _ in range(10):
        g = random_invertible(zz, 3, rng)
        assert g.mat.mul(g.inv).is_identity()
    not_unimodular = Matrix.from_values(zz, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert invert_matrix(not_unimodular) is None


def test_word_flags(z12):
    ElemWord(z12, 3, [(2, 1, z12.el(1))], "Estar")
    with pytest.raises(PreconditionError):
        ElemWord(z12, 3, [(1, 2, z12.el(1))], "Estar")
    with pytest.raises(PreconditionError):
        ElemWord(z12, 3, [(2, 3, z12.el(1))], "Edoublestar")
    w = ElemWord(z12, 3, [(2, 1, z12.el(1)), (3, 1, z12.el(2))], "Edoublestar")
    assert w.inverse().flag == "Edoublestar"
    assert w.satisfies("Estar")  # column-1 words avoid row 1 and column n


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_word_inverse_hypothesis(data):
    ring = parse_ring("GF(5)")
    n = 3
    gens = data.draw(
        st.lists(
            st.tuples(
                st.sampled_from([(i, j) for i in range(1, 4) for j in range(1, 4) if i != j]),
                st.integers(min_value=0, max_value=4),
            ),
            max_size=6,
        )
    )
    w = ElemWord(ring, n, [(i, j, ring.el(x)) for (i, j), x in gens])
    assert eval_word(w).mul(eval_word(word_inverse(w))).is_identity()
