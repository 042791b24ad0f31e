"""Constructive bounded factorizations: express transvections built from a
matrix's entries as explicit products of elementary conjugates of that
matrix and its inverse, with the factor count pinned per ring class.

Off-diagonal bounds by class: commutative 8, von Neumann regular 8,
unit-perturbation ("banach") 160, stable rank 1 8, intermediate stable
rank 16, m-term Euclidean 8 (m <= n-2) or 8(n-1) (m = n-1), strong n-term
Euclidean 80(n-1).  Diagonal differences cost three off-diagonal runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    CapabilityError,
    HypothesisError,
    IntegrityError,
    PreconditionError,
)
from .matgroup import (
    FLAG_EDOUBLESTAR,
    FLAG_ESTAR,
    ElemWord,
    GLElement,
    Matrix,
    invert_matrix,
    route,
    transvection,
    transvection_mover,
)
from .reduction import ConjProduct, Pair, expand_conjugates, reduce_chain, split_commutator
from .rings import CentralMultipleWitness, El, Ring

CLASS_COMMUTATIVE = "commutative"
CLASS_VNR = "vnr"
CLASS_BANACH = "banach"
CLASS_SR1 = "sr1"
CLASS_SRMID = "sr-mid"
CLASS_EUCLID = "euclid"
CLASS_EUCLID_STRONG = "euclid-strong"

ALL_CLASSES = (
    CLASS_COMMUTATIVE,
    CLASS_VNR,
    CLASS_BANACH,
    CLASS_SR1,
    CLASS_SRMID,
    CLASS_EUCLID,
    CLASS_EUCLID_STRONG,
)

SOURCE_SIGMA = "sigma"
SOURCE_SIGMA_INVERSE = "sigma_inverse"


class RelationWitness:
    """y and x_1..x_n with y * sum_p sigma_1p x_p = 0 for the sigma at hand."""

    __slots__ = ("y", "xs")

    def __init__(self, y: El, xs: Sequence[El]):
        self.y = y
        self.xs = tuple(xs)

    def check(self, sigma: GLElement):
        if len(self.xs) != sigma.n:
            raise PreconditionError(
                f"witness needs {sigma.n} coefficients, got {len(self.xs)}"
            )
        acc = sigma.ring.zero()
        for p in range(1, sigma.n + 1):
            acc = acc + sigma.entry(1, p) * self.xs[p - 1]
        if not (self.y * acc).is_zero():
            raise IntegrityError(
                "relation witness violated: y * sum sigma_1p x_p != 0"
            )


@dataclass
class Factorization:
    """A conjugate product together with the transvection it evaluates to."""

    product: ConjProduct
    k: int
    l: int
    value: El
    theorem_tag: str
    claimed_bound: int
    whose_entry: str = SOURCE_SIGMA
    details: dict = field(default_factory=dict)

    @property
    def factor_count(self) -> int:
        return len(self.product)

    def target_matrix(self) -> Matrix:
        ring = self.product.base.ring
        return transvection(ring, self.product.base.n, self.k, self.l, self.value)


@dataclass
class VerifyReport:
    passed: bool
    evaluation_ok: bool
    bound_ok: bool
    factor_count: int
    claimed_bound: int
    mismatch: tuple | None  # (row, col) of first differing entry, 1-based
    conjugator_flags: list  # per factor, subset memberships that hold

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "evaluation_ok": self.evaluation_ok,
            "bound_ok": self.bound_ok,
            "factor_count": self.factor_count,
            "claimed_bound": self.claimed_bound,
            "mismatch": list(self.mismatch) if self.mismatch else None,
            "conjugator_flags": self.conjugator_flags,
        }


# -- the relation-driven core ---------------------------------------------------


def _chain_words(ring: Ring, n: int, spec: Sequence[tuple[int, int, El]]):
    return [ElemWord.single(ring, n, i, j, x) for i, j, x in spec]


def _core_product(
    sigma: GLElement, witness: RelationWitness, mode: str, a: El, b: El
) -> tuple[ConjProduct, tuple[int, int], El]:
    """Unrouted core: returns (product, endpoint position, extracted value)."""
    ring, n = sigma.ring, sigma.n
    if n < 3:
        raise PreconditionError("extraction needs n >= 3")
    witness.check(sigma)
    xs, y = witness.xs, witness.y
    one, zero = ring.one(), ring.zero()

    if mode == "I":
        if xs[n - 1] != zero or y != one:
            raise PreconditionError("mode I needs x_n = 0 and y = 1")
        tau = ElemWord(ring, n, [(p, n, xs[p - 1]) for p in range(1, n)])
        b1 = sigma.mat.mul(tau.inverse().eval()).mul(sigma.inv)
        if b1.rows[0] != Matrix.identity(ring, n).rows[0]:
            raise IntegrityError("mode I: first row of sigma tau^-1 sigma^-1 is not e_1")
        initial = split_commutator(tau, sigma, "commutator")
        gs = _chain_words(ring, n, [(2, 1, a), (n, 1, -b)])
        prod = expand_conjugates(sigma, initial, tau, gs, b1=b1)
        pos, value = (2, 1), a * xs[0] * b
        end = reduce_chain(Pair(tau.eval(), b1), gs)
    elif mode == "II":
        if xs[n - 1] != one or y != one:
            raise PreconditionError("mode II needs x_n = 1 and y = 1")
        tau = ElemWord(ring, n, [(p, n, xs[p - 1]) for p in range(1, n)])
        st = sigma.mat.mul(tau.eval())
        if not st.entry(1, n).is_zero():
            raise IntegrityError("mode II: (sigma tau)_1n != 0")
        b1 = tau.inverse().eval().mul(sigma.inv)
        initial = split_commutator(tau, sigma, "inverse_product")
        gs = _chain_words(ring, n, [(2, 1, a), (n, 1, -b), (n, 2, one)])
        prod = expand_conjugates(sigma, initial, tau, gs, b1=b1)
        pos, value = (n, 1), a * xs[0] * b
        end = reduce_chain(Pair(tau.eval(), b1), gs)
    elif mode == "III":
        if xs[0] != one:
            raise PreconditionError("mode III needs x_1 = 1")
        tau = ElemWord(ring, n, [(p, 1, xs[p - 1]) for p in range(2, n + 1)])
        st = sigma.mat.mul(tau.eval())
        st_inv = tau.inverse().eval().mul(sigma.inv)
        b1 = st_inv.mul(transvection(ring, n, n, 1, y)).mul(st)
        if tuple(r[0] for r in b1.rows) != tuple(
            r[0] for r in Matrix.identity(ring, n).rows
        ):
            raise IntegrityError("mode III: column 1 of t_n1(y)^(sigma tau) is not e_1")
        initial = split_commutator(tau, sigma, "iii_product", y=y)
        a1 = ElemWord.single(ring, n, n, 1, -y)
        # the chain t_12(b), t_1n(-a) lands on t_12(-a y b); feeding -a in the
        # second step makes the emitted target t_12(a y b)
        gs = _chain_words(ring, n, [(1, 2, b), (1, n, a)])
        prod = expand_conjugates(sigma, initial, a1, gs, b1=b1)
        pos, value = (1, 2), a * y * b
        end = reduce_chain(Pair(a1.eval(), b1), gs)
    else:
        raise PreconditionError(f"unknown extraction mode {mode!r}")

    if end.a != transvection(ring, n, pos[0], pos[1], value) or not end.b.is_identity():
        raise IntegrityError(f"mode {mode}: reduction chain missed its endpoint")
    return prod, pos, value


def _routed(prod: ConjProduct, pos, k: int, l: int) -> ConjProduct:
    ring, n = prod.base.ring, prod.base.n
    if pos == (k, l):
        return prod
    return prod.conjugated(transvection_mover(ring, n, pos, (k, l)))


def extract_core(
    sigma: GLElement,
    witness: RelationWitness,
    mode: str,
    a: El,
    b: El,
    k: int,
    l: int,
) -> Factorization:
    """Modes I/II/III of the relation-driven extraction; 8 conjugates."""
    if k == l:
        raise PreconditionError("target position needs k != l")
    prod, pos, value = _core_product(sigma, witness, mode, a, b)
    prod = _routed(prod, pos, k, l)
    return Factorization(
        product=prod,
        k=k,
        l=l,
        value=value,
        theorem_tag=f"core.mode_{mode.lower()}",
        claimed_bound=8,
    )


# -- corollaries ---------------------------------------------------------------


def _corner_zero(sigma: GLElement, j: int, a: El, b: El, k: int, l: int):
    """sigma_1n = 0: extract the inverse entry sigma'_1j, 8 conjugates."""
    ring, n = sigma.ring, sigma.n
    if not sigma.entry(1, n).is_zero():
        raise HypothesisError("zero-corner extraction needs sigma_1n = 0")
    if not 2 <= j <= n:
        raise PreconditionError(f"need 2 <= j <= n, got j={j}")
    xs = [sigma.inv_entry(p, j) for p in range(1, n)] + [ring.zero()]
    w = RelationWitness(ring.one(), xs)
    prod, pos, value = _core_product(sigma, w, "I", a, b)
    return _routed(prod, pos, k, l), value


def _corner_right_inv(sigma: GLElement, a: El, b: El, k: int, l: int):
    """sigma_11 right invertible: extract sigma_1n, 8 conjugates."""
    ring, n = sigma.ring, sigma.n
    z = ring.right_inverse(sigma.entry(1, 1))
    if z is None:
        raise HypothesisError("right-inv-corner needs sigma_11 right invertible")
    s1n = sigma.entry(1, n)
    xs = [-(z * s1n)] + [ring.zero()] * (n - 2) + [ring.one()]
    w = RelationWitness(ring.one(), xs)
    # core emits a' x_1 b = (-a sigma_11)(-z sigma_1n) b = a sigma_1n b
    prod, pos, value = _core_product(sigma, w, "II", -(a * sigma.entry(1, 1)), b)
    want = a * s1n * b
    if value != want:
        raise IntegrityError("right-inv-corner value mismatch")
    return _routed(prod, pos, k, l), want


def _corner_idempotent(sigma: GLElement, a: El, b: El, k: int, l: int):
    """sigma_1n idempotent: extract sigma_1n, 8 conjugates."""
    ring, n = sigma.ring, sigma.n
    s1n = sigma.entry(1, n)
    if s1n * s1n != s1n:
        raise HypothesisError("idempotent-corner needs sigma_1n^2 = sigma_1n")
    xs = [ring.one()] + [ring.zero()] * (n - 2) + [-sigma.entry(1, 1)]
    w = RelationWitness(s1n, xs)
    prod, pos, value = _core_product(sigma, w, "III", a, b)
    return _routed(prod, pos, k, l), value


def _corner_sixteen(
    sigma: GLElement, xs: Sequence[El], j: int, a: El, b: El, k: int, l: int
):
    """sum_p sigma_1p x_p + sigma_1n = 0 given: extract sigma'_1j, 16 conjugates."""
    ring, n = sigma.ring, sigma.n
    if len(xs) != n - 1:
        raise PreconditionError(f"sixteen-corner needs n-1 = {n - 1} coefficients")
    acc = sigma.entry(1, n)
    for p in range(1, n):
        acc = acc + sigma.entry(1, p) * xs[p - 1]
    if not acc.is_zero():
        raise HypothesisError(
            "sixteen-corner needs sum sigma_1p x_p + sigma_1n = 0"
        )
    if not 2 <= j <= n:
        raise PreconditionError(f"need 2 <= j <= n, got j={j}")
    inv_nj = sigma.inv_entry(n, j)
    xs_one = [
        sigma.inv_entry(p, j) - xs[p - 1] * inv_nj for p in range(1, n)
    ] + [ring.zero()]
    p1, pos1, v1 = _core_product(sigma, RelationWitness(ring.one(), xs_one), "I", a, b)
    xs_two = list(xs) + [ring.one()]
    p2, pos2, v2 = _core_product(
        sigma, RelationWitness(ring.one(), xs_two), "II", a, inv_nj * b
    )
    prod = _routed(p1, pos1, k, l).concat(_routed(p2, pos2, k, l))
    value = a * sigma.inv_entry(1, j) * b
    if v1 + v2 != value:
        raise IntegrityError("sixteen-corner telescoping mismatch")
    return prod, value


_CORNER_TAGS = {
    "zeroCorner": "corner.zero",
    "rightInvCorner": "corner.right_inv",
    "idempotentCorner": "corner.idempotent",
    "sixteen": "corner.sixteen",
}


def extract_corollary(
    sigma: GLElement,
    variant: str,
    a: El,
    b: El,
    k: int,
    l: int,
    j: int | None = None,
    xs: Sequence[El] | None = None,
) -> Factorization:
    if k == l:
        raise PreconditionError("target position needs k != l")
    if variant == "zeroCorner":
        if j is None:
            raise PreconditionError("zeroCorner needs the column index j")
        prod, value = _corner_zero(sigma, j, a, b, k, l)
        bound, whose = 8, SOURCE_SIGMA_INVERSE
    elif variant == "rightInvCorner":
        prod, value = _corner_right_inv(sigma, a, b, k, l)
        bound, whose = 8, SOURCE_SIGMA
    elif variant == "idempotentCorner":
        prod, value = _corner_idempotent(sigma, a, b, k, l)
        bound, whose = 8, SOURCE_SIGMA
    elif variant == "sixteen":
        if j is None or xs is None:
            raise PreconditionError("sixteen needs j and the coefficients xs")
        prod, value = _corner_sixteen(sigma, xs, j, a, b, k, l)
        bound, whose = 16, SOURCE_SIGMA_INVERSE
    else:
        raise PreconditionError(f"unknown corollary variant {variant!r}")
    return Factorization(
        product=prod,
        k=k,
        l=l,
        value=value,
        theorem_tag=_CORNER_TAGS[variant],
        claimed_bound=bound,
        whose_entry=whose,
    )


# -- per-class machinery (canonical position, before entry routing) -----------

# class -> (extracted matrix: "mat" direct / "inv" inverse, canonical position)
_CLASS_SHAPE = {
    CLASS_COMMUTATIVE: ("mat", lambda n: (1, 2)),
    CLASS_VNR: ("mat", lambda n: (1, 2)),
    CLASS_BANACH: ("mat", lambda n: (1, n)),
    CLASS_SR1: ("mat", lambda n: (1, n)),
    CLASS_SRMID: ("inv", lambda n: (1, n)),
    CLASS_EUCLID: ("inv", lambda n: (1, 2)),
    CLASS_EUCLID_STRONG: ("inv", lambda n: (1, 2)),
}


def offdiag_bound(ring_class: str, ring: Ring, n: int) -> int:
    if ring_class == CLASS_BANACH:
        return 160
    if ring_class == CLASS_SRMID:
        return 16
    if ring_class == CLASS_EUCLID:
        m = ring.euclid_terms
        if m is None:
            raise CapabilityError(f"{ring} has no declared Euclidean algorithm")
        return 8 if m <= n - 2 else 8 * (n - 1)
    if ring_class == CLASS_EUCLID_STRONG:
        return 80 * (n - 1)
    return 8


def _check_class_available(ring_class: str, ring: Ring, n: int):
    if ring_class == CLASS_COMMUTATIVE:
        if not ring.is_commutative:
            raise CapabilityError(f"{ring} is not commutative")
    elif ring_class == CLASS_VNR:
        if not ring.is_vn_regular:
            raise CapabilityError(f"{ring} is not von Neumann regular")
    elif ring_class == CLASS_BANACH:
        if not (ring.is_finite and ring.has_property_one()):
            raise CapabilityError(
                f"{ring} is not certified for the unit-perturbation property"
            )
    elif ring_class == CLASS_SR1:
        if ring.stable_rank != 1:
            raise CapabilityError(f"{ring} is not declared of stable rank 1")
    elif ring_class == CLASS_SRMID:
        sr = ring.stable_rank
        if sr is None or not 1 < sr < n:
            raise CapabilityError(
                f"{ring} is not declared of stable rank strictly between 1 and {n}"
            )
    elif ring_class == CLASS_EUCLID:
        m = ring.euclid_terms
        if m is None or m > n - 1:
            raise CapabilityError(
                f"{ring} has no m-term Euclidean algorithm with m <= n-1"
            )
    elif ring_class == CLASS_EUCLID_STRONG:
        if not ring.strong_euclid:
            raise CapabilityError(f"{ring} has no strong Euclidean algorithm")
    else:
        raise PreconditionError(f"unknown ring class {ring_class!r}")


def _machinery_commutative(g: GLElement, a: El, b: El, k: int, l: int):
    ring, n = g.ring, g.n
    xs = [g.entry(1, 2), -g.entry(1, 1)] + [ring.zero()] * (n - 2)
    prod, pos, value = _core_product(g, RelationWitness(ring.one(), xs), "I", a, b)
    return _routed(prod, pos, k, l), value, {}


def _machinery_vnr(g: GLElement, a: El, b: El, k: int, l: int):
    ring, n = g.ring, g.n
    s12, s11 = g.entry(1, 2), g.entry(1, 1)
    z = ring.vnr_witness(s12)
    xs = [ring.one(), -(z * s11)] + [ring.zero()] * (n - 2)
    w = RelationWitness(s12 * z, xs)
    # value a (s12 z)(s12 b) = a s12 b since s12 z s12 = s12
    prod, pos, value = _core_product(g, w, "III", a, s12 * b)
    want = a * s12 * b
    if value != want:
        raise IntegrityError("inner-inverse witness failed s12 z s12 = s12")
    return _routed(prod, pos, k, l), want, {"inner_inverse": repr(z)}


def _machinery_banach(g: GLElement, a: El, b: El, k: int, l: int):
    ring, n = g.ring, g.n
    one = ring.one()
    g11, g1n = g.entry(1, 1), g.entry(1, n)
    gi_n1, gi_nn = g.inv_entry(n, 1), g.inv_entry(n, n)
    details: dict = {}

    x = ring.unit_witness(g11, gi_n1)
    x_inv = ring.right_inverse(x)
    if x_inv is None:
        raise IntegrityError("unit witness x has no right inverse")
    alpha = x * gi_nn * x_inv - x * gi_n1
    details["x"] = repr(x)
    details["alpha"] = repr(alpha)

    t1n_x = transvection(ring, n, 1, n, x)
    t1n_x_inv = transvection(ring, n, 1, n, -x)
    tau1 = GLElement(
        g.mat.mul(t1n_x).mul(g.inv).mul(t1n_x_inv),
        t1n_x.mul(g.mat).mul(t1n_x_inv).mul(g.inv),
    )
    if tau1.entry(1, 1) != one + g11 * x * gi_n1:
        raise IntegrityError("tau1_11 formula failed")
    if ring.right_inverse(tau1.entry(1, 1)) is None:
        raise IntegrityError("tau1_11 is not right invertible")
    if tau1.entry(1, n) != (g11 * alpha - one) * x:
        raise IntegrityError("tau1_1n formula failed")
    details["tau1_11_right_invertible"] = "ok"
    tau1_as_g = ConjProduct(
        g,
        [
            (1, ElemWord.empty(ring, n)),
            (-1, ElemWord.single(ring, n, 1, n, -x)),
        ],
    )

    def sixteen(a2: El, b2: El, k2: int, l2: int) -> ConjProduct:
        # t_(k2 l2)(a2 (g11 alpha - 1) b2) from the right-invertible corner
        p8, val = _corner_right_inv(tau1, a2, x_inv * b2, k2, l2)
        if val != a2 * (g11 * alpha - one) * b2:
            raise IntegrityError("sixteen-piece value mismatch")
        return p8.inlined(tau1_as_g)

    zeta = g.right_mul(
        transvection(ring, n, 1, n, -(alpha * g1n)),
        transvection(ring, n, 1, n, alpha * g1n),
    )
    z1n = zeta.entry(1, n)
    if z1n != (one - g11 * alpha) * g1n:
        raise IntegrityError("zeta_1n formula failed")
    y = ring.unit_witness(-z1n, zeta.inv_entry(2, 1))
    y_inv = ring.right_inverse(y)
    if y_inv is None:
        raise IntegrityError("unit witness y has no right inverse")
    details["y"] = repr(y)

    tn2_y = transvection(ring, n, n, 2, y)
    tn2_y_inv = transvection(ring, n, n, 2, -y)
    xi = GLElement(
        tn2_y.mul(zeta.mat).mul(tn2_y_inv).mul(zeta.inv),
        zeta.mat.mul(tn2_y).mul(zeta.inv).mul(tn2_y_inv),
    )
    if xi.entry(1, 1) != one - z1n * y * zeta.inv_entry(2, 1):
        raise IntegrityError("xi_11 formula failed")
    if xi.entry(1, 2) != -(z1n * y * zeta.inv_entry(2, 2)):
        raise IntegrityError("xi_12 formula failed")
    xi11_inv = ring.right_inverse(xi.entry(1, 1))
    if xi11_inv is None:
        raise IntegrityError("xi_11 is not right invertible")
    details["xi_11_right_invertible"] = "ok"

    rho = xi.mat.mul(transvection(ring, n, 1, 2, -(xi11_inv * xi.entry(1, 2))))
    if not rho.entry(1, 2).is_zero():
        raise IntegrityError("rho_12 != 0")

    seed = ConjProduct(
        g, [(1, ElemWord.single(ring, n, 1, n, -(alpha * g1n)))]
    )
    a1 = ElemWord.single(ring, n, 1, n, alpha * g1n)
    two = expand_conjugates(
        g, seed, a1, _chain_words(ring, n, [(n, 2, y)]), b1=zeta.mat
    )
    sixteen_rho = sixteen(
        -xi11_inv, g1n * y * zeta.inv_entry(2, 2), 1, 2
    )
    eighteen = two.concat(sixteen_rho)

    a1_step3 = ElemWord.single(ring, n, 1, 2, -(alpha * g1n * y))
    gs = _chain_words(
        ring, n, [(2, 3, y_inv * b), (2, 1, a * g11), (3, 1, -one)]
    )
    end = reduce_chain(Pair(a1_step3.eval(), rho), gs)
    if end.a != transvection(ring, n, 2, 1, a * g11 * alpha * g1n * b) or (
        not end.b.is_identity()
    ):
        raise IntegrityError("step-3 chain missed its endpoint")
    p144 = expand_conjugates(g, eighteen, a1_step3, gs, b1=rho)

    prod = sixteen(-a, g1n * b, 2, 1).concat(p144)
    value = a * g1n * b
    return _routed(prod, (2, 1), k, l), value, details


def _estar_row_reduction(g: GLElement, down_to: int):
    """Repeated row shortening: a word in E*_n making the first-row prefix of
    length down_to unimodular under conjugation.  Returns (word, witness)."""
    ring, n = g.ring, g.n
    u = [g.entry(1, p) for p in range(1, n + 1)]
    gens: list = []
    witness = None
    for p in range(n - 1, down_to - 1, -1):
        xs, witness = ring.sr_reduce(u[: p + 1])
        for t in range(p):
            gens.append((p + 1, t + 1, xs[t]))
        u = [u[t] + u[p] * xs[t] for t in range(p)] + u[p:]
    word = ElemWord(ring, n, gens, FLAG_ESTAR)
    return word, u, witness


def _machinery_sr1(g: GLElement, a: El, b: El, k: int, l: int):
    n = g.n
    rho, _, _ = _estar_row_reduction(g, 1)
    g_hat = g.conjugated(rho)
    if g_hat.entry(1, n) != g.entry(1, n):
        raise IntegrityError("E*-conjugation changed the (1, n) entry")
    p8, value = _corner_right_inv(g_hat, a, b, k, l)
    return p8.rebased(g, rho), value, {"row_reduction": repr(rho)}


def _machinery_srmid(g: GLElement, a: El, b: El, k: int, l: int):
    ring, n = g.ring, g.n
    sr = ring.stable_rank
    rho, u, witness = _estar_row_reduction(g, sr)
    g_hat = g.conjugated(rho)
    if g_hat.inv_entry(1, n) != g.inv_entry(1, n):
        raise IntegrityError("E*-conjugation changed the inverse (1, n) entry")
    g1n_hat = g_hat.entry(1, n)
    xs = [-(witness[t] * g1n_hat) for t in range(sr)] + [ring.zero()] * (
        n - 1 - sr
    )
    p16, value = _corner_sixteen(g_hat, xs, n, a, b, k, l)
    return p16.rebased(g, rho), value, {"row_reduction": repr(rho)}


def _machinery_euclid(g: GLElement, a: El, b: El, k: int, l: int):
    ring, n = g.ring, g.n
    m = ring.euclid_terms
    row = [g.entry(1, p) for p in range(n - m + 1, n + 1)]
    steps = ring.euclid_reduce(row)
    off = n - m
    tau = ElemWord(ring, n, [(i + off, j + off, x) for i, j, x in steps])
    xi = g.conjugated(tau)
    if not xi.entry(1, n).is_zero():
        raise IntegrityError("Euclidean word failed to zero (sigma tau)_1n")
    if m <= n - 2:
        p8, value = _corner_zero(xi, 2, a, b, k, l)
        if value != a * g.inv_entry(1, 2) * b:
            raise IntegrityError("xi'_12 != sigma'_12 outside the reduced block")
        return p8.rebased(g, tau), value, {}
    # m = n-1: sigma'_12 = sum over the block of xi'_1p tau'_p2
    tau_inv = tau.inverse().eval()
    pieces = None
    total = ring.zero()
    for p in range(2, n + 1):
        coeff = tau_inv.entry(p, 2)
        piece, val = _corner_zero(xi, p, a, coeff * b, k, l)
        total = total + val
        pieces = piece if pieces is None else pieces.concat(piece)
    want = a * g.inv_entry(1, 2) * b
    if total != want:
        raise IntegrityError("block decomposition of sigma'_12 failed")
    return pieces.rebased(g, tau), want, {}


def _machinery_euclid_strong(g: GLElement, a: El, b: El, k: int, l: int):
    ring, n = g.ring, g.n
    one = ring.one()
    row = [g.entry(1, p) for p in range(1, n + 1)]
    steps = ring.euclid_reduce(row, strong=True)
    tau = ElemWord(ring, n, steps)
    tau_mat = tau.eval()
    extra = []
    for j in range(2, n):
        tij = tau_mat.entry(1, j)
        if not tij.is_zero():
            extra.append((1, j, -tij))
            tau_mat = tau_mat.mul(transvection(ring, n, 1, j, -tij))
    tau = tau.concat(ElemWord(ring, n, extra))
    if tau_mat.entry(1, 1) != one or any(
        not tau_mat.entry(1, j).is_zero() for j in range(2, n)
    ):
        raise IntegrityError("strong Euclidean word not normalized")
    if not g.mat.mul(tau_mat).entry(1, n).is_zero():
        raise IntegrityError("(sigma tau)_1n != 0 after normalization")
    t_val = tau_mat.entry(1, n)

    rho_word = tau.concat(ElemWord.single(ring, n, 1, n, -t_val))
    rho_inv = rho_word.inverse().eval()
    if rho_word.eval().rows[0] != Matrix.identity(ring, n).rows[0]:
        raise IntegrityError("rho does not have a trivial first row")
    xi_mat = rho_inv.mul(g.mat).mul(tau_mat)
    xi_inv = tau.inverse().eval().mul(g.inv).mul(rho_word.eval())
    xi = GLElement(xi_mat, xi_inv)
    if not xi.entry(1, n).is_zero():
        raise IntegrityError("xi_1n != 0")

    def corner_piece(a2: El, b2: El, k2: int, l2: int) -> ConjProduct:
        # 8 conjugates of g evaluating to t_(k2 l2)(a2 t_val b2)
        seed = ConjProduct(g, [(1, tau)])
        a1 = ElemWord.single(ring, n, 1, n, -t_val)
        gs = _chain_words(ring, n, [(n, 2, b2), (3, 1, a2), (2, 1, -one)])
        end = reduce_chain(Pair(a1.eval(), xi_mat), gs)
        if end.a != transvection(ring, n, 3, 1, a2 * t_val * b2) or (
            not end.b.is_identity()
        ):
            raise IntegrityError("corner chain missed its endpoint")
        p8 = expand_conjugates(g, seed, a1, gs, b1=xi_mat)
        return _routed(p8, (3, 1), k2, l2)

    xi_as_g = corner_piece(one, one, 1, n).concat(ConjProduct(g, [(1, tau)]))
    if xi_as_g.evaluate() != xi_mat:
        raise IntegrityError("xi as a 9-factor product failed evaluation")

    total = ring.zero()
    prod = None
    for j in range(2, n + 1):
        coeff = rho_inv.entry(j, 2)
        q8, _ = _corner_zero(xi, j, a, coeff * b, k, l)
        q72 = q8.inlined(xi_as_g)
        r8 = corner_piece(a, xi.inv_entry(n, j) * coeff * b, k, l)
        total = total + a * (
            xi.inv_entry(1, j) + t_val * xi.inv_entry(n, j)
        ) * coeff * b
        piece = q72.concat(r8)
        prod = piece if prod is None else prod.concat(piece)
    want = a * g.inv_entry(1, 2) * b
    if total != want:
        raise IntegrityError("strong-Euclid decomposition of sigma'_12 failed")
    return prod, want, {"tau_1n": repr(t_val)}


_MACHINERY = {
    CLASS_COMMUTATIVE: _machinery_commutative,
    CLASS_VNR: _machinery_vnr,
    CLASS_BANACH: _machinery_banach,
    CLASS_SR1: _machinery_sr1,
    CLASS_SRMID: _machinery_srmid,
    CLASS_EUCLID: _machinery_euclid,
    CLASS_EUCLID_STRONG: _machinery_euclid_strong,
}


def extract_offdiag(
    sigma: GLElement,
    ring_class: str,
    i: int,
    j: int,
    k: int,
    l: int,
    a: El,
    b: El,
    source: str = SOURCE_SIGMA,
) -> Factorization:
    """t_kl(a * e_ij * b) where e_ij is the (i, j) entry of sigma (source
    "sigma") or of its inverse (source "sigma_inverse")."""
    ring, n = sigma.ring, sigma.n
    if i == j or k == l:
        raise PreconditionError("need i != j and k != l")
    if source not in (SOURCE_SIGMA, SOURCE_SIGMA_INVERSE):
        raise PreconditionError(f"unknown source {source!r}")
    _check_class_available(ring_class, ring, n)
    direction, pos_of = _CLASS_SHAPE[ring_class]
    pos = pos_of(n)
    swap = (direction == "inv") != (source == SOURCE_SIGMA_INVERSE)
    base0 = sigma.swapped() if swap else sigma
    tau_route, _ = route(ring, n, i, j, pos[0], pos[1])
    g = base0.conjugated(tau_route)
    prod, value, details = _MACHINERY[ring_class](g, a, b, k, l)
    requested = (sigma.mat if source == SOURCE_SIGMA else sigma.inv).entry(i, j)
    if value != a * requested * b:
        raise IntegrityError("routed extraction produced the wrong entry")
    prod = prod.rebased(sigma, tau_route, flip=swap)
    return Factorization(
        product=prod,
        k=k,
        l=l,
        value=value,
        theorem_tag=f"{ring_class}.offdiag",
        claimed_bound=offdiag_bound(ring_class, ring, n),
        whose_entry=source,
        details=details,
    )


def extract_diag_difference(
    sigma: GLElement,
    ring_class: str,
    i: int,
    j: int,
    k: int,
    l: int,
    a: El,
    b: El,
    c: El | None = None,
) -> Factorization:
    """t_kl(a (c sigma_ii - sigma_jj c) b) as three off-diagonal extractions;
    commutative rings fix c = 1."""
    ring, n = sigma.ring, sigma.n
    if i == j or k == l:
        raise PreconditionError("need i != j and k != l")
    if c is None:
        c = ring.one()
    if ring_class == CLASS_COMMUTATIVE and c != ring.one():
        raise PreconditionError("the commutative construction fixes c = 1")
    _check_class_available(ring_class, ring, n)
    w_c = ElemWord.single(ring, n, j, i, -c)
    sigma_c = sigma.conjugated(w_c)
    sii, sjj, sij, sji = (
        sigma.entry(i, i),
        sigma.entry(j, j),
        sigma.entry(i, j),
        sigma.entry(j, i),
    )
    shifted = sigma_c.entry(j, i)
    if shifted != c * sii - sjj * c + sji - c * sij * c:
        raise IntegrityError("conjugated (j, i) entry formula failed")
    f1 = extract_offdiag(sigma_c, ring_class, j, i, k, l, a, b)
    f2 = extract_offdiag(sigma, ring_class, i, j, k, l, a * c, c * b)
    f3 = extract_offdiag(sigma, ring_class, j, i, k, l, -a, b)
    prod = (
        f1.product.rebased(sigma, w_c)
        .concat(f2.product)
        .concat(f3.product)
    )
    value = a * (c * sii - sjj * c) * b
    if f1.value + f2.value + f3.value != value:
        raise IntegrityError("diagonal-difference telescoping failed")
    bound = 3 * offdiag_bound(ring_class, ring, n)
    return Factorization(
        product=prod,
        k=k,
        l=l,
        value=value,
        theorem_tag=f"{ring_class}.diagdiff",
        claimed_bound=bound,
        whose_entry=SOURCE_SIGMA,
        details=dict(f1.details),
    )


def extract_almost_commutative(
    sigma: GLElement,
    parts: Sequence[tuple[ElemWord, CentralMultipleWitness]],
    a: El,
    b: El,
    k: int,
    l: int,
) -> Factorization:
    """t_kl(a sigma_12 b) from a partition of unity by central multiples of
    conjugated corner entries; 8 conjugates per part."""
    ring, n = sigma.ring, sigma.n
    if k == l:
        raise PreconditionError("target position needs k != l")
    if not parts:
        raise PreconditionError("need at least one partition part")
    total = ring.zero()
    for _, wit in parts:
        total = total + wit.z
    if total != ring.one():
        raise PreconditionError("partition does not sum to 1")
    s12 = sigma.entry(1, 2)
    prod = None
    for tau_p, wit in parts:
        if not tau_p.satisfies(FLAG_EDOUBLESTAR):
            raise PreconditionError(
                "partition words must use column-1 generators only"
            )
        g_p = sigma.conjugated(tau_p)
        if g_p.entry(1, 1) != wit.x:
            raise IntegrityError(
                "witness x does not match the conjugated (1,1) entry"
            )
        if g_p.entry(1, 2) != s12:
            raise IntegrityError("column-1 conjugation changed the (1,2) entry")
        xs = [wit.y * s12, -(g_p.entry(1, 1) * wit.y)] + [ring.zero()] * (n - 2)
        p8, pos, val = _core_product(
            g_p, RelationWitness(ring.one(), xs), "I", a * g_p.entry(1, 1), b
        )
        if val != a * wit.z * s12 * b:
            raise IntegrityError("central multiple extraction value mismatch")
        piece = _routed(p8, pos, k, l).rebased(sigma, tau_p)
        prod = piece if prod is None else prod.concat(piece)
    value = a * s12 * b
    return Factorization(
        product=prod,
        k=k,
        l=l,
        value=value,
        theorem_tag="almost_commutative.partition",
        claimed_bound=8 * len(parts),
        whose_entry=SOURCE_SIGMA,
    )


# -- verification --------------------------------------------------------------


def verify_factorization(f: Factorization, sigma: GLElement) -> VerifyReport:
    """Exact re-evaluation of the product over the supplied sigma."""
    ring, n = sigma.ring, sigma.n
    acc = Matrix.identity(ring, n)
    flags = []
    for eps, w in f.product.factors:
        mid = sigma.mat if eps == 1 else sigma.inv
        acc = acc.mul(w.inverse().eval()).mul(mid).mul(w.eval())
        memberships = ["full"]
        if w.satisfies(FLAG_ESTAR):
            memberships.append(FLAG_ESTAR)
        if w.satisfies(FLAG_EDOUBLESTAR):
            memberships.append(FLAG_EDOUBLESTAR)
        flags.append(memberships)
    want = transvection(ring, n, f.k, f.l, f.value)
    mismatch = None
    if acc != want:
        mismatch = next(
            (r + 1, c + 1)
            for r in range(n)
            for c in range(n)
            if acc.rows[r][c] != want.rows[r][c]
        )
    count = len(f.product)
    bound_ok = count <= f.claimed_bound
    return VerifyReport(
        passed=mismatch is None and bound_ok,
        evaluation_ok=mismatch is None,
        bound_ok=bound_ok,
        factor_count=count,
        claimed_bound=f.claimed_bound,
        mismatch=mismatch,
        conjugator_flags=flags,
    )
