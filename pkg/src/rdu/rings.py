"""Exact arithmetic for a closed catalogue of rings, plus the capability
oracles the factorization constructions consume.

Catalogue: Z, Z/m, GF(q) for prime q, M_k(GF(q)), and finite direct
products of these.  Every element has one canonical representation, all
oracles are deterministic (first hit in the ring's canonical enumeration
order), and all arithmetic is exact; integers are arbitrary precision.
"""

from __future__ import annotations

import itertools
import re
from math import gcd
from typing import Iterator, Sequence

from .errors import (
    CapabilityError,
    NoWitnessError,
    NotUnimodularError,
    ParseError,
    PreconditionError,
    RingMismatchError,
)


class El:
    """A ring element: a ring reference plus a canonical raw value.

    Raw values per kind: int (Z, Z/m, GF(q)); tuple-of-row-tuples of ints
    (matrix rings); tuple of component raws (products).  Equality and hash
    are representation equality.
    """

    __slots__ = ("ring", "raw")

    def __init__(self, ring: "Ring", raw):
        self.ring = ring
        self.raw = raw

    def _coerce(self, other) -> "El":
        if isinstance(other, El):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            raise RingMismatchError(
                f"mixed-ring operands: {self.ring} vs {other.ring}"
            )
        if isinstance(other, int):
            return self.ring.el(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return El(self.ring, self.ring.add_raw(self.raw, o.raw))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return El(self.ring, self.ring.add_raw(self.raw, self.ring.neg_raw(o.raw)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return El(self.ring, self.ring.mul_raw(self.raw, o.raw))

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return El(self.ring, self.ring.mul_raw(o.raw, self.raw))

    def __neg__(self):
        return El(self.ring, self.ring.neg_raw(self.raw))

    def __eq__(self, other):
        if isinstance(other, El):
            return self.ring == other.ring and self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash((id(type(self.ring)), self.raw))

    def is_zero(self) -> bool:
        return self.raw == self.ring.zero_raw

    def is_one(self) -> bool:
        return self.raw == self.ring.one_raw

    def __repr__(self):
        return self.ring.format_raw(self.raw)


class Ring:
    """Shared interface; concrete kinds fill in the raw-value operations."""

    kind: str = "?"
    is_commutative = True
    is_vn_regular = False
    is_finite = False
    size: int | None = None
    stable_rank: int | None = None  # declared, not computed: fields 1, Z 2
    euclid_terms: int | None = None  # m of the m-term Euclidean algorithm
    strong_euclid = False

    zero_raw = 0
    one_raw = 1

    # -- raw arithmetic ------------------------------------------------
    def add_raw(self, a, b):
        raise NotImplementedError

    def neg_raw(self, a):
        raise NotImplementedError

    def mul_raw(self, a, b):
        raise NotImplementedError

    def dot_raw(self, xs, ys):
        """Sum of pairwise products; the matrix-multiply inner loop."""
        acc = self.zero_raw
        add, mul = self.add_raw, self.mul_raw
        for x, y in zip(xs, ys):
            acc = add(acc, mul(x, y))
        return acc

    # -- element construction and display ------------------------------
    def zero(self) -> El:
        return El(self, self.zero_raw)

    def one(self) -> El:
        return El(self, self.one_raw)

    def el(self, value) -> El:
        """Build an element from a plain python value (int, nested lists,
        tuple of components), reduced into the ring."""
        return El(self, self._raw_from_value(value))

    def _raw_from_value(self, value):
        raise NotImplementedError

    def format_raw(self, raw) -> str:
        raise NotImplementedError

    def parse_el(self, text: str) -> El:
        return El(self, self._raw_from_text(text.strip()))

    def _raw_from_text(self, text: str):
        raise NotImplementedError

    # -- enumeration ----------------------------------------------------
    def elements_raw(self) -> Iterator:
        raise CapabilityError(f"{self} is not finite; cannot enumerate")

    def elements(self) -> Iterator[El]:
        for raw in self.elements_raw():
            yield El(self, raw)

    # -- oracles ---------------------------------------------------------
    def right_inverse(self, x: El) -> El | None:
        """First z in canonical order with x*z = 1, or None."""
        self._check_el(x)
        raw = self._right_inverse_raw(x.raw)
        return None if raw is None else El(self, raw)

    def _right_inverse_raw(self, a):
        one = self.one_raw
        for z in self.elements_raw():
            if self.mul_raw(a, z) == one:
                return z
        return None

    def vnr_witness(self, x: El) -> El:
        """First y in canonical order with x*y*x = x."""
        if not self.is_vn_regular:
            raise CapabilityError(f"{self} is not flagged von Neumann regular")
        self._check_el(x)
        a = x.raw
        for y in self.elements_raw():
            if self.mul_raw(self.mul_raw(a, y), a) == a:
                return El(self, y)
        raise CapabilityError(f"no inner inverse found in {self}")  # unreachable

    def has_property_one(self) -> bool:
        """Exhaustively certify: for all x, z there is a right-invertible y
        with 1 + x*y*z right invertible.  Finite rings only; cached."""
        if not self.is_finite:
            raise CapabilityError(
                f"{self} is infinite; the unit-perturbation property is not certifiable"
            )
        cached = getattr(self, "_property_one", None)
        if cached is None:
            cached = all(
                self._unit_witness_raw(x, z) is not None
                for x in self.elements_raw()
                for z in self.elements_raw()
            )
            self._property_one = cached
        return cached

    def _right_invertibles(self):
        cached = getattr(self, "_rinv_list", None)
        if cached is None:
            one = self.one_raw
            cached = [
                y
                for y in self.elements_raw()
                if any(self.mul_raw(y, z) == one for z in self.elements_raw())
            ]
            self._rinv_list = cached
        return cached

    def _unit_witness_raw(self, x, z):
        one = self.one_raw
        rinvs = self._right_invertibles()
        rset = set(rinvs)
        for y in rinvs:
            cand = self.add_raw(one, self.mul_raw(self.mul_raw(x, y), z))
            if cand in rset:
                return y
        return None

    def unit_witness(self, x: El, z: El) -> El:
        """First right-invertible y with 1 + x*y*z right invertible."""
        self._check_el(x)
        self._check_el(z)
        if not self.is_finite:
            raise CapabilityError(f"{self} is infinite; no exhaustive witness search")
        raw = self._unit_witness_raw(x.raw, z.raw)
        if raw is None:
            raise NoWitnessError(
                f"{self} fails the unit-perturbation property at x={x!r}, z={z!r}"
            )
        return El(self, raw)

    def is_central(self, x: El) -> bool:
        self._check_el(x)
        if self.is_commutative:
            return True
        if not self.is_finite:
            raise CapabilityError(f"centrality not checkable in {self}")
        a = x.raw
        return all(
            self.mul_raw(a, r) == self.mul_raw(r, a) for r in self.elements_raw()
        )

    # -- row reduction oracles -------------------------------------------
    def sr_reduce(
        self, row: Sequence[El], witness: Sequence[El] | None = None
    ) -> tuple[list[El], list[El]]:
        """Shorten a unimodular row of length p+1 to an unimodular row of
        length p by adding right multiples of the last entry to the rest.

        Returns (xs, v): the correction elements x_1..x_p and a column v
        certifying unimodularity of the shortened row.
        """
        raise CapabilityError(f"stable rank of {self} is not declared")

    def euclid_reduce(self, row: Sequence[El], strong: bool = False):
        """Word of transvection steps [(i, j, x)] over E_m driving the last
        entry of the row to zero; strong additionally keeps the word's (1,1)
        entry equal to 1 (fields only)."""
        raise CapabilityError(f"{self} has no declared Euclidean algorithm")

    # -- misc -------------------------------------------------------------
    def _check_el(self, x: El):
        if not (x.ring is self or x.ring == self):
            raise RingMismatchError(f"element of {x.ring} used in {self}")

    def __repr__(self):
        return self.spec_string()

    def spec_string(self) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.spec_string() == other.spec_string()

    def __hash__(self):
        return hash(self.spec_string())


def _parse_int(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise ParseError(f"not an integer literal: {text!r}") from None


class IntegerRing(Ring):
    kind = "Z"
    stable_rank = 2
    euclid_terms = 2

    def add_raw(self, a, b):
        return a + b

    def neg_raw(self, a):
        return -a

    def mul_raw(self, a, b):
        return a * b

    def dot_raw(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys))

    def _raw_from_value(self, value):
        if not isinstance(value, int):
            raise ParseError(f"Z element must be an int, got {value!r}")
        return value

    def format_raw(self, raw):
        return str(raw)

    def _raw_from_text(self, text):
        return _parse_int(text)

    def _right_inverse_raw(self, a):
        return a if a in (1, -1) else None

    def sr_reduce(self, row, witness=None):
        return _sr_reduce_integers(self, row, witness)

    def euclid_reduce(self, row, strong=False):
        if strong:
            raise CapabilityError("strong Euclidean reduction is for fields only")
        return _euclid_reduce_integers(self, row)

    def spec_string(self):
        return "Z"


class ModRing(Ring):
    """Z/m with canonical residues 0..m-1."""

    kind = "Z/m"
    is_finite = True

    def __init__(self, m: int):
        if m < 2:
            raise ParseError(f"modulus must be >= 2, got {m}")
        self.m = m
        self.size = m

    def add_raw(self, a, b):
        return (a + b) % self.m

    def neg_raw(self, a):
        return (-a) % self.m

    def mul_raw(self, a, b):
        return (a * b) % self.m

    def dot_raw(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.m

    def _raw_from_value(self, value):
        if not isinstance(value, int):
            raise ParseError(f"Z/{self.m} element must be an int, got {value!r}")
        return value % self.m

    def format_raw(self, raw):
        return str(raw)

    def _raw_from_text(self, text):
        return _parse_int(text) % self.m

    def elements_raw(self):
        return iter(range(self.m))

    def _right_inverse_raw(self, a):
        for z in range(self.m):
            if (a * z) % self.m == 1:
                return z
        return None

    def spec_string(self):
        return f"Z/{self.m}"


class PrimeField(ModRing):
    kind = "GF(q)"
    is_vn_regular = True
    stable_rank = 1
    euclid_terms = 2
    strong_euclid = True

    def __init__(self, q: int):
        if q < 2 or any(q % p == 0 for p in range(2, int(q**0.5) + 1)):
            raise ParseError(f"GF order must be prime, got {q}")
        super().__init__(q)
        self.q = q

    def _right_inverse_raw(self, a):
        if a % self.q == 0:
            return None
        return pow(a, self.q - 2, self.q)

    def sr_reduce(self, row, witness=None):
        return _sr_reduce_field(self, row)

    def euclid_reduce(self, row, strong=False):
        return _euclid_reduce_field(self, row, strong)

    def spec_string(self):
        return f"GF({self.q})"


class MatrixRing(Ring):
    """k x k matrices over GF(q); the catalogue's noncommutative member."""

    kind = "M_k(GF(q))"
    is_finite = True
    is_vn_regular = True

    def __init__(self, k: int, q: int):
        if k < 1:
            raise ParseError(f"matrix size must be >= 1, got {k}")
        self.k = k
        self.field = PrimeField(q)
        self.q = self.field.q
        self.size = q ** (k * k)
        self.is_commutative = k == 1
        self.zero_raw = tuple(tuple(0 for _ in range(k)) for _ in range(k))
        self.one_raw = tuple(
            tuple(1 if i == j else 0 for j in range(k)) for i in range(k)
        )
        self._mul_table: dict | None = None
        self._add_table: dict | None = None
        if self.size <= 256:
            self._build_tables()

    def _build_tables(self):
        elems = list(self.elements_raw())
        self._add_table = {
            (a, b): self._add_slow(a, b) for a in elems for b in elems
        }
        self._mul_table = {
            (a, b): self._mul_slow(a, b) for a in elems for b in elems
        }

    def _add_slow(self, a, b):
        q = self.q
        return tuple(
            tuple((x + y) % q for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
        )

    def _mul_slow(self, a, b):
        q, k = self.q, self.k
        return tuple(
            tuple(sum(a[i][t] * b[t][j] for t in range(k)) % q for j in range(k))
            for i in range(k)
        )

    def add_raw(self, a, b):
        if self._add_table is not None:
            return self._add_table[(a, b)]
        return self._add_slow(a, b)

    def mul_raw(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[(a, b)]
        return self._mul_slow(a, b)

    def neg_raw(self, a):
        q = self.q
        return tuple(tuple((-x) % q for x in row) for row in a)

    def _raw_from_value(self, value):
        if isinstance(value, int):
            # scalar embedding: value * identity
            v = value % self.q
            return tuple(
                tuple(v if i == j else 0 for j in range(self.k))
                for i in range(self.k)
            )
        try:
            rows = tuple(tuple(int(x) % self.q for x in row) for row in value)
        except TypeError:
            raise ParseError(f"bad matrix element value: {value!r}") from None
        if len(rows) != self.k or any(len(r) != self.k for r in rows):
            raise ParseError(f"matrix element must be {self.k}x{self.k}")
        return rows

    def format_raw(self, raw):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in raw) + "]"

    def _raw_from_text(self, text):
        if not (text.startswith("[") and text.endswith("]")):
            return self._raw_from_value(_parse_int(text))
        rows = []
        for part in _split_top_level(text[1:-1], "[", "]"):
            part = part.strip()
            if not (part.startswith("[") and part.endswith("]")):
                raise ParseError(f"bad matrix row: {part!r}")
            rows.append([_parse_int(t) for t in part[1:-1].split(",") if t.strip()])
        return self._raw_from_value(rows)

    def elements_raw(self):
        k, q = self.k, self.q
        for digits in itertools.product(range(q), repeat=k * k):
            yield tuple(digits[i * k : (i + 1) * k] for i in range(k))

    def spec_string(self):
        return f"M{self.k}(GF({self.q}))"


class ProductRing(Ring):
    """Finite direct product with componentwise operations."""

    kind = "product"

    def __init__(self, components: Sequence[Ring]):
        if len(components) < 2:
            raise ParseError("product ring needs at least two components")
        self.components = tuple(components)
        self.is_commutative = all(c.is_commutative for c in self.components)
        self.is_vn_regular = all(c.is_vn_regular for c in self.components)
        self.is_finite = all(c.is_finite for c in self.components)
        self.size = None
        if self.is_finite:
            self.size = 1
            for c in self.components:
                self.size *= c.size
        self.zero_raw = tuple(c.zero_raw for c in self.components)
        self.one_raw = tuple(c.one_raw for c in self.components)

    def add_raw(self, a, b):
        return tuple(
            c.add_raw(x, y) for c, x, y in zip(self.components, a, b)
        )

    def neg_raw(self, a):
        return tuple(c.neg_raw(x) for c, x in zip(self.components, a))

    def mul_raw(self, a, b):
        return tuple(
            c.mul_raw(x, y) for c, x, y in zip(self.components, a, b)
        )

    def _raw_from_value(self, value):
        if isinstance(value, int):
            return tuple(c._raw_from_value(value) for c in self.components)
        value = tuple(value)
        if len(value) != len(self.components):
            raise ParseError(
                f"product element needs {len(self.components)} components"
            )
        return tuple(
            c._raw_from_value(v) for c, v in zip(self.components, value)
        )

    def format_raw(self, raw):
        return (
            "("
            + ",".join(c.format_raw(x) for c, x in zip(self.components, raw))
            + ")"
        )

    def _raw_from_text(self, text):
        if not (text.startswith("(") and text.endswith(")")):
            return self._raw_from_value(_parse_int(text))
        parts = _split_top_level(text[1:-1], "([", ")]")
        if len(parts) != len(self.components):
            raise ParseError(f"product element needs {len(self.components)} parts")
        return tuple(
            c._raw_from_text(p.strip()) for c, p in zip(self.components, parts)
        )

    def elements_raw(self):
        # lexicographic across components, first component most significant
        if not self.is_finite:
            raise CapabilityError(f"{self} is not finite; cannot enumerate")
        for combo in itertools.product(
            *[list(c.elements_raw()) for c in self.components]
        ):
            yield tuple(combo)

    def project(self, x: El, t: int) -> El:
        self._check_el(x)
        return El(self.components[t], x.raw[t])

    def embed(self, parts: Sequence[El]) -> El:
        return El(self, tuple(p.raw for p in parts))

    def spec_string(self):
        return "x".join(c.spec_string() for c in self.components)


# -- row oracles -----------------------------------------------------------


def _witness_column_integers(row_vals: list[int]) -> list[int]:
    """Bezout column for a gcd-1 integer row (chained extended gcd)."""
    g, coeffs = 0, []
    for v in row_vals:
        g2, s, t = _egcd(g, v)
        coeffs = [c * s for c in coeffs] + [t]
        g = g2
    if g != 1:
        raise NotUnimodularError(f"integer row has gcd {g}, not 1")
    return coeffs


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _crt(pairs: list[tuple[int, int]]) -> int:
    x, mod = 0, 1
    for r, p in pairs:
        g, s, _ = _egcd(mod, p)
        x = x + mod * (s * (r - x) % p)
        mod *= p
        x %= mod
    return x


def _sr_reduce_integers(ring, row, witness):
    vals = [x.raw for x in row]
    p = len(vals) - 1
    if p < ring.stable_rank:
        raise CapabilityError(f"row too short: need p >= {ring.stable_rank}")
    g = 0
    for v in vals:
        g = gcd(g, v)
    if g != 1:
        raise NotUnimodularError(f"integer row has gcd {g}, not 1")
    c = vals[-1]
    prefix = vals[:-1]
    g = 0
    for v in prefix:
        g = gcd(g, v)
    if g == 1:
        xs = [0] * p
    else:
        rest = 0
        for v in prefix[1:]:
            rest = gcd(rest, v)
        if rest == 0:
            # u_2..u_p all zero: turn u_2 into c; gcd(u_1, c) = 1 by unimodularity
            xs = [0] * p
            xs[1] = 1
        else:
            # avoid, for each prime P | rest with P not dividing c, the single
            # residue t = -u_1/c mod P; primes of rest dividing c are harmless
            pairs = []
            for prime in _prime_factors(rest):
                if c % prime == 0:
                    continue
                bad = (-vals[0] * pow(c % prime, -1, prime)) % prime
                pairs.append(((bad + 1) % prime, prime))
            t = _crt(pairs) if pairs else 0
            xs = [t] + [0] * (p - 1)
    new_vals = [u + c * x for u, x in zip(prefix, xs)]
    col = _witness_column_integers(new_vals)
    assert sum(u * v for u, v in zip(new_vals, col)) == 1
    return [ring.el(x) for x in xs], [ring.el(v) for v in col]


def _sr_reduce_field(field, row):
    vals = [x.raw for x in row]
    p = len(vals) - 1
    if p < 1:
        raise CapabilityError("need p >= 1")
    if all(v == 0 for v in vals):
        raise NotUnimodularError("zero row over a field")
    xs = [0] * p
    if all(v == 0 for v in vals[:-1]):
        xs[0] = 1
    new_vals = [
        (u + vals[-1] * x) % field.q for u, x in zip(vals[:-1], xs)
    ]
    j = next(i for i, v in enumerate(new_vals) if v != 0)
    col = [0] * p
    col[j] = pow(new_vals[j], field.q - 2, field.q)
    return [field.el(x) for x in xs], [field.el(v) for v in col]


def _euclid_reduce_integers(ring, row):
    """Zero the last entry with transvection steps on the last two positions.

    Steps are 1-based (i, j, x) triples meaning t_ij(x); right-multiplying
    the row by t_ij(x) performs u_j += u_i * x.
    """
    m = len(row)
    if m < 2:
        raise CapabilityError("need a row of length >= 2")
    a, b = row[-2].raw, row[-1].raw
    i, j = m - 1, m
    steps = []
    if b == 0:
        return steps
    if a == 0:
        steps.append((j, i, ring.el(1)))  # a += b
        a = b
    while b != 0:
        q = b // a
        steps.append((i, j, ring.el(-q)))  # b -= q*a
        b -= q * a
        if b == 0:
            break
        q = a // b
        steps.append((j, i, ring.el(-q)))  # a -= q*b
        a -= q * b
        if a == 0:
            steps.append((j, i, ring.el(1)))
            a = b
    return steps


def _euclid_reduce_field(field, row, strong):
    """Fields: one transvection almost always suffices.

    Strong variant keeps the word's (1,1) entry at 1: use a middle pivot if
    one exists, else pivot on position 1, else the two-index permutation
    word on positions (2, m).
    """
    m = len(row)
    if m < 2:
        raise CapabilityError("need a row of length >= 2")
    q = field.q
    vals = [x.raw for x in row]
    last = vals[-1]
    if last == 0:
        return []
    if not strong:
        for j in range(m - 1, 0, -1):
            if vals[j - 1] != 0:
                factor = (-pow(vals[j - 1], q - 2, q) * last) % q
                return [(j, m, field.el(factor))]
        return [(m, 1, field.el(1)), (1, m, field.el(-1))]
    for j in range(2, m):
        if vals[j - 1] != 0:
            factor = (-pow(vals[j - 1], q - 2, q) * last) % q
            return [(j, m, field.el(factor))]
    if vals[0] != 0:
        factor = (-pow(vals[0], q - 2, q) * last) % q
        return [(1, m, field.el(factor))]
    if m == 2:
        # row (0, v): t_21(-1) t_12(1) has (1,1) entry 1 and kills position 2
        return [(2, 1, field.el(-1)), (1, 2, field.el(1))]
    # row (0, ..., 0, v_m): generalized permutation on (2, m) has (1,1)=1
    return [(2, m, field.el(1)), (m, 2, field.el(-1)), (2, m, field.el(1))]


# -- ring spec parsing -------------------------------------------------------

_MOD_RE = re.compile(r"^Z/(\d+)$")
_GF_RE = re.compile(r"^GF\((\d+)\)$")
_MAT_RE = re.compile(r"^M(\d+)\(GF\((\d+)\)\)$")


def _split_top_level(text: str, openers: str, closers: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in openers:
            depth += 1
        elif ch in closers:
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _split_product(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_ring(spec: str) -> Ring:
    """Parse "Z", "Z/12", "GF(3)", "M2(GF(2))", "Z/4xGF(3)"."""
    spec = spec.strip()
    parts = _split_product(spec)
    if len(parts) > 1:
        return ProductRing([parse_ring(p) for p in parts])
    if spec == "Z":
        return IntegerRing()
    m = _MOD_RE.match(spec)
    if m:
        return ModRing(int(m.group(1)))
    m = _GF_RE.match(spec)
    if m:
        return PrimeField(int(m.group(1)))
    m = _MAT_RE.match(spec)
    if m:
        return MatrixRing(int(m.group(1)), int(m.group(2)))
    raise ParseError(f"unrecognized ring spec: {spec!r}")


class CentralMultipleWitness:
    """z = x*y = y*x with z central: certifies z as a central multiple of x."""

    __slots__ = ("z", "y", "x")

    def __init__(self, z: El, y: El, x: El):
        ring = z.ring
        if not (x.ring == ring and y.ring == ring):
            raise RingMismatchError("witness components from different rings")
        if x * y != z or y * x != z:
            raise PreconditionError(
                f"central-multiple witness invalid (z != x*y = y*x): "
                f"z={z!r}, y={y!r}, x={x!r}"
            )
        if not ring.is_central(z):
            raise PreconditionError(
                f"central-multiple witness invalid (z not central): z={z!r}"
            )
        self.z = z
        self.y = y
        self.x = x
