"""JSON (de)serialization for matrices, words, conjugate products,
factorizations, and reports."""

from __future__ import annotations

from .errors import ParseError
from .factorizer import Factorization
from .matgroup import ElemWord, GLElement, Matrix
from .reduction import ConjProduct
from .rings import El, Ring, parse_ring


def element_to_json(x: El) -> str:
    return x.ring.format_raw(x.raw)


def element_from_json(ring: Ring, value) -> El:
    if isinstance(value, int):
        return ring.el(value)
    if isinstance(value, str):
        return ring.parse_el(value)
    if isinstance(value, (list, tuple)):
        return ring.el(value)
    raise ParseError(f"cannot read ring element from {value!r}")


def matrix_to_json(m: Matrix) -> dict:
    return {
        "ring": m.ring.spec_string(),
        "n": m.n,
        "entries": [
            [m.ring.format_raw(v) for v in row] for row in m.rows
        ],
    }


def matrix_from_json(obj, ring: Ring | None = None, n: int | None = None) -> Matrix:
    if isinstance(obj, dict):
        spec = obj.get("ring")
        if spec is not None:
            parsed = parse_ring(spec)
            if ring is not None and parsed != ring:
                raise ParseError(
                    f"matrix ring {spec!r} disagrees with expected {ring!r}"
                )
            ring = parsed
        entries = obj.get("entries")
        if entries is None:
            raise ParseError("matrix object needs an 'entries' field")
        if "n" in obj and len(entries) != obj["n"]:
            raise ParseError("matrix 'n' disagrees with entries shape")
    else:
        entries = obj
    if ring is None:
        raise ParseError("no ring given for matrix entries")
    rows = [[element_from_json(ring, v) for v in row] for row in entries]
    if n is not None and len(rows) != n:
        raise ParseError(f"expected a {n}x{n} matrix, got {len(rows)} rows")
    return Matrix.from_elements(ring, rows)


def word_to_json(w: ElemWord) -> list:
    return [
        {"i": i, "j": j, "x": w.ring.format_raw(x)} for i, j, x in w.gens
    ]


def word_from_json(ring: Ring, n: int, data, flag: str = "full") -> ElemWord:
    gens = []
    for item in data:
        try:
            gens.append(
                (int(item["i"]), int(item["j"]), element_from_json(ring, item["x"]))
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad word generator {item!r}") from exc
    return ElemWord(ring, n, gens, flag)


def conj_product_to_json(p: ConjProduct) -> dict:
    return {
        "factors": [
            {"eps": eps, "conj": word_to_json(w)} for eps, w in p.factors
        ]
    }


def conj_product_from_json(obj, base: GLElement) -> ConjProduct:
    try:
        factors = [
            (int(item["eps"]), word_from_json(base.ring, base.n, item["conj"]))
            for item in obj["factors"]
        ]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad conjugate-product object: {exc}") from exc
    return ConjProduct(base, factors)


def factorization_to_json(f: Factorization, human: bool = False) -> dict:
    base = f.product.base
    out = {
        "ring": base.ring.spec_string(),
        "n": base.n,
        "theorem": f.theorem_tag,
        "bound": f.claimed_bound,
        "target": {
            "k": f.k,
            "l": f.l,
            "value": element_to_json(f.value),
        },
        "whose_entry": f.whose_entry,
        "factors": conj_product_to_json(f.product)["factors"],
    }
    if f.details:
        out["details"] = dict(f.details)
    if human:
        out["human"] = {
            "target": f"t_{{{f.k},{f.l}}}({element_to_json(f.value)})",
            "factors": [
                _human_factor(eps, w) for eps, w in f.product.factors
            ],
        }
    return out


def _human_factor(eps: int, w: ElemWord) -> str:
    word = (
        " ".join(f"t_{{{i},{j}}}({w.ring.format_raw(x)})" for i, j, x in w.gens)
        or "e"
    )
    sign = "" if eps == 1 else "^-1"
    return f"(sigma{sign})^[{word}]"


def factorization_from_json(obj, sigma: GLElement) -> Factorization:
    try:
        ring = parse_ring(obj["ring"]) if "ring" in obj else sigma.ring
        if ring != sigma.ring:
            raise ParseError("factorization ring disagrees with sigma's ring")
        if "n" in obj and int(obj["n"]) != sigma.n:
            raise ParseError("factorization size disagrees with sigma")
        target = obj["target"]
        product = conj_product_from_json(obj, sigma)
        return Factorization(
            product=product,
            k=int(target["k"]),
            l=int(target["l"]),
            value=element_from_json(sigma.ring, target["value"]),
            theorem_tag=str(obj.get("theorem", "unknown")),
            claimed_bound=int(obj["bound"]),
            whose_entry=str(obj.get("whose_entry", "sigma")),
            details=dict(obj.get("details", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad factorization object: {exc}") from exc
