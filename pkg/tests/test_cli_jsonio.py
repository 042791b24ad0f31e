import json
import os

import pytest

from rdu.cli import main
from rdu.errors import ParseError
from rdu.jsonio import (
    conj_product_from_json,
    conj_product_to_json,
    element_from_json,
    element_to_json,
    factorization_from_json,
    factorization_to_json,
    matrix_from_json,
    matrix_to_json,
    word_from_json,
    word_to_json,
)
from rdu.factorizer import extract_offdiag, verify_factorization
from rdu.matgroup import random_invertible, random_word
from rdu.rings import parse_ring


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("spec,val", [
    ("Z/12", 7), ("Z", -42), ("M2(GF(2))", [[1, 0], [1, 1]]), ("Z/4xGF(3)", (3, 2)),
])
def test_element_round_trip(spec, val):
    ring = parse_ring(spec)
    x = ring.el(val)
    assert element_from_json(ring, element_to_json(x)) == x


@pytest.mark.parametrize("spec", ["Z/12", "M2(GF(2))", "Z/4xGF(3)"])
def test_matrix_round_trip(spec, rng):
    ring = parse_ring(spec)
    m = random_invertible(ring, 3, rng).mat
    doc = matrix_to_json(m)
    assert matrix_from_json(doc) == m
    assert matrix_from_json(json.loads(json.dumps(doc))) == m


def test_word_round_trip(z12, rng):
    w = random_word(z12, 3, rng, 5)
    assert word_from_json(z12, 3, word_to_json(w)) == w


def test_conj_product_round_trip(z12, rng):
    sigma = random_invertible(z12, 3, rng)
    f = extract_offdiag(sigma, "commutative", 1, 2, 2, 3, z12.el(5), z12.el(2))
    doc = conj_product_to_json(f.product)
    back = conj_product_from_json(json.loads(json.dumps(doc)), sigma)
    assert back.factors == f.product.factors


def test_factorization_round_trip(z12, rng):
    sigma = random_invertible(z12, 3, rng)
    f = extract_offdiag(sigma, "commutative", 1, 2, 2, 3, z12.el(5), z12.el(2))
    doc = json.loads(json.dumps(factorization_to_json(f)))
    back = factorization_from_json(doc, sigma)
    assert back.k == f.k and back.l == f.l and back.value == f.value
    assert back.claimed_bound == f.claimed_bound
    assert back.product.factors == f.product.factors
    assert verify_factorization(back, sigma).passed


def test_matrix_ring_mismatch():
    with pytest.raises(ParseError):
        matrix_from_json(
            {"ring": "Z/12", "n": 3, "entries": [["1"] * 3] * 3},
            ring=parse_ring("GF(3)"),
        )


IDENTITY = '[[1,0,0],[0,1,0],[0,0,1]]'
UPPER = '[[1,5,0],[0,1,0],[0,0,1]]'


def test_cli_factorize_and_verify(capsys, tmp_path):
    code, out = _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3", "--matrix", UPPER,
    ])
    assert code == 0
    doc = json.loads(out)
    assert doc["bound"] == 8
    assert doc["target"] == {"k": 1, "l": 3, "value": "5"}
    assert len(doc["factors"]) == 8

    path = tmp_path / "fact.json"
    path.write_text(out)
    code, out2 = _run(capsys, [
        "verify", "--factorization", f"@{path}", "--matrix",
        json.dumps({"ring": "Z/12", "n": 3, "entries": json.loads(UPPER)}),
    ])
    assert code == 0
    assert json.loads(out2)["passed"] is True


def test_cli_identity_matrix(capsys):
    code, out = _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3", "--matrix", IDENTITY,
    ])
    assert code == 0
    doc = json.loads(out)
    assert doc["target"]["value"] == "0"


def test_cli_negative_controls(capsys, tmp_path):
    code, out = _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3", "--matrix", UPPER,
    ])
    doc = json.loads(out)
    doc["factors"][0]["eps"] *= -1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out2 = _run(capsys, [
        "verify", "--factorization", f"@{path}", "--matrix",
        json.dumps({"ring": "Z/12", "n": 3, "entries": json.loads(UPPER)}),
    ])
    assert code == 1
    assert json.loads(out2)["mismatch"] is not None

    doc = json.loads(out := _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3", "--matrix", UPPER,
    ])[1])
    doc["factors"] = doc["factors"][:-1]
    path.write_text(json.dumps(doc))
    code, out3 = _run(capsys, [
        "verify", "--factorization", f"@{path}", "--matrix",
        json.dumps({"ring": "Z/12", "n": 3, "entries": json.loads(UPPER)}),
    ])
    assert code == 1
    rep = json.loads(out3)
    assert rep["mismatch"] is not None and rep["factor_count"] == 7


def test_cli_class_unavailable(capsys):
    code, _ = _run(capsys, [
        "factorize", "--ring", "GF(2)", "--class", "banach", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3",
        "--matrix", '[[1,1,0],[0,1,0],[0,0,1]]',
    ])
    assert code == 3


def test_cli_hypothesis_failure(capsys):
    code, _ = _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3",
        "--matrix", '[[2,0,0],[0,2,0],[0,0,2]]',  # not invertible mod 12
    ])
    assert code == 4


def test_cli_parse_errors(capsys):
    code, _ = _run(capsys, [
        "factorize", "--ring", "Q/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3", "--matrix", IDENTITY,
    ])
    assert code == 2
    code, _ = _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3", "--matrix", "not json",
    ])
    assert code == 2


def test_cli_human_and_out(capsys, tmp_path):
    out_path = tmp_path / "fact.json"
    code, out = _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "commutative", "--n", "3",
        "--i", "1", "--j", "2", "--k", "1", "--l", "3", "--matrix", UPPER,
        "--human", "--out", str(out_path),
    ])
    assert code == 0
    doc = json.loads(out)
    assert doc["human"]["target"] == "t_{1,3}(5)"
    assert len(doc["human"]["factors"]) == 8
    assert json.loads(out_path.read_text()) == doc


def test_cli_diag_and_source(capsys):
    code, out = _run(capsys, [
        "factorize", "--ring", "M2(GF(2))", "--class", "vnr", "--n", "3",
        "--i", "1", "--j", "2", "--k", "2", "--l", "1", "--diag",
        "--c", "[[1,1],[0,1]]",
        "--matrix", '[["[[1,0],[0,1]]","[[1,1],[0,1]]","[[0,0],[0,0]]"],'
                   '["[[0,0],[0,0]]","[[1,0],[0,1]]","[[0,0],[0,0]]"],'
                   '["[[0,0],[0,0]]","[[0,0],[0,0]]","[[1,0],[0,1]]"]]',
    ])
    assert code == 0
    assert json.loads(out)["bound"] == 24

    code, out = _run(capsys, [
        "factorize", "--ring", "Z", "--class", "sr-mid", "--n", "3",
        "--i", "1", "--j", "3", "--k", "1", "--l", "3", "--source", "sigma-inverse",
        "--matrix", '[[1,2,1],[0,1,3],[0,0,1]]',
    ])
    assert code == 0
    doc = json.loads(out)
    assert doc["whose_entry"] == "sigma_inverse" and doc["bound"] == 16


def test_cli_search(capsys, tmp_path):
    code, out = _run(capsys, ["search", "--n", "3", "--q", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["optimum"] == 2
    assert sum(doc["histogram"].values()) == 168

    cache = tmp_path / "gl.cache"
    code, out = _run(capsys, ["search", "--n", "3", "--q", "2", "--cache", str(cache)])
    assert code == 0 and cache.exists()
    code, out = _run(capsys, ["search", "--n", "3", "--q", "2", "--cache", str(cache)])
    assert code == 0 and json.loads(out)["optimum"] == 2

    code, _ = _run(capsys, ["search", "--n", "4", "--q", "2"])
    assert code == 2


def test_cli_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("RDU_JOBS", "2")
    code, out = _run(capsys, ["search", "--n", "3", "--q", "2"])
    assert code == 0
    assert json.loads(out)["jobs"] == 2


def test_cli_almost_commutative(capsys):
    parts = json.dumps([
        {"tau": [], "z": "1", "y": "5"},
    ])
    code, out = _run(capsys, [
        "factorize", "--ring", "Z/12", "--class", "almost-commutative", "--n", "3",
        "--k", "1", "--l", "3", "--matrix", '[[5,1,0],[4,1,0],[3,0,1]]',
        "--parts", parts,
    ])
    assert code == 0
    doc = json.loads(out)
    assert doc["bound"] == 8 and doc["theorem"] == "almost_commutative.partition"
