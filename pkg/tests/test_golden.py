"""Byte-stable exact-mode CLI outputs. Regenerate with ``pytest --bless``."""
import json
from pathlib import Path

import pytest

from qips.cli import main

GOLDEN = Path(__file__).parent / "golden"

POINTS = {"half_zero": "1/2,0", "zero_half": "0,1/2", "zero_zero": "0,0"}
CASES = {
    f"{cmd}_{name}": [cmd, "--n", "2", "--dk", dk, "--mode", "exact"]
    for cmd in ("model", "zeta", "abszeta")
    for name, dk in POINTS.items()
}
CASES["scan_half"] = ["scan", "--n", "2", "--step", "1/2"]


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, tmp_path, bless):
    out = tmp_path / f"{name}.json"
    assert main(CASES[name] + ["--json", str(out)]) == 0
    target = GOLDEN / f"{name}.json"
    if bless:
        GOLDEN.mkdir(exist_ok=True)
        target.write_bytes(out.read_bytes())
    assert out.read_bytes() == target.read_bytes()


def load(name):
    return json.loads((GOLDEN / f"{name}.json").read_text())


def test_corpus_pins_paper_values():
    # checked independently of blessing
    assert load("model_half_zero")["components"]["1"]["block"] == [["1", "1/2"], ["0", "1/2"]]
    assert load("zeta_half_zero")["combined"]["zeta_reciprocal"]["coeffs"] == [
        "1", "0", "-1", "0", "0", "0", "-1", "0", "1"
    ]
    assert load("abszeta_half_zero")["cyclotomic_form"] == {"ell": 0, "m": [], "n": [2, 6]}
    assert load("abszeta_zero_half")["cyclotomic_form"] == {"ell": 0, "m": [3], "n": [1, 4, 6]}
    found = {(c["p"], c["q"]) for c in load("scan_half")["cyclotomic"]}
    assert {("1/2", "0"), ("0", "1/2")} <= found
