import json
import os
from pathlib import Path

import pytest

torsornet = pytest.importorskip("torsornet")

SPECS = Path(os.environ.get("TORSORNET_SPEC_DIR", Path(__file__).resolve().parents[2] / "specs"))


def test_analyze_penrose():
    result = torsornet.analyze(SPECS / "penrose.json")
    assert result["exit_code"] == 0
    machine = result["machine"]
    assert machine["trivial"] == "no"
    assert machine["gcd"] == 4
    assert machine["holonomies"] == ["4"]


def test_cohomology_rose():
    result = torsornet.cohomology(SPECS / "rose2_z.json")
    assert result["exit_code"] == 0
    assert result["machine"]["h0"] == "Z"
    assert result["machine"]["h1"] == "Z^2"


def test_classify_tree_star():
    result = torsornet.classify_tree(SPECS / "star4_z2.json")
    assert result["exit_code"] == 0
    assert result["machine"]["classes"] == 2


def test_compare_with_and_without_morphism():
    searched = torsornet.compare(SPECS / "c4_z2.json", SPECS / "c4_z6.json")
    assert searched["exit_code"] == 0
    assert searched["machine"]["verdict"] == "fiber_equivalent"

    supplied = torsornet.compare(
        SPECS / "c4_z2.json", SPECS / "c4_z6.json", morphism=SPECS / "z2_to_z6.json"
    )
    assert supplied["machine"]["verdict"] == "fiber_equivalent"

    separated = torsornet.compare(SPECS / "c4_z2.json", SPECS / "c4_z4.json")
    assert separated["machine"]["verdict"] == "not_fiber_equivalent"


def test_gallery_all_pass():
    result = torsornet.gallery()
    assert result["exit_code"] == 0
    assert result["machine"]["all_pass"] is True


def test_input_error_exit_code():
    result = torsornet.analyze(SPECS / "no_such_file.json")
    assert result["exit_code"] == 2
    assert "error" in result["machine"]


def test_roundtrip_spec():
    text = (SPECS / "c4_z2.json").read_text()
    once = torsornet.roundtrip_spec(text)
    twice = torsornet.roundtrip_spec(once)
    assert json.loads(once) == json.loads(twice)
