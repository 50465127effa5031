"""Sheaf cohomology of group networks: torsor analysis and paradox classification."""

import json as _json

from torsornet import _core

__all__ = [
    "analyze",
    "compare",
    "cohomology",
    "classify_tree",
    "gallery",
    "roundtrip_spec",
]


def _unpack(raw):
    result = dict(raw)
    result["machine"] = _json.loads(result["machine"])
    return result


def analyze(spec_path, basepoint=""):
    return _unpack(_core.analyze(str(spec_path), basepoint))


def compare(spec_a, spec_b, morphism=None, max_search=1000000):
    morphism = None if morphism is None else str(morphism)
    return _unpack(_core.compare(str(spec_a), str(spec_b), morphism, max_search))


def cohomology(spec_path):
    return _unpack(_core.cohomology(str(spec_path)))


def classify_tree(spec_path, max_search=1000000):
    return _unpack(_core.classify_tree(str(spec_path), max_search))


def gallery(only=""):
    return _unpack(_core.gallery(only))


def roundtrip_spec(text):
    return _core.roundtrip_spec(text)
