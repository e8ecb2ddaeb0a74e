"""JSON form of classifiers.  Rationals are ints or "num/den" strings."""

from __future__ import annotations

import json
from fractions import Fraction

from ..graph import canonical_json
from .aggregate import Aggregator, AggregationError
from .model import Cls, GnnClassifier, GnnError, Layer

FORMAT_VERSION = 1


def encode_rational(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _agg_to_dict(a: Aggregator) -> dict:
    d = {"kind": a.kind}
    if a.k is not None:
        d["k"] = a.k
    return d


def _second_names(kind):
    return ("read", "R") if kind == "ACR" else ("agg_bar", "Abar")


def gnn_to_dict(n: GnnClassifier) -> dict:
    layers = []
    for layer in n.layers:
        d = {"kind": layer.kind, "agg": _agg_to_dict(layer.agg)}
        if layer.kind != "AC":
            agg_name, _ = _second_names(layer.kind)
            d[agg_name] = _agg_to_dict(layer.agg2)
        d["activation"] = layer.activation
        d["C"] = [[encode_rational(x) for x in row] for row in layer.C]
        d["A"] = [[encode_rational(x) for x in row] for row in layer.A]
        if layer.kind != "AC":
            _, mat_name = _second_names(layer.kind)
            d[mat_name] = [[encode_rational(x) for x in row] for row in layer.extra]
        d["bias"] = [encode_rational(x) for x in layer.bias]
        layers.append(d)
    cls = {"coordinate": n.cls.coordinate, "predicate": n.cls.predicate}
    if n.cls.predicate == ">=":
        cls["threshold"] = encode_rational(n.cls.threshold)
    return {"format_version": FORMAT_VERSION, "input_dim": n.input_dim,
            "layers": layers, "cls": cls}


def _agg_from_dict(d) -> Aggregator:
    if not isinstance(d, dict) or "kind" not in d:
        raise GnnError("aggregator must be an object with a 'kind'")
    try:
        return Aggregator(d["kind"], d.get("k"))
    except AggregationError as exc:
        raise GnnError(str(exc)) from None


def gnn_from_dict(obj) -> GnnClassifier:
    if not isinstance(obj, dict):
        raise GnnError("classifier JSON must be an object")
    version = obj.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise GnnError(f"unsupported format version {version!r}")
    try:
        layers = []
        for pos, d in enumerate(obj["layers"]):
            kind = d["kind"]
            agg2 = extra = None
            if kind in ("ACR", "ACPlus"):
                agg_name, mat_name = _second_names(kind)
                agg2 = _agg_from_dict(d[agg_name])
                extra = d[mat_name]
            try:
                layers.append(Layer(kind, _agg_from_dict(d["agg"]), d["C"], d["A"], d["bias"],
                                    extra, agg2, d.get("activation", "truncated-relu")))
            except GnnError as exc:
                raise GnnError(f"layers[{pos}]: {exc}") from None
        c = obj["cls"]
        cls = Cls(c["coordinate"], c.get("predicate", "=1"), c.get("threshold"))
        return GnnClassifier(obj["input_dim"], layers, cls)
    except (KeyError, TypeError) as exc:
        raise GnnError(f"malformed classifier JSON: {exc!r}") from None


def serialize_gnn(n: GnnClassifier) -> bytes:
    return canonical_json(gnn_to_dict(n)).encode("utf-8")


def parse_gnn(text: bytes | str) -> GnnClassifier:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise GnnError(f"malformed JSON: {exc}") from None
    return gnn_from_dict(obj)
