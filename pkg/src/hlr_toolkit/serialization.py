"""Canonical JSON documents for algebras, actions, crossed modules and morphisms.

A document is an envelope ``{"schema_version", "kind", "payload"}``. Every
rational is a string ``"p"`` or ``"p/q"``; matrices are
``{"shape": [rows, cols], "rows": [[...], ...]}`` and bilinear maps are
``{"shape": [out, left, right], "coeffs": c[k][i][j]}``.
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from .action import LRSAction
from .algebra import (
    AModuleStructure,
    CommAlgebra,
    HomLeibnizAAlgebra,
    HomLeibnizAlgebra,
)
from .cat1 import Cat1Algebra, Cat1Morphism
from .category import CMLMorphism, CrossedLModule
from .crossed import CMMorphism, CrossedModule
from .errors import HLRError, ParseError
from .linalg import Bilinear, Matrix, Rational, Vector, format_rational, to_rational
from .rinehart import HLRAlgebra

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

KINDS = (
    "comm-algebra",
    "hom-leibniz",
    "hla",
    "hlr",
    "action",
    "crossed-module",
    "cat1",
    "morphism",
)

MORPHISM_KINDS = ("hla", "hlr", "crossed-module", "cat1", "crossed-l-module")


@dataclass(frozen=True)
class AlgebraDocument:
    """A parsed or constructed document."""

    kind: str
    payload: Dict[str, Any]
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "payload": self.payload,
            "schema_version": self.schema_version,
        }


@dataclass(frozen=True)
class TypedMorphism:
    """A morphism together with its endpoints.

    Attributes:
        morphism_kind: One of ``MORPHISM_KINDS``
        morphism: Matrix, ``CMMorphism``, ``Cat1Morphism`` or ``CMLMorphism``
        source: Source object
        target: Target object
    """

    morphism_kind: str
    morphism: Any
    source: Any
    target: Any


# Encoding


def encode_rationals(values: List[Rational]) -> List[str]:
    return [format_rational(v) for v in values]


def encode_matrix(m: Matrix) -> Dict[str, Any]:
    return {
        "shape": [m.rows, m.cols],
        "rows": [encode_rationals(row) for row in m.to_lists()],
    }


def encode_bilinear(b: Bilinear) -> Dict[str, Any]:
    return {
        "shape": [b.dim_out, b.dim_left, b.dim_right],
        "coeffs": [[encode_rationals(row) for row in plane] for plane in b.to_lists()],
    }


def encode_comm_algebra(a: CommAlgebra) -> Dict[str, Any]:
    return {
        "dim": a.dim,
        "mul": encode_bilinear(a.mul),
        "phi": encode_matrix(a.phi),
        "unit": None if a.unit is None else encode_rationals(list(a.unit)),
    }


def encode_hom_leibniz(algebra: HomLeibnizAlgebra) -> Dict[str, Any]:
    return {
        "dim": algebra.dim,
        "bracket": encode_bilinear(algebra.bracket),
        "alpha": encode_matrix(algebra.alpha),
    }


def encode_hla(hla: HomLeibnizAAlgebra) -> Dict[str, Any]:
    payload = encode_hom_leibniz(hla.carrier)
    payload["base"] = encode_comm_algebra(hla.base)
    payload["module"] = encode_bilinear(hla.module.action)
    return payload


def encode_hlr(algebra: HLRAlgebra) -> Dict[str, Any]:
    payload = encode_hla(algebra.as_hom_leibniz_a_algebra())
    payload["anchor_left"] = [encode_matrix(m) for m in algebra.anchor_left]
    payload["anchor_right"] = [encode_matrix(m) for m in algebra.anchor_right]
    return payload


def encode_action(act: LRSAction) -> Dict[str, Any]:
    return {
        "actor": encode_hlr(act.actor),
        "target": encode_hla(act.target),
        "left": encode_bilinear(act.left),
        "right": encode_bilinear(act.right),
    }


def encode_crossed_module(cm: CrossedModule) -> Dict[str, Any]:
    return {"action": encode_action(cm.action), "boundary": encode_matrix(cm.boundary)}


def encode_cat1(c: Cat1Algebra) -> Dict[str, Any]:
    return {
        "source": encode_hlr(c.source),
        "base": encode_hlr(c.base),
        "s": encode_matrix(c.s),
        "t": encode_matrix(c.t),
        "i": encode_matrix(c.i),
        "xi": None if c.xi is None else encode_matrix(c.xi),
        "derivation": None if c.derivation is None else encode_matrix(c.derivation),
    }


_ENDPOINT_ENCODERS: Dict[str, Callable[[Any], Dict[str, Any]]] = {
    "hla": encode_hla,
    "hlr": encode_hlr,
    "crossed-module": encode_crossed_module,
    "cat1": encode_cat1,
    "crossed-l-module": lambda module: encode_crossed_module(module.cm),
}


def encode_morphism(m: TypedMorphism) -> Dict[str, Any]:
    encode = _ENDPOINT_ENCODERS[m.morphism_kind]
    payload: Dict[str, Any] = {
        "morphism_kind": m.morphism_kind,
        "source": encode(m.source),
        "target": encode(m.target),
    }
    if m.morphism_kind in ("hla", "hlr"):
        payload["map"] = encode_matrix(m.morphism)
    elif m.morphism_kind == "crossed-module":
        payload["phi"] = encode_matrix(m.morphism.phi_map)
        payload["psi"] = encode_matrix(m.morphism.psi_map)
    elif m.morphism_kind == "cat1":
        payload["upsilon"] = encode_matrix(m.morphism.upsilon)
    else:
        payload["lambda"] = encode_matrix(m.morphism.lambda_map)
    return payload


def to_document(obj: Any) -> AlgebraDocument:
    """Wrap a toolkit object in a document of the matching kind.

    Raises:
        TypeError: If the object has no document kind
    """
    if isinstance(obj, TypedMorphism):
        return AlgebraDocument("morphism", encode_morphism(obj))
    if isinstance(obj, CrossedLModule):
        return AlgebraDocument("crossed-module", encode_crossed_module(obj.cm))
    encoders: List[Tuple[type, str, Callable[[Any], Dict[str, Any]]]] = [
        (CommAlgebra, "comm-algebra", encode_comm_algebra),
        (HomLeibnizAlgebra, "hom-leibniz", encode_hom_leibniz),
        (HomLeibnizAAlgebra, "hla", encode_hla),
        (HLRAlgebra, "hlr", encode_hlr),
        (LRSAction, "action", encode_action),
        (CrossedModule, "crossed-module", encode_crossed_module),
        (Cat1Algebra, "cat1", encode_cat1),
    ]
    for cls, kind, encode in encoders:
        if isinstance(obj, cls):
            return AlgebraDocument(kind, encode(obj))
    raise TypeError(f"no document kind for {type(obj).__name__}")


# Decoding


def _field(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    if key not in obj:
        raise ParseError(f"missing field '{key}'", path)
    return obj[key]


def _list(value: Any, path: str, length: Optional[int] = None) -> List[Any]:
    if not isinstance(value, list):
        raise ParseError("expected a list", path)
    if length is not None and len(value) != length:
        raise ParseError(f"expected {length} entries, found {len(value)}", path)
    return value


def _count(value: Any, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError("expected a non-negative integer", path)
    return value


def decode_rational(value: Any, path: str) -> Rational:
    if not isinstance(value, str):
        raise ParseError("rationals must be strings 'p' or 'p/q'", path)
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(str(e), path)


def _rationals(value: Any, path: str, length: int) -> List[Rational]:
    items = _list(value, path, length)
    return [decode_rational(v, f"{path}[{k}]") for k, v in enumerate(items)]


def decode_matrix(
    obj: Any, path: str, shape: Optional[Tuple[int, int]] = None
) -> Matrix:
    dims = _list(_field(obj, "shape", path), f"{path}.shape", 2)
    rows, cols = (_count(d, f"{path}.shape[{k}]") for k, d in enumerate(dims))
    if shape is not None and (rows, cols) != shape:
        raise ParseError(
            f"shape {[rows, cols]} does not fit, expected {list(shape)}", path
        )
    data = _list(_field(obj, "rows", path), f"{path}.rows", rows)
    parsed = [_rationals(r, f"{path}.rows[{i}]", cols) for i, r in enumerate(data)]
    return Matrix.from_rows(parsed, cols)


def decode_bilinear(
    obj: Any, path: str, shape: Optional[Tuple[int, int, int]] = None
) -> Bilinear:
    dims = _list(_field(obj, "shape", path), f"{path}.shape", 3)
    out, left, right = (_count(d, f"{path}.shape[{k}]") for k, d in enumerate(dims))
    if shape is not None and (out, left, right) != shape:
        raise ParseError(
            f"shape {[out, left, right]} does not fit, expected {list(shape)}", path
        )
    planes = _list(_field(obj, "coeffs", path), f"{path}.coeffs", out)
    coeffs = []
    for k, plane in enumerate(planes):
        rows = _list(plane, f"{path}.coeffs[{k}]", left)
        coeffs.append(
            [
                _rationals(r, f"{path}.coeffs[{k}][{i}]", right)
                for i, r in enumerate(rows)
            ]
        )
    return Bilinear.from_nested(coeffs, left, right)


def _build(path: str, factory: Callable[[], Any]) -> Any:
    try:
        return factory()
    except HLRError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e), path)


def decode_comm_algebra(obj: Any, path: str) -> CommAlgebra:
    n = _count(_field(obj, "dim", path), f"{path}.dim")
    mul = decode_bilinear(_field(obj, "mul", path), f"{path}.mul", (n, n, n))
    phi = decode_matrix(_field(obj, "phi", path), f"{path}.phi", (n, n))
    raw_unit = obj.get("unit")
    unit: Optional[Vector] = None
    if raw_unit is not None:
        unit = tuple(_rationals(raw_unit, f"{path}.unit", n))
    return _build(path, lambda: CommAlgebra(n, mul, phi, unit))


def decode_hom_leibniz(obj: Any, path: str) -> HomLeibnizAlgebra:
    n = _count(_field(obj, "dim", path), f"{path}.dim")
    bracket = decode_bilinear(
        _field(obj, "bracket", path), f"{path}.bracket", (n, n, n)
    )
    alpha = decode_matrix(_field(obj, "alpha", path), f"{path}.alpha", (n, n))
    return _build(path, lambda: HomLeibnizAlgebra(n, bracket, alpha))


def decode_hla(obj: Any, path: str) -> HomLeibnizAAlgebra:
    carrier = decode_hom_leibniz(obj, path)
    base = decode_comm_algebra(_field(obj, "base", path), f"{path}.base")
    action = decode_bilinear(
        _field(obj, "module", path),
        f"{path}.module",
        (carrier.dim, base.dim, carrier.dim),
    )
    return _build(
        path,
        lambda: HomLeibnizAAlgebra(
            carrier, AModuleStructure(base, carrier.dim, action)
        ),
    )


def decode_hlr(obj: Any, path: str) -> HLRAlgebra:
    hla = decode_hla(obj, path)
    a = hla.base.dim
    anchors = []
    for side in ("anchor_left", "anchor_right"):
        items = _list(_field(obj, side, path), f"{path}.{side}", hla.dim)
        anchors.append(
            tuple(
                decode_matrix(m, f"{path}.{side}[{i}]", (a, a))
                for i, m in enumerate(items)
            )
        )
    return _build(
        path, lambda: HLRAlgebra(hla.carrier, hla.module, anchors[0], anchors[1])
    )


def decode_action(obj: Any, path: str) -> LRSAction:
    actor = decode_hlr(_field(obj, "actor", path), f"{path}.actor")
    target = decode_hla(_field(obj, "target", path), f"{path}.target")
    l, m = actor.dim, target.dim
    left = decode_bilinear(_field(obj, "left", path), f"{path}.left", (m, l, m))
    right = decode_bilinear(_field(obj, "right", path), f"{path}.right", (m, m, l))
    return _build(path, lambda: LRSAction(actor, target, left, right))


def decode_crossed_module(obj: Any, path: str) -> CrossedModule:
    action = decode_action(_field(obj, "action", path), f"{path}.action")
    boundary = decode_matrix(
        _field(obj, "boundary", path),
        f"{path}.boundary",
        (action.actor.dim, action.target.dim),
    )
    return _build(path, lambda: CrossedModule(action, boundary))


def decode_cat1(obj: Any, path: str) -> Cat1Algebra:
    source = decode_hlr(_field(obj, "source", path), f"{path}.source")
    base = decode_hlr(_field(obj, "base", path), f"{path}.base")
    p, l = source.dim, base.dim
    s = decode_matrix(_field(obj, "s", path), f"{path}.s", (l, p))
    t = decode_matrix(_field(obj, "t", path), f"{path}.t", (l, p))
    i = decode_matrix(_field(obj, "i", path), f"{path}.i", (p, l))
    xi = None
    if obj.get("xi") is not None:
        xi = decode_matrix(obj["xi"], f"{path}.xi", (p, l))
    derivation = None
    if obj.get("derivation") is not None:
        derivation = decode_matrix(
            obj["derivation"], f"{path}.derivation", (p - l, l)
        )
    return _build(path, lambda: Cat1Algebra(source, base, s, t, i, xi, derivation))


def _decode_cml(obj: Any, path: str) -> CrossedLModule:
    cm = decode_crossed_module(obj, path)
    return _build(path, lambda: CrossedLModule(cm.actor, cm))


_ENDPOINT_DECODERS: Dict[str, Callable[[Any, str], Any]] = {
    "hla": decode_hla,
    "hlr": decode_hlr,
    "crossed-module": decode_crossed_module,
    "cat1": decode_cat1,
    "crossed-l-module": _decode_cml,
}


def decode_morphism(obj: Any, path: str) -> TypedMorphism:
    kind = _field(obj, "morphism_kind", path)
    if kind not in MORPHISM_KINDS:
        raise ParseError(f"unknown morphism kind {kind!r}", f"{path}.morphism_kind")
    decode = _ENDPOINT_DECODERS[kind]
    source = decode(_field(obj, "source", path), f"{path}.source")
    target = decode(_field(obj, "target", path), f"{path}.target")
    morphism: Any
    if kind in ("hla", "hlr"):
        morphism = decode_matrix(
            _field(obj, "map", path), f"{path}.map", (target.dim, source.dim)
        )
    elif kind == "crossed-module":
        phi = decode_matrix(
            _field(obj, "phi", path),
            f"{path}.phi",
            (target.target.dim, source.target.dim),
        )
        psi = decode_matrix(
            _field(obj, "psi", path),
            f"{path}.psi",
            (target.actor.dim, source.actor.dim),
        )
        morphism = CMMorphism(phi, psi)
    elif kind == "cat1":
        morphism = Cat1Morphism(
            decode_matrix(
                _field(obj, "upsilon", path),
                f"{path}.upsilon",
                (target.source.dim, source.source.dim),
            )
        )
    else:
        lam = decode_matrix(
            _field(obj, "lambda", path), f"{path}.lambda", (target.dim, source.dim)
        )
        morphism = _build(path, lambda: CMLMorphism(source, target, lam))
    return TypedMorphism(kind, morphism, source, target)


_DECODERS: Dict[str, Callable[[Any, str], Any]] = {
    "comm-algebra": decode_comm_algebra,
    "hom-leibniz": decode_hom_leibniz,
    "hla": decode_hla,
    "hlr": decode_hlr,
    "action": decode_action,
    "crossed-module": decode_crossed_module,
    "cat1": decode_cat1,
    "morphism": decode_morphism,
}


def from_document(doc: AlgebraDocument) -> Any:
    """Build the toolkit object a document describes.

    Raises:
        ParseError: If the payload does not describe a well-shaped object
    """
    if doc.kind not in _DECODERS:
        raise ParseError(f"unknown kind {doc.kind!r}", "kind")
    return _DECODERS[doc.kind](doc.payload, "payload")


def parse(text: str) -> AlgebraDocument:
    """Parse document text into a canonical document.

    The payload is decoded completely, so every rational and every shape is
    checked, then re-encoded in canonical form.

    Args:
        text: JSON document text

    Returns:
        Canonical document

    Raises:
        ParseError: With the path of the first offending value
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}")
    version = _field(raw, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema version {version!r}", "schema_version")
    kind = _field(raw, "kind", "")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", "kind")
    doc = AlgebraDocument(kind, _field(raw, "payload", ""))
    obj = from_document(doc)
    logger.debug(f"Parsed {kind} document")
    return to_document(obj)


def dumps(doc: AlgebraDocument) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2) + "\n"


def load(text: str) -> Tuple[AlgebraDocument, Any]:
    """Parse text and return the document with its decoded object."""
    doc = parse(text)
    return doc, from_document(doc)
