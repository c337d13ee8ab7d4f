"""JSON encoding and decoding of curves, divisors, presentations and keys."""

import json
from collections import Counter
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from src.classifier.classify import (
    DefClassKey,
    EvenDimEmptyBaseKey,
    EvenDimRealBaseKey,
    OddDimKey,
)
from src.geometry.curve_top import CurveTopType, Divisor, Eps, PointLabel
from src.geometry.errors import SchemaError
from src.geometry.pic_symbolic import LineBundleRep, PicSurfaceExpr
from src.geometry.presentation import (
    CONJ_PAIR,
    ElemTransformRec,
    EmptyBase,
    Label,
    Locus,
    Presentation,
    ProductConjOdd,
    ReferenceStructure,
    SplitPM,
)
from src.geometry.topology import ComponentStatus, QuotientClass, Quintuple

Json = Union[Dict[str, Any], List[Any], str, int]

# total number of records a presentation document may expand to
MAX_RECORDS = 4096


def _field(obj: Any, name: str, kind: type = int) -> Any:
    if not isinstance(obj, dict) or name not in obj:
        raise SchemaError(f"missing field '{name}'")
    value = obj[name]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(f"field '{name}' must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise SchemaError(f"field '{name}' must be of type {kind.__name__}")
    return value


def curve_to_json(curve: CurveTopType) -> Dict[str, Any]:
    return {"g": curve.g, "mu": curve.mu, "eps": curve.eps.value}


def curve_from_json(obj: Any) -> CurveTopType:
    eps = _field(obj, "eps", str)
    try:
        eps = Eps(eps)
    except ValueError:
        raise SchemaError(f"eps must be 'dividing' or 'nondividing', got {eps!r}")
    return CurveTopType(_field(obj, "g"), _field(obj, "mu"), eps)


def point_to_json(label: PointLabel) -> Dict[str, Any]:
    kind = {"real": label.component} if label.is_real else {"nonreal": label.partner}
    return {"id": label.id, "kind": kind}


def point_from_json(obj: Any, curve: CurveTopType) -> PointLabel:
    point_id = _field(obj, "id", str)
    kind = _field(obj, "kind", dict)
    try:
        if "real" in kind:
            return PointLabel.real(point_id, curve, _field(kind, "real"))
        if "nonreal" in kind:
            return PointLabel(id=point_id, curve=curve, partner=_field(kind, "nonreal", str))
    except ValueError as e:
        raise SchemaError(str(e))
    raise SchemaError(f"point kind must be {{'real': int}} or {{'nonreal': str}}, got {kind!r}")


def divisor_to_json(D: Divisor) -> List[Dict[str, Any]]:
    return [{"point": point_to_json(label), "coeff": c} for label, c in D.entries]


def divisor_from_json(obj: Any, curve: CurveTopType) -> Divisor:
    """
    Raises:
        SchemaError: if the document does not follow the schema
        InconsistentLabels: if two points share an id or a pairing is one-sided
    """
    if not isinstance(obj, list):
        raise SchemaError("a divisor must be a list of {point, coeff} terms")
    return Divisor.from_terms(
        (point_from_json(_field(term, "point", dict), curve), _field(term, "coeff"))
        for term in obj
    )


def line_bundle_to_json(L: LineBundleRep) -> List[Dict[str, Any]]:
    return divisor_to_json(L.divisor)


def line_bundle_from_json(obj: Any, curve: CurveTopType) -> LineBundleRep:
    return LineBundleRep(divisor_from_json(obj, curve))


def surface_expr_to_json(expr: PicSurfaceExpr) -> Dict[str, Any]:
    return {"a": expr.a, "m": line_bundle_to_json(expr.m)}

def normal_bundle_input_from_json(obj: Any) -> Tuple[CurveTopType, LineBundleRep, List[LineBundleRep]]:
    """Decode a {curve, L, F} document into the curve, L and the summands of F"""
    curve = curve_from_json(_field(obj, "curve", dict))
    L = line_bundle_from_json(_field(obj, "L", list), curve)
    F = [line_bundle_from_json(F_j, curve) for F_j in _field(obj, "F", list)]
    return curve, L, F


def structure_to_json(structure: ReferenceStructure) -> Dict[str, Any]:
    if isinstance(structure, ProductConjOdd):
        return {"variant": "product_conj_odd"}
    if isinstance(structure, SplitPM):
        return {"variant": "split_pm", "plus_set": sorted(structure.plus_set)}
    return {"variant": "empty_base", "label": structure.label.value}


def structure_from_json(obj: Any) -> ReferenceStructure:
    variant = _field(obj, "variant", str)
    if variant == "product_conj_odd":
        return ProductConjOdd()
    if variant == "split_pm":
        plus = _field(obj, "plus_set", list)
        if any(isinstance(c, bool) or not isinstance(c, int) for c in plus):
            raise SchemaError("plus_set must list component indices")
        return SplitPM(frozenset(plus))
    if variant == "empty_base":
        try:
            return EmptyBase(Label(_field(obj, "label", str)))
        except ValueError:
            raise SchemaError(f"unknown label {obj['label']!r}")
    raise SchemaError(f"unknown structure variant {variant!r}")


def locus_to_json(locus: Locus) -> Json:
    return {"real": locus.component} if locus.is_real else "conjpair"


def locus_from_json(obj: Any) -> Locus:
    if obj == "conjpair":
        return CONJ_PAIR
    if isinstance(obj, dict):
        return Locus.real(_field(obj, "real"))
    raise SchemaError(f"locus must be {{'real': int}} or 'conjpair', got {obj!r}")


def parse_locus(text: str) -> Locus:
    """Command-line form of a locus: real:<idx> or conjpair"""
    if text == "conjpair":
        return CONJ_PAIR
    prefix, _, index = text.partition(":")
    if prefix != "real" or not index.isdigit():
        raise SchemaError(f"locus must be real:<idx> or conjpair, got {text!r}")
    return Locus.real(int(index))


def presentation_to_json(P: Presentation) -> Dict[str, Any]:
    counts = Counter(P.transforms)
    records = sorted(counts, key=lambda rec: rec.sort_key)
    return {
        "base": curve_to_json(P.base),
        "n": P.n,
        "structure": structure_to_json(P.structure),
        "transforms": [
            {"locus": locus_to_json(rec.locus), "rank": rec.rank, "count": counts[rec]}
            for rec in records
        ],
    }


def presentation_from_json(obj: Any) -> Presentation:
    """
    Decode a presentation document

    Raises:
        SchemaError: if the document does not follow the schema
        RuledFormsError: if it follows the schema but is not a valid presentation
    """
    records: List[ElemTransformRec] = []
    for entry in _field(obj, "transforms", list):
        rank = _field(entry, "rank")
        count = _field(entry, "count") if "count" in entry else 1
        if count < 1:
            raise SchemaError("record count must be positive")
        if len(records) + count > MAX_RECORDS:
            raise SchemaError(f"presentation expands to more than {MAX_RECORDS} records")
        rec = ElemTransformRec(locus_from_json(entry.get("locus")), rank)
        records.extend([rec] * count)
    return Presentation(
        base=curve_from_json(_field(obj, "base", dict)),
        n=_field(obj, "n"),
        structure=structure_from_json(_field(obj, "structure", dict)),
        transforms=tuple(records),
    )


def key_to_json(key: DefClassKey) -> Dict[str, Any]:
    out = {"variant": key.variant, "curve": curve_to_json(key.curve), "n": key.n, "d": key.d}
    if isinstance(key, EvenDimRealBaseKey):
        out.update(t=key.t, k=key.k)
    elif isinstance(key, EvenDimEmptyBaseKey):
        out.update(q=key.q)
    return out


def key_from_json(obj: Any) -> DefClassKey:
    variant = _field(obj, "variant", str)
    curve = curve_from_json(_field(obj, "curve", dict))
    n, d = _field(obj, "n"), _field(obj, "d")
    if variant == OddDimKey.variant:
        return OddDimKey(curve, n, d)
    if variant == EvenDimRealBaseKey.variant:
        return EvenDimRealBaseKey(curve, n, _field(obj, "t"), _field(obj, "k"), d)
    if variant == EvenDimEmptyBaseKey.variant:
        return EvenDimEmptyBaseKey(curve, n, d, _field(obj, "q"))
    raise SchemaError(f"unknown key variant {variant!r}")


def quintuple_to_json(q: Quintuple) -> Dict[str, Any]:
    return {"t": q.t, "k": q.k, "g": q.g, "mu": q.mu, "eps": q.eps.value}


def quotient_to_json(qc: QuotientClass) -> Dict[str, Any]:
    return {"d2n": qc.d2n, "q": qc.q}


def statuses_to_json(statuses: List[ComponentStatus]) -> List[str]:
    return [s.value for s in statuses]


def load_json(path: str) -> Any:
    """
    Raises:
        SchemaError: if the file is not UTF-8 encoded JSON, or nests too deeply
        OSError: if the file cannot be read
    """
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise SchemaError(f"{path}: {e}")
    except RecursionError:
        raise SchemaError(f"{path}: document nests too deeply")


def dumps(obj: Json) -> str:
    """Deterministic serialization used for everything written to standard output"""
    return json.dumps(obj, sort_keys=True)
