"""JSON instance files.

Explicit form::

    {"n": 4, "tuple": [1, 2], "weights": [1, 1, 2, 2],
     "system": {"kind": "generators", "points": ["1100", "0011"]},
     "objective": {"kind": "table", "values": [0, 1, 2, 3, 4, 5, 6]}}

``objective`` may also be ``{"kind": "named", "name": "example_3_1", "m": 1}``.
Named families are ``{"family": "example_3_1" | "lower_bound" | "membership",
"m": 2}``, optionally with ``"witness": k`` to load the augmented system S_y.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .instances import (ExplicitSystem, GeneratorSystem, GroundPoint, Instance, ObjectiveTable,
                        WeightVector, example_3_1_objective, make_example_3_1,
                        make_lower_bound_family, make_membership_family)
from .monoid import PrimitiveTuple

FAMILIES = ("example_3_1", "lower_bound", "membership")


class InstanceFormatError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _require(doc: dict, key: str, kind, where: str = "") -> Any:
    name = f"{where}{key}"
    if key not in doc:
        raise InstanceFormatError(name, "missing")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool) and kind is not bool:
        raise InstanceFormatError(name, f"expected {getattr(kind, '__name__', kind)}")
    return val


def family_instance(family: str, m: int, witness=None) -> Instance:
    if family == "example_3_1":
        if witness is not None:
            raise InstanceFormatError("witness", "not supported for example_3_1")
        return make_example_3_1(m)
    if family == "lower_bound":
        fam = make_lower_bound_family(m)
    elif family == "membership":
        fam = make_membership_family(m)
    else:
        raise InstanceFormatError("family", f"unknown family {family!r}")
    if witness is not None and not 0 <= witness < fam.size:
        raise InstanceFormatError("witness", f"index out of range [0, {fam.size})")
    return fam.instance(witness)


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("<root>", "expected an object")
    if "family" in doc:
        family = _require(doc, "family", str)
        m = _require(doc, "m", int)
        witness = doc.get("witness")
        try:
            return family_instance(family, m, witness)
        except InstanceFormatError:
            raise
        except ValueError as exc:
            raise InstanceFormatError("m", str(exc)) from exc

    n = _require(doc, "n", int)
    try:
        a = PrimitiveTuple(_require(doc, "tuple", list))
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError("tuple", str(exc)) from exc
    weights = _require(doc, "weights", list)
    if len(weights) != n:
        raise InstanceFormatError("weights", f"length {len(weights)} != n={n}")
    try:
        w = WeightVector(weights, a)
    except ValueError as exc:
        raise InstanceFormatError("weights", str(exc)) from exc

    system_doc = _require(doc, "system", dict)
    kind = _require(system_doc, "kind", str, "system.")
    raw = _require(system_doc, "points", list, "system.")
    points = []
    for k, s in enumerate(raw):
        if not isinstance(s, str) or len(s) != n or set(s) - {"0", "1"}:
            raise InstanceFormatError(f"system.points[{k}]", f"expected a 0/1 string of length {n}")
        points.append(GroundPoint.from_string(s))
    if kind == "explicit":
        system = ExplicitSystem(n, points, strict=bool(system_doc.get("strict", False)))
    elif kind == "generators":
        system = GeneratorSystem(n, points)
    else:
        raise InstanceFormatError("system.kind", f"unknown kind {kind!r}")

    obj = _require(doc, "objective", dict)
    okind = _require(obj, "kind", str, "objective.")
    if okind == "table":
        values = _require(obj, "values", list, "objective.")
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
            raise InstanceFormatError("objective.values", "expected numbers")
        table = ObjectiveTable(values)
    elif okind == "named":
        name = _require(obj, "name", str, "objective.")
        if name != "example_3_1":
            raise InstanceFormatError("objective.name", f"unknown objective {name!r}")
        table = example_3_1_objective(_require(obj, "m", int, "objective."))
    else:
        raise InstanceFormatError("objective.kind", f"unknown kind {okind!r}")
    if len(table) <= w.max_value():
        raise InstanceFormatError(
            "objective.values",
            f"objective table too short: {len(table)} entries, need {w.max_value() + 1}")
    return Instance(system, w, table, name=str(doc.get("name", "instance")))


def instance_to_dict(instance: Instance) -> dict:
    system = instance.system
    if isinstance(system, GeneratorSystem):
        kind, pts = "generators", system.generators
    else:
        kind, pts = "explicit", sorted(system.points(), key=lambda x: x.bits)
    return {"name": instance.name, "n": instance.n,
            "tuple": list(instance.weights.tuple.entries),
            "weights": list(instance.weights.weights),
            "system": {"kind": kind, "points": [str(p) for p in pts]},
            "objective": {"kind": "table", "values": list(instance.objective.values)}}


def load_instance(path: Union[str, Path]) -> Instance:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError("<root>", f"invalid JSON: {exc}") from exc
    return instance_from_dict(doc)


def dump_instance(instance: Instance, path: Union[str, Path, None] = None) -> str:
    text = json.dumps(instance_to_dict(instance), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
