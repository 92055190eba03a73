"""Byte-deterministic JSON / CSV forms of graded tables."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Dict

from .f2_homology import GradedDimTable
from .grid_core import MultiGrading
from .predictions import PredictionTable

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def table_to_dict(t: GradedDimTable) -> Dict[str, Any]:
    link = t.link
    doc: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "link": {
            "family": link.get("family", "custom"),
            "n": link.get("n"),
            "multiplier": link.get("multiplier"),
        },
        "grid_size": link.get("grid_size"),
        "coefficients": "GF2",
        "kind": t.kind,
        "entries": [],
    }
    prov = t.provenance if isinstance(t, PredictionTable) else None
    for k, r in t.sorted_items():
        e: Dict[str, Any] = {"alexander2": list(k.alexander2), "maslov": k.maslov, "rank": r}
        if prov is not None:
            e["provenance"] = prov[k]
        doc["entries"].append(e)
    return doc


def dumps_json(obj: Dict[str, Any]) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def table_to_json(t: GradedDimTable) -> str:
    return dumps_json(table_to_dict(t))


def table_from_dict(doc: Dict[str, Any]) -> GradedDimTable:
    try:
        if doc["schema_version"] != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema_version {doc['schema_version']}")
        if doc["coefficients"] != "GF2":
            raise SchemaError(f"unsupported coefficients {doc['coefficients']}")
        entries = {}
        prov = {}
        for e in doc["entries"]:
            a2, m, r = e["alexander2"], e["maslov"], e["rank"]
            if not (isinstance(a2, list) and all(isinstance(v, int) for v in a2)):
                raise SchemaError(f"bad alexander2 {a2!r}")
            if not isinstance(m, int) or not isinstance(r, int) or r <= 0:
                raise SchemaError(f"bad entry {e!r}")
            key = MultiGrading(tuple(a2), m)
            if key in entries:
                raise SchemaError(f"duplicate entry {key}")
            entries[key] = r
            if "provenance" in e:
                prov[key] = e["provenance"]
        link = dict(doc["link"])
        link["grid_size"] = doc.get("grid_size")
        widths = {len(k.alexander2) for k in entries}
        if len(widths) > 1:
            raise SchemaError("entries have different numbers of components")
        if widths:
            link["n_components"] = widths.pop()
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed table document: {exc}") from exc
    if prov:
        return PredictionTable(entries, kind=doc["kind"], link=link, provenance=prov)
    return GradedDimTable(entries, kind=doc["kind"], link=link)


def table_from_json(text: str) -> GradedDimTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(str(exc)) from exc
    return table_from_dict(doc)


def table_to_csv(t: GradedDimTable, n_components: int | None = None) -> str:
    ell = n_components or t.n_components or 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"a{i + 1}" for i in range(ell)] + ["maslov", "rank"])
    for k, r in t.sorted_items():
        w.writerow(list(k.alexander2) + [k.maslov, r])
    return buf.getvalue()


def table_from_csv(text: str, kind: str = "hat") -> GradedDimTable:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][-2:] != ["maslov", "rank"]:
        raise SchemaError("missing header")
    items = []
    for row in rows[1:]:
        vals = [int(v) for v in row]
        items.append((tuple(vals[:-2]), vals[-2], vals[-1]))
    return GradedDimTable.from_items(items, kind=kind)
