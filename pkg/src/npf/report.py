"""CSV / JSON / markdown renderings of records and tables."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Sequence

from .npstats import NpRecord

RECORD_COLUMNS = ("p", "Np", "omega", "big_omega", "complete", "factorization")


def record_row(rec: NpRecord) -> dict[str, Any]:
    return {
        "p": rec.p,
        "Np": rec.np,
        "omega": rec.omega,
        "big_omega": rec.big_omega,
        "complete": rec.complete,
        "factorization": rec.factorization.render(),
    }


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


def render_rows(rows: Sequence[dict[str, Any]], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: _jsonable(r[c]) for c in columns} for r in rows], indent=1) + "\n"
    if fmt == "markdown":
        lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
        lines += ["| " + " | ".join(_cell(r[c]) for c in columns) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def render_records(records: Sequence[NpRecord], fmt: str) -> str:
    return render_rows([record_row(r) for r in records], RECORD_COLUMNS, fmt)


def _jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if is_dataclass(v):
        return {k: _jsonable(x) for k, x in asdict(v).items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def to_json(obj: Any, compact: bool = False) -> str:
    if compact:
        return json.dumps(_jsonable(obj), separators=(",", ":"))
    return json.dumps(_jsonable(obj), indent=1)
