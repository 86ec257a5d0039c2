# interface/formats.py
"""
Reading and writing the exchange formats: group-ring complexes, coefficient
modules and cochain complexes as JSON, matrices in the `rows cols nnz` text
format, growth series and sweep tables as CSV, and result records as JSON.
JSON is always emitted with sorted keys so equal inputs give equal bytes.
"""

# Standard Imports
import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple
# Local Imports
from ..core.errors import ParseError, TorsionGrowthError
from ..core.exact_linalg import SparseIntMatrix
from ..core.group_complex import (
    CochainComplex, CoeffModule, GroupPresentationData, GroupRingComplex, GroupRingElement,
)


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as err:
        raise ParseError(f"Cannot read input: {err.strerror}", source=str(path))


def loads(text: str, source: Optional[str] = None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, line=err.lineno, column=err.colno, source=source)


def _require(data: Mapping[str, Any], key: str, kind: type, source: Optional[str]) -> Any:
    if not isinstance(data, Mapping) or key not in data:
        raise ParseError(f"Missing field {key!r}", source=source)
    value = data[key]
    if not isinstance(value, kind):
        raise ParseError(f"Field {key!r} must be a {kind.__name__}", source=source)
    return value


def _schema(build, source: Optional[str]):
    """Run a builder, turning shape errors in the JSON into parse errors."""
    try:
        return build()
    except TorsionGrowthError:
        raise
    except (TypeError, ValueError, KeyError, IndexError) as err:
        raise ParseError(f"Malformed structure: {err}", source=source)


# Group-ring complexes

def element_to_json(element: GroupRingElement) -> List[List[Any]]:
    return [[list(word), coeff] for word, coeff in element.terms.items()]


def element_from_json(data: Sequence[Sequence[Any]]) -> GroupRingElement:
    return GroupRingElement({tuple(int(x) for x in word): int(coeff) for word, coeff in data})


def presentation_to_dict(gp: GroupPresentationData) -> Dict[str, Any]:
    return {
        "generators": [[list(row) for row in m] for m in gp.generator_matrices],
        "names": list(gp.generator_names),
        "relators": [list(w) for w in gp.relators],
    }


def presentation_from_dict(data: Mapping[str, Any], source: Optional[str] = None) -> GroupPresentationData:
    generators = _require(data, "generators", list, source)
    return _schema(lambda: GroupPresentationData(
        tuple(tuple(tuple(row) for row in m) for m in generators),
        tuple(data.get("names", ())),
        tuple(tuple(w) for w in data.get("relators", ())),
    ), source)


def complex_to_dict(cx: GroupRingComplex, gp: Optional[GroupPresentationData] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "format": "group-ring-complex",
        "label": cx.label,
        "basis_sizes": list(cx.basis_sizes),
        "boundaries": [[[element_to_json(e) for e in row] for row in cx.boundary(q)]
                       for q in range(1, cx.top_degree + 1)],
    }
    if gp is not None:
        data["group"] = presentation_to_dict(gp)
    return data


def complex_from_dict(data: Mapping[str, Any],
                      source: Optional[str] = None) -> Tuple[GroupRingComplex, Optional[GroupPresentationData]]:
    sizes = _require(data, "basis_sizes", list, source)
    boundaries = _require(data, "boundaries", list, source)
    cx = _schema(lambda: GroupRingComplex(
        tuple(sizes),
        tuple(tuple(tuple(element_from_json(e) for e in row) for row in matrix) for matrix in boundaries),
        str(data.get("label", "")),
    ), source)
    gp = presentation_from_dict(data["group"], source) if "group" in data else None
    return cx, gp


def load_complex(path: str) -> Tuple[GroupRingComplex, Optional[GroupPresentationData]]:
    return complex_from_dict(loads(_read(path), path), path)


# Coefficient modules

def module_to_dict(m: CoeffModule) -> Dict[str, Any]:
    return {
        "format": "coefficient-module",
        "label": m.label,
        "rank": m.rank,
        "action": [[list(row) for row in a] for a in m.action],
        "relators": [list(w) for w in m.relators],
    }


def module_from_dict(data: Mapping[str, Any], source: Optional[str] = None) -> CoeffModule:
    rank = _require(data, "rank", int, source)
    action = _require(data, "action", list, source)
    return _schema(lambda: CoeffModule(
        rank,
        tuple(tuple(tuple(row) for row in a) for a in action),
        tuple(tuple(w) for w in data.get("relators", ())),
        str(data.get("label", "")),
    ), source)


def load_module(path: str) -> CoeffModule:
    return module_from_dict(loads(_read(path), path), path)


# Cochain complexes and matrices

def matrix_to_dict(d: SparseIntMatrix) -> Dict[str, Any]:
    return {"rows": d.rows, "cols": d.cols,
            "entries": [[r, c, d.entries[(r, c)]] for (r, c) in sorted(d.entries)]}


def matrix_from_dict(data: Mapping[str, Any], source: Optional[str] = None) -> SparseIntMatrix:
    rows = _require(data, "rows", int, source)
    cols = _require(data, "cols", int, source)
    entries = _require(data, "entries", list, source)
    return _schema(lambda: SparseIntMatrix(rows, cols, {(int(r), int(c)): int(v) for r, c, v in entries}), source)


def cochain_to_dict(cc: CochainComplex) -> Dict[str, Any]:
    return {"format": "cochain-complex", "dims": list(cc.dims),
            "coboundaries": [matrix_to_dict(d) for d in cc.coboundaries]}


def cochain_from_dict(data: Mapping[str, Any], source: Optional[str] = None) -> CochainComplex:
    dims = _require(data, "dims", list, source)
    coboundaries = _require(data, "coboundaries", list, source)
    matrices = tuple(matrix_from_dict(d, source) for d in coboundaries)
    return _schema(lambda: CochainComplex(tuple(dims), matrices), source)


def load_cochain(path: str) -> CochainComplex:
    return cochain_from_dict(loads(_read(path), path), path)


def load_matrix(path: str) -> SparseIntMatrix:
    return SparseIntMatrix.from_text(_read(path), source=path)


# Tables

def read_series_csv(path: str) -> List[Tuple[int, str]]:
    """Rows `m,value` after a header line; values are kept as decimal strings."""
    text = _read(path)
    reader = csv.reader(io.StringIO(text))
    points = []
    for line_no, row in enumerate(reader, start=1):
        if line_no == 1 or not row:
            continue
        if len(row) < 2:
            raise ParseError("Expected columns m,value", line=line_no, column=1, source=path)
        value = row[1].strip()
        try:
            float(value)
            points.append((int(row[0]), value))
        except ValueError:
            raise ParseError(f"Bad series row {row!r}", line=line_no, column=1, source=path)
    return points


def sweep_csv(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
    return buffer.getvalue()


def write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        print(text, end="")
    else:
        Path(path).write_text(text)
