"""
Fan I/O
=======

JSON reading and writing for fans, matroids, conewise linear functions
and shellability witnesses, plus the ``rebase`` helper that rewrites a fan
over the lattice generated by its rays.

Malformed input raises :class:`InputFormatError` with the line/column of a
JSON syntax error or the path of the offending field.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import InputFormatError
from .fan import ConewiseLinear, Fan, validate_fan
from .lattice import SublatticeBasis, int_matrix
from .matroid import Matroid

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def loads(text: str, source: str = "<input>") -> Any:
    """
    Parse JSON text

    Raises:
        InputFormatError: With line and column of the syntax error
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError("MALFORMED_INPUT",
                               f"{source}: line {e.lineno}, column {e.colno}: {e.msg}",
                               witness={"line": e.lineno, "column": e.colno}) from e


def load_json(path: PathLike) -> Any:
    """Read JSON from a file, or from stdin when ``path`` is ``-``."""
    if str(path) == "-":
        return loads(sys.stdin.read(), "<stdin>")
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Input file not found: {path}")
    logger.debug(f"[DEBUG] Reading {path}")
    return loads(path.read_text(encoding="utf-8"), str(path))


def _require(data: Any, key: str, path: str, kind: type = list) -> Any:
    if not isinstance(data, dict):
        raise InputFormatError("MALFORMED_INPUT", f"{path}: expected an object", witness=path)
    if key not in data:
        raise InputFormatError("MALFORMED_INPUT", f"{path}.{key}: missing field", witness=f"{path}.{key}")
    value = data[key]
    if not isinstance(value, kind):
        raise InputFormatError("MALFORMED_INPUT",
                               f"{path}.{key}: expected {kind.__name__}, got {type(value).__name__}",
                               witness=f"{path}.{key}")
    return value


def _int_rows(rows: Sequence, path: str) -> None:
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InputFormatError("MALFORMED_INPUT", f"{path}[{i}]: expected a list of integers",
                                   witness=f"{path}[{i}]")


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------

def parse_fan(data: Any, validate: bool = True, marked: bool = False, path: str = "$") -> Fan:
    """
    Build a fan from its JSON object

    Expected keys: ``rank``, ``rays``, ``cones``; optional ``weights`` and
    ``marks``.

    Args:
        data: Parsed JSON
        validate: Run the exact cone-overlap test
        marked: Accept non-primitive ray vectors as marks
        path: Field path used in diagnostics

    Raises:
        InputFormatError: Missing or mistyped fields
        FanError: Fan axioms violated
    """
    rank = _require(data, "rank", path, int)
    rays = _require(data, "rays", path)
    cones = _require(data, "cones", path)
    _int_rows(rays, f"{path}.rays")
    _int_rows(cones, f"{path}.cones")
    if data.get("weights") is not None:
        _int_rows([data["weights"]], f"{path}.weights")
    if data.get("marks") is not None:
        _int_rows(data["marks"], f"{path}.marks")
    if rank < 0:
        raise InputFormatError("MALFORMED_INPUT", f"{path}.rank: must be non-negative", witness=f"{path}.rank")
    return validate_fan(data, check_overlap=validate, marked=marked)


def parse_matroid(data: Any, path: str = "$") -> Matroid:
    """
    Build a matroid from one of the forms::

        {"ground": m, "bases": [[...], ...]}
        {"ground": m, "circuits": [[...], ...]}
        {"uniform": [r, m]}
        {"graphic": {"vertices": v, "edges": [[a, b], ...]}}
    """
    if not isinstance(data, dict):
        raise InputFormatError("MALFORMED_INPUT", f"{path}: expected an object", witness=path)
    if "uniform" in data:
        r, m = _require(data, "uniform", path)
        return Matroid.uniform(int(r), int(m))
    if "graphic" in data:
        graph = _require(data, "graphic", path, dict)
        edges = _require(graph, "edges", f"{path}.graphic")
        _int_rows(edges, f"{path}.graphic.edges")
        return Matroid.graphic(_require(graph, "vertices", f"{path}.graphic", int), [tuple(e) for e in edges])
    ground = _require(data, "ground", path, int)
    if "bases" in data:
        bases = _require(data, "bases", path)
        _int_rows(bases, f"{path}.bases")
        return Matroid.from_bases(ground, bases)
    if "circuits" in data:
        circuits = _require(data, "circuits", path)
        _int_rows(circuits, f"{path}.circuits")
        return Matroid.from_circuits(ground, circuits)
    raise InputFormatError("MALFORMED_INPUT", f"{path}: need one of bases, circuits, uniform, graphic",
                           witness=path)


def parse_function(data: Any, fan: Fan, path: str = "$") -> ConewiseLinear:
    """Conewise linear function from ``{"values": [...]}`` or a bare list of ray values."""
    values = data if isinstance(data, list) else _require(data, "values", path)
    if len(values) != fan.n_rays or not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
        raise InputFormatError("MALFORMED_INPUT",
                               f"{path}: expected {fan.n_rays} integer ray values", witness=path)
    return ConewiseLinear(fan, values)


def parse_witness(data: Any, path: str = "$") -> Dict[str, Any]:
    """Top-level witness check; nested nodes are checked during replay."""
    if isinstance(data, dict) and "witness" in data:
        data = data["witness"]
    _require(data, "op", path, str)
    return data


def read_fan(path: PathLike, validate: bool = True, marked: bool = False) -> Fan:
    data = load_json(path)
    if isinstance(data, dict) and "fan" in data and "rank" not in data:
        return parse_fan(data["fan"], validate, marked, "$.fan")
    return parse_fan(data, validate, marked)


# ----------------------------------------------------------------------
# rebase
# ----------------------------------------------------------------------

def rebase(fan: Fan) -> Tuple[Fan, np.ndarray]:
    """
    Rewrite a fan over the lattice generated by its rays

    The new ambient lattice is Z^r with r the rank of the ray span; its
    basis is the HNF basis of the span, returned as an r x n matrix B so
    that old = new·B.

    Returns:
        Tuple (rebased fan, basis matrix B)
    """
    span = SublatticeBasis.from_generators(fan.rank, int_matrix(fan.rays, fan.rank))
    if span.rank < fan.rank:
        logger.warning(f"WARNING: rays span a rank-{span.rank} sublattice of Z^{fan.rank}")
    index = span.index_in_saturation() if span.rank else 1
    if index != 1:
        logger.info(f"[INFO] Ray lattice has index {index} in its saturation")
    rays = [span.coordinates(r) for r in fan.rays]
    marks = None if fan.marks == fan.rays else [span.coordinates(m) for m in fan.marks]
    rebased = Fan(span.rank, rays, fan.max_cones, fan.weights, marks)
    return rebased, span.basis


def rebase_report(fan: Fan) -> Dict[str, Any]:
    """Rebased fan JSON with the change of basis under ``"basis"``."""
    rebased, basis = rebase(fan)
    data = rebased.to_dict()
    data["basis"] = [[int(x) for x in row] for row in basis.tolist()]
    return data


def write_fan(fan: Fan, path: Optional[PathLike] = None) -> None:
    from .utils import dump_json

    dump_json(fan.to_dict(), path)
