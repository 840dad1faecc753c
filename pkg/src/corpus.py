"""
Example Corpus
==============

Built-in constructors for the standard fans (Λᵏ, projective fans, the fan
over the one-skeleton of the cube, the cross and its relatives, Bergman
fans) and the example corpus whose JSON reports are compared against
golden files.

Author: Otavio Feitosa
Date: 2025
"""

import itertools
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .chow import chow_report
from .divisors import tropical_modification
from .exceptions import TropFanError
from .fan import ConewiseLinear, Fan, k_skeleton, point_fan, product, validate_fan
from .fan_io import rebase
from .homology import CellComplex, homology
from .matroid import Matroid, bergman_fan, parallel_connection
from .properties import run_checks
from .shelling import line_fan, replay_shell_witness
from .utils import dumps, format_duration, parallel_map

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def lambda_power(k: int) -> Fan:
    """Λᵏ: the complete fan of the 2^k orthants in Z^k."""
    fan = point_fan(0)
    for _ in range(k):
        fan = product(fan, line_fan())
    return fan


def projective_fan(r: int) -> Fan:
    """Fan of P^r: rays e_1..e_r, e_0 = -(e_1 + ... + e_r), cones all r-subsets."""
    rays = [tuple(int(i == j) for j in range(r)) for i in range(r)] + [tuple([-1] * r)]
    cones = list(itertools.combinations(range(r + 1), r))
    return Fan(r, rays, cones)


def tropical_line() -> Fan:
    """L: the one-skeleton of the P² fan."""
    return k_skeleton(projective_fan(2), 1)


def p3_skeleton() -> Fan:
    return k_skeleton(projective_fan(3), 2)


def cube_fan(rebased: bool = True) -> Fan:
    """
    Fan over the one-skeleton of the cube [-1, 1]^3

    Args:
        rebased: Work over the lattice generated by the rays (index 4 in Z^3)
    """
    vertices = list(itertools.product((-1, 1), repeat=3))
    edges = [(i, j) for i, j in itertools.combinations(range(8), 2)
             if sum(a != b for a, b in zip(vertices[i], vertices[j])) == 1]
    fan = Fan(3, vertices, edges)
    return rebase(fan)[0] if rebased else fan


def cross() -> Fan:
    """Δ = {xy = 0} in Z² with its four rays."""
    return Fan(2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [[0], [1], [2], [3]])


def min_function(fan: Fan) -> ConewiseLinear:
    """Σ_i min(x_i, 0), conewise linear on every fan refining the orthants."""
    return ConewiseLinear(fan, [sum(min(x, 0) for x in ray) for ray in fan.rays])


def cross_modification() -> Fan:
    """Tropical modification of Λ² along the cross."""
    square = lambda_power(2)
    return tropical_modification(square, min_function(square)).fan


def degenerate_modification() -> Fan:
    """Cross modified by f = x - y on {x + y >= 0}, 0 elsewhere: trivial divisor."""
    delta = cross()
    values = [x - y if x + y >= 0 else 0 for x, y in delta.rays]
    return tropical_modification(delta, ConewiseLinear(delta, values)).fan


def non_unimodular_complete() -> Fan:
    """
    Complete fan on (1,1), (-2,1), (1,-2)

    The rays sum to zero and generate the index-3 sublattice {x ≡ y mod 3}:
    every 2-cone has index 3 and the fan is not saturated at 0, so A¹ and
    H^{1,2} of the compactification carry Z/3.
    """
    return Fan(2, [(1, 1), (-2, 1), (1, -2)], [[0, 1], [1, 2], [0, 2]])


def marked_curve() -> Fan:
    """One-dimensional fan on (1,0), (-1,-3), (0,1), the last ray marked by (0, 3)."""
    raw = {"rank": 2, "rays": [[1, 0], [-1, -3], [0, 3]], "cones": [[0], [1], [2]], "weights": [1, 1, 3]}
    return validate_fan(raw, marked=True)


def two_planes() -> Fan:
    """Δ′: the coordinate planes {x1 = x2 = 0} ∪ {x3 = x4 = 0} in Z^4, each as Λ²."""
    rays = []
    for axis in range(4):
        for sign in (1, -1):
            rays.append(tuple(sign * int(j == axis) for j in range(4)))
    cones = [[a, b] for a in (0, 1) for b in (2, 3)] + [[a, b] for a in (4, 5) for b in (6, 7)]
    return Fan(4, rays, cones)


def u33_skeleton() -> Fan:
    """Three lines through 0 in Z²: the one-skeleton of U_{3,3}."""
    rays = [(1, 0), (0, 1), (-1, -1), (1, 1), (0, -1), (-1, 0)]
    return Fan(2, rays, [[i] for i in range(6)])


def bergman_uniform(r: int, m: int) -> Fan:
    return bergman_fan(Matroid.uniform(r, m))


def parallel_triangles() -> Fan:
    """Bergman fan of the parallel connection of two triangles."""
    triangle = Matroid.uniform(2, 3)
    return bergman_fan(parallel_connection(triangle, 0, triangle, 0))


# ----------------------------------------------------------------------
# shellability witness of the two-skeleton of P³ modified along a line
# ----------------------------------------------------------------------

def _node(op: str, **fields) -> Dict[str, Any]:
    return {"op": op, **fields}


POINT = _node("base", fan="point")
LINE = _node("base", fan="line")

# L = tropmod of Λ along {0}; a four-ray line = tropmod of L along {0}
TROPICAL_LINE_WITNESS = _node("tropmod", of=LINE, values=[0, -1], divisor=POINT)
FOUR_RAY_LINE_WITNESS = _node("tropmod", of=TROPICAL_LINE_WITNESS, values=[0, -1, 0], divisor=POINT)

# P² from Λ² by one blow-up and two blow-downs
PROJECTIVE_PLANE_WITNESS = _node(
    "blowdown", ray=2, star=POINT,
    of=_node("blowdown", ray=1, star=POINT,
             of=_node("blowup", cone=[1, 3], star=POINT,
                      of=_node("product", left=LINE, right=LINE))))

P3_SKELETON_WITNESS = _node("tropmod", of=PROJECTIVE_PLANE_WITNESS, values=[0, 0, -1],
                            divisor=TROPICAL_LINE_WITNESS)


def _subdivided_p3_skeleton_witness() -> Dict[str, Any]:
    node = P3_SKELETON_WITNESS
    # rays e1, e2, e0, e3 -> add e1+e2, e0+e1, e0+e3, then e0+2e3
    for cone in ([0, 1], [0, 2], [2, 3], [3, 6]):
        node = _node("blowup", of=node, cone=cone, star=POINT)
    return node


SHELLABLE_NOT_BERGMAN_WITNESS = _node(
    "tropmod", of=_subdivided_p3_skeleton_witness(),
    values=[0, 0, -2, 0, 1, -1, -1, 0],
    divisor=FOUR_RAY_LINE_WITNESS)


def shellable_not_bergman() -> Fan:
    """Two-skeleton of P³ modified along a four-ray line not spanned by its rays."""
    return replay_shell_witness(SHELLABLE_NOT_BERGMAN_WITNESS).fan


# ----------------------------------------------------------------------
# corpus
# ----------------------------------------------------------------------

REPORTS = ("homology", "chow", "checks")


@dataclass
class Example:
    """
    One corpus entry

    Attributes
    ----------
    name : str
        Key of the golden file
    build : callable
        Constructor of the fan
    reports : tuple of str
        Sections of the report (homology, chow, checks)
    description : str
        One line shown in logs and stored in the report
    """

    name: str
    build: Callable[[], Fan]
    reports: Tuple[str, ...] = REPORTS
    description: str = ""


EXAMPLES: Dict[str, Example] = {e.name: e for e in [
    Example("lambda", lambda: lambda_power(1), description="complete fan of Z"),
    Example("lambda2", lambda: lambda_power(2), description="orthant fan of Z^2"),
    Example("tropical_line", tropical_line, description="one-skeleton of the P^2 fan"),
    Example("projective_plane", lambda: projective_fan(2), description="fan of P^2"),
    Example("p3_skeleton", p3_skeleton, description="two-skeleton of the P^3 fan"),
    Example("cube", cube_fan, description="one-skeleton of the cube over its ray lattice"),
    Example("cube_unrebased", lambda: cube_fan(rebased=False), ("checks",),
            "one-skeleton of the cube in Z^3"),
    Example("cross", cross, description="the cross {xy = 0}"),
    Example("cross_modification", cross_modification, description="Λ^2 modified along the cross"),
    Example("degenerate_modification", degenerate_modification,
            description="cross modified along a trivial divisor"),
    Example("cross_times_line", lambda: product(cross(), line_fan()), description="Δ x Λ"),
    Example("two_planes", two_planes, ("homology", "checks"), "two transverse planes in Z^4"),
    Example("two_planes_times_line", lambda: product(two_planes(), line_fan()), ("chow", "checks"),
            "Δ′ x Λ"),
    Example("non_unimodular_complete", non_unimodular_complete,
            description="complete fan whose rays generate an index-3 sublattice"),
    Example("marked_curve", marked_curve, ("chow",), "rays marked by non-primitive vectors"),
    Example("u33_skeleton", u33_skeleton, ("homology", "checks"), "three lines through 0"),
    Example("bergman_u23", lambda: bergman_uniform(2, 3), description="Bergman fan of U_{2,3}"),
    Example("bergman_u24", lambda: bergman_uniform(2, 4), description="Bergman fan of U_{2,4}"),
    Example("bergman_u34", lambda: bergman_uniform(3, 4), description="Bergman fan of U_{3,4}"),
    Example("parallel_triangles", parallel_triangles, ("chow", "checks"),
            "Bergman fan of two triangles glued in parallel"),
    Example("shellable_not_bergman", shellable_not_bergman, ("chow", "checks"),
            "two-skeleton of P^3 modified along a four-ray line"),
]}


def build_report(example: Example, threads: Optional[int] = None) -> Dict[str, Any]:
    """Deterministic JSON report of one example."""
    fan = example.build()
    logger.debug(f"[DEBUG] Corpus example {example.name}: {fan!r}")
    report: Dict[str, Any] = {"name": example.name, "description": example.description, "fan": fan.to_dict()}
    if "homology" in example.reports:
        report["homology"] = {
            "bm": homology(fan, "bm", threads=threads).to_dict(),
            "c-cohom": homology(fan, "c-cohom", threads=threads).to_dict(),
            "compactified": homology(CellComplex.compactification(fan), "cohom", threads=threads).to_dict(),
        }
    if "chow" in example.reports:
        try:
            report["chow"] = chow_report(fan)
        except TropFanError as e:
            report["chow"] = {"error": e.code}
    if "checks" in example.reports:
        report["checks"] = {v.name: v.holds for v in run_checks(fan, threads=threads)}
    return report


@dataclass
class CorpusResult:
    """Outcome per example: ok, diff, missing or updated"""

    status: Dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s in ("ok", "updated") for s in self.status.values())

    def failures(self) -> List[str]:
        return [n for n, s in self.status.items() if s not in ("ok", "updated")]

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "status": dict(self.status)}


class CorpusRunner:
    """
    Runs the example corpus against golden files

    Parameters
    ----------
    golden_dir : str or Path
        Directory of ``<name>.json`` golden reports
    threads : int, optional
        Worker cap passed to the engine
    progress : bool
        Show tqdm bars
    """

    def __init__(self, golden_dir, threads: Optional[int] = None, progress: bool = False):
        self.golden_dir = Path(golden_dir)
        self.threads = threads
        self.progress = progress
        self.logger = logging.getLogger(__name__)

    def select(self, names: Optional[Sequence[str]] = None) -> List[Example]:
        if not names:
            return list(EXAMPLES.values())
        unknown = [n for n in names if n not in EXAMPLES]
        if unknown:
            raise ValueError(f"unknown examples: {unknown}; available: {sorted(EXAMPLES)}")
        return [EXAMPLES[n] for n in names]

    def golden_path(self, name: str) -> Path:
        return self.golden_dir / f"{name}.json"

    def run(self, names: Optional[Sequence[str]] = None, update: bool = False) -> CorpusResult:
        examples = self.select(names)
        start = time.time()
        self.logger.info(f"[INFO] Running {len(examples)} corpus examples")
        texts = parallel_map(lambda e: dumps(build_report(e, threads=1)), examples,
                             desc="corpus", threads=self.threads, progress=self.progress)
        result = CorpusResult()
        for example, text in zip(examples, texts):
            result.status[example.name] = self._compare(example.name, text, update)
        self.logger.info(f"[INFO] Corpus finished in {format_duration(time.time() - start)}")
        return result

    def _compare(self, name: str, text: str, update: bool) -> str:
        path = self.golden_path(name)
        if update:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            self.logger.info(f"SUCCESS: {name} golden written to {path}")
            return "updated"
        if not path.exists():
            self.logger.error(f"ERROR: {name}: no golden file at {path}")
            return "missing"
        try:
            golden = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            self.logger.error(f"ERROR: {name}: golden file {path} is not JSON: {e}")
            return "diff"
        mismatches = golden_mismatches(golden, json.loads(text))
        if mismatches:
            self.logger.error(f"FAILED: {name} differs from {path} at {', '.join(mismatches[:5])}")
            return "diff"
        self.logger.info(f"SUCCESS: {name}")
        return "ok"


def golden_mismatches(golden: Any, report: Any, path: str = "$") -> List[str]:
    """
    Paths where ``report`` disagrees with ``golden``

    Dicts in the golden file only pin the keys they list; lists and scalars
    must match exactly.
    """
    if isinstance(golden, dict):
        if not isinstance(report, dict):
            return [path]
        out: List[str] = []
        for key, value in golden.items():
            if key not in report:
                out.append(f"{path}.{key}")
            else:
                out.extend(golden_mismatches(value, report[key], f"{path}.{key}"))
        return out
    return [] if golden == report else [path]


def run_corpus(golden_dir, names: Optional[Sequence[str]] = None, update: bool = False,
               threads: Optional[int] = None, progress: bool = False) -> CorpusResult:
    return CorpusRunner(golden_dir, threads, progress).run(names, update)
