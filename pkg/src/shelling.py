"""
Shellability Witnesses
======================

Replay of shellability witnesses: trees whose leaves are the base fans
{0} and Λ and whose internal nodes are products, tropical modifications,
blow-ups and blow-downs. Every step checks its side conditions and the
requested class constraint; a failure raises :class:`WitnessError` with the
JSON path of the node.

Witness node formats::

    {"op": "base", "fan": "point" | "line"}
    {"op": "product", "left": NODE, "right": NODE}
    {"op": "tropmod", "of": NODE, "values": [...], "divisor": NODE | null}
    {"op": "blowup", "of": NODE, "cone": [...], "vector": [...]?, "star": NODE}
    {"op": "blowdown", "of": NODE, "ray": int, "star": NODE}

Any node may carry ``"convex": {"values": [...], "forms": [[...], ...]?}``,
required for the quasi-projective class.

Author: Otavio Feitosa
Date: 2025
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .exceptions import FanError, InputFormatError, TropFanError, WitnessError
from .fan import ConewiseLinear, Face, Fan, blow_down, blow_up, fans_isomorphic, is_unimodular, point_fan, product, star_fan
from .divisors import tropical_modification
from .lattice import rank as matrix_rank, rational_solve

logger = logging.getLogger(__name__)

CLASSES = ("all", "simplicial", "unimodular", "quasi-projective")
OPS = ("base", "product", "tropmod", "blowup", "blowdown")


def line_fan() -> Fan:
    """Λ: the complete fan in Z with rays +1 and -1."""
    return Fan(1, [[1], [-1]], [[0], [1]])


BASE_FANS = {"point": lambda: point_fan(0), "line": line_fan}


# ----------------------------------------------------------------------
# convexity certificates
# ----------------------------------------------------------------------

def check_convexity_certificate(fan: Fan, certificate: Dict[str, Any]) -> Optional[Face]:
    """
    Strict convexity of the conewise linear function with the given ray values

    Per maximal cone σ a form ℓ_σ (given in ``forms`` in the order of the
    maximal cones, or solved when σ is full-dimensional) must agree with f
    on the rays of σ and be strictly below f on every other ray.

    Returns:
        The first failing maximal cone, or None
    """
    values = [Fraction(v) for v in certificate.get("values", [])]
    if len(values) != fan.n_rays:
        raise InputFormatError("MALFORMED_INPUT", f"convexity certificate needs {fan.n_rays} values")
    forms = certificate.get("forms")
    for k, sigma in enumerate(fan.max_cones):
        if forms is not None:
            ell = [Fraction(x) for x in forms[k]]
        elif len(sigma) == fan.rank:
            ell = rational_solve(fan.ray_matrix(sigma).T.copy(), [values[i] for i in sigma])
            if ell is None:
                return sigma
        else:
            raise InputFormatError("MALFORMED_INPUT",
                                   f"cone {list(sigma)} is not full-dimensional; give its linear form")
        for i, ray in enumerate(fan.rays):
            at = sum(a * b for a, b in zip(ell, ray))
            if i in sigma and at != values[i]:
                return sigma
            if i not in sigma and not at < values[i]:
                return sigma
    return None


# ----------------------------------------------------------------------
# replay
# ----------------------------------------------------------------------

@dataclass
class ShellReplay:
    """
    Result of a replay

    Attributes
    ----------
    fan : Fan
        The fan built by the root node
    steps : list of dict
        One record per node, in post-order
    """

    fan: Fan
    steps: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": True, "fan": self.fan.to_dict(), "steps": self.steps}


class WitnessReplayer:
    """
    Executes a witness tree bottom-up

    Parameters
    ----------
    klass : str
        Class constraint, one of all | simplicial | unimodular | quasi-projective
    verify_properties : bool
        Re-check normality, local irreducibility and div-faithfulness after
        every step
    """

    def __init__(self, klass: str = "all", verify_properties: bool = False):
        if klass not in CLASSES:
            raise ValueError(f"unknown class {klass!r}; expected one of {CLASSES}")
        self.klass = klass
        self.verify_properties = verify_properties
        self.logger = logging.getLogger(__name__)
        self.steps: List[Dict[str, Any]] = []

    def replay(self, node: Dict[str, Any]) -> ShellReplay:
        self.steps = []
        fan = self._node(node, "$")
        self.logger.info(f"SUCCESS: witness replayed in {len(self.steps)} steps: {fan!r}")
        return ShellReplay(fan, list(self.steps))

    # ------------------------------------------------------------------

    @staticmethod
    def _field(node: Dict[str, Any], key: str, path: str):
        if not isinstance(node, dict) or key not in node:
            raise InputFormatError("MALFORMED_INPUT", f"missing field {key!r} at {path}", witness=path)
        return node[key]

    def _node(self, node: Dict[str, Any], path: str) -> Fan:
        op = self._field(node, "op", path)
        if op not in OPS:
            raise InputFormatError("MALFORMED_INPUT", f"unknown op {op!r} at {path}", witness=path)
        try:
            fan = getattr(self, f"_{op}")(node, path)
        except (WitnessError, InputFormatError):
            raise
        except TropFanError as e:
            raise WitnessError("STEP_VIOLATION", f"{op} at {path} failed: {e}", witness=path) from e
        self._constraints(fan, node, path)
        self.steps.append({"path": path, "op": op, "rays": fan.n_rays, "cones": len(fan.max_cones),
                           "dim": fan.dim})
        self.logger.debug(f"[DEBUG] {path}: {op} -> {fan!r}")
        return fan

    def _base(self, node, path) -> Fan:
        name = self._field(node, "fan", path)
        if name not in BASE_FANS:
            raise WitnessError("STEP_VIOLATION", f"base fan must be one of {sorted(BASE_FANS)}", witness=path)
        return BASE_FANS[name]()

    def _product(self, node, path) -> Fan:
        left = self._node(self._field(node, "left", path), f"{path}.left")
        right = self._node(self._field(node, "right", path), f"{path}.right")
        return product(left, right)

    def _tropmod(self, node, path) -> Fan:
        source = self._node(self._field(node, "of", path), f"{path}.of")
        values = node.get("values")
        if values is None:
            values = self._field(self._field(node, "function", path), "values", f"{path}.function")
        mod = tropical_modification(source, ConewiseLinear(source, values))
        sub = node.get("divisor")
        if mod.divisor.is_empty:
            if sub is not None:
                raise WitnessError("STEP_VIOLATION", f"div(f) is empty but {path}.divisor is given",
                                   witness=f"{path}.divisor")
            return mod.fan
        if sub is None:
            raise WitnessError("STEP_VIOLATION", f"div(f) needs a witness at {path}.divisor",
                               witness=f"{path}.divisor")
        expected = self._node(sub, f"{path}.divisor")
        if not fans_isomorphic(mod.divisor.as_fan(), expected):
            raise WitnessError("STEP_VIOLATION", "div(f) does not match its witness", witness=f"{path}.divisor")
        return mod.fan

    def _blowup(self, node, path) -> Fan:
        source = self._node(self._field(node, "of", path), f"{path}.of")
        cone = [int(i) for i in self._field(node, "cone", path)]
        self._check_star(star_fan(source, cone).fan, node, path)
        return blow_up(source, cone, node.get("vector"))

    def _blowdown(self, node, path) -> Fan:
        source = self._node(self._field(node, "of", path), f"{path}.of")
        result = blow_down(source, int(self._field(node, "ray", path)))
        center = _blown_down_center(source, result)
        self._check_star(star_fan(result, center).fan, node, path)
        return result

    def _check_star(self, star: Fan, node, path) -> None:
        expected = self._node(self._field(node, "star", path), f"{path}.star")
        if not fans_isomorphic(star, expected):
            raise WitnessError("STEP_VIOLATION", "star fan of the center does not match its witness",
                               witness=f"{path}.star")

    def _constraints(self, fan: Fan, node, path) -> None:
        if self.klass == "simplicial":
            for cone in fan.max_cones:
                if cone and matrix_rank(fan.ray_matrix(cone)) != len(cone):
                    raise WitnessError("STEP_VIOLATION", f"cone {list(cone)} at {path} is not simplicial",
                                       witness=path)
        if self.klass == "unimodular" and not is_unimodular(fan):
            raise WitnessError("STEP_VIOLATION", f"fan at {path} is not unimodular", witness=path)
        if self.klass == "quasi-projective":
            cert = node.get("convex")
            if cert is None:
                raise WitnessError("STEP_VIOLATION", f"no convexity certificate at {path}", witness=path)
            bad = check_convexity_certificate(fan, cert)
            if bad is not None:
                raise WitnessError("STEP_VIOLATION", f"certificate at {path} fails on cone {list(bad)}",
                                   witness=path)
        if self.verify_properties:
            from .chow import div_faithful_report
            from .properties import is_locally_irreducible, is_normal

            for verdict in (is_normal(fan), is_locally_irreducible(fan)):
                if not verdict:
                    raise WitnessError("STEP_VIOLATION", f"{verdict.name} fails at {path}", witness=path)
            if not div_faithful_report(fan, threads=1).holds:
                raise WitnessError("STEP_VIOLATION", f"div_faithful fails at {path}", witness=path)


def _blown_down_center(blown: Fan, result: Fan) -> Face:
    """Smallest cone of the blow-down whose ray set is not a cone before."""
    before = {frozenset(blown.rays[i] for i in f) for f in blown.faces}
    for face in result.faces:
        if frozenset(result.rays[i] for i in face) not in before:
            return face
    raise FanError("NOT_A_BLOWUP", "blow-down did not create a new cone")


def replay_shell_witness(witness: Dict[str, Any], klass: str = "all",
                         verify_properties: bool = False) -> ShellReplay:
    """
    Replay a shellability witness

    Raises:
        WitnessError: STEP_VIOLATION with the JSON path of the failing node
        InputFormatError: malformed node
    """
    logger.info(f"[INFO] Replaying shellability witness (class={klass})")
    return WitnessReplayer(klass, verify_properties).replay(witness)
