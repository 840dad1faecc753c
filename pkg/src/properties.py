"""
Fan Properties
==============

Decision procedures for tropical fans: balancing, normality,
irreducibility, Poincaré duality, smoothness, principality and
div-faithfulness, plus the exactness checks of the Deligne resolution
and of its partial version on the compactification.

Every check returns a :class:`Verdict`; failures carry a witness (a cone,
a bidegree, a sequence position) instead of raising.
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from .chow import StarChowRings, div_faithful_report, principality_report, star_cl_maps
from .coefficients import CoefficientSystem, CompFace, comp_faces
from .divisors import balancing_defect
from .exceptions import FanError, PreconditionError
from .fan import Face, Fan, connected_through_codim_one, facet_components, is_unimodular, star_fan
from .homology import CellComplex, cap_with_fundamental, fundamental_chain, homology
from .lattice import (
    FinAbGroup,
    SublatticeBasis,
    content,
    int_matrix,
    left_kernel,
    matmul,
    stack,
    subquotient,
    vecmat,
    zeros,
)
from .utils import parallel_map

logger = logging.getLogger(__name__)


@dataclass
class Verdict:
    """
    Outcome of a property check

    Attributes
    ----------
    name : str
        Property name
    holds : bool
        Verdict
    witness : any
        Failing cone, bidegree or position (None when the property holds)
    details : dict
        Extra data for reports
    """

    name: str
    holds: bool
    witness: Any = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"property": self.name, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        if self.details:
            out["details"] = self.details
        return out


def _image(M: np.ndarray, ncols: int) -> SublatticeBasis:
    if M.shape[0] == 0 or ncols == 0:
        return SublatticeBasis.zero(ncols)
    return SublatticeBasis.from_generators(ncols, M)


def _kernel(M: np.ndarray, nrows: int) -> SublatticeBasis:
    if nrows == 0:
        return SublatticeBasis.zero(0)
    return left_kernel(M)


# ----------------------------------------------------------------------
# balancing, normality, irreducibility
# ----------------------------------------------------------------------

def is_tropical(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> Verdict:
    """
    Balancing checked twice: cone by cone, and as ∂ν_Σ = 0
    """
    if not fan.is_pure:
        return Verdict("tropical", False, details={"reason": "NOT_PURE"})
    coeff = coefficients or CoefficientSystem(fan)
    defect = balancing_defect(fan, coefficients=coeff)
    d = fan.dim
    chain_ok = True
    if d >= 1:
        cx = CellComplex.of_fan(fan, coeff).chain_complex(d)
        if cx.dim(d) and cx.dim(d - 1):
            chain_ok = not any(vecmat(fundamental_chain(fan, coeff), cx.boundary(d)))
    if chain_ok != (defect is None):
        logger.error(f"ERROR: balancing ({defect is None}) and ν_Σ cycle test ({chain_ok}) disagree")
    return Verdict("tropical", defect is None and chain_ok, defect, {"fundamental_cycle": chain_ok})


def is_normal(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> Verdict:
    """
    At every τ in Σ_{d-1} the only relation among the n_{σ/τ} is the weight vector
    """
    trop = is_tropical(fan, coefficients)
    if not trop:
        return Verdict("normal", False, trop.witness, {"reason": "not tropical"})
    coeff = coefficients or CoefficientSystem(fan)
    for tau in fan.faces_of_dim(fan.dim - 1):
        facets = fan.facets_containing(tau)
        if not facets:
            continue
        rows = []
        for sigma in facets:
            rho = next(r for r in sigma if r not in tau)
            rows.append(coeff.normal_vector(tau, rho))
        kernel = left_kernel(int_matrix(rows, coeff.ambient(tau)))
        weights = [fan.weight(s) for s in facets]
        g = content(weights)
        expected = SublatticeBasis.from_generators(len(facets), [[w // g for w in weights]])
        if kernel != expected:
            return Verdict("normal", False, tau, {"kernel_rank": kernel.rank})
    return Verdict("normal", True)


def is_irreducible(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> Verdict:
    """
    H^BM_{d,d}(Σ) is generated by the fundamental cycle

    Normality is not required: the cross modification is irreducible.
    H^BM_{d,d} is the kernel of ∂ on C_{d,d}, hence free; the check compares
    that kernel with the span of ν_Σ divided by the gcd of its weights.
    """
    trop = is_tropical(fan, coefficients)
    if not trop:
        return Verdict("irreducible", False, trop.witness, {"reason": "not tropical"})
    coeff = coefficients or CoefficientSystem(fan)
    d = fan.dim
    cx = CellComplex.of_fan(fan, coeff).chain_complex(d)
    cycles = left_kernel(cx.boundary(d))
    nu = fundamental_chain(fan, coeff)
    g = content(nu) or 1
    generated = SublatticeBasis.from_generators(cx.dim(d), [[x // g for x in nu]])
    if cycles != generated:
        return Verdict("irreducible", False, (), {"rank": cycles.rank})
    return Verdict("irreducible", True)


def is_locally_irreducible(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> Verdict:
    """Normal, and every star fan is connected through codimension one."""
    normal = is_normal(fan, coefficients)
    if not normal:
        return Verdict("locally_irreducible", False, normal.witness, {"reason": "not normal"})
    for face in fan.faces:
        if len(face) >= fan.dim:
            continue
        if not connected_through_codim_one(star_fan(fan, face).fan):
            return Verdict("locally_irreducible", False, face)
    return Verdict("locally_irreducible", True)


def irreducible_components(fan: Fan) -> List[List[Face]]:
    """
    Facets grouped by connectivity through codimension one

    Raises:
        FanError: NOT_NORMAL (components of non-normal fans need not partition the facets)
    """
    normal = is_normal(fan)
    if not normal:
        raise FanError("NOT_NORMAL", "irreducible components need a normal fan",
                       witness=list(normal.witness) if isinstance(normal.witness, tuple) else None)
    return facet_components(fan)


# ----------------------------------------------------------------------
# Poincaré duality and smoothness
# ----------------------------------------------------------------------

def verifies_pd(fan: Fan, threads: Optional[int] = 1, progress: bool = False,
                coefficients: Optional[CoefficientSystem] = None) -> Verdict:
    """
    PD ⇔ H^BM_{•,q} = 0 for q ≠ d and F^p(0) -> H^BM_{d-p,d} is onto
    """
    trop = is_tropical(fan, coefficients)
    if not trop:
        return Verdict("pd", False, trop.witness, {"reason": "not tropical"})
    coeff = coefficients or CoefficientSystem(fan)
    d = fan.dim
    bm = homology(CellComplex.of_fan(fan, coeff), "bm", threads=threads, progress=progress)
    for (p, q), group in sorted(bm.nonzero().items()):
        if q != d:
            return Verdict("pd", False, [p, q], {"group": group.to_dict()})
    for p in range(d + 1):
        cap = cap_with_fundamental(fan, p, coeff)
        if not (cap.injective and cap.surjective):
            return Verdict("pd", False, [p, 0], {"cap": cap.to_dict()})
    return Verdict("pd", True)


def _compactified_pd(fan: Fan) -> bool:
    """H^{p,q}(Σ̄) ≅ H_{d-p,d-q}(Σ̄) for all p, q."""
    space = CellComplex.compactification(fan)
    cohom = homology(space, "cohom", threads=1)
    hom = homology(space, "homology", threads=1)
    d = fan.dim
    return all(cohom.get(p, q) == hom.get(d - p, d - q) for p in range(d + 1) for q in range(d + 1))


def is_smooth(fan: Fan, threads: Optional[int] = None, progress: bool = False,
              cross_check: bool = False) -> Verdict:
    """
    Every star fan Σ^σ verifies Poincaré duality

    With ``cross_check`` on a unimodular fan, the compactified star fans
    are also tested for PD and a disagreement is logged.
    """
    faces = list(fan.faces)
    verdicts = parallel_map(lambda f: verifies_pd(star_fan(fan, f).fan), faces,
                            desc="smoothness", threads=threads, progress=progress)
    failed = next((f for f, v in zip(faces, verdicts) if not v), None)
    details: Dict[str, Any] = {}
    if cross_check and is_unimodular(fan):
        compact = parallel_map(lambda f: _compactified_pd(star_fan(fan, f).fan), faces,
                               desc="compactified stars", threads=threads, progress=progress)
        details["compactified_pd"] = all(compact)
        if all(compact) != (failed is None):
            logger.warning("WARNING: compactified PD disagrees with the star fan verdict")
    if failed is not None:
        details["star"] = verdicts[faces.index(failed)].to_dict()
    return Verdict("smooth", failed is None, failed, details)


# ----------------------------------------------------------------------
# principality and div-faithfulness
# ----------------------------------------------------------------------

def is_principal(fan: Fan, threads: Optional[int] = None, progress: bool = False, maps=None) -> Verdict:
    report = principality_report(fan, threads, progress, maps)
    witness = report.failures[0] if report.failures else None
    return Verdict("principal", report.holds, witness, {"at_zero": report.at(())})


def is_div_faithful(fan: Fan, threads: Optional[int] = None, progress: bool = False, maps=None) -> Verdict:
    report = div_faithful_report(fan, threads, progress, maps)
    witness = report.failures[0] if report.failures else None
    return Verdict("div_faithful", report.holds, witness, {"at_zero": report.at(())})


# ----------------------------------------------------------------------
# Deligne resolution
# ----------------------------------------------------------------------

@dataclass
class SequenceReport:
    """Exactness of a finite sequence of lattice maps"""

    name: str
    rows: List[Dict[str, Any]]
    composition_zero: bool
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.composition_zero and all(r["exact"] for r in self.rows)

    def verdict(self) -> Verdict:
        bad = next((r["position"] for r in self.rows if not r["exact"]), None)
        return Verdict(self.name, self.holds, bad, {"rows": self.rows, **self.details})

    def to_dict(self) -> Dict[str, Any]:
        return {"sequence": self.name, "holds": self.holds, "composition_zero": self.composition_zero,
                "rows": self.rows, **self.details}


def _exactness(labels: Sequence[str], sizes: Sequence[int], maps: Sequence[np.ndarray]) -> List[Dict[str, Any]]:
    """0 -> T_0 -> ... -> T_m -> 0 with maps[i]: T_i -> T_{i+1}."""
    rows = []
    for i, (label, size) in enumerate(zip(labels, sizes)):
        incoming = _image(maps[i - 1], size) if i > 0 else SublatticeBasis.zero(size)
        outgoing = _kernel(maps[i], size) if i < len(maps) else SublatticeBasis.full(size)
        if size == 0:
            exact = True
        else:
            exact = incoming == outgoing
        rows.append({"position": label, "rank": size, "exact": exact})
    return rows


def _compositions_vanish(maps: Sequence[np.ndarray]) -> bool:
    for a, b in zip(maps, maps[1:]):
        if a.shape[0] and a.shape[1] and b.shape[1]:
            if any(x != 0 for x in matmul(a, b).flat):
                return False
    return True


def deligne_check(fan: Fan, p: int, check_smooth: bool = True, rings: Optional[StarChowRings] = None,
                  coefficients: Optional[CoefficientSystem] = None) -> SequenceReport:
    """
    0 -> F^p(0) -> ⊕_{|σ|=p} A^0(Σ^σ) -> ⊕_{|σ|=p-1} A^1(Σ^σ) -> ... -> A^p(Σ) -> 0

    The maps after the first are signed sums of Gysin maps
    (-1)^{pos_σ(s)} Gys: A^i(Σ^σ) -> A^{i+1}(Σ^{σ-s}).

    Raises:
        PreconditionError: non-unimodular or non-smooth fan, or a star
            fan whose Chow pairing is not perfect
    """
    if not is_unimodular(fan):
        raise PreconditionError("PRECONDITION", "the Deligne sequence needs a unimodular fan")
    if check_smooth:
        smooth = is_smooth(fan)
        if not smooth:
            raise PreconditionError("PRECONDITION", "the Deligne sequence needs a smooth fan",
                                    witness=list(smooth.witness))
    d = fan.dim
    if p < 0 or p > d:
        raise ValueError(f"p must lie in [0, {d}], got {p}")
    coeff = coefficients or CoefficientSystem(fan)
    rings = rings or StarChowRings(fan)
    origin = coeff.coef_lattice(CompFace((), ()), p)

    terms: List[List[Face]] = [fan.faces_of_dim(p - i) for i in range(p + 1)]
    offsets: List[Dict[Face, int]] = []
    sizes = [origin.rank]
    for i, faces in enumerate(terms):
        offs, total = {}, 0
        for face in faces:
            group = rings.ring(face).group(i).group
            if group.torsion:
                raise PreconditionError("PRECONDITION", f"A^{i} of the star of {list(face)} has torsion",
                                        witness=list(face))
            offs[face] = total
            total += group.free_rank
        offsets.append(offs)
        sizes.append(total)

    first = zeros(origin.rank, sizes[1])
    for sigma in terms[0]:
        coords = origin.coordinates(coeff.nu(CompFace((), sigma)))
        for j, c in enumerate(coords):
            first[j, offsets[0][sigma]] = c
    maps = [first]
    pushforward = True
    for i in range(p):
        M = zeros(sizes[i + 1], sizes[i + 2])
        for sigma in terms[i]:
            for pos, s in enumerate(sigma):
                tau = tuple(r for r in sigma if r != s)
                G = rings.gysin_matrix(sigma, tau, i)
                pushforward = pushforward and rings.pushforward_agrees(sigma, tau, i)
                r0, c0 = offsets[i][sigma], offsets[i + 1][tau]
                sign = -1 if pos % 2 else 1
                M[r0:r0 + G.shape[0], c0:c0 + G.shape[1]] += sign * G
        maps.append(M)

    labels = ["F^p(0)"] + [f"A^{i}" for i in range(p + 1)]
    rows = _exactness(labels, sizes, maps)
    report = SequenceReport(f"deligne_p{p}", rows, _compositions_vanish(maps), {"pushforward": pushforward})
    logger.info(f"[INFO] Deligne sequence p={p}: ranks {sizes} -> {'exact' if report.holds else 'NOT exact'}")
    return report


def partial_deligne_check(fan: Fan, k: int, coefficients: Optional[CoefficientSystem] = None) -> SequenceReport:
    """
    ⊕_{Σ_{d-k-1}} H^{k,k}(S_ζ) -> ⊕_{Σ_{d-k}} H^{k,k}(S_σ) -> H_c^{k,d}(Σ) -> 0

    S_σ is the closed stratum of Σ̄ made of the faces whose sedentarity
    contains σ. The first map restricts with sign (-1)^{pos_σ(s)}; the
    second sends a top cochain α of S_σ to (0, η) -> ε α(σ, η) ∘ π with
    ε = (-1)^{Σ_{z in σ} pos_η(z)}.
    """
    if not is_unimodular(fan):
        raise FanError("NOT_UNIMODULAR", "the partial Deligne sequence needs a unimodular fan")
    d = fan.dim
    if k < 0 or k > d:
        raise ValueError(f"k must lie in [0, {d}], got {k}")
    m = d - k
    coeff = coefficients or CoefficientSystem(fan)
    faces = comp_faces(fan)

    def stratum(sigma: Face):
        cells = [f for f in faces if set(sigma).issubset(f.sed)]
        return CellComplex(fan, cells, coeff, name=f"stratum{list(sigma)}").chain_complex(k)

    sources = {z: stratum(z) for z in (fan.faces_of_dim(m - 1) if m >= 1 else [])}
    targets = {s: stratum(s) for s in fan.faces_of_dim(m)}
    t_off, size = {}, 0
    for sigma, cx in targets.items():
        t_off[sigma] = size
        size += cx.dim(k)

    # restriction
    rows = []
    for zeta, cx in sources.items():
        Z = cx.cocycles(k)
        for v in Z.vectors():
            out = [0] * size
            for sigma, tcx in targets.items():
                if not set(zeta).issubset(sigma):
                    continue
                s = next(r for r in sigma if r not in zeta)
                sign = -1 if sigma.index(s) % 2 else 1
                for cell in tcx.cells.get(k, []):
                    src, dst = cx.block(k, cell), tcx.block(k, cell)
                    for a, b in zip(range(src.start, src.stop), range(dst.start, dst.stop)):
                        out[t_off[sigma] + b - dst.start] += sign * v[a]
            rows.append(out)
    first = int_matrix(rows, size)
    boundaries = stack([
        np.hstack([zeros(tcx.coboundaries(k).shape[0], t_off[s]), tcx.coboundaries(k),
                   zeros(tcx.coboundaries(k).shape[0], size - t_off[s] - tcx.dim(k))]).astype(object)
        for s, tcx in targets.items() if tcx.dim(k - 1)], size)

    # Gysin into compact support cohomology of Σ
    ccx = CellComplex.of_fan(fan, coeff).chain_complex(k)
    csize = ccx.dim(d)
    second = zeros(size, csize)
    for sigma, tcx in targets.items():
        for cell in tcx.cells.get(k, []):
            eta = cell.apex
            top = CompFace((), eta)
            if top not in ccx.ranks:
                continue
            eps = -1 if sum(eta.index(z) for z in sigma) % 2 else 1
            P = coeff.coefficient_map(top, cell, k)
            blk, cblk = tcx.block(k, cell), ccx.block(d, top)
            for j in range(blk.stop - blk.start):
                for i in range(cblk.stop - cblk.start):
                    second[t_off[sigma] + j, cblk.start + i] += eps * P[i, j]
    c_boundaries = ccx.coboundaries(d) if ccx.dim(d - 1) else zeros(0, csize)

    image = _image(stack([first, boundaries], size), size)
    joint = stack([second, c_boundaries], csize)
    if size:
        kernel = left_kernel(joint) if csize else SublatticeBasis.full(joint.shape[0])
        kernel = _image(int_matrix([v[:size] for v in kernel.vectors()], size), size)
    else:
        kernel = SublatticeBasis.zero(0)
    onto = _image(joint, csize) == SublatticeBasis.full(csize)
    h_c = ccx.cohomology(d)
    cokernel = subquotient(SublatticeBasis.full(size), stack([first, boundaries], size)) if size \
        else FinAbGroup(0, ())
    rows_out = [
        {"position": "strata", "rank": size, "exact": kernel == image},
        {"position": "H_c", "rank": csize, "exact": onto},
    ]
    details = {"cokernel": cokernel.to_dict(), "compact_support": h_c.to_dict(),
               "cokernel_matches": cokernel == h_c}
    return SequenceReport(f"partial_deligne_k{k}", rows_out, kernel.contains_lattice(image), details)


# ----------------------------------------------------------------------
# battery
# ----------------------------------------------------------------------

def _unimodular(fan: Fan, **_) -> Verdict:
    return Verdict("unimodular", is_unimodular(fan))


CHECKS: Dict[str, Callable[..., Verdict]] = {
    "tropical": lambda fan, **kw: is_tropical(fan),
    "normal": lambda fan, **kw: is_normal(fan),
    "irreducible": lambda fan, **kw: is_irreducible(fan),
    "locally_irreducible": lambda fan, **kw: is_locally_irreducible(fan),
    "pd": lambda fan, **kw: verifies_pd(fan, threads=kw.get("threads"), progress=kw.get("progress", False)),
    "smooth": lambda fan, **kw: is_smooth(fan, threads=kw.get("threads"), progress=kw.get("progress", False)),
    "principal": lambda fan, **kw: is_principal(fan, kw.get("threads"), kw.get("progress", False),
                                                 kw.get("maps")),
    "div_faithful": lambda fan, **kw: is_div_faithful(fan, kw.get("threads"), kw.get("progress", False),
                                                       kw.get("maps")),
    "unimodular": _unimodular,
}


def run_checks(fan: Fan, names: Optional[Sequence[str]] = None, threads: Optional[int] = None,
               progress: bool = False) -> List[Verdict]:
    """
    Run the named checks (all when ``names`` is None), in the given order

    Raises:
        ValueError: unknown check name
    """
    names = list(names) if names else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}; available: {sorted(CHECKS)}")
    maps = None
    if {"principal", "div_faithful"} & set(names):
        try:
            maps = star_cl_maps(fan, threads, progress)
        except FanError as e:
            logger.warning(f"WARNING: cl maps unavailable: {e}")
    out = []
    for name in names:
        if name in ("principal", "div_faithful") and maps is None:
            out.append(Verdict(name, False, details={"reason": "UNBALANCED"}))
            continue
        verdict = CHECKS[name](fan, threads=threads, progress=progress, maps=maps)
        logger.info(f"[INFO] {name}: {'SUCCESS' if verdict else 'FAILED'}")
        out.append(verdict)
    return out
