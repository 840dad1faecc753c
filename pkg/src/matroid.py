"""
Matroids
========

Matroids on ground sets {0, ..., m-1} stored by their bases, with rank,
closure and flats, minors, parallel connection and Bergman fans.
"""

import logging
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .exceptions import MatroidError
from .fan import Fan

logger = logging.getLogger(__name__)

Basis = FrozenSet[int]


class Matroid:
    """
    Matroid given by its family of bases

    Attributes
    ----------
    ground : int
        Size m of the ground set {0, ..., m-1}
    bases : frozenset of frozensets
        The bases, all of the same size
    """

    def __init__(self, ground: int, bases: Iterable[Iterable[int]]):
        self.ground = int(ground)
        self.bases: FrozenSet[Basis] = frozenset(frozenset(int(i) for i in b) for b in bases)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_bases(cls, ground: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        """
        Validated matroid from bases

        Raises:
            MatroidError: EMPTY_FAMILY, INVALID_ELEMENT or EXCHANGE_VIOLATION
        """
        family = {frozenset(int(i) for i in b) for b in bases}
        if not family:
            raise MatroidError("EMPTY_FAMILY", "a matroid needs at least one basis")
        for b in family:
            if any(i < 0 or i >= ground for i in b):
                raise MatroidError("INVALID_ELEMENT", f"basis {sorted(b)} leaves the ground set", witness=sorted(b))
        sizes = {len(b) for b in family}
        if len(sizes) > 1:
            a, b = sorted(family, key=len)[0], sorted(family, key=len)[-1]
            raise MatroidError("EXCHANGE_VIOLATION", "bases have different sizes",
                               witness=[sorted(a), sorted(b)])
        for a in family:
            for b in family:
                for x in a - b:
                    if not any((a - {x}) | {y} in family for y in b - a):
                        raise MatroidError("EXCHANGE_VIOLATION",
                                           f"no exchange for {x} between {sorted(a)} and {sorted(b)}",
                                           witness=[sorted(a), sorted(b)])
        return cls(ground, family)

    @classmethod
    def from_circuits(cls, ground: int, circuits: Iterable[Iterable[int]]) -> "Matroid":
        """Bases are the maximal sets containing no circuit."""
        circuits = [frozenset(int(i) for i in c) for c in circuits]
        for c in circuits:
            if not c or any(i < 0 or i >= ground for i in c):
                raise MatroidError("INVALID_ELEMENT", f"bad circuit {sorted(c)}", witness=sorted(c))

        def independent(s: Set[int]) -> bool:
            return not any(c <= s for c in circuits)

        greedy: Set[int] = set()
        for e in range(ground):
            if independent(greedy | {e}):
                greedy.add(e)
        r = len(greedy)
        bases = [b for b in combinations(range(ground), r) if independent(set(b))]
        return cls.from_bases(ground, bases)

    @classmethod
    def uniform(cls, r: int, m: int) -> "Matroid":
        if not 0 <= r <= m:
            raise MatroidError("INVALID_ELEMENT", f"uniform({r}, {m}) needs 0 <= r <= m")
        return cls(m, combinations(range(m), r))

    @classmethod
    def graphic(cls, n_vertices: int, edges: Sequence[Tuple[int, int]]) -> "Matroid":
        """Cycle matroid of a graph: bases are the spanning forests."""
        m = len(edges)

        def is_forest(subset) -> Tuple[bool, int]:
            parent = list(range(n_vertices))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for e in subset:
                u, v = find(edges[e][0]), find(edges[e][1])
                if u == v:
                    return False, 0
                parent[u] = v
            return True, len(subset)

        best = 0
        for k in range(m, -1, -1):
            if any(is_forest(s)[0] for s in combinations(range(m), k)):
                best = k
                break
        return cls(m, [s for s in combinations(range(m), best) if is_forest(s)[0]])

    # ------------------------------------------------------------------
    # rank, closure, flats
    # ------------------------------------------------------------------

    @cached_property
    def rank_total(self) -> int:
        return len(next(iter(self.bases)))

    def rank(self, subset: Iterable[int]) -> int:
        s = frozenset(subset)
        return max(len(s & b) for b in self.bases)

    def closure(self, subset: Iterable[int]) -> FrozenSet[int]:
        s = frozenset(subset)
        r = self.rank(s)
        return frozenset(e for e in range(self.ground) if e in s or self.rank(s | {e}) == r)

    @cached_property
    def loops(self) -> FrozenSet[int]:
        return frozenset(e for e in range(self.ground) if not any(e in b for b in self.bases))

    @cached_property
    def coloops(self) -> FrozenSet[int]:
        return frozenset(e for e in range(self.ground) if all(e in b for b in self.bases))

    @cached_property
    def is_simple(self) -> bool:
        if self.loops:
            return False
        return all(self.rank(pair) == 2 for pair in combinations(range(self.ground), 2))

    def circuits(self) -> List[FrozenSet[int]]:
        """Minimal dependent sets."""
        out = []
        for k in range(1, self.ground + 1):
            for s in combinations(range(self.ground), k):
                fs = frozenset(s)
                if self.rank(fs) == k - 1 and all(self.rank(fs - {e}) == k - 1 for e in fs):
                    out.append(fs)
        return out

    @cached_property
    def _flats(self) -> Dict[int, List[Tuple[int, ...]]]:
        found: Set[FrozenSet[int]] = set()
        for k in range(self.ground + 1):
            for s in combinations(range(self.ground), k):
                found.add(self.closure(s))
        graded: Dict[int, List[Tuple[int, ...]]] = {}
        for f in found:
            graded.setdefault(self.rank(f), []).append(tuple(sorted(f)))
        return {r: sorted(v) for r, v in sorted(graded.items())}

    def flats(self) -> Dict[int, List[Tuple[int, ...]]]:
        """All flats, graded by rank."""
        return dict(self._flats)

    def proper_flats(self) -> List[Tuple[int, ...]]:
        """Flats other than cl(∅) and E, sorted by (rank, elements)."""
        top = self.rank_total
        return [f for r, fs in self._flats.items() if 0 < r < top for f in fs]

    # ------------------------------------------------------------------
    # minors and gluing
    # ------------------------------------------------------------------

    def _check(self, e: int) -> None:
        if not 0 <= e < self.ground:
            raise MatroidError("INVALID_ELEMENT", f"{e} is not in the ground set", witness=e)

    @staticmethod
    def _relabel(bases, removed: int):
        return [[i - (i > removed) for i in b] for b in bases]

    def deletion(self, e: int) -> "Matroid":
        self._check(e)
        if e in self.coloops:
            bases = [b - {e} for b in self.bases]
        else:
            bases = [b for b in self.bases if e not in b]
        return Matroid(self.ground - 1, self._relabel(bases, e))

    def contraction(self, e: int) -> "Matroid":
        self._check(e)
        if e in self.loops:
            raise MatroidError("LOOP_CONTRACTION", f"{e} is a loop", witness=e)
        bases = [b - {e} for b in self.bases if e in b]
        return Matroid(self.ground - 1, self._relabel(bases, e))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.ground == other.ground and self.bases == other.bases

    def __hash__(self) -> int:
        return hash((self.ground, self.bases))

    def to_dict(self) -> Dict[str, object]:
        return {"ground": self.ground, "bases": sorted(sorted(b) for b in self.bases)}

    def __repr__(self) -> str:
        return f"Matroid(ground={self.ground}, rank={self.rank_total}, bases={len(self.bases)})"


def parallel_connection(m1: Matroid, e1: int, m2: Matroid, e2: int) -> Matroid:
    """
    Parallel connection of M and M' along the basepoints e and e'

    The ground set is that of M followed by the elements of M' other than
    e', which is identified with e. Bases are B ∪ B' when both contain the
    basepoint, B ∪ B' minus e when only B does, and B ∪ B' minus e' when
    only B' does.
    """
    m1._check(e1)
    m2._check(e2)
    relabel: Dict[int, int] = {}
    nxt = m1.ground
    for x in range(m2.ground):
        if x == e2:
            relabel[x] = e1
        else:
            relabel[x] = nxt
            nxt += 1
    bases = set()
    for b in m1.bases:
        for b2 in m2.bases:
            image = frozenset(relabel[x] for x in b2 if x != e2)
            if e1 in b and e2 in b2:
                bases.add(b | image)
            elif e1 in b and e2 not in b2:
                bases.add((b - {e1}) | image)
            elif e1 not in b and e2 in b2:
                bases.add(b | image)
    # keep only sets of the correct size
    r = m1.rank_total + m2.rank_total - 1
    return Matroid(nxt, [b for b in bases if len(b) == r])


def bergman_fan(matroid: Matroid) -> Fan:
    """
    Bergman fan of a simple matroid in Z^E / Z·e_E ≅ Z^{m-1}

    Rays are the proper flats F with e_F = Σ_{i in F} e_i, the last
    coordinate eliminated through e_{m-1} = -(e_0 + ... + e_{m-2}).
    Maximal cones are the maximal chains of proper flats.

    Raises:
        MatroidError: NON_SIMPLE
    """
    if not matroid.is_simple:
        raise MatroidError("NON_SIMPLE", "Bergman fans are built for simple matroids")
    m = matroid.ground
    flats = matroid.proper_flats()
    index = {f: i for i, f in enumerate(flats)}
    last = m - 1
    rays = []
    for f in flats:
        s = set(f)
        shift = 1 if last in s else 0
        rays.append([(1 if i in s else 0) - shift for i in range(last)])
    top = matroid.rank_total

    chains: List[List[int]] = []

    def extend(chain: List[Tuple[int, ...]]) -> None:
        current = set(chain[-1]) if chain else set()
        nxt = [f for f in flats if set(f) > current
               and matroid.rank(f) == (matroid.rank(current) + 1)]
        if not nxt:
            chains.append([index[f] for f in chain])
            return
        for f in nxt:
            extend(chain + [f])

    if top <= 1:
        chains = [[]]
    else:
        extend([])
    logger.debug(f"[DEBUG] Bergman fan: {len(rays)} rays, {len(chains)} maximal flags")
    return Fan(last, rays, chains)
