"""
Exhaustive breadth-first search over the move graph of small presentations.

Used as an independent check of the classification: within a bounded
family, two presentations should be connected by moves exactly when they
have the same key.
"""

import logging
from collections import deque
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List

from src.geometry.curve_top import CurveTopType
from src.geometry.moves import DEFAULT_MOVES, Move, successors
from src.geometry.presentation import (
    CONJ_PAIR,
    ElemTransformRec,
    Locus,
    Presentation,
    reference_models,
)

LOGGER = logging.getLogger(__name__)


def family(curve: CurveTopType, n: int, max_records: int,
           rank_one: bool = True) -> Iterator[Presentation]:
    """
    All presentations over the curve with at most `max_records` records.

    Args:
        curve: Topological type of the base
        n: Dimension
        max_records: Bound on the size of the transform multiset
        rank_one: Only use rank-1 records
    """
    ranks = [1] if rank_one else list(range(1, n))
    for model in reference_models(curve, n):
        loci = [CONJ_PAIR] + [Locus.real(c) for c in sorted(model.real_components)]
        kinds = [ElemTransformRec(locus, r) for locus in loci for r in ranks
                 if not (locus.is_real and r > 1 and n % 2 == 0)]
        for size in range(max_records + 1):
            for records in combinations_with_replacement(kinds, size):
                yield model.with_transforms(records)


class MoveGraphOracle:
    """
    Explores the move graph restricted to presentations with few records.

    Components are joined whenever a search runs into a state labelled by
    an earlier search, so ids describe connectivity in either direction.
    """

    def __init__(self, max_records: int = 8, moves=DEFAULT_MOVES):
        self.max_records = max_records
        self.moves: List[Move] = list(moves)
        self.component_of: Dict[Presentation, int] = {}
        self._parent: Dict[int, int] = {}
        self.stats = {
            "states": 0,
            "edges": 0,
            "components": 0,
            "merges": 0,
        }

    def _neighbours(self, P: Presentation) -> Iterator[Presentation]:
        for _, Q in successors(P, self.moves):
            if Q.record_count <= self.max_records:
                self.stats["edges"] += 1
                yield Q

    def _find(self, cid: int) -> int:
        while self._parent[cid] != cid:
            self._parent[cid] = self._parent[self._parent[cid]]
            cid = self._parent[cid]
        return cid

    def _union(self, a: int, b: int) -> int:
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self._parent[rb] = ra
            self.stats["merges"] += 1
        return ra

    def component(self, P: Presentation) -> int:
        return self._find(self.component_of[P])

    def explore(self, start: Presentation) -> int:
        """
        Label every state reachable from `start`.

        Returns:
            int: id of the component containing `start`
        """
        if start in self.component_of:
            return self.component(start)
        cid = self.stats["components"]
        self.stats["components"] += 1
        self._parent[cid] = cid
        self.component_of[start] = cid
        frontier = deque([start])
        while frontier:
            P = frontier.popleft()
            self.stats["states"] += 1
            for Q in self._neighbours(P):
                if Q not in self.component_of:
                    self.component_of[Q] = cid
                    frontier.append(Q)
                else:
                    self._union(cid, self.component_of[Q])
        LOGGER.debug("component %d explored, %d states so far", cid, self.stats["states"])
        return self._find(cid)

    def connected(self, P1: Presentation, P2: Presentation) -> bool:
        self.explore(P1)
        self.explore(P2)
        return self.component(P1) == self.component(P2)


def reachable(P1: Presentation, P2: Presentation, max_records: int = 8) -> bool:
    """True iff P2 is reachable from P1 by moves through presentations of bounded size"""
    oracle = MoveGraphOracle(max_records)
    oracle.explore(P1)
    return P2 in oracle.component_of


def connected_components(curve: CurveTopType, n: int, family_records: int = 4,
                         max_records: int = 8) -> Dict[Presentation, int]:
    """Component id of every rank-1 presentation with at most `family_records` records"""
    oracle = MoveGraphOracle(max_records)
    members = list(family(curve, n, family_records))
    for P in members:
        oracle.explore(P)
    return {P: oracle.component(P) for P in members}
