"""
Catalog of deformation moves on presentations.

Each move wraps one of the rewrite operations of `presentation` and knows
how to enumerate the instances applicable to a given presentation.
"""

from abc import ABC, abstractmethod
from collections import Counter
from itertools import combinations
from typing import Iterable, Iterator, List, Tuple

from src.geometry import presentation as pr
from src.geometry.errors import NotApplicable
from src.geometry.presentation import CONJ_PAIR, Locus, Presentation


class Move(ABC):
    """Abstract base class for moves that preserve the deformation class"""

    name: str = "move"

    @abstractmethod
    def candidates(self, P: Presentation) -> Iterator[Presentation]:
        """
        Yield every presentation reachable from P by one instance of this move.

        Args:
            P: Presentation to rewrite
        Returns:
            Iterator over the rewritten presentations (may be empty)
        """

    def _attempt(self, fn, *args, **kwargs) -> List[Presentation]:
        try:
            return [fn(*args, **kwargs)]
        except NotApplicable:
            return []


class CancelRealPair(Move):
    name = "cancel_real_pair"

    def candidates(self, P):
        for c in sorted(P.real_components):
            yield from self._attempt(pr.move_cancel_real_pair, P, c)


class ConjToReal(Move):
    name = "conj_to_real"

    def candidates(self, P):
        for c in sorted(P.real_components):
            yield from self._attempt(pr.move_conj_to_real, P, c)


class RealToConj(Move):
    name = "real_to_conj"

    def candidates(self, P):
        for c in sorted(P.real_components):
            yield from self._attempt(pr.move_real_to_conj, P, c)


class RemoveFull(Move):
    name = "remove_full"

    def candidates(self, P):
        for locus, combo in pr.full_fiber_candidates(P):
            yield pr.move_remove_full(P, locus, combo)


class InsertFull(Move):
    name = "insert_full"

    def candidates(self, P):
        for locus in [CONJ_PAIR] + [Locus.real(c) for c in sorted(P.real_components)]:
            yield from self._attempt(pr.move_insert_full, P, locus)


class Merge(Move):
    name = "merge"

    def candidates(self, P):
        by_locus = {}
        for rec in P.transforms:
            by_locus.setdefault(rec.locus, Counter())[rec.rank] += 1
        for locus, ranks in by_locus.items():
            pairs = set(combinations(sorted(ranks.elements()), 2))
            for r1, r2 in sorted(pairs):
                yield from self._attempt(pr.move_merge, P, locus, r1, r2)


class Split(Move):
    name = "split"

    def candidates(self, P):
        for rec in sorted(set(P.transforms), key=lambda rec: rec.sort_key):
            for r1 in range(1, rec.rank // 2 + 1):
                yield from self._attempt(pr.move_split, P, rec.locus, rec.rank, r1)


class FoldToRealFiber(Move):
    name = "fold_to_real_fiber"

    def candidates(self, P):
        if P.n % 2 == 1 or P.base.mu == 0:
            return
        conj = Counter(rec.rank for rec in P.transforms if rec.locus == CONJ_PAIR)
        for combo in pr.rank_combinations(conj, P.n // 2):
            yield pr.move_fold_to_real_fiber(P, combo)


class UnfoldFromRealFiber(Move):
    name = "unfold_from_real_fiber"

    def candidates(self, P):
        yield from self._attempt(pr.move_unfold_from_real_fiber, P)


class StructureFlip(Move):
    name = "structure_flip"

    def candidates(self, P):
        yield from self._attempt(pr.move_structure_flip, P)
        if P.base.g % 2 == 0:
            yield from self._attempt(pr.move_structure_flip, P, remove=True)


class PermuteComponents(Move):
    name = "permute_components"

    def candidates(self, P):
        for i, j in combinations(P.base.components, 2):
            yield pr.move_permute_components(P, i, j)


DEFAULT_MOVES: Tuple[Move, ...] = (
    CancelRealPair(),
    ConjToReal(),
    RealToConj(),
    RemoveFull(),
    InsertFull(),
    Merge(),
    Split(),
    FoldToRealFiber(),
    UnfoldFromRealFiber(),
    StructureFlip(),
    PermuteComponents(),
)


def successors(P: Presentation,
               moves: Iterable[Move] = DEFAULT_MOVES) -> Iterator[Tuple[str, Presentation]]:
    """Every applicable move instance on P, as (move name, result)"""
    for move in moves:
        for result in move.candidates(P):
            yield move.name, result
