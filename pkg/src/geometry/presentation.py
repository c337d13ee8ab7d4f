import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import chain, combinations
from typing import FrozenSet, Iterable, List, Optional, Tuple, Union

from src.geometry.curve_top import CurveTopType, Divisor, PointLabel, validate_curve_type
from src.geometry.errors import (
    InvalidCurveType,
    InvalidPresentation,
    NotApplicable,
    RankOutOfRange,
    RealLocusOutsideRealPart,
)
from src.geometry.pic_symbolic import LineBundleRep

LOGGER = logging.getLogger(__name__)


class Label(str, Enum):
    """The two product real structures over a base with empty real part"""
    CONJ_LIKE = "conj_like"   # c_B x conj
    C0_LIKE = "c0_like"       # c_B x c_0


@dataclass(frozen=True)
class ProductConjOdd:
    """Odd n: c_B x conj, the only real structure fibered over c_B"""


@dataclass(frozen=True)
class SplitPM:
    """Even n, nonempty real base: (P((L + L_0)^{n/2}), c^+) with f_D >= 0 on plus_set"""
    plus_set: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "plus_set", frozenset(self.plus_set))


@dataclass(frozen=True)
class EmptyBase:
    """Even n, empty real base"""
    label: Label = Label.CONJ_LIKE


ReferenceStructure = Union[ProductConjOdd, SplitPM, EmptyBase]


@dataclass(frozen=True)
class Locus:
    """Where an elementary transformation is done: a real component, or a conjugate pair of fibers"""
    component: Optional[int] = None

    @classmethod
    def real(cls, component: int) -> "Locus":
        return cls(component)

    @property
    def is_real(self) -> bool:
        return self.component is not None

    def __str__(self) -> str:
        return f"real:{self.component}" if self.is_real else "conjpair"


CONJ_PAIR = Locus()


@dataclass(frozen=True)
class ElemTransformRec:
    """An elementary transformation along a rank-r subspace (dimension r - 1) of a fiber"""
    locus: Locus
    rank: int = 1

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        if self.locus.is_real:
            return (0, self.locus.component, self.rank)
        return (1, 0, self.rank)

    @property
    def degree_contribution(self) -> int:
        """A conjugate-pair record is a couple of transformations, at x and c_B(x)"""
        return self.rank if self.locus.is_real else 2 * self.rank


def _canonical(records: Iterable[ElemTransformRec]) -> Tuple[ElemTransformRec, ...]:
    return tuple(sorted(records, key=lambda rec: rec.sort_key))


@dataclass(frozen=True)
class Presentation:
    """
    A real ruled manifold given as a reference model plus a multiset of
    elementary transformations.

    The transform multiset is stored as a canonically sorted tuple, so
    equality of presentations is equality of multisets.
    """
    base: CurveTopType
    n: int
    structure: ReferenceStructure
    transforms: Tuple[ElemTransformRec, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "transforms", _canonical(self.transforms))
        if not validate_curve_type(self.base):
            raise InvalidCurveType(f"{self.base} is not the type of a real curve")
        if self.n < 2:
            raise InvalidPresentation(f"dimension must be at least 2, got {self.n}")
        self._check_structure()
        for rec in self.transforms:
            _check_record(self, rec)

    def _check_structure(self):
        s = self.structure
        if self.n % 2 == 1:
            ok = isinstance(s, ProductConjOdd)
        elif self.base.mu > 0:
            ok = isinstance(s, SplitPM) and all(0 <= c < self.base.mu for c in s.plus_set)
        else:
            ok = isinstance(s, EmptyBase)
        if not ok:
            raise InvalidPresentation(
                f"structure {s} does not fit n={self.n} over base {self.base}"
            )

    @property
    def real_components(self) -> FrozenSet[int]:
        """Components of the real base over which X has real points"""
        if isinstance(self.structure, ProductConjOdd):
            return frozenset(self.base.components)
        if isinstance(self.structure, SplitPM):
            return self.structure.plus_set
        return frozenset()

    @property
    def record_count(self) -> int:
        return len(self.transforms)

    def counts(self) -> Counter:
        return Counter(self.transforms)

    def count(self, locus: Locus, rank: int = 1) -> int:
        return sum(1 for rec in self.transforms if rec.locus == locus and rec.rank == rank)

    def with_transforms(self, records: Iterable[ElemTransformRec]) -> "Presentation":
        return replace(self, transforms=tuple(records))


def _check_record(P: Presentation, rec: ElemTransformRec):
    if not 1 <= rec.rank <= P.n - 1:
        raise RankOutOfRange(f"rank {rec.rank} outside 1..{P.n - 1}")
    if rec.locus.is_real and rec.locus.component not in P.real_components:
        raise RealLocusOutsideRealPart(
            f"no real point of X over component {rec.locus.component}"
        )


def reference(base: CurveTopType, n: int,
              plus_set: Iterable[int] = (),
              label: Label = Label.CONJ_LIKE) -> Presentation:
    """The reference model for (base, n) with no transformations"""
    if n % 2 == 1:
        structure: ReferenceStructure = ProductConjOdd()
    elif base.mu > 0:
        structure = SplitPM(frozenset(plus_set))
    else:
        structure = EmptyBase(label)
    return Presentation(base=base, n=n, structure=structure)


def reference_models(base: CurveTopType, n: int) -> List[Presentation]:
    """Every reference model over the base: one per plus set, or one per label"""
    if n % 2 == 1:
        return [reference(base, n)]
    if base.mu > 0:
        subsets = chain.from_iterable(
            combinations(base.components, size) for size in range(base.mu + 1)
        )
        return [reference(base, n, plus_set=s) for s in subsets]
    return [reference(base, n, label=label) for label in Label]


def empty_base_offset(P: Presentation) -> int:
    """Integer-lift offset of the reference model: n for c_B x c_0 over an even-genus base"""
    if isinstance(P.structure, EmptyBase) and P.structure.label is Label.C0_LIKE:
        return P.n * ((P.base.g + 1) % 2)
    return 0


def integer_degree(P: Presentation) -> int:
    return empty_base_offset(P) + sum(rec.degree_contribution for rec in P.transforms)


def degree(P: Presentation) -> int:
    """deg(E) mod n; reference models have degree 0"""
    return integer_degree(P) % P.n


def apply_transform(P: Presentation, rec: ElemTransformRec) -> Presentation:
    """
    Perform one more elementary transformation

    Raises:
        RankOutOfRange: if the rank is not in 1..n-1
        RealLocusOutsideRealPart: if there is no real point of X over the component
    """
    _check_record(P, rec)
    return P.with_transforms(P.transforms + (rec,))


def _remove(P: Presentation, records: Iterable[ElemTransformRec]) -> Presentation:
    remaining = P.counts()
    for rec in records:
        if remaining[rec] <= 0:
            raise NotApplicable(f"no record {rec.locus} rank {rec.rank} to remove")
        remaining[rec] -= 1
    return P.with_transforms(remaining.elements())


def _add(P: Presentation, records: Iterable[ElemTransformRec]) -> Presentation:
    out = P
    for rec in records:
        out = apply_transform(out, rec)
    return out


def merge_in_fiber(r1: int, r2: int, n: int) -> Optional[int]:
    """
    Rank of the record obtained by merging two transformations at one fiber.

    Returns None when the merged rank is n: such a record is a full fiber
    and is removed altogether.
    """
    merged = r1 + r2
    if merged > n:
        raise RankOutOfRange(f"merged rank {merged} exceeds {n}")
    return None if merged == n else merged


def split_rank(r: int, r1: int) -> Tuple[int, int]:
    if not 1 <= r1 < r:
        raise RankOutOfRange(f"cannot split rank {r} into {r1} + {r - r1}")
    return r1, r - r1


def move_merge(P: Presentation, locus: Locus, r1: int, r2: int) -> Presentation:
    """Merge two records at the same locus kind into one of rank r1 + r2"""
    if locus.is_real and P.n % 2 == 0:
        raise NotApplicable("real records of rank > 1 are not used in even dimension")
    if r1 + r2 > P.n:
        raise NotApplicable(f"ranks {r1} + {r2} exceed {P.n}")
    out = _remove(P, [ElemTransformRec(locus, r1), ElemTransformRec(locus, r2)])
    merged = merge_in_fiber(r1, r2, P.n)
    if merged is None:
        LOGGER.debug("merge %s %d+%d fills the fiber, record dropped", locus, r1, r2)
        return out
    return _add(out, [ElemTransformRec(locus, merged)])


def move_split(P: Presentation, locus: Locus, r: int, r1: int) -> Presentation:
    if locus.is_real and P.n % 2 == 0:
        raise NotApplicable("real records of rank > 1 are not used in even dimension")
    if not 1 <= r1 < r:
        raise NotApplicable(f"cannot split rank {r} into {r1} + {r - r1}")
    out = _remove(P, [ElemTransformRec(locus, r)])
    a, b = split_rank(r, r1)
    return _add(out, [ElemTransformRec(locus, a), ElemTransformRec(locus, b)])


def move_cancel_real_pair(P: Presentation, component: int) -> Presentation:
    """
    Remove a couple of real points lying on one real component.

    For n = 2 the two transformations cancel outright; in higher dimension
    the couple is deformed to a double real point and then to a conjugate
    couple, which keeps the degree mod n.
    """
    real = ElemTransformRec(Locus.real(component), 1)
    if P.count(real.locus, 1) < 2:
        raise NotApplicable(f"fewer than two real rank-1 records on component {component}")
    out = _remove(P, [real, real])
    if P.n > 2:
        out = _add(out, [ElemTransformRec(CONJ_PAIR, 1)])
    return out


def move_conj_to_real(P: Presentation, component: int) -> Presentation:
    """Deform a conjugate couple into a double real point, then into two real points"""
    if P.count(CONJ_PAIR, 1) < 1:
        raise NotApplicable("no conjugate-pair rank-1 record")
    if component not in P.real_components:
        raise NotApplicable(f"no real part of X over component {component}")
    out = _remove(P, [ElemTransformRec(CONJ_PAIR, 1)])
    real = ElemTransformRec(Locus.real(component), 1)
    return _add(out, [real, real])


def move_real_to_conj(P: Presentation, component: int) -> Presentation:
    real = ElemTransformRec(Locus.real(component), 1)
    if P.count(real.locus, 1) < 2:
        raise NotApplicable(f"fewer than two real rank-1 records on component {component}")
    return _add(_remove(P, [real, real]), [ElemTransformRec(CONJ_PAIR, 1)])


def rank_combinations(ranks: Counter, target: int) -> List[Tuple[int, ...]]:
    """Distinct sub-multisets of `ranks` (rank -> multiplicity) summing to target, as sorted tuples"""
    values = sorted(r for r in ranks if ranks[r] > 0)
    found: List[Tuple[int, ...]] = []

    def walk(i: int, remaining: int, chosen: List[int]):
        if remaining == 0:
            found.append(tuple(chosen))
            return
        if i == len(values):
            return
        r = values[i]
        for k in range(min(ranks[r], remaining // r), -1, -1):
            walk(i + 1, remaining - k * r, chosen + [r] * k)

    walk(0, target, [])
    return found


def _loci(P: Presentation) -> List[Locus]:
    return sorted({rec.locus for rec in P.transforms},
                  key=lambda loc: (loc.component is None, loc.component or 0))


def full_fiber_candidates(P: Presentation) -> List[Tuple[Locus, Tuple[int, ...]]]:
    """Groups of records at one locus kind whose ranks fill a whole fiber"""
    out = []
    for locus in _loci(P):
        ranks = Counter(rec.rank for rec in P.transforms if rec.locus == locus)
        for combo in rank_combinations(ranks, P.n):
            out.append((locus, combo))
    return out


def move_remove_full(P: Presentation, locus: Optional[Locus] = None,
                     ranks: Optional[Tuple[int, ...]] = None) -> Presentation:
    """
    Remove records at one locus kind whose ranks sum to n.

    Along a conjugate pair this is tensoring by O(x + c_B(x)) (integer lift
    drops by 2n); along a real component, by O(x) (drops by n).
    """
    for cand_locus, combo in full_fiber_candidates(P):
        if locus is not None and cand_locus != locus:
            continue
        if ranks is not None and tuple(sorted(ranks)) != combo:
            continue
        LOGGER.debug("removing full fiber at %s, ranks %s", cand_locus, combo)
        return _remove(P, [ElemTransformRec(cand_locus, r) for r in combo])
    raise NotApplicable(f"no records of total rank {P.n} at {locus or 'any locus'}")


def move_insert_full(P: Presentation, locus: Locus) -> Presentation:
    """Inverse of move_remove_full: n rank-1 transformations over one point (or conjugate pair)"""
    if locus.is_real and locus.component not in P.real_components:
        raise NotApplicable(f"no real part of X over component {locus.component}")
    return _add(P, [ElemTransformRec(locus, 1)] * P.n)


def move_fold_to_real_fiber(P: Presentation,
                            ranks: Optional[Tuple[int, ...]] = None) -> Presentation:
    """
    Bring conjugate couples of total rank n/2 to a single real fiber and remove them.

    Needs even n and a base with nonempty real part; the integer lift drops by n.
    """
    if P.n % 2 == 1 or P.base.mu == 0:
        raise NotApplicable("folding to a real fiber needs even n and a real base")
    conj = Counter(rec.rank for rec in P.transforms if rec.locus == CONJ_PAIR)
    for combo in rank_combinations(conj, P.n // 2):
        if ranks is None or tuple(sorted(ranks)) == combo:
            return _remove(P, [ElemTransformRec(CONJ_PAIR, r) for r in combo])
    raise NotApplicable(f"no conjugate records of total rank {P.n // 2}")


def move_unfold_from_real_fiber(P: Presentation) -> Presentation:
    if P.n % 2 == 1 or P.base.mu == 0:
        raise NotApplicable("folding to a real fiber needs even n and a real base")
    return _add(P, [ElemTransformRec(CONJ_PAIR, P.n // 2)])


def move_structure_flip(P: Presentation, remove: bool = False) -> Presentation:
    """
    Pass between c_B x conj and c_B x c_0 over a base with empty real part.

    Over an odd-genus base the two structures are deformation equivalent
    and only the label changes. Over an even-genus base the passage costs a
    couple of transformations along two conjugate subspaces of dimension
    n/2 - 1: one conjugate-pair record of rank n/2 is added, or removed when
    `remove` is set.
    """
    if P.base.mu > 0 or P.n % 2 == 1:
        raise NotApplicable("structure flip needs even n and an empty real base")
    label = Label.C0_LIKE if P.structure.label is Label.CONJ_LIKE else Label.CONJ_LIKE
    out = replace(P, structure=EmptyBase(label))
    if P.base.g % 2 == 1:
        return out
    half = ElemTransformRec(CONJ_PAIR, P.n // 2)
    if remove:
        if P.count(CONJ_PAIR, P.n // 2) == 0:
            raise NotApplicable(f"no conjugate-pair record of rank {P.n // 2}")
        return _remove(out, [half])
    return _add(out, [half])


def move_permute_components(P: Presentation, i: int, j: int) -> Presentation:
    """Exchange the real components i and j of the base"""
    mu = P.base.mu
    if not (0 <= i < mu and 0 <= j < mu) or i == j:
        raise NotApplicable(f"cannot exchange components {i} and {j} of {mu}")
    swap = {i: j, j: i}
    structure = P.structure
    if isinstance(structure, SplitPM):
        structure = SplitPM(frozenset(swap.get(c, c) for c in structure.plus_set))
    records = [
        ElemTransformRec(Locus.real(swap.get(rec.locus.component, rec.locus.component)), rec.rank)
        if rec.locus.is_real else rec
        for rec in P.transforms
    ]
    return replace(P, structure=structure, transforms=tuple(records))


def split_model(P: Presentation) -> List[LineBundleRep]:
    """
    The split bundle L_1 + ... + L_n realizing the presentation.

    Reference summands are L_0 for product models and (L + L_0)^{n/2} for
    SplitPM, with L represented by the anti-invariant divisor l - l~. Each
    record of rank r then twists r summands, taken round-robin, by O(x)
    for a real point or O(x + c_B(x)) for a conjugate couple.
    """
    curve = P.base
    if isinstance(P.structure, SplitPM):
        l, l_bar = PointLabel.conjugate_pair("l", curve)
        L = LineBundleRep(Divisor.of({l: 1, l_bar: -1}))
        summands = [L, LineBundleRep.trivial()] * (P.n // 2)
    else:
        summands = [LineBundleRep.trivial()] * P.n

    cursor = 0
    for i, rec in enumerate(P.transforms):
        if rec.locus.is_real:
            twist = Divisor.of({PointLabel.real(f"p{i}", curve, rec.locus.component): 1})
        else:
            x, x_bar = PointLabel.conjugate_pair(f"x{i}", curve)
            twist = Divisor.of({x: 1, x_bar: 1})
        for _ in range(rec.rank):
            summands[cursor] = summands[cursor].twist(twist)
            cursor = (cursor + 1) % P.n
    return summands
