import logging
from dataclasses import dataclass
from typing import List, Tuple, Union

from src.geometry import presentation as pr
from src.geometry.curve_top import CurveTopType, validate_curve_type
from src.geometry.errors import InvalidCurveType, InvalidKey
from src.geometry.presentation import (
    CONJ_PAIR,
    ElemTransformRec,
    Label,
    Locus,
    Presentation,
    SplitPM,
    degree,
)
from src.geometry.topology import (
    ComponentStatus,
    Quintuple,
    allowable,
    quotient_class,
    real_part_topology,
)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class OddDimKey:
    """Odd n: degree and topological type of the base"""
    curve: CurveTopType
    n: int
    d: int

    variant = "odd_dim"

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (0, 0, self.d, 0)


@dataclass(frozen=True)
class EvenDimRealBaseKey:
    """Even n over a base with real points: degree and quintuple (t, k, g, mu, eps)"""
    curve: CurveTopType
    n: int
    t: int
    k: int
    d: int

    variant = "even_dim_real_base"

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.t, self.k, self.d, 0)


@dataclass(frozen=True)
class EvenDimEmptyBaseKey:
    """Even n over a base without real points: degree and quotient bit"""
    curve: CurveTopType
    n: int
    d: int
    q: int

    variant = "even_dim_empty_base"

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (0, 0, self.d, self.q)


DefClassKey = Union[OddDimKey, EvenDimRealBaseKey, EvenDimEmptyBaseKey]


@dataclass(frozen=True)
class ComplexKey:
    """Complex deformation class: genus of the base, dimension and degree"""
    g: int
    n: int
    d: int


def key_of(P: Presentation) -> DefClassKey:
    """Complete deformation invariant of a presentation"""
    d = degree(P)
    if P.n % 2 == 1:
        return OddDimKey(P.base, P.n, d)
    if P.base.mu > 0:
        _, (t, k) = real_part_topology(P)
        return EvenDimRealBaseKey(P.base, P.n, t, k, d)
    qc = quotient_class(P)
    return EvenDimEmptyBaseKey(P.base, P.n, qc.d2n % P.n, qc.q)


def equivalent(P1: Presentation, P2: Presentation) -> bool:
    return key_of(P1) == key_of(P2)


def complex_key_of(P: Presentation) -> ComplexKey:
    """Forget the real structure: complex ruled manifolds are classified by genus and degree"""
    return ComplexKey(P.base.g, P.n, degree(P))


def complex_equivalent(P1: Presentation, P2: Presentation) -> bool:
    return complex_key_of(P1) == complex_key_of(P2)


def validate_key(key: DefClassKey):
    """
    Raises:
        InvalidKey: if the key violates the invariants of its variant
    """
    if not validate_curve_type(key.curve):
        raise InvalidKey(f"{key.curve} is not the type of a real curve")
    if not 0 <= key.d < key.n:
        raise InvalidKey(f"degree {key.d} is not a residue mod {key.n}")
    if isinstance(key, OddDimKey):
        if key.n % 2 == 0:
            raise InvalidKey(f"odd-dimension key with n={key.n}")
        return
    if key.n % 2 == 1:
        raise InvalidKey(f"even-dimension key with n={key.n}")
    if isinstance(key, EvenDimRealBaseKey):
        if key.curve.mu == 0:
            raise InvalidKey("real-base key over a curve without real points")
        if not allowable(Quintuple(key.t, key.k, key.curve.g, key.curve.mu, key.curve.eps)):
            raise InvalidKey(f"quintuple ({key.t}, {key.k}, {key.curve}) is not allowable")
        if (key.d - key.k) % 2 != 0:
            raise InvalidKey("d != k mod 2")
        return
    if key.curve.mu != 0:
        raise InvalidKey("empty-base key over a curve with real points")
    if key.d % 2 != 0:
        raise InvalidKey("degree must be even over an empty real base")
    if key.q not in (0, 1):
        raise InvalidKey(f"quotient bit must be 0 or 1, got {key.q}")


def _conj_records(e: int) -> List[ElemTransformRec]:
    """e transformations on conjugate points, i.e. e/2 conjugate couples"""
    return [ElemTransformRec(CONJ_PAIR, 1)] * (e // 2)


def realize(key: DefClassKey) -> Presentation:
    """
    The canonical presentation with the given key.

    Raises:
        InvalidKey: if no real ruled manifold has this key
    """
    validate_key(key)
    n, curve = key.n, key.curve
    if isinstance(key, OddDimKey):
        e = key.d if key.d % 2 == 0 else key.d + n
        return pr.reference(curve, n).with_transforms(_conj_records(e))
    if isinstance(key, EvenDimRealBaseKey):
        P = pr.reference(curve, n, plus_set=range(key.t + key.k))
        real = [ElemTransformRec(Locus.real(c), 1) for c in range(key.k)]
        return P.with_transforms(real + _conj_records((key.d - key.k) % n))
    d2n = key.d + key.q * n
    if curve.g % 2 == 1 or d2n < n:
        return pr.reference(curve, n).with_transforms(_conj_records(d2n))
    return pr.reference(curve, n, label=Label.C0_LIKE).with_transforms(_conj_records(d2n - n))


def _split_to_rank_one(P: Presentation, conj_only: bool) -> Presentation:
    while True:
        high = [rec for rec in P.transforms
                if rec.rank > 1 and not (conj_only and rec.locus.is_real)]
        if not high:
            return P
        P = pr.move_split(P, high[0].locus, high[0].rank, 1)


def _reduce_reals_to_parity(P: Presentation) -> Presentation:
    for c in sorted(P.real_components):
        while P.count(Locus.real(c), 1) >= 2:
            P = pr.move_real_to_conj(P, c)
    return P


def _arrange_components(P: Presentation) -> Presentation:
    """Move non-orientable components first, then orientable ones, then the rest"""
    order = {ComponentStatus.NONORIENTABLE: 0, ComponentStatus.ORIENTABLE: 1, ComponentStatus.NONE: 2}
    for i in P.base.components:
        statuses, _ = real_part_topology(P)
        best = min(range(i, P.base.mu), key=lambda c: (order[statuses[c]], c))
        if best != i:
            P = pr.move_permute_components(P, i, best)
    return P


def _merge_conj(P: Presentation, rank: int) -> Presentation:
    """Merge rank-1 conjugate couples into one record of the given rank"""
    acc = 1
    while acc < rank:
        P = pr.move_merge(P, CONJ_PAIR, 1, acc)
        acc += 1
    return P


def normal_form(P: Presentation) -> Presentation:
    """
    Rewrite P into its canonical presentation using key-preserving moves only.

    Real couples are turned into conjugate couples until each real component
    carries at most one transformation; conjugate couples are then removed
    n at a time (or folded onto a real fiber, n/2 at a time, over a real
    base) until they lie in the canonical range.
    """
    key = key_of(P)
    n = P.n
    if n % 2 == 1:
        P = _split_to_rank_one(P, conj_only=False)
        P = _reduce_reals_to_parity(P)
        for c in sorted(P.real_components):
            if P.count(Locus.real(c), 1) == 1:
                P = _reduce_reals_to_parity(pr.move_insert_full(P, Locus.real(c)))
        while P.count(CONJ_PAIR, 1) >= n:
            P = pr.move_remove_full(P, CONJ_PAIR, (1,) * n)
    elif isinstance(P.structure, SplitPM):
        P = _split_to_rank_one(P, conj_only=True)
        P = _reduce_reals_to_parity(P)
        P = _arrange_components(P)
        while 2 * P.count(CONJ_PAIR, 1) >= n:
            P = pr.move_fold_to_real_fiber(P, (1,) * (n // 2))
    else:
        P = _split_to_rank_one(P, conj_only=True)
        if P.base.g % 2 == 1 and P.structure.label is Label.C0_LIKE:
            P = pr.move_structure_flip(P)
        while P.count(CONJ_PAIR, 1) >= n:
            P = pr.move_remove_full(P, CONJ_PAIR, (1,) * n)
        if P.base.g % 2 == 0 and 2 * P.count(CONJ_PAIR, 1) >= n:
            P = pr.move_structure_flip(_merge_conj(P, n // 2), remove=True)
    LOGGER.debug("normal form of %s: %d records", key, P.record_count)
    return P


def is_canonical(P: Presentation) -> bool:
    return normal_form(P) == P


def enumerate_keys(n: int, curve: CurveTopType) -> List[DefClassKey]:
    """
    All deformation classes of real ruled manifolds of dimension n over a base of type `curve`.

    Ordered by (t, k, d, q).
    """
    if not validate_curve_type(curve):
        raise InvalidCurveType(f"{curve} is not the type of a real curve")
    if n < 2:
        raise InvalidKey(f"dimension must be at least 2, got {n}")
    keys: List[DefClassKey]
    if n % 2 == 1:
        keys = [OddDimKey(curve, n, d) for d in range(n)]
    elif curve.mu > 0:
        keys = [
            EvenDimRealBaseKey(curve, n, t, k, d)
            for t in range(curve.mu + 1)
            for k in range(curve.mu + 1 - t)
            for d in range(k % 2, n, 2)
        ]
    else:
        keys = [EvenDimEmptyBaseKey(curve, n, d, q) for d in range(0, n, 2) for q in (0, 1)]
    return sorted(keys, key=lambda key: key.sort_key)
