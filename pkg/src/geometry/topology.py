from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from src.geometry.curve_top import CurveTopType, Eps, validate_curve_type
from src.geometry.errors import EvenDimension, NotEmptyBase, OddDimension, UnsupportedRank
from src.geometry.presentation import Presentation, integer_degree


class ComponentStatus(str, Enum):
    """Real part of X over one component of the real base"""
    NONE = "none"
    ORIENTABLE = "orientable"
    NONORIENTABLE = "nonorientable"


@dataclass(frozen=True)
class Quintuple:
    """Topological type (t, k, g, mu, eps) of an even-dimensional real ruled manifold"""
    t: int
    k: int
    g: int
    mu: int
    eps: Eps = Eps.NONDIVIDING

    @property
    def curve(self) -> CurveTopType:
        return CurveTopType(self.g, self.mu, self.eps)


@dataclass(frozen=True)
class QuotientClass:
    """Mod-2n lift of the degree over a base with empty real part; q marks the upper half"""
    d2n: int
    q: int


def real_part_topology(P: Presentation) -> Tuple[List[ComponentStatus], Tuple[int, int]]:
    """
    Status of the real part over each component of the real base, and (t, k).

    Over a plus component the real part is an RP^{n-1} bundle, orientable
    for the reference model; each real transformation of rank 1 over the
    component flips its orientability.

    Raises:
        OddDimension: for odd n, see real_component_count
        UnsupportedRank: if a real record has rank > 1
    """
    if P.n % 2 == 1:
        raise OddDimension("real part topology is defined for even n")
    high = [rec for rec in P.transforms if rec.locus.is_real and rec.rank > 1]
    if high:
        raise UnsupportedRank(
            f"real record of rank {high[0].rank} on component {high[0].locus.component}"
        )
    flips = Counter(rec.locus.component for rec in P.transforms if rec.locus.is_real)
    plus = P.real_components
    statuses = []
    for c in P.base.components:
        if c not in plus:
            statuses.append(ComponentStatus.NONE)
        elif flips[c] % 2 == 0:
            statuses.append(ComponentStatus.ORIENTABLE)
        else:
            statuses.append(ComponentStatus.NONORIENTABLE)
    t = statuses.count(ComponentStatus.ORIENTABLE)
    k = statuses.count(ComponentStatus.NONORIENTABLE)
    return statuses, (t, k)


def real_component_count(P: Presentation) -> int:
    """For odd n the real part lies over every component of the real base, one component each"""
    if P.n % 2 == 0:
        raise EvenDimension("use real_part_topology for even n")
    return P.base.mu


def quintuple_of(P: Presentation) -> Quintuple:
    _, (t, k) = real_part_topology(P)
    return Quintuple(t, k, P.base.g, P.base.mu, P.base.eps)


def allowable(q: Quintuple) -> bool:
    return q.t >= 0 and q.k >= 0 and q.t + q.k <= q.mu and validate_curve_type(q.curve)


def realizable(q: Quintuple, n: int, d: int) -> bool:
    """An allowable quintuple is realized in even dimension n exactly in the degrees d = k mod 2"""
    if n % 2 == 1:
        raise OddDimension(f"realizability of quintuples is stated for even n, got {n}")
    return allowable(q) and (d - q.k) % 2 == 0


def quotient_class(P: Presentation) -> QuotientClass:
    """
    Quotient invariant over a base with empty real part.

    Raises:
        NotEmptyBase: if the real base is nonempty
        OddDimension: if n is odd
    """
    if P.base.mu > 0:
        raise NotEmptyBase(f"base {P.base} has nonempty real part")
    if P.n % 2 == 1:
        raise OddDimension("quotient classes are defined for even n")
    d2n = integer_degree(P) % (2 * P.n)
    return QuotientClass(d2n=d2n, q=1 if d2n >= P.n else 0)
