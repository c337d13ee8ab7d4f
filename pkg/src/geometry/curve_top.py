from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, Optional, Tuple

from src.geometry.errors import InconsistentLabels, MixedCurves


class Eps(str, Enum):
    """Dividing type of a real curve"""
    DIVIDING = "dividing"
    NONDIVIDING = "nondividing"


@dataclass(frozen=True, order=True)
class CurveTopType:
    """Topological type (g, mu, eps) of a real algebraic curve"""
    g: int
    mu: int
    eps: Eps = Eps.NONDIVIDING

    @property
    def components(self) -> range:
        """Indices of the components of the real locus"""
        return range(self.mu)

    def __str__(self) -> str:
        return f"(g={self.g}, mu={self.mu}, {self.eps.value})"


def validate_curve_type(t: CurveTopType) -> bool:
    """
    Acceptance predicate for topological types of real curves.

    Harnack bound 0 <= mu <= g + 1; a dividing curve has mu >= 1 and
    mu = g + 1 (mod 2); a curve with empty real locus is non-dividing.
    """
    if t.g < 0 or t.mu < 0 or t.mu > t.g + 1:
        return False
    if t.eps is Eps.DIVIDING:
        return t.mu >= 1 and (t.mu - t.g - 1) % 2 == 0
    return True


def curve_types(genus: int) -> Iterator[CurveTopType]:
    """All valid topological types of a given genus, ordered by (mu, eps)"""
    for mu in range(genus + 2):
        for eps in (Eps.DIVIDING, Eps.NONDIVIDING):
            t = CurveTopType(genus, mu, eps)
            if validate_curve_type(t):
                yield t


@dataclass(frozen=True)
class PointLabel:
    """
    An abstract point of a real curve.

    A real point carries the index of its real component; a non-real point
    carries the id of its conjugate partner. No coordinates are stored.
    """
    id: str
    curve: CurveTopType
    component: Optional[int] = None
    partner: Optional[str] = None

    def __post_init__(self):
        if (self.component is None) == (self.partner is None):
            raise ValueError(f"Point {self.id} must be either real or paired")
        if self.component is not None and not 0 <= self.component < self.curve.mu:
            raise ValueError(
                f"Point {self.id} lies on component {self.component}, "
                f"curve has {self.curve.mu}"
            )
        if self.partner == self.id:
            raise ValueError(f"Point {self.id} cannot be its own conjugate")

    @classmethod
    def real(cls, id: str, curve: CurveTopType, component: int) -> "PointLabel":
        return cls(id=id, curve=curve, component=component)

    @classmethod
    def conjugate_pair(cls, id: str, curve: CurveTopType) -> Tuple["PointLabel", "PointLabel"]:
        """Create a non-real point `id` and its conjugate `id~`"""
        x = cls(id=id, curve=curve, partner=f"{id}~")
        return x, x.conjugate()

    @property
    def is_real(self) -> bool:
        return self.component is not None

    def conjugate(self) -> "PointLabel":
        if self.is_real:
            return self
        return PointLabel(id=self.partner, curve=self.curve, partner=self.id)


def _normalize(terms: Iterable[Tuple[PointLabel, int]]) -> Tuple[Tuple[PointLabel, int], ...]:
    """
    Add up repeated points, drop zero coefficients and sort by point id.

    Raises:
        MixedCurves: if the points belong to different curve types
        InconsistentLabels: if one id names two different points, or a
            conjugate partner does not point back
    """
    acc: Counter = Counter()
    by_id: Dict[str, PointLabel] = {}
    curve = None
    for label, coeff in terms:
        if curve is None:
            curve = label.curve
        elif label.curve != curve:
            raise MixedCurves(f"{label.id} lies on {label.curve}, expected {curve}")
        if by_id.setdefault(label.id, label) != label:
            raise InconsistentLabels(f"point {label.id} is declared twice with different kinds")
        acc[label] += coeff
    for label in by_id.values():
        partner = by_id.get(label.partner) if not label.is_real else None
        if partner is not None and partner.partner != label.id:
            raise InconsistentLabels(
                f"{label.id} is paired with {partner.id}, which is not paired back"
            )
    return tuple(sorted(
        ((label, c) for label, c in acc.items() if c != 0),
        key=lambda item: item[0].id,
    ))


@dataclass(frozen=True)
class Divisor:
    """
    A formal integer combination of points of one real curve.

    Entries are normalized on construction: sorted by point id with zero
    coefficients dropped, so two divisors are equal exactly when they are
    equal as formal sums.
    """
    entries: Tuple[Tuple[PointLabel, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "entries", _normalize(self.entries))

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[PointLabel, int]]) -> "Divisor":
        return cls(tuple(terms))

    @classmethod
    def of(cls, mapping: Dict[PointLabel, int]) -> "Divisor":
        return cls.from_terms(mapping.items())

    @classmethod
    def zero(cls) -> "Divisor":
        return cls()

    @property
    def curve(self) -> Optional[CurveTopType]:
        return self.entries[0][0].curve if self.entries else None

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.entries + other.entries)

    def __neg__(self) -> "Divisor":
        return Divisor(tuple((label, -c) for label, c in self.entries))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return " + ".join(f"{c}*{label.id}" for label, c in self.entries).replace("+ -", "- ")


def conj_divisor(D: Divisor) -> Divisor:
    """Image of D under the real structure: real points fixed, non-real points swapped"""
    return Divisor.from_terms((label.conjugate(), c) for label, c in D.entries)


def is_anti_invariant(D: Divisor) -> bool:
    """True iff c_B(D) = -D"""
    return conj_divisor(D) == -D


def is_invariant(D: Divisor) -> bool:
    """True iff c_B(D) = D"""
    return conj_divisor(D) == D
