from dataclasses import dataclass, field
from enum import Enum
from typing import List

from src.geometry.curve_top import Divisor, is_anti_invariant, is_invariant
from src.geometry.errors import EmptyF


@dataclass(frozen=True)
class LineBundleRep:
    """A line bundle on the base curve, given by a chosen divisor representative"""
    divisor: Divisor = field(default_factory=Divisor.zero)

    @classmethod
    def trivial(cls) -> "LineBundleRep":
        """L_0, represented by the empty divisor"""
        return cls()

    @property
    def degree(self) -> int:
        return self.divisor.degree

    @property
    def is_trivial_rep(self) -> bool:
        return self.divisor.is_zero

    def tensor(self, other: "LineBundleRep") -> "LineBundleRep":
        return LineBundleRep(self.divisor + other.divisor)

    def dual(self) -> "LineBundleRep":
        return LineBundleRep(-self.divisor)

    def twist(self, D: Divisor) -> "LineBundleRep":
        """L (x) O(D)"""
        return LineBundleRep(self.divisor + D)


@dataclass(frozen=True)
class PicSurfaceExpr:
    """
    A class a*[D_{L_0}] + p^*(m) on a ruled surface P(L + L_0), written in
    the canonical generators: the section class of P(L_0) and pull-backs
    of base classes.
    """
    a: int
    m: LineBundleRep = field(default_factory=LineBundleRep.trivial)

    def tensor(self, other: "PicSurfaceExpr") -> "PicSurfaceExpr":
        return PicSurfaceExpr(self.a + other.a, self.m.tensor(other.m))


class RealityConstraint(str, Enum):
    REQUIRES_INVARIANT = "requires_invariant"
    REQUIRES_ANTI_INVARIANT = "requires_anti_invariant"
    NONE = "none"


class SurfaceRole(str, Enum):
    """How a surface class arises in a real ruled manifold"""
    # normal bundle of a real sub-ruled surface: the base twist is c_B-invariant
    NORMAL_BUNDLE = "normal_bundle"
    # section of the reference model P(L + L_0) with c_B^*(L) = L^*
    MODEL_SECTION = "model_section"


def tensor_degree(degE: int, n: int, degL: int) -> int:
    """deg(E (x) L) for E of rank n"""
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    return degE + n * degL


def section_class_of(L: LineBundleRep) -> PicSurfaceExpr:
    """O(D_L) = O(D_{L_0}) (x) p^*(L^*) for the section P(L) of P(L + L_0)"""
    return PicSurfaceExpr(a=1, m=L.dual())


def normal_bundle(L: LineBundleRep, F: List[LineBundleRep]) -> List[PicSurfaceExpr]:
    """
    Normal bundle of P(L + L_0) inside P(L + L_0 + F), one class per summand of F.

    Each summand is p^*(F_j) (x) O(D_L), rewritten as (1, F_j (x) L^*).

    Raises:
        EmptyF: if F is empty
    """
    if not F:
        raise EmptyF("normal bundle needs at least one summand in F")
    section = section_class_of(L)
    return [PicSurfaceExpr(a=0, m=F_j).tensor(section) for F_j in F]


def reality_constraint(expr: PicSurfaceExpr,
                       role: SurfaceRole = SurfaceRole.NORMAL_BUNDLE) -> RealityConstraint:
    """Condition that reality of the surface class puts on the divisor of expr.m"""
    if expr.m.is_trivial_rep:
        return RealityConstraint.NONE
    if role is SurfaceRole.MODEL_SECTION:
        return RealityConstraint.REQUIRES_ANTI_INVARIANT
    return RealityConstraint.REQUIRES_INVARIANT


def satisfies_reality(expr: PicSurfaceExpr,
                      role: SurfaceRole = SurfaceRole.NORMAL_BUNDLE) -> bool:
    constraint = reality_constraint(expr, role)
    if constraint is RealityConstraint.REQUIRES_INVARIANT:
        return is_invariant(expr.m.divisor)
    if constraint is RealityConstraint.REQUIRES_ANTI_INVARIANT:
        return is_anti_invariant(expr.m.divisor)
    return True
