import sys
from pathlib import Path

# Add the project root directory to Python path
project_root = str(Path(__file__).parent.parent.parent)
sys.path.append(project_root)

import pytest

from src.geometry.curve_top import CurveTopType, Divisor, Eps, PointLabel
from src.geometry.errors import EmptyF
from src.geometry.pic_symbolic import (
    LineBundleRep,
    PicSurfaceExpr,
    RealityConstraint,
    SurfaceRole,
    normal_bundle,
    reality_constraint,
    satisfies_reality,
    section_class_of,
    tensor_degree,
)

CURVE = CurveTopType(2, 3, Eps.DIVIDING)
X, X_BAR = PointLabel.conjugate_pair("x", CURVE)
Y, Y_BAR = PointLabel.conjugate_pair("y", CURVE)
P = PointLabel.real("p", CURVE, 0)
Q = PointLabel.real("q", CURVE, 2)

L0 = LineBundleRep.trivial()


def bundle(mapping) -> LineBundleRep:
    return LineBundleRep(Divisor.of(mapping))


LINE_BUNDLES = [
    L0,
    bundle({X: 1, X_BAR: -1}),
    bundle({P: 2}),
    bundle({Y: 3, Q: -1}),
    bundle({X: 1, X_BAR: 1, P: -2}),
]

SUMMAND_LISTS = [
    [L0],
    [bundle({P: 1})],
    [bundle({X: 1, X_BAR: 1}), L0],
    [bundle({Y: -1, Y_BAR: 1}), bundle({Q: 1}), bundle({X: 2})],
]


def test_tensor_degree():
    assert tensor_degree(2, 3, 1) == 5
    assert tensor_degree(7, 4, 0) == 7
    assert tensor_degree(1, 4, -1) == -3
    with pytest.raises(ValueError):
        tensor_degree(0, 1, 1)


def test_section_class_of():
    assert section_class_of(L0) == PicSurfaceExpr(1, L0)
    assert section_class_of(bundle({X: 1, X_BAR: -1})) == PicSurfaceExpr(1, bundle({X: -1, X_BAR: 1}))
    assert section_class_of(bundle({P: 2})) == PicSurfaceExpr(1, bundle({P: -2}))


@pytest.mark.parametrize("L", LINE_BUNDLES)
@pytest.mark.parametrize("F", SUMMAND_LISTS)
def test_normal_bundle_table(L, F):
    """N = p^*(F) (x) O(D_L) with O(D_L) = O(D_{L_0}) (x) p^*(L^*), checked term by term"""
    N = normal_bundle(L, F)
    assert len(N) == len(F)
    for F_j, expr in zip(F, N):
        assert expr.a == 1
        expected = Divisor.from_terms(
            list(F_j.divisor.entries) + [(label, -c) for label, c in L.divisor.entries]
        )
        assert expr.m.divisor == expected
        assert expr.m.degree == F_j.degree - L.degree


@pytest.mark.parametrize("L", LINE_BUNDLES)
def test_normal_bundle_trivializes_on_L(L):
    """F = [L] gives (1, L_0): L (x) L^* has the empty divisor as representative"""
    (expr,) = normal_bundle(L, [L])
    assert expr == PicSurfaceExpr(1, L0)
    assert expr.m.is_trivial_rep
    assert (L.divisor + (-L.divisor)).is_zero


def test_normal_bundle_rejects_empty_F():
    with pytest.raises(EmptyF):
        normal_bundle(L0, [])


def test_reality_constraint():
    invariant = normal_bundle(L0, [bundle({X: 1, X_BAR: 1})])[0]
    assert reality_constraint(invariant) is RealityConstraint.REQUIRES_INVARIANT
    assert satisfies_reality(invariant)

    anti = normal_bundle(L0, [bundle({X: 1, X_BAR: -1})])[0]
    assert not satisfies_reality(anti)
    assert reality_constraint(anti, SurfaceRole.MODEL_SECTION) is RealityConstraint.REQUIRES_ANTI_INVARIANT
    assert satisfies_reality(anti, SurfaceRole.MODEL_SECTION)

    trivial = normal_bundle(L0, [L0])[0]
    assert reality_constraint(trivial) is RealityConstraint.NONE
    assert satisfies_reality(trivial)


if __name__ == "__main__":
    test_tensor_degree()
    test_section_class_of()
    test_reality_constraint()
