import sys
from pathlib import Path

# Add the project root directory to Python path
project_root = str(Path(__file__).parent.parent.parent)
sys.path.append(project_root)

from itertools import combinations

import pytest

from src.classifier.classify import enumerate_keys, key_of, realize
from src.classifier.oracle import MoveGraphOracle, connected_components, family, reachable
from src.cli.config import Settings
from src.geometry.curve_top import CurveTopType, Eps, curve_types
from src.geometry.presentation import CONJ_PAIR, ElemTransformRec, Locus, reference

MAX_RECORDS = Settings.from_env().oracle_max_records
SMALL_CURVES = [t for g in range(2) for t in curve_types(g)]


def test_family_size():
    line = CurveTopType(0, 1, Eps.DIVIDING)
    # one model, two kinds of rank-1 record, multisets of size 0..2
    assert len(list(family(line, 3, 2))) == 1 + 2 + 3
    # two plus sets; the empty one only has conjugate records
    assert len(list(family(line, 2, 2))) == 3 + 6


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("curve", SMALL_CURVES)
def test_oracle_agrees_with_keys(n, curve):
    """Two presentations are connected by moves iff they have the same key"""
    components = connected_components(curve, n, family_records=4, max_records=MAX_RECORDS)
    key_by_component = {}
    component_by_key = {}
    for P, cid in components.items():
        key = key_of(P)
        assert key_by_component.setdefault(cid, key) == key, f"{P} joins two classes"
        assert component_by_key.setdefault(key, cid) == cid, f"{key} is split"


@pytest.mark.parametrize("curve", SMALL_CURVES)
def test_enumerated_classes_are_pairwise_disconnected(curve):
    oracle = MoveGraphOracle(MAX_RECORDS)
    realized = [realize(key) for key in enumerate_keys(2, curve)]
    for P in realized:
        oracle.explore(P)
    for P1, P2 in combinations(realized, 2):
        assert not oracle.connected(P1, P2)


def test_reachable():
    line = CurveTopType(0, 1, Eps.DIVIDING)
    conj = ElemTransformRec(CONJ_PAIR, 1)
    real = ElemTransformRec(Locus.real(0), 1)
    P = reference(line, 3).with_transforms([conj] * 4)
    assert reachable(P, reference(line, 3).with_transforms([conj]))
    assert reachable(P, reference(line, 3).with_transforms([real, real] + [conj] * 3))
    assert not reachable(P, reference(line, 3))

    oracle = MoveGraphOracle(MAX_RECORDS)
    oracle.explore(P)
    assert oracle.stats["states"] == len(oracle.component_of)
    assert oracle.stats["edges"] > 0


if __name__ == "__main__":
    for curve in SMALL_CURVES:
        test_oracle_agrees_with_keys(2, curve)
        test_oracle_agrees_with_keys(3, curve)
    print("Oracle OK!")
