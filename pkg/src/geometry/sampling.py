"""Seeded random presentations for property checks."""

import random
from typing import Sequence

from src.geometry.curve_top import curve_types
from src.geometry.presentation import (
    CONJ_PAIR,
    ElemTransformRec,
    Locus,
    Presentation,
    reference_models,
)


def random_presentation(rng: random.Random,
                        dimensions: Sequence[int] = (2, 3, 4, 5, 6),
                        max_genus: int = 3,
                        max_mu: int = 4,
                        max_records: int = 6) -> Presentation:
    """
    Draw a valid presentation.

    Real records have rank 1 in even dimension; every other record draws
    its rank uniformly in 1..n-1.
    """
    n = rng.choice(list(dimensions))
    g = rng.randint(0, max_genus)
    curve = rng.choice([t for t in curve_types(g) if t.mu <= max_mu])
    model = rng.choice(reference_models(curve, n))
    loci = [CONJ_PAIR] + [Locus.real(c) for c in sorted(model.real_components)]
    records = []
    for _ in range(rng.randint(0, max_records)):
        locus = rng.choice(loci)
        rank = 1 if locus.is_real and n % 2 == 0 else rng.randint(1, n - 1)
        records.append(ElemTransformRec(locus, rank))
    return model.with_transforms(records)
