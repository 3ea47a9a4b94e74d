"""Reference values in the binomial basis.

Each cell maps an irreducible (a partition) to ``{k: a(k)}`` meaning the
multiplicity sum_k a(k) * C(r + 1, k).
"""
from __future__ import annotations

from math import comb
from typing import Dict, Mapping

Cell = Dict[tuple, Dict[int, int]]

# genus one, all maps, degree 1
FULL_D1: Dict[int, Cell] = {
    0: {(): {2: 4}},
    1: {(1,): {2: 12}},
    2: {(2,): {2: 32}, (1, 1): {2: 12}},
    3: {(3,): {2: 86}, (2, 1): {2: 56}, (1, 1, 1): {2: 4}},
}

# genus one, all maps, degree 2
FULL_D2: Dict[int, Cell] = {
    0: {(): {3: 24, 2: 17}},
    1: {(1,): {3: 108, 2: 58}},
    2: {(2,): {3: 339, 2: 171, 1: 6}, (1, 1): {3: 168, 2: 65, 1: 6}},
    3: {
        (3,): {3: 1176, 2: 498, 1: 6},
        (2, 1): {3: 996, 2: 396, 1: 12},
        (1, 1, 1): {3: 144, 2: 40, 1: 6},
    },
}

# genus one, all maps, degree 3
FULL_D3: Dict[int, Cell] = {
    0: {(): {4: 216, 3: 247, 2: 55}},
    1: {(1,): {4: 1300, 3: 1365, 2: 260}},
    2: {(2,): {4: 5380, 3: 5319, 2: 945}, (1, 1): {4: 3156, 3: 2991, 2: 503}},
}

# fixed points of the no-rational-tail locus with no markings, by degree
POINT_COUNTS: Dict[int, Dict[int, int]] = {
    2: {2: 1},
    3: {3: 1, 2: 1},
    4: {4: 3, 3: 6, 2: 3},
    5: {5: 12, 4: 24, 3: 15, 2: 3},
    6: {6: 60, 5: 150, 4: 136, 3: 53, 2: 8},
    7: {7: 360, 6: 1080, 5: 1200, 4: 600, 3: 129, 2: 9},
    8: {8: 2520, 7: 8820, 6: 11970, 5: 7905, 4: 2607, 3: 393, 2: 21},
}

# no rational tails, degree 2
NRT_D2: Dict[int, Cell] = {
    1: {(1,): {2: 2}},
    2: {(2,): {2: 3}, (1, 1): {2: 1}},
    3: {(3,): {2: 4}, (2, 1): {2: 2}},
    4: {(4,): {2: 7}, (3, 1): {2: 3}, (2, 2): {2: 1}},
}

# no rational tails, degree 3
NRT_D3: Dict[int, Cell] = {
    1: {(1,): {3: 3, 2: 2}},
    2: {(2,): {3: 6, 2: 3}, (1, 1): {3: 3, 2: 1}},
    3: {(3,): {3: 13, 2: 6}, (2, 1): {3: 8, 2: 2}, (1, 1, 1): {3: 1}},
    4: {(4,): {3: 27, 2: 11}, (3, 1): {3: 24, 2: 7}, (2, 2): {3: 3, 2: -1}, (2, 1, 1): {3: 3}},
}

# degree 2 split: the no-rational-tail column and the contracted-core column
SPLIT_D2_NRT: Dict[int, Cell] = {0: {}, **NRT_D2}
SPLIT_D2_RT: Dict[int, Cell] = {
    0: {(): {3: 24, 2: 17}},
    1: {(1,): {3: 108, 2: 56}},
    2: {(2,): {3: 339, 2: 168, 1: 6}, (1, 1): {3: 168, 2: 64, 1: 6}},
    3: {
        (3,): {3: 1176, 2: 494, 1: 6},
        (2, 1): {3: 996, 2: 394, 1: 12},
        (1, 1, 1): {3: 144, 2: 40, 1: 6},
    },
}

FULL = {1: FULL_D1, 2: FULL_D2, 3: FULL_D3}
NRT = {2: NRT_D2, 3: NRT_D3}


def evaluate(coeffs: Mapping[int, int], r: int) -> int:
    return sum(a * comb(r + 1, k) for k, a in coeffs.items())


def cell_at(cell: Cell, r: int) -> Dict[tuple, int]:
    """Schur multiplicities of a cell at a given r, zeros dropped."""
    out = {shape: evaluate(coeffs, r) for shape, coeffs in cell.items()}
    return {shape: v for shape, v in out.items() if v}
