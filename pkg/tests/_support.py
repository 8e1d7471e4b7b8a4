"""Random generators shared by the test modules."""

from __future__ import annotations

import random

from genorbit.fpmodule import FpModule, standard_vector
from genorbit.genvec import GenVector
from genorbit.matrix import (
    AddMultiple,
    DiagPair,
    ElementaryWord,
    ExactMatrix,
    apply_word,
    evaluate_word,
)
from genorbit.rings import Integers, PolyFp, Product, Residue, RingHandle


def sample_element(rng: random.Random, R: RingHandle, bound: int = 50):
    if isinstance(R, Product):
        return tuple(sample_element(rng, f, bound) for f in R.factors)
    if isinstance(R, PolyFp):
        return R.canonical([rng.randint(-bound, bound) for _ in range(rng.randint(0, 3))])
    return R.from_int(rng.randint(-bound, bound))


def random_matrix(rng: random.Random, R: RingHandle, m: int, n: int, bound: int = 50) -> ExactMatrix:
    return ExactMatrix(R, [[sample_element(rng, R, bound) for _ in range(n)] for _ in range(m)], n)


def random_word(rng: random.Random, R: RingHandle, n: int, length: int, diag: bool = False,
                bound: int = 5) -> ElementaryWord:
    letters = []
    units = R.units()
    for _ in range(length if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        if diag and rng.random() < 0.25:
            letters.append(DiagPair(i, j, units[rng.randrange(len(units))]))
        else:
            letters.append(AddMultiple(i, j, sample_element(rng, R, bound)))
    return ElementaryWord(R, n, letters)


def random_special(rng: random.Random, R: RingHandle, n: int) -> ExactMatrix:
    return evaluate_word(random_word(rng, R, n, rng.randint(0, 4 * n * n), diag=True))


def random_generating_vector(rng: random.Random, M: FpModule, n: int, unit_scale: bool = True) -> GenVector:
    """Standard vector moved by a random word, a unit rescaling and relation noise."""
    R = M.owner
    lifts = [list(v) for v in standard_vector(M, n)]
    if unit_scale and lifts:
        units = R.units()
        u = units[rng.randrange(len(units))]
        lifts[0] = [R.mul(u, x) for x in lifts[0]]
    if n and M.k:
        L = ExactMatrix.from_columns(R, [tuple(v) for v in lifts], M.k)
        L = apply_word(L, random_word(rng, R, n, rng.randint(0, 12)), "right")
        lifts = [list(c) for c in L.columns()]
    rel = M.relations.columns()
    for v in lifts:
        for c in rel:
            r = sample_element(rng, R, 3)
            for i in range(M.k):
                v[i] = R.add(v[i], R.mul(r, c[i]))
    return GenVector.certify(M, lifts)


def disguised_module(rng: random.Random, R: RingHandle, chain, extra_cols: int = 1) -> FpModule:
    """The chain module presented through random unimodular changes of basis."""
    from genorbit.matrix import diagonal, mat_mul

    k = len(chain)
    D = diagonal(R, [R(g).payload for g in chain])
    P = random_special(rng, R, k)
    Q = random_special(rng, R, k)
    rel = mat_mul(mat_mul(P, D), Q)
    if extra_cols:
        # redundant relations: combinations of existing columns
        cols = rel.columns()
        for _ in range(extra_cols):
            a, b = sample_element(rng, R, 3), sample_element(rng, R, 3)
            c = rng.randrange(k)
            d = rng.randrange(k)
            cols.append(tuple(R.add(R.mul(a, x), R.mul(b, y)) for x, y in zip(cols[c], cols[d])))
        rel = ExactMatrix.from_columns(R, cols, k)
    return FpModule(R, k, rel)


BACKENDS = [Integers(), Residue(12), PolyFp(5), Product((Residue(4), Residue(9)))]
