import random

import pytest

from _support import random_matrix, random_special, random_word
from genorbit.matrix import (
    AddMultiple,
    DiagPair,
    ElementaryWord,
    ExactMatrix,
    MatrixError,
    apply_word,
    as_matrix,
    component_word,
    determinant,
    determinant_payload,
    evaluate_word,
    factor_into_word,
    identity,
    letter_matrix,
    mat_mul,
    matrix_inverse,
    split_matrix,
    transpose,
    zip_words,
)
from genorbit.rings import Integers, PolyFp, Product, Residue

Z = Integers()


def cofactor_det(R, rows):
    """Laplace expansion along the first row (independent of elimination)."""
    n = len(rows)
    if n == 0:
        return R.one()
    acc = R.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = R.mul(rows[0][j], cofactor_det(R, minor))
        acc = R.add(acc, term) if j % 2 == 0 else R.sub(acc, term)
    return acc


def test_identity_and_products():
    rng = random.Random(0)
    A = random_matrix(rng, Z, 3, 3)
    assert mat_mul(identity(Z, 3), A) == A
    B, C = random_matrix(rng, Z, 3, 3), random_matrix(rng, Z, 3, 3)
    assert mat_mul(mat_mul(A, B), C) == mat_mul(A, mat_mul(B, C))
    E = ExactMatrix(Z, [[], [], []], 0)
    P = mat_mul(E, ExactMatrix(Z, [], 4))
    assert P.shape == (3, 4) and all(x == 0 for r in P.rows for x in r)
    assert mat_mul(ExactMatrix(Z, [], 3), A).shape == (0, 3)
    with pytest.raises(MatrixError):
        mat_mul(A, random_matrix(rng, Z, 2, 2))
    with pytest.raises(MatrixError):
        mat_mul(A, identity(Residue(4), 3))


def test_transpose():
    A = as_matrix(Z, [[1, 2, 3], [4, 5, 6]])
    assert transpose(A).rows == ((1, 4), (2, 5), (3, 6))
    assert transpose(transpose(A)) == A


def test_determinant_examples():
    assert determinant(as_matrix(Z, [[2, 4], [6, 8]])).payload == -8
    for R in (Z, Residue(12), PolyFp(3)):
        for n in (2, 3):
            for i in range(n):
                for j in range(n):
                    if i != j:
                        assert determinant_payload(letter_matrix(R, n, AddMultiple(i, j, R.from_int(7)))) == R.one()
    with pytest.raises(MatrixError):
        determinant(as_matrix(Z, [[1, 2, 3]]))


@pytest.mark.parametrize("R", [Z, Residue(12), Residue(8), PolyFp(5), Product((Residue(4), Residue(9)))])
def test_determinant_matches_cofactor_and_is_multiplicative(R):
    rng = random.Random(1)
    for _ in range(25):
        n = rng.randint(1, 4)
        A, B = random_matrix(rng, R, n, n, 9), random_matrix(rng, R, n, n, 9)
        assert determinant_payload(A) == cofactor_det(R, [list(r) for r in A.rows])
        assert determinant_payload(mat_mul(A, B)) == R.mul(determinant_payload(A), determinant_payload(B))


def test_apply_word_examples():
    w = ElementaryWord(Z, 2, ())
    assert evaluate_word(w) == identity(Z, 2)
    up = evaluate_word(ElementaryWord(Z, 2, [AddMultiple(0, 1, 5)]))
    assert up.rows == ((1, 5), (0, 1))
    d = evaluate_word(ElementaryWord(Residue(8), 2, [DiagPair(0, 1, 3)]))
    assert d.rows == ((3, 0), (0, 3))


@pytest.mark.parametrize("R", [Z, Residue(6), PolyFp(3), Product((Residue(4), Residue(9)))])
def test_word_properties(R):
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(2, 4)
        w1 = random_word(rng, R, n, 20, diag=True)
        w2 = random_word(rng, R, n, 7, diag=True)
        assert determinant_payload(evaluate_word(w1)) == R.one()
        A = random_matrix(rng, R, 3, n, 9)
        assert apply_word(A, w1, "right") == mat_mul(A, evaluate_word(w1))
        Bm = random_matrix(rng, R, n, 3, 9)
        assert apply_word(Bm, w1, "left") == mat_mul(evaluate_word(w1), Bm)
        assert apply_word(apply_word(A, w1), w2) == apply_word(A, w1.concat(w2))
        assert evaluate_word(w1.concat(w1.inverse())) == identity(R, n)
        assert ElementaryWord.from_json(R, n, w1.to_json()) == w1
    with pytest.raises(MatrixError):
        apply_word(identity(R, 3), random_word(rng, R, 2, 3))


def test_word_validation():
    with pytest.raises(MatrixError):
        ElementaryWord(Z, 2, [AddMultiple(0, 0, 1)])
    with pytest.raises(MatrixError):
        ElementaryWord(Z, 2, [AddMultiple(0, 2, 1)])
    with pytest.raises(MatrixError):
        ElementaryWord(Z, 2, [DiagPair(0, 1, 2)])


def test_factor_into_word_examples():
    assert len(factor_into_word(identity(Z, 2))) == 0
    S = as_matrix(Z, [[0, -1], [1, 0]])
    w = factor_into_word(S)
    assert evaluate_word(w) == S and not w.has_diag()
    rng = random.Random(3)
    R = Residue(6)
    S3 = random_special(rng, R, 3)
    assert evaluate_word(factor_into_word(S3)) == S3


def test_factor_into_word_errors():
    with pytest.raises(MatrixError):
        factor_into_word(as_matrix(Z, [[2, 0], [0, 1]]))
    with pytest.raises(MatrixError):
        factor_into_word(identity(Product((Residue(2), Residue(3))), 2))


@pytest.mark.parametrize("R", [Z, Residue(12), Residue(9), PolyFp(2), PolyFp(5)])
def test_factor_round_trip(R):
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 4)
        S = random_special(rng, R, n)
        w = factor_into_word(S)
        assert evaluate_word(w) == S
        assert not w.has_diag()


def test_product_words_zip_componentwise():
    rng = random.Random(5)
    R = Product((Residue(4), Residue(9)))
    for _ in range(10):
        S = random_special(rng, R, 3)
        words = [factor_into_word(P) for P in split_matrix(S)]
        w = zip_words(R, words)
        assert evaluate_word(w) == S and not w.has_diag()
        assert evaluate_word(component_word(w, 1)) == split_matrix(S)[1]


@pytest.mark.parametrize("R", [Z, Residue(12), PolyFp(3), Product((Residue(4), Residue(9)))])
def test_matrix_inverse(R):
    rng = random.Random(6)
    for _ in range(10):
        n = rng.randint(1, 4)
        S = random_special(rng, R, n)
        u = R.units()[rng.randrange(len(R.units()))]
        rows = [list(r) for r in S.rows]
        rows[0] = [R.mul(u, x) for x in rows[0]]
        A = ExactMatrix(R, rows, n)
        assert mat_mul(A, matrix_inverse(A)) == identity(R, n)


def test_json_matrix_roundtrip():
    R = PolyFp(3)
    A = ExactMatrix(R, [[(1, 2), ()], [(0, 1), (2,)]], 2)
    assert ExactMatrix.from_json(R, A.to_json()) == A
