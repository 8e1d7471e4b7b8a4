import math
import random

import pytest

from _support import BACKENDS, disguised_module, random_matrix, sample_element
from genorbit.fpmodule import FpModule, ModuleError, component_module, join_modules, standard_vector
from genorbit.matrix import as_matrix, identity, mat_mul
from genorbit.rings import Integers, PolyFp, PrincipalIdeal, Product, Residue

Z = Integers()


def M48():
    return FpModule.from_chain(Z, [4, 8])


def test_decompose_examples():
    assert FpModule(Z, 2, as_matrix(Z, [[2, 0], [0, 4]])).chain_generators == (2, 4)
    assert FpModule(Z, 2, as_matrix(Z, [[4, 0], [0, 2]])).chain_generators == (2, 4)
    zero = FpModule(Z, 3, identity(Z, 3))
    assert zero.chain == [] and zero.mu == 0 and zero.is_zero()


def test_mu_examples():
    assert M48().mu == 2
    assert FpModule(Z, 2, identity(Z, 2)).mu == 0
    assert FpModule.free(Z, 2).mu == 2
    assert FpModule.free(Z, 2).free_rank == 2


def test_fitting_examples():
    M = M48()
    assert M.fitting_ideal(1) == PrincipalIdeal.of(Z, 4)
    assert M.fitting_ideal(0) == PrincipalIdeal.of(Z, 32)
    assert M.fitting_ideal(2).is_whole_ring() and M.fitting_ideal(5).is_whole_ring()
    assert FpModule.free(Z, 2).fitting_ideal(1).is_zero()
    with pytest.raises(ModuleError):
        M.fitting_ideal(-1)


def test_is_generating_examples():
    M = M48()
    e = standard_vector(M, 2)
    assert M.is_generating(e)
    assert not M.is_generating([])
    assert not M.is_generating([(2, 0), (0, 1)])
    assert M.is_generating([(1, 1), (0, 1)])
    assert FpModule(Z, 0).is_generating([])


def test_torsion_mu_examples():
    assert FpModule.from_chain(Z, [4, 0, 0]).torsion_mu() == 1
    assert FpModule.free(Z, 3).torsion_mu() == 0
    assert FpModule.from_chain(Z, [2, 6]).torsion_mu() == 2
    P = PolyFp(3)
    assert FpModule.from_chain(P, [(0, 1), ()]).torsion_mu() == 1
    # torsion is read off the chain only over domains
    assert FpModule.from_chain(Residue(8), [4]).torsion_mu() is None
    R = Product((Z, PolyFp(3)))
    assert FpModule.from_chain(R, [(2, ()), (0, ())]).torsion_mu() == 1
    assert FpModule.from_chain(Product((Residue(4), Z)), [(2, 0)]).torsion_mu() is None


def test_quotient_examples():
    Q = FpModule.free(Z, 2).quotient_by_ideal(5)
    assert Q.chain_generators == (5, 5)
    assert FpModule.free(Z, 2).quotient_by_ideal(PrincipalIdeal.of(Z, 1)).mu == 0
    assert M48().quotient_by_ideal(Z(2)).chain_generators == (2, 2)
    with pytest.raises(ModuleError):
        M48().quotient_by_ideal(Residue(4)(2))
    v = standard_vector(M48(), 2)
    assert Q.is_generating(FpModule.free(Z, 2).push_forward(Q, v))


def test_module_elements():
    M = M48()
    assert M.element([1, 0]) == M.element([5, 8])
    assert M.element([1, 0]) != M.element([2, 0])
    assert M.contains_relation((4, 16)) and not M.contains_relation((2, 0))
    with pytest.raises(ModuleError):
        M.decomposed((1,))


def test_json_roundtrip():
    for M in (M48(), FpModule.free(PolyFp(5), 2), FpModule.from_chain(Product((Residue(4), Residue(9))), [(2, 3)])):
        assert FpModule.from_json(M.to_json()) == M
    empty = FpModule.from_json({"ring": {"ring": "Z"}, "generators": 3, "relations": []})
    assert empty.mu == 3
    with pytest.raises(ModuleError):
        FpModule.from_json({"ring": {"ring": "Z"}})
    with pytest.raises(ModuleError):
        FpModule.from_json({"ring": {"ring": "Z"}, "generators": 2, "relations": [["1"]]})


def test_product_components():
    R = Product((Residue(4), Residue(9)))
    M = FpModule.from_chain(R, [(2, 3), (0, 1)])
    parts = [component_module(M, c) for c in range(2)]
    assert [p.chain_generators for p in parts] == [(2, 0), (3,)]
    assert M.mu == 2
    assert join_modules(R, parts) == M


# -- properties ---------------------------------------------------------------


@pytest.mark.parametrize("R", BACKENDS)
def test_decomposition_witness(R):
    rng = random.Random(20)
    for _ in range(30):
        k = rng.randint(1, 4)
        M = FpModule(R, k, random_matrix(rng, R, k, rng.randint(0, 4), 9))
        S = mat_mul(mat_mul(M.P, M.relations), M.snf.C)
        assert S == M.snf.S and S.is_diagonal()
        assert mat_mul(M.P, M.P_inv) == identity(R, k)
        g = M.chain_generators
        assert all(not R.is_unit(x) for x in g)
        assert all(R.divides(a, b) for a, b in zip(g, g[1:]))
        for c in M.relations.columns():
            assert M.contains_relation(c)
        for _ in range(5):
            x = tuple(sample_element(rng, R, 9) for _ in range(k))
            assert M.decomposed(M.lift(M.decomposed(x))) == M.decomposed(x)


@pytest.mark.parametrize("R", BACKENDS)
def test_fitting_chain_equals_minors(R):
    rng = random.Random(21)
    for _ in range(30):
        k = rng.randint(1, 4)
        M = FpModule(R, k, random_matrix(rng, R, k, rng.randint(0, 4), 9))
        for i in range(k + 2):
            assert M.fitting_ideal(i) == M.fitting_ideal_from_minors(i)
        if M.mu:
            assert M.fitting_ideal(M.mu - 1) == M.chain[0]


def test_mu_of_random_chains():
    rng = random.Random(22)
    for R in BACKENDS:
        nonunits = [x for x in (sample_element(rng, R, 9) for _ in range(200)) if not R.is_unit(x)]
        for _ in range(15):
            k = rng.randint(1, 4)
            gens = []
            acc = R.one()
            for _ in range(k):
                r = nonunits[rng.randrange(len(nonunits))]
                acc = R.mul(acc, r) if gens else r
                gens.append(acc)
            M = disguised_module(rng, R, gens)
            assert M.mu == k
            assert M.chain_generators == tuple(R.canonical_associate(x)[0] for x in gens)


def test_base_change_of_fitting_ideals():
    rng = random.Random(23)
    for _ in range(40):
        k = rng.randint(1, 3)
        A = random_matrix(rng, Z, k, rng.randint(1, 3), 12)
        M = FpModule(Z, k, A)
        n = rng.choice([4, 6, 8, 9, 12])
        Rn = Residue(n)
        down = FpModule(Rn, k, A.map(Rn.from_int, Rn))
        quo = M.quotient_by_ideal(n)
        for i in range(k + 1):
            expected = math.gcd(M.fitting_ideal(i).generator, n) % n
            assert down.fitting_ideal(i).generator == expected
            assert math.gcd(quo.fitting_ideal(i).generator, n) % n == expected
