import numpy as np
import pytest

from controls import nonassociative_pair, rotated_point_pair, zeroed_mult_structure
from hspsim.frobenius import (
    PreconditionError,
    antipode_of,
    character_census,
    character_states,
    check_frobenius,
    check_strong_complementarity,
    group_structure,
    has_enough_classical_states,
    is_classical_map,
    is_classical_state,
    is_pair_homomorphism,
    adjoint_homomorphism_holds,
    law_suite,
    make_pair,
    point_structure,
    recover_group,
    strong_pair,
    transpose,
)
from hspsim.groups import AbelianGroup, quotient, subgroup_closure
from hspsim.semiring import BOOLEAN, COMPLEX, REAL
from hspsim.tables import builtin
from hspsim.tensor import (
    IndexSet,
    Tensor,
    basis_state,
    compose,
    from_function,
    identity,
    residual,
    state,
)

Z2, Z3, Z4 = AbelianGroup([2]), AbelianGroup([3]), AbelianGroup([4])


def test_point_structure_z2_comult():
    Z = point_structure(Z2)
    want = np.zeros((4, 2))
    want[0, 0] = want[3, 1] = 1
    assert np.array_equal(Z.comult.entries, want)
    assert residual(compose(Z.comult, Z.mult), identity(Z.obj)) == 0


def test_counit_of_unit_is_order():
    for K in (Z2, Z3, AbelianGroup([2, 3])):
        Z = point_structure(K)
        assert compose(Z.unit, Z.counit).item() == K.order


def test_group_structure_basics():
    X = group_structure(Z2)
    assert np.array_equal(np.nonzero(X.mult.entries.T)[1], [0, 1, 1, 0])
    loop = compose(X.comult, X.mult)
    assert residual(loop, Tensor(2 * np.eye(2), X.obj, X.obj)) == 0
    assert X.xi == pytest.approx(np.sqrt(2))
    assert group_structure(Z2, BOOLEAN).xi is None


def test_antipode_examples():
    assert residual(strong_pair(Z2).antipode, identity(group_structure(Z2).obj)) == 0
    s = strong_pair(Z3).antipode
    assert list(np.argmax(s.entries, axis=0)) == [0, 2, 1]
    assert residual(compose(s, s), identity(s.domain)) == 0
    S3, _ = builtin("S3")
    s = strong_pair(S3).antipode
    assert np.array_equal(np.argmax(s.entries, axis=0), S3.inverse_table())


def test_check_frobenius_examples():
    rep = check_frobenius(point_structure(AbelianGroup([6])))
    assert rep.passed and rep.max_residual == 0
    S3, _ = builtin("S3")
    rep = check_frobenius(group_structure(S3))
    assert rep.passed
    assert "commutativity" not in [r.name for r in rep.results]
    assert not group_structure(S3).commutative


@pytest.mark.parametrize("sr", [COMPLEX, REAL, BOOLEAN])
def test_law_suite_in_every_semiring(sr):
    for K in (Z2, Z3, AbelianGroup([2, 2]), builtin("S3")[0], builtin("Q8")[0]):
        rep = law_suite(K, sr)
        assert rep.passed, [r.name for r in rep.failures()]


def test_zeroed_mult_fails_frobenius_law():
    rep = check_frobenius(zeroed_mult_structure())
    assert not rep.get("frobenius-law").passed


def test_rotated_point_structure_fails_hopf():
    pair = rotated_point_pair()
    assert check_frobenius(pair.Z).passed
    rep = check_strong_complementarity(pair)
    assert not rep.get("hopf-law").passed
    assert not rep.get("bialgebra-copy-mult").passed


def test_nonassociative_table():
    pair = nonassociative_pair()
    with pytest.raises(PreconditionError):
        check_strong_complementarity(pair)
    rep = check_strong_complementarity(pair, require_frobenius=False)
    assert not rep.get("hopf-law").passed
    assert not check_frobenius(pair.X).get("associativity").passed


def test_classical_states():
    Z = point_structure(Z3)
    assert is_classical_state(Z, basis_state(Z.obj, 1))
    assert not is_classical_state(Z, state(np.ones(3), Z.obj))
    X = group_structure(Z3)
    for _, psi in character_states(Z3):
        assert is_classical_state(X, psi)
    assert not is_classical_state(X, basis_state(X.obj, 1))


def test_classical_maps():
    A, B = point_structure(Z3), point_structure(Z2)
    f = from_function([0, 1, 1], A.obj, B.obj)
    assert is_classical_map(A, B, f)
    assert is_classical_map(A, A, identity(A.obj))
    h = Tensor(np.array([[1, 1], [1, -1]]) / np.sqrt(2), B.obj, B.obj)
    assert not is_classical_map(B, B, h)


def test_transpose_of_function_is_relation_transpose():
    A, B = point_structure(Z3), point_structure(Z2)
    f = from_function([0, 1, 1], A.obj, B.obj)
    assert residual(transpose(f, [A], [B]), Tensor(f.entries.T, A.obj, B.obj)) == 0


def test_pair_homomorphisms():
    G = AbelianGroup([2, 2])
    H = subgroup_closure(G, ["11"])
    qd = quotient(G, H)
    pG, pQ = strong_pair(G), strong_pair(qd.quotient)
    q = from_function(qd.q, pG.Z.obj, pQ.Z.obj)
    assert is_pair_homomorphism(pG, pQ, q)
    assert adjoint_homomorphism_holds(pG, pQ, q)

    Hg = H.as_group()
    pH = strong_pair(Hg)
    inc = from_function(H.elements, pH.Z.obj, pG.Z.obj)
    assert is_pair_homomorphism(pH, pG, inc)

    p2 = strong_pair(Z2)
    bad = from_function([1, 1], p2.Z.obj, p2.Z.obj)
    assert not is_pair_homomorphism(p2, p2, bad)
    assert not adjoint_homomorphism_holds(p2, p2, bad)
    assert adjoint_homomorphism_holds(pH, pG, inc)


def test_character_states_examples():
    vecs = sorted(tuple(np.real(t.vector())) for _, t in character_states(Z2))
    assert vecs == [(1.0, -1.0), (1.0, 1.0)]
    assert len(character_states(AbelianGroup([2, 3]))) == 6
    assert len(character_states(Z3, REAL)) == 1
    assert len(character_states(Z4, REAL)) == 2


def test_character_census_verifies():
    assert len(character_census(Z4)) == 4
    assert len(character_census(Z4, REAL)) == 2
    for K in (Z2, Z3, Z4, AbelianGroup([2, 2]), builtin("S3")[0]):
        assert len(character_census(K, BOOLEAN)) == 1


def test_enough_classical_states():
    Z = point_structure(Z3)
    basis = [basis_state(Z.obj, k) for k in range(3)]
    assert has_enough_classical_states(Z, basis)
    X3 = group_structure(Z3, REAL)
    assert not has_enough_classical_states(X3, [t for _, t in character_states(Z3, REAL)])
    K = AbelianGroup([2, 2, 2])
    XK = group_structure(K, REAL)
    assert has_enough_classical_states(XK, [t for _, t in character_states(K, REAL)])


def test_recover_group_reads_table():
    S3, _ = builtin("S3")
    got = recover_group(strong_pair(S3))
    assert np.array_equal(got.table, S3.mul_table())
    assert got.unit == S3.unit
    assert np.array_equal(got.inverse, S3.inverse_table())


def test_real_rotation_leaves_cap_and_antipode_unchanged():
    # a real orthogonal change of basis preserves sum_k |k>|k>, so only the Hopf-type laws notice it
    pair = rotated_point_pair()
    plain = strong_pair(Z4)
    assert residual(pair.Z.cap(), plain.Z.cap()) < 1e-12
    assert residual(antipode_of(pair.Z, pair.X), plain.antipode) < 1e-12


def test_make_pair_on_relabelled_object():
    obj = IndexSet("carrier", 3)
    pair = make_pair(point_structure(obj), group_structure(Z3, obj=obj))
    assert check_strong_complementarity(pair).passed
