import numpy as np
import pytest

from hspsim.groups import (
    AbelianGroup,
    CayleyGroup,
    GroupTableError,
    Irrep,
    NotRepresentableError,
    Subgroup,
    all_subgroups,
    annihilator,
    char_value,
    character_table,
    double_annihilator,
    quotient,
    smith_columns,
    subgroup_closure,
    trivial_subgroup,
    validate_irrep,
    whole_group,
)
from hspsim.semiring import BOOLEAN, REAL
from hspsim.tables import builtin


def el(G, *names):
    return sorted(G.index(n) for n in names)


def test_closure_examples():
    G = AbelianGroup([2, 2])
    assert subgroup_closure(G, ["11"]).names() == ["00", "11"]
    assert subgroup_closure(G, []).names() == ["00"]
    Z6 = AbelianGroup([6])
    assert list(subgroup_closure(Z6, [2]).elements) == [0, 2, 4]


def test_closure_cayley():
    S3, _ = builtin("S3")
    A3 = subgroup_closure(S3, [S3.index("120")])
    assert A3.order == 3 and A3.is_normal
    T = subgroup_closure(S3, [S3.index("021")])
    assert T.order == 2 and not T.is_normal


def test_quotient_examples():
    G = AbelianGroup([2, 2])
    H = subgroup_closure(G, ["11"])
    qd = quotient(G, H)
    assert qd.quotient.order == 2
    cosets = sorted(tuple(G.element_name(int(g)) for g in qd.coset(c)) for c in range(2))
    assert cosets == [("00", "11"), ("01", "10")]
    assert list(qd.reps) == el(G, "00", "01")

    Z6 = AbelianGroup([6])
    qd = quotient(Z6, trivial_subgroup(Z6))
    assert qd.quotient.order == 6
    assert len(set(qd.q.tolist())) == 6

    S3, _ = builtin("S3")
    A3 = subgroup_closure(S3, [S3.index("120")])
    qd = quotient(S3, A3)
    assert qd.quotient.order == 2


def test_quotient_is_homomorphism_with_kernel_h():
    for orders, gens in (([2, 4], ["12"]), ([12], [4]), ([3, 3], ["11"]), ([2, 6], ["13"])):
        G = AbelianGroup(orders)
        H = subgroup_closure(G, gens)
        qd = quotient(G, H)
        Q = qd.quotient
        a = np.arange(G.order)
        assert np.array_equal(qd.q[G.op(a[:, None], a[None, :])], Q.op(qd.q[:, None], qd.q[None, :]))
        assert np.array_equal(np.nonzero(qd.q == 0)[0], H.elements)
        assert np.array_equal(qd.q[qd.reps], np.arange(Q.order))


def test_char_value_examples():
    Z4 = AbelianGroup([4])
    assert char_value(Z4, 1, 1) == 1j
    for g in range(4):
        assert char_value(Z4, 0, g) == 1
    with pytest.raises(NotRepresentableError):
        char_value(Z4, 1, 1, REAL)
    assert char_value(Z4, 2, 1, REAL) == -1.0
    with pytest.raises(NotRepresentableError):
        char_value(AbelianGroup([2]), 1, 1, BOOLEAN)


def test_character_table_orthogonality():
    G = AbelianGroup([2, 6])
    T = character_table(G)
    assert np.allclose(T @ T.conj().T, G.order * np.eye(G.order))


def test_annihilator_examples():
    G = AbelianGroup([2, 2])
    assert annihilator(G, whole_group(G)).names() == ["00"]
    assert annihilator(G, trivial_subgroup(G)).order == 4
    assert annihilator(G, subgroup_closure(G, ["11"])).names() == ["00", "11"]
    Z6 = AbelianGroup([6])
    assert list(annihilator(Z6, subgroup_closure(Z6, [2])).elements) == [0, 3]


def test_double_annihilator_examples():
    G = AbelianGroup([2, 2])
    assert double_annihilator(G, [0]).order == 4
    assert double_annihilator(G, ["11"]).names() == ["00", "11"]
    Z6 = AbelianGroup([6])
    assert list(double_annihilator(Z6, [3]).elements) == [0, 2, 4]


def _brute_annihilator(G, H):
    T = character_table(G)
    return [p for p in range(G.order) if np.allclose(T[p, H.elements], 1)]


@pytest.mark.parametrize("orders", [[2], [3], [4], [2, 2], [6], [2, 4], [3, 3], [2, 2, 2], [12],
                                    [2, 6], [4, 4], [2, 2, 4], [5, 5], [9], [2, 3, 4]])
def test_double_annihilator_recovers_every_subgroup(orders):
    G = AbelianGroup(orders)
    for H in all_subgroups(G):
        A = annihilator(G, H)
        assert list(A.elements) == _brute_annihilator(G, H)
        assert A.order * H.order == G.order
        assert double_annihilator(G, A) == H
        assert double_annihilator(G, list(A.elements)) == H


def test_all_subgroups_counts():
    # Z2^2 has 5 subgroups, Z4 has 3, Z2^3 has 16
    assert len(all_subgroups(AbelianGroup([2, 2]))) == 5
    assert len(all_subgroups(AbelianGroup([4]))) == 3
    assert len(all_subgroups(AbelianGroup([2, 2, 2]))) == 16


def test_smith_columns_diagonal():
    diag, V = smith_columns([[2, 0], [0, 2], [1, 1]], 2)
    assert sorted(diag) == [1, 2]


def test_cayley_validation():
    with pytest.raises(GroupTableError):
        CayleyGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupTableError):
        CayleyGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(GroupTableError):
        CayleyGroup([[0, 5], [5, 0]])


def test_irreps_of_builtins():
    for name in ("S3", "D4", "Q8"):
        G, irreps = builtin(name)
        assert sum(r.dim ** 2 for r in irreps) == G.order
        for r in irreps:
            assert validate_irrep(G, r).passed, (name, r.name)


def test_perturbed_irrep_fails_homomorphism():
    G, irreps = builtin("S3")
    std = next(r for r in irreps if r.dim == 2)
    mats = np.array(std.matrices)
    mats[3] = mats[3] + 0.01
    rep = validate_irrep(G, Irrep("bad", 2, mats))
    assert not rep.passed
    assert "homomorphism" in [c.name for c in rep.failures()]


def test_sign_irrep():
    G, irreps = builtin("S3")
    sign = next(r for r in irreps if r.name == "sign")
    assert sorted(np.real(sign.character()).tolist()) == [-1, -1, -1, 1, 1, 1]


def test_subgroup_equality_and_membership():
    G = AbelianGroup([2, 2])
    H = Subgroup(G, el(G, "00", "11"))
    assert "11" in H and "01" not in H
    assert H == subgroup_closure(G, ["11"])
    assert H != subgroup_closure(AbelianGroup([4]), [2])
