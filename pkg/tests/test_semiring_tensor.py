import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hspsim.semiring import BOOLEAN, COMPLEX, REAL, SemiringMismatchError, get_semiring
from hspsim.tensor import (
    IndexSet,
    ShapeMismatchError,
    Tensor,
    add,
    apply_at,
    approx_equal,
    compose,
    dagger,
    evaluate_layers,
    identity,
    permute_wires,
    reorder_codomain,
    residual,
    scalar,
    swap,
    tensor_product,
    zero,
)

A, B, C, D = IndexSet("A", 2), IndexSet("B", 3), IndexSet("C", 2), IndexSet("D", 4)


def naive_product(g, f):
    rows, inner = g.shape
    cols = f.shape[1]
    out = np.zeros((rows, cols), dtype=complex)
    for i in range(rows):
        for j in range(cols):
            for k in range(inner):
                out[i, j] += g[i, k] * f[k, j]
    return out


def test_compose_hand_example():
    f = Tensor([[0, 1], [1, 0]], A, A)
    g = Tensor([[1, 0], [0, -1]], A, A)
    got = compose(f, g).entries
    assert np.array_equal(got, [[0, 1], [-1, 0]])
    assert np.array_equal(got, naive_product(g.entries, f.entries))
    assert np.array_equal((f >> g).entries, got)


def test_compose_identity_and_zero():
    f = Tensor(np.arange(6), B, A)
    assert approx_equal(compose(f, identity(B)), f, 0)
    z = compose(zero(A, B), Tensor(np.ones((2, 3)), C, B))
    assert approx_equal(z, zero(A, C), 0)


def test_compose_mismatch_names_both_signatures():
    f = Tensor(np.ones((3, 2)), B, A)
    g = Tensor(np.ones((2, 2)), C, A)
    with pytest.raises(ShapeMismatchError) as exc:
        compose(f, g)
    msg = str(exc.value)
    assert "A[2] -> B[3]" in msg.replace("(", "").replace(")", "")
    assert "C[2]" in msg


def test_semiring_mismatch():
    with pytest.raises(SemiringMismatchError):
        compose(identity(A, COMPLEX), identity(A, REAL))
    with pytest.raises(SemiringMismatchError):
        tensor_product(identity(A, BOOLEAN), identity(A, REAL))


def test_tensor_product_examples():
    assert approx_equal(tensor_product(identity(A), identity(B)), identity((A, B)), 0)
    f = Tensor(np.arange(6), B, A)
    assert approx_equal(tensor_product(f, scalar(1)), f, 0)
    x = Tensor([[0, 1], [1, 0]], A, A)
    xx = tensor_product(x, x)
    assert np.array_equal(xx.entries, np.fliplr(np.eye(4)))
    assert xx.domain == (A, A)


def test_dagger_examples():
    f = Tensor(np.arange(6) + 1j, B, A)
    assert approx_equal(dagger(dagger(f)), f, 0)
    col = Tensor([1, 1j], A, ())
    assert np.array_equal(dagger(col).entries, [[1, -1j]])
    rel = Tensor([[1, 0, 1], [0, 0, 1]], A, B, BOOLEAN)
    assert np.array_equal(dagger(rel).entries, rel.entries.T)


def test_approx_equal_tolerances():
    f = Tensor(np.arange(4.0), A, A)
    assert approx_equal(f, f, 0)
    assert approx_equal(f, Tensor(np.arange(4.0) + 1e-12, A, A), 1e-9)
    g = np.arange(4.0)
    g[2] += 1
    assert not approx_equal(f, Tensor(g, A, A), 1e-9)
    with pytest.raises(ShapeMismatchError):
        approx_equal(f, identity(B))


def test_builders():
    s = swap(A, B)
    assert approx_equal(compose(s, swap(B, A)), identity((A, B)), 0)
    # (i, j) -> (j, i)
    col = 1 * 3 + 2
    assert s.entries[2 * 2 + 1, col] == 1
    one = scalar(1)
    assert one.domain == () and one.codomain == () and one.item() == 1
    assert np.array_equal(identity(B).entries, np.eye(3))


def test_boolean_addition_is_or():
    a = Tensor([[1, 1]], (), A, BOOLEAN)
    b = Tensor([[1], [1]], A, (), BOOLEAN)
    assert compose(b, a).item() == np.True_
    assert add(a, a).entries.dtype == bool
    assert get_semiring("boolean").from_count(5) == np.True_


def test_index_set_rules():
    with pytest.raises(ValueError):
        IndexSet("x", 0)
    assert IndexSet("x", 2) == IndexSet("x", 2, ("a", "b"))
    assert IndexSet("x", 2) != IndexSet("y", 2)


def test_tensors_are_immutable():
    f = identity(A)
    with pytest.raises(AttributeError):
        f.entries = None
    with pytest.raises(ValueError):
        f.entries[0, 0] = 5


def test_apply_at_matches_padding():
    rng = np.random.default_rng(1)
    t = Tensor(rng.normal(size=(2 * 3 * 4, 2)), (A, B, D), C)
    f = Tensor(rng.normal(size=(2 * 3, 3)), (A, B), B)
    got = apply_at(t, f, 1)
    want = compose(t, tensor_product(identity(A), f, identity(D)))
    assert residual(got, want) < 1e-12


def test_evaluate_layers_matches_composite_and_chunks():
    rng = np.random.default_rng(2)
    f = Tensor(rng.normal(size=(4, 3)), D, B)
    g = Tensor(rng.normal(size=(2, 8)), C, (A, D))
    want = compose(tensor_product(identity(A), f), g)
    for budget in (1, 7, 1 << 22):
        got = evaluate_layers([(f, 1), (g, 0)], (A, B), COMPLEX, budget)
        assert residual(got, want) < 1e-12


def test_reorder_codomain_matches_permutation():
    rng = np.random.default_rng(3)
    t = Tensor(rng.normal(size=(2 * 3 * 4, 1)), (A, B, D), ())
    order = [2, 0, 1]
    assert residual(reorder_codomain(t, order), compose(t, permute_wires((A, B, D), order))) == 0


# --- randomized algebraic properties -------------------------------------------------------

dims = st.integers(min_value=1, max_value=3)


def _rand(rng, sr, cod, dom):
    n = cod.size * dom.size
    if sr is BOOLEAN:
        vals = rng.integers(0, 2, n)
    elif sr is REAL:
        vals = rng.integers(-3, 4, n)
    else:
        vals = rng.integers(-3, 4, n) + 1j * rng.integers(-3, 4, n)
    return Tensor(vals, cod, dom, sr)


@settings(max_examples=40, deadline=None)
@given(a=dims, b=dims, c=dims, d=dims, e=dims, f=dims,
       sr=st.sampled_from([COMPLEX, REAL, BOOLEAN]), seed=st.integers(0, 2 ** 32 - 1))
def test_interchange_law(a, b, c, d, e, f, sr, seed):
    rng = np.random.default_rng(seed)
    X1, X2, Y1, Y2 = IndexSet("x1", a), IndexSet("x2", b), IndexSet("y1", c), IndexSet("y2", d)
    Z1, Z2 = IndexSet("z1", e), IndexSet("z2", f)
    h, k = _rand(rng, sr, Y1, X1), _rand(rng, sr, Y2, X2)
    ff, g = _rand(rng, sr, Z1, Y1), _rand(rng, sr, Z2, Y2)
    lhs = compose(tensor_product(h, k), tensor_product(ff, g))
    rhs = tensor_product(compose(h, ff), compose(k, g))
    assert residual(lhs, rhs) == 0


@settings(max_examples=40, deadline=None)
@given(a=dims, b=dims, c=dims, d=dims,
       sr=st.sampled_from([COMPLEX, REAL, BOOLEAN]), seed=st.integers(0, 2 ** 32 - 1))
def test_dagger_contravariant_and_associative(a, b, c, d, sr, seed):
    rng = np.random.default_rng(seed)
    P, Q, R, S = (IndexSet(n, k) for n, k in zip("PQRS", (a, b, c, d)))
    f, g, h = _rand(rng, sr, Q, P), _rand(rng, sr, R, Q), _rand(rng, sr, S, R)
    assert residual(dagger(compose(f, g)), compose(dagger(g), dagger(f))) == 0
    left = compose(compose(f, g), h)
    right = compose(f, compose(g, h))
    assert residual(left, right) <= (0 if sr is BOOLEAN else 1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_associativity_at_dimension_64(seed):
    rng = np.random.default_rng(seed)
    X = IndexSet("X", 64)
    f, g, h = (Tensor(rng.normal(size=(64, 64)) + 1j * rng.normal(size=(64, 64)), X, X)
               for _ in range(3))
    assert residual(compose(compose(f, g), h), compose(f, compose(g, h))) <= 1e-12 * 64 * 10


def test_scalar_dagger_is_semiring_homomorphism():
    for sr in (COMPLEX, REAL, BOOLEAN):
        x = sr.coerce(np.array([1 + 2j if sr is COMPLEX else 1]))
        y = sr.coerce(np.array([3 - 1j if sr is COMPLEX else 0]))
        assert np.array_equal(sr.dagger(sr.dagger(x)), x)
        assert np.array_equal(sr.dagger(sr.mul(x, y)), sr.mul(sr.dagger(x), sr.dagger(y)))
        assert np.array_equal(sr.dagger(sr.add(x, y)), sr.add(sr.dagger(x), sr.dagger(y)))
