import numpy as np
import pytest

from hspsim import catalog
from hspsim.groups import AbelianGroup, annihilator, subgroup_closure
from hspsim.hsp import PromiseViolationError, Sampler, simon_instance
from hspsim.postprocess import (
    NotCoprimeError,
    NotPrimitiveRootError,
    SamplerState,
    accumulate,
    default_cap,
    dlog_instance,
    order_instance,
    recover_dlog,
    recover_order,
    recover_subgroup,
    run_until_stable,
    simon_solve,
)


def test_accumulate_examples():
    G = AbelianGroup([2, 2])
    st = accumulate(SamplerState.start(G), 0)
    assert st.dual_size == 1 and st.stable_for == 1
    st = accumulate(SamplerState.start(G), G.index("11"))
    assert st.dual_subgroup().names() == ["00", "11"] and st.stable_for == 0
    st = accumulate(st, G.index("11"))
    assert st.dual_size == 2 and st.stable_for == 1


def test_accumulate_flags_characters_outside_annihilator():
    G = AbelianGroup([2, 2])
    H = subgroup_closure(G, ["11"])
    st = accumulate(SamplerState.start(G, reference=H), G.index("01"))
    assert st.promise_violated


def test_recover_subgroup_examples():
    G = AbelianGroup([6])
    H = subgroup_closure(G, [2])
    assert recover_subgroup(G, annihilator(G, H).elements) == H
    assert recover_subgroup(G, []).order == 6
    assert list(recover_subgroup(G, [3]).elements) == [0, 2, 4]


def test_run_until_stable_examples():
    inst = catalog.instance("z6-by-2")
    res = run_until_stable(inst, seed=1)
    assert list(res.subgroup.elements) == [0, 2, 4]
    whole = catalog.instance("whole-group")
    res = run_until_stable(whole, seed=0)
    assert res.subgroup.order == whole.order and res.samples == 10
    assert all(r["chi"] == "00" for r in res.transcript)


def test_transcript_records():
    res = run_until_stable(catalog.instance("simon-3"), seed=4)
    keys = {"index", "b", "chi", "dual_subgroup_size", "stable_for"}
    assert all(set(r) == keys for r in res.transcript)
    assert [r["index"] for r in res.transcript] == list(range(res.samples))
    assert res.transcript[-1]["stable_for"] == 10


def test_cap_reached_warning():
    res = run_until_stable(catalog.instance("z12-by-4"), seed=0, stability_t=50, cap=5)
    assert res.cap_reached and res.warnings and res.samples == 5
    assert default_cap(AbelianGroup([4, 4])) == 36


def test_simon_solve_small():
    assert simon_solve(2, iter(["11", "00", "11"])).z_bits == "11"
    with pytest.raises(PromiseViolationError):
        simon_solve(2, iter(["10", "01"]), verify_samples=1)
    assert simon_solve(2, iter(["11", "11"]), verify_samples=1).z_bits == "11"
    assert simon_solve(1, iter([])).z == 1


def test_simon_solve_accepts_pairs_and_ints():
    inst = simon_instance(5, "10011")
    res = simon_solve(5, Sampler(inst, 2))
    assert res.z_bits == "10011"
    rows = [chi for _, chi in Sampler(inst, 2).take(30)]
    assert simon_solve(5, iter(rows)).z_bits == "10011"


@pytest.mark.parametrize("N", [2, 3, 5, 8, 12])
def test_simon_solve_agrees_with_general_recovery(N):
    rng = np.random.default_rng(N)
    for _ in range(3):
        z = int(rng.integers(1, 1 << N))
        inst = simon_instance(N, z)
        seed = int(rng.integers(1 << 30))
        fast = simon_solve(N, Sampler(inst, seed))
        general = run_until_stable(inst, seed=seed, stability_t=10)
        assert not general.cap_reached
        assert list(general.subgroup.elements) == [0, fast.z]


def test_dlog_example():
    inst = dlog_instance(5, 2, 3)
    G = inst.group
    assert sorted(inst.subgroup.names()) == sorted(["00", "31", "22", "13"])
    H = run_until_stable(inst, seed=0).subgroup
    assert recover_dlog(H) == 3
    with pytest.raises(NotPrimitiveRootError):
        dlog_instance(7, 2, 3)
    with pytest.raises(NotCoprimeError):
        dlog_instance(5, 2, 10)
    assert G.orders == (4, 4)


def test_order_examples():
    inst = order_instance(15, 2)
    assert recover_order(run_until_stable(inst, seed=0).subgroup) == 4
    one = order_instance(15, 1)
    assert recover_order(run_until_stable(one, seed=0).subgroup) == 1
    with pytest.raises(NotCoprimeError):
        order_instance(15, 5)


def test_soundness_recovered_contains_h():
    for e in catalog.DISTRIBUTION_CATALOG:
        inst = e.instance()
        for seed in range(10):
            got = run_until_stable(inst, seed=seed).subgroup
            assert np.all(np.isin(inst.subgroup.elements, got.elements))


def test_median_samples_within_loose_bound():
    for e in catalog.DISTRIBUTION_CATALOG:
        inst = e.instance()
        counts = [run_until_stable(inst, seed=s).samples for s in range(15)]
        bound = 4 * np.log2(max(inst.order, 2)) + 20
        assert np.median(counts) <= bound
