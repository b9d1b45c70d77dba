"""Classical post-processing: recover the hidden subgroup from sampled characters.

The general path grows the subgroup of the dual generated by the samples
and stops once it has not grown for ``stability_t`` consecutive samples;
the hidden subgroup is then the set of elements every sampled character
kills. Simon's problem has a dedicated GF(2) elimination on machine words.
"""
from dataclasses import dataclass, field, replace
from math import gcd, log2

import numpy as np

from hspsim import kernels
from hspsim.groups import (
    AbelianGroup,
    Subgroup,
    _extend,
    double_annihilator,
    pairing_residue,
)
from hspsim.hsp import PromiseViolationError, Sampler, build_instance


# --- accumulating sampled characters ---------------------------------------------

@dataclass(frozen=True)
class SamplerState:
    group: object
    sampled: tuple = ()
    dual_mask: np.ndarray = None
    generators: tuple = ()
    stable_for: int = 0
    count: int = 0
    reference: Subgroup = None
    violations: tuple = ()

    @classmethod
    def start(cls, G, reference=None):
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        return cls(G, dual_mask=mask, reference=reference)

    @property
    def dual_size(self):
        return int(self.dual_mask.sum())

    def dual_subgroup(self):
        return Subgroup(self.group.dual(), np.nonzero(self.dual_mask)[0], self.generators)

    @property
    def promise_violated(self):
        return bool(self.violations)


def _kills(G, chi, H):
    return bool(np.all(pairing_residue(G, chi, H.elements) == 0))


def accumulate(state, chi):
    """Add one sampled character (an index into the dual group)."""
    G = state.group
    chi = int(chi)
    violations = state.violations
    if state.reference is not None and not _kills(G, chi, state.reference):
        violations = violations + (chi,)
    if state.dual_mask[chi]:
        return replace(state, sampled=state.sampled + (chi,), stable_for=state.stable_for + 1,
                       count=state.count + 1, violations=violations)
    mask = _extend(G.dual(), state.dual_mask, chi)
    return replace(state, sampled=state.sampled + (chi,), dual_mask=mask,
                   generators=state.generators + (chi,), stable_for=0,
                   count=state.count + 1, violations=violations)


def recover_subgroup(G, sampled_chars):
    """Elements of ``G`` annihilated by every sampled character."""
    return double_annihilator(G, list(sampled_chars))


# --- end-to-end recovery ------------------------------------------------------------

@dataclass
class RecoveryResult:
    subgroup: Subgroup
    transcript: list
    samples: int
    cap_reached: bool
    state: SamplerState
    warnings: list = field(default_factory=list)

    def matches(self, H):
        return self.subgroup == H

    def to_dict(self):
        G = self.subgroup.parent
        out = {
            "recovered": self.subgroup.names() if self.subgroup.order <= 256 else None,
            "recovered_order": self.subgroup.order,
            "recovered_generators": [G.element_name(g) for g in self.subgroup.generators],
            "samples": self.samples,
            "cap_reached": self.cap_reached,
            "warnings": list(self.warnings),
        }
        return out


def default_cap(G):
    return 20 + 4 * int(np.ceil(log2(max(G.order, 2))))


def run_until_stable(inst, seed=0, stability_t=10, cap=None, source=None):
    """Sample until the generated dual subgroup is unchanged ``stability_t`` times in a row.

    ``source`` is an optional iterator of ``(b, chi)`` pairs replacing the
    seeded :class:`~hspsim.hsp.Sampler`.
    """
    G = inst.group
    cap = default_cap(G) if cap is None else int(cap)
    it = iter(source) if source is not None else iter(Sampler(inst, seed))
    state = SamplerState.start(G, reference=inst.subgroup)
    D = G.dual()
    transcript = []
    while state.stable_for < stability_t and state.count < cap:
        b, chi = next(it)
        state = accumulate(state, chi)
        transcript.append({
            "index": state.count - 1,
            "b": format(int(b), f"0{inst.label_bits}b"),
            "chi": D.element_name(int(chi)),
            "dual_subgroup_size": state.dual_size,
            "stable_for": state.stable_for,
        })
    warnings = []
    cap_reached = state.stable_for < stability_t
    if cap_reached:
        warnings.append(f"sample cap {cap} reached before {stability_t} stable samples")
    if state.promise_violated:
        warnings.append("sampled characters outside the annihilator of the hidden subgroup")
    H = recover_subgroup(G, state.generators)
    return RecoveryResult(H, transcript, state.count, cap_reached, state, warnings)


# --- Simon's problem over GF(2) -----------------------------------------------------

@dataclass
class SimonResult:
    z: int
    N: int
    samples: int
    basis: np.ndarray

    @property
    def z_bits(self):
        return format(self.z, f"0{self.N}b")


def _kernel_vector(basis, N):
    free = [p for p in range(N) if basis[p] == 0]
    if len(free) != 1:
        raise ValueError(f"expected a one-dimensional kernel, found {len(free)} free columns")
    z = 1 << free[0]
    for p in range(N):
        r = int(basis[p])
        if r and bin((r ^ (1 << p)) & z).count("1") % 2:
            z |= 1 << p
    for p in range(N):
        if bin(int(basis[p]) & z).count("1") % 2:
            raise AssertionError("kernel vector does not solve the system")
    return z


def _as_row(sample, N):
    if isinstance(sample, tuple):
        sample = sample[1]
    if isinstance(sample, str):
        return int(sample, 2)
    return int(sample)


def _verify_period(it, z, N, count):
    for _, sample in zip(range(count), it):
        if bin(_as_row(sample, N) & z).count("1") % 2:
            raise PromiseViolationError(
                "samples span all of GF(2)^N, so no non-zero period exists")


def simon_solve(N, sample_source, max_samples=None, verify_samples=0):
    """Recover Simon's period from characters ``y`` with ``y . z = 0``.

    ``sample_source`` yields characters as ``N``-bit integers (first
    coordinate most significant), bit strings, or ``(b, chi)`` pairs.
    Elimination stops at rank ``N - 1``. With ``verify_samples > 0`` that
    many further samples are drawn; one with ``y . z = 1`` would raise the
    rank to ``N`` and is reported as a promise violation.
    """
    if not 1 <= N <= 64:
        raise ValueError("simon_solve supports 1 <= N <= 64")
    max_samples = 4 * N + 20 if max_samples is None else max_samples
    basis = np.zeros(N, dtype=np.uint64)
    rank = 0
    used = 0
    if N == 1:
        return SimonResult(1, 1, 0, basis)
    it = iter(sample_source)
    for sample in it:
        row = _as_row(sample, N)
        if row >> N:
            raise ValueError(f"sample {row} does not fit in {N} bits")
        used += 1
        if row and kernels.gf2_insert(basis, np.uint64(row)):
            rank += 1
            if rank == N:
                raise PromiseViolationError(
                    "samples span all of GF(2)^N, so no non-zero period exists")
            if rank == N - 1:
                z = _kernel_vector(basis, N)
                _verify_period(it, z, N, verify_samples)
                return SimonResult(z, N, used, basis)
        if used >= max_samples:
            break
    raise RuntimeError(f"rank {rank} < {N - 1} after {used} samples")


# --- number-theoretic instances ------------------------------------------------------

def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _order_mod(a, n):
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


class NotPrimitiveRootError(ValueError):
    pass


class NotCoprimeError(ValueError):
    pass


def dlog_instance(p, g, a, semiring="complex"):
    """``G = Z_{p-1}^2`` with ``f(x, y) = g^x a^{-y} mod p``; ``H = <(b, 1)>`` for ``a = g^b``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if _order_mod(g, p) != p - 1:
        raise NotPrimitiveRootError(f"{g} is not a primitive root mod {p}")
    if a % p == 0:
        raise NotCoprimeError(f"{a} is not invertible mod {p}")
    n = p - 1
    G = AbelianGroup([n, n])
    b = next(k for k in range(n) if pow(g, k, p) == a % p)
    a_inv = pow(a, -1, p)
    xy = G.residue_array(np.arange(G.order))
    labels = [pow(g, int(x), p) * pow(a_inv, int(y), p) % p for x, y in xy]
    inst = build_instance(G, [G.encode([b, 1])], label_bits=(p - 1).bit_length(),
                          labeling=labels, semiring=semiring,
                          name=f"dlog p={p} g={g} a={a}")
    return inst


def recover_dlog(H):
    """``b`` from the unique element ``(b, 1)`` of the recovered subgroup."""
    G = H.parent
    for h in H.elements:
        x, y = G.residues(int(h))
        if y == 1:
            return int(x)
    raise ValueError("subgroup has no element with second coordinate 1")


def _phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def order_instance(modulus, a, semiring="complex"):
    """Exponent model ``G = Z_phi(modulus)``, ``f(x) = a^x mod modulus``, ``H = <ord(a)>``."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if gcd(a, modulus) != 1:
        raise NotCoprimeError(f"gcd({a}, {modulus}) != 1")
    n = _phi(modulus)
    G = AbelianGroup([n] if n > 1 else [])
    r = _order_mod(a, modulus)
    labels = [pow(a, x, modulus) for x in range(G.order)]
    gens = [r % n] if n > 1 else []
    return build_instance(G, gens, label_bits=max(1, (modulus - 1).bit_length()),
                          labeling=labels, semiring=semiring,
                          name=f"order mod {modulus} a={a}")


def recover_order(H):
    """Smallest positive element of ``H`` (the whole cyclic group order if ``H`` is trivial)."""
    G = H.parent
    pos = [int(h) for h in H.elements if h != 0]
    return min(pos) if pos else G.order
