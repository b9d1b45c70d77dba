"""Hidden subgroup instances, the coherent oracle and the outcome distribution.

Two independent evaluators produce the joint distribution of the label
outcome ``b`` and the character outcome ``χ``:

* ``"diagram"`` contracts tensors: the uniform state, the copy of the group
  register, the label map on one branch and the XOR-multiplication into the
  label register, followed by the Fourier effects;
* ``"state_vector"`` applies the oracle as a basis permutation to a state
  vector, collapses on each label and runs a multi-dimensional FFT (or a
  Walsh-Hadamard transform for real scalars on ``Z_2^k``).

Amplitudes use normalized conventions: the initial state and the character
effects both carry ``1/sqrt|G|``.
"""
from collections import OrderedDict
from dataclasses import dataclass, field
from math import ceil, log2, sqrt

import numpy as np

from hspsim import kernels
from hspsim.frobenius import group_structure, point_structure, strong_pair
from hspsim.groups import (
    AbelianGroup,
    IdentityCheck,
    SizeLimitError,
    Subgroup,
    annihilator,
    cayley_from_abelian,
    character_table,
    is_real_character,
    quotient,
    subgroup_closure,
    validate_irrep,
)
from hspsim.semiring import BOOLEAN, COMPLEX, REAL, get_semiring
from hspsim.tensor import (
    IndexSet,
    Tensor,
    apply_at,
    compose,
    dagger,
    evaluate_layers,
    from_function,
    identity,
    residual,
    tensor_product,
)

#: dense oracle tensors (and the tensor-level oracle checks) up to this dimension
DENSE_ORACLE_LIMIT = 1 << 11
#: diagram evaluator caps
DIAGRAM_STATE_LIMIT = 1 << 13
DIAGRAM_COPY_LIMIT = 1 << 22
#: state-vector evaluator cap on |G|, and on |G| * 2^N for a full distribution
STATE_VECTOR_LIMIT = 1 << 20
FULL_DISTRIBUTION_LIMIT = 1 << 23


class PromiseViolationError(ValueError):
    """The labelling is not constant-and-distinct on cosets."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SemiringCapabilityError(ValueError):
    """The requested operation has no meaning in the instance's semiring."""


class PartialDistributionError(SemiringCapabilityError):
    """Too few characters exist in the semiring; ``partial`` holds what was computed."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


class OracleDecompositionError(AssertionError):
    pass


class IncompleteIrrepError(ValueError):
    pass


def label_name(b, bits):
    return format(int(b), f"0{bits}b")


def parse_label(b, bits):
    if isinstance(b, str):
        s = b.replace(",", "").strip()
        if len(s) != bits or set(s) - {"0", "1"}:
            raise ValueError(f"label {b!r} is not a {bits}-bit string")
        return int(s, 2)
    b = int(b)
    if not 0 <= b < (1 << bits):
        raise ValueError(f"label {b} does not fit in {bits} bits")
    return b


# --- instances -------------------------------------------------------------------

@dataclass(frozen=True)
class HspInstance:
    group: object
    subgroup: Subgroup
    label_bits: int
    labels: np.ndarray
    quotient: object
    coset_labels: np.ndarray
    semiring: object = COMPLEX
    name: str = ""

    @property
    def n_labels(self):
        return 1 << self.label_bits

    @property
    def order(self):
        return self.group.order

    def label_object(self):
        return IndexSet(f"Z2^{self.label_bits}", self.n_labels)

    def group_object(self):
        return IndexSet(self.group.label, self.group.order)

    def with_semiring(self, semiring):
        return HspInstance(self.group, self.subgroup, self.label_bits, self.labels,
                           self.quotient, self.coset_labels, get_semiring(semiring), self.name)

    def describe(self):
        return {
            "name": self.name,
            "group": self.group.label,
            "group_order": self.group.order,
            "subgroup": self.subgroup.names() if self.subgroup.order <= 64 else None,
            "subgroup_order": self.subgroup.order,
            "label_bits": self.label_bits,
            "semiring": self.semiring.name,
        }


def verify_promise(G, H, labels, qd=None):
    """Raise :class:`PromiseViolationError` unless ``labels`` is constant and distinct on cosets."""
    qd = qd or quotient(G, H)
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (G.order,):
        raise ValueError(f"labelling must list one label per element ({G.order}), got {labels.shape}")
    per_coset = labels[qd.reps]
    bad = np.nonzero(labels != per_coset[qd.q])[0]
    if bad.size:
        g = int(bad[0])
        h = int(qd.reps[qd.q[g]])
        raise PromiseViolationError(
            f"elements {G.element_name(h)} and {G.element_name(g)} share a coset "
            f"but have labels {labels[h]} and {labels[g]}",
            witness=(h, g),
        )
    vals, first, counts = np.unique(per_coset, return_index=True, return_counts=True)
    if (counts > 1).any():
        v = vals[np.argmax(counts > 1)]
        a, b = np.nonzero(per_coset == v)[0][:2]
        ra, rb = int(qd.reps[a]), int(qd.reps[b])
        raise PromiseViolationError(
            f"cosets of {G.element_name(ra)} and {G.element_name(rb)} share the label {v}",
            witness=(ra, rb),
        )
    return per_coset


def build_instance(G, H_gens, label_bits=None, labeling=None, semiring=COMPLEX, name=""):
    """An instance hiding ``<H_gens>`` (or a given :class:`Subgroup`) in ``G``.

    Without ``labeling`` the coset whose representative is ``k``-th smallest
    gets label ``k``. With ``labeling`` (one label per element, as integers
    or bit strings) the promise is checked and the coset labels are read off.
    """
    sr = get_semiring(semiring)
    H = H_gens if isinstance(H_gens, Subgroup) else subgroup_closure(G, list(H_gens))
    qd = quotient(G, H)
    n_cosets = qd.quotient.order
    need = max(1, ceil(log2(n_cosets))) if n_cosets > 1 else 1
    if label_bits is None:
        label_bits = need
    label_bits = int(label_bits)
    if label_bits < 1 or (1 << label_bits) < n_cosets:
        raise ValueError(f"{label_bits} label bits cannot separate {n_cosets} cosets")
    if label_bits > 62:
        raise ValueError("label width above 62 bits is not supported")
    if labeling is None:
        s = np.empty(n_cosets, dtype=np.int64)
        s[qd.coset_order] = np.arange(n_cosets)
        labels = s[qd.q]
    else:
        labels = np.array([parse_label(v, label_bits) for v in labeling], dtype=np.int64)
        s = verify_promise(G, H, labels, qd)
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    for arr in (labels, s):
        arr.setflags(write=False)
    return HspInstance(G, H, label_bits, labels, qd, s, sr, name)


def simon_instance(N, z, labeling=None, semiring=COMPLEX, label_bits=None):
    """Simon's problem on ``Z_2^N`` with hidden period ``z`` (an int or bit string)."""
    G = AbelianGroup([2] * N)
    zi = G.index(z) if isinstance(z, str) else int(z)
    if not 0 < zi < G.order:
        raise ValueError("the hidden period z must be a non-zero element of Z_2^N")
    return build_instance(G, [zi], label_bits=label_bits or max(1, N - 1),
                          labeling=labeling, semiring=semiring,
                          name=f"simon N={N} z={G.element_name(zi)}")


# --- the oracle --------------------------------------------------------------------

@dataclass(frozen=True)
class Oracle:
    """``|g, t> -> |g, f(g) XOR t>`` as a permutation of basis indices."""

    permutation: np.ndarray
    objects: tuple
    semiring: object
    decomposition_residual: float
    unitarity_residual: float
    dense_checked: bool

    @property
    def dim(self):
        return int(self.permutation.size)

    def tensor(self):
        if self.dim > DENSE_ORACLE_LIMIT:
            raise SizeLimitError(f"oracle dimension {self.dim} exceeds {DENSE_ORACLE_LIMIT}")
        return from_function(self.permutation, self.objects, self.objects, self.semiring)

    def apply(self, vec):
        out = np.zeros_like(vec)
        out[self.permutation] = vec
        return out


def _label_structure(inst, sr):
    return group_structure(AbelianGroup([2] * inst.label_bits, label=f"Z2^{inst.label_bits}"), sr)


def _oracle_layers(inst, sr):
    """Copy the group wire, map one copy to its label, multiply into the label wire."""
    Go, Lo = inst.group_object(), inst.label_object()
    copy = point_structure(Go, sr).comult
    fmap = from_function(inst.labels, Go, Lo, sr)
    xor = _label_structure(inst, sr).mult
    return [(copy, 0), (fmap, 1), (xor, 1)]


def build_oracle(inst, tol=1e-9, check=True):
    """Build the oracle directly and from its decomposition and compare them.

    Up to dimension ``DENSE_ORACLE_LIMIT`` both constructions are dense
    tensors and unitarity is checked as ``U†U = 1 = UU†``. Beyond it each
    layer of the decomposition is a basis function and the comparison is
    made on the composed functions; unitarity reduces to bijectivity.
    """
    sr = inst.semiring
    Go, Lo = inst.group_object(), inst.label_object()
    perm = kernels.oracle_permutation(inst.labels, inst.n_labels)
    perm.setflags(write=False)
    dim = perm.size
    dense = dim <= DENSE_ORACLE_LIMIT
    dec = uni = 0.0
    if check and dense:
        direct = from_function(perm, (Go, Lo), (Go, Lo), sr)
        composite = evaluate_layers(_oracle_layers(inst, sr), (Go, Lo), sr)
        dec = residual(direct, composite)
        idt = identity((Go, Lo), sr)
        uni = max(residual(compose(direct, dagger(direct)), idt),
                  residual(compose(dagger(direct), direct), idt))
    elif check:
        L = inst.n_labels
        g, t = np.divmod(np.arange(dim, dtype=np.int64), L)
        # copy: (g, t) -> (g, g, t); label map on the middle wire; XOR on the last two
        composed = g * L + np.bitwise_xor(inst.labels[g], t)
        dec = float(np.any(composed != perm))
        uni = float(np.unique(perm).size != dim)
    if dec > (0.0 if sr is BOOLEAN else tol):
        raise OracleDecompositionError(f"oracle decomposition residual {dec:.3e}")
    return Oracle(perm, (Go, Lo), sr, float(dec), float(uni), dense)


# --- outcome distributions -----------------------------------------------------------

@dataclass
class OutcomeDistribution:
    """Joint distribution over labels ``labels[i]`` and characters ``chars[j]``.

    ``amps[i, j]`` is ``c_{b,χ}`` (``None`` for closed-form distributions) and
    ``probs[i, j]`` its squared modulus. Labels that are absent have
    probability exactly zero.
    """

    group: object
    label_bits: int
    labels: np.ndarray
    chars: np.ndarray
    probs: np.ndarray
    amps: np.ndarray = None
    method: str = ""
    notes: list = field(default_factory=list)

    def total(self):
        return float(self.probs.sum())

    def prob(self, b, chi):
        i = np.searchsorted(self.labels, b)
        j = np.searchsorted(self.chars, chi)
        if i >= self.labels.size or self.labels[i] != b:
            return 0.0
        if j >= self.chars.size or self.chars[j] != chi:
            return 0.0
        return float(self.probs[i, j])

    def as_dict(self, tol=0.0):
        out = {}
        ii, jj = np.nonzero(self.probs > tol)
        for i, j in zip(ii, jj):
            out[(int(self.labels[i]), int(self.chars[j]))] = float(self.probs[i, j])
        return out

    def support(self, tol=1e-12):
        return sorted(self.as_dict(tol))

    def label_marginal(self):
        return dict(zip(self.labels.tolist(), self.probs.sum(axis=1).tolist()))

    def char_marginal(self):
        return dict(zip(self.chars.tolist(), self.probs.sum(axis=0).tolist()))

    def rows(self, include_zero=False, tol=1e-12):
        D = self.group.dual()
        out = []
        for i, b in enumerate(self.labels):
            for j, chi in enumerate(self.chars):
                p = float(self.probs[i, j])
                if not include_zero and p <= tol:
                    continue
                c = complex(self.amps[i, j]) if self.amps is not None else complex(sqrt(p))
                out.append({
                    "b": label_name(b, self.label_bits),
                    "chi": D.element_name(int(chi)),
                    "c_re": round(c.real, 15) + 0.0,
                    "c_im": round(c.imag, 15) + 0.0,
                    "prob": round(p, 15) + 0.0,
                })
        return out


def max_difference(d1, d2):
    """Largest entrywise probability difference, aligning labels and characters."""
    labels = np.union1d(d1.labels, d2.labels)
    chars = np.union1d(d1.chars, d2.chars)

    def dense(d):
        out = np.zeros((labels.size, chars.size))
        out[np.ix_(np.searchsorted(labels, d.labels), np.searchsorted(chars, d.chars))] = d.probs
        return out

    return float(np.max(np.abs(dense(d1) - dense(d2)))) if labels.size else 0.0


def _require_abelian(inst):
    if not inst.group.is_abelian:
        raise ValueError("this evaluator needs an abelian group; use nonabelian_distribution")


def _usable_characters(inst):
    """Character indices representable in the instance's semiring."""
    G, sr = inst.group, inst.semiring
    if sr is BOOLEAN:
        raise SemiringCapabilityError(
            "outcome probabilities need a probabilistic semiring; the boolean semiring "
            "has only the trivial character"
        )
    if sr is COMPLEX:
        return np.arange(G.order)
    if all(n == 2 for n in G.orders):
        return np.arange(G.order)
    return np.array([p for p in range(G.order) if is_real_character(G, p)], dtype=np.int64)


def _finish(inst, dist, chars):
    if chars.size < inst.group.order:
        raise PartialDistributionError(
            f"only {chars.size} of {inst.group.order} characters of {inst.group.label} "
            f"exist over the {inst.semiring.name} semiring; total mass {dist.total():.6f}",
            dist,
        )
    return dist


def exact_distribution(inst, method="auto"):
    _require_abelian(inst)
    chars = _usable_characters(inst)
    if method == "auto":
        method = "diagram" if _diagram_fits(inst) else "state_vector"
    if method == "diagram":
        dist = _diagram_distribution(inst, chars)
    elif method == "state_vector":
        dist = _state_vector_distribution(inst, chars)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _finish(inst, dist, chars)


def _diagram_fits(inst):
    G, L = inst.group.order, inst.n_labels
    return G * L <= DIAGRAM_STATE_LIMIT and G * G * L <= DIAGRAM_COPY_LIMIT


def _diagram_distribution(inst, chars):
    if not _diagram_fits(inst):
        raise SizeLimitError(
            f"diagram evaluation needs |G|*2^N <= {DIAGRAM_STATE_LIMIT} and "
            f"|G|^2*2^N <= {DIAGRAM_COPY_LIMIT}; use the state-vector path"
        )
    sr = inst.semiring
    G = inst.group
    Go = inst.group_object()
    Z = point_structure(Go, sr)
    Xl = _label_structure(inst, sr)
    n = G.order
    norm = sr.dtype.type(1 / n)
    prep = tensor_product(Z.unit, Xl.unit)
    out = prep
    for t, at in _oracle_layers(inst, sr):
        out = apply_at(out, t, at)
    table = character_table(G, COMPLEX)[chars]
    if sr is REAL:
        table = table.real
    Co = IndexSet(f"{G.label}^", int(chars.size))
    fourier_effects = Tensor(np.conj(table), Co, Go, sr)
    amps = apply_at(out, fourier_effects, 0).vector().reshape(chars.size, inst.n_labels).T
    amps = amps * norm
    probs = np.abs(amps) ** 2
    labels = np.arange(inst.n_labels)
    return OutcomeDistribution(G, inst.label_bits, labels, np.asarray(chars), probs,
                               np.array(amps), "diagram")


class _StateVector:
    """Post-oracle state: label ``labels[g]`` on group element ``g``, amplitude 1/sqrt|G|."""

    def __init__(self, inst):
        if inst.group.order > STATE_VECTOR_LIMIT:
            raise SizeLimitError(f"|G| = {inst.group.order} exceeds {STATE_VECTOR_LIMIT}")
        self.inst = inst
        self.G = inst.group
        self.sr = inst.semiring
        self.n = inst.group.order
        self.used, self.counts = np.unique(inst.labels, return_counts=True)
        # on Z_2^k the character sums are a Walsh-Hadamard transform in either semiring
        self.walsh = bool(self.G.orders) and all(k == 2 for k in self.G.orders)
        self._order = np.argsort(inst.labels, kind="stable")
        self._starts = np.concatenate(([0], np.cumsum(self.counts)))

    def members(self, i):
        return self._order[self._starts[i]:self._starts[i + 1]]

    def column(self, i):
        """The collapsed group register for label ``used[i]`` (unnormalized amplitudes)."""
        v = np.zeros(self.n, dtype=self.sr.dtype)
        v[self.members(i)] = 1 / sqrt(self.n)
        return v

    def amplitudes(self, i):
        """``c_{b,χ}`` for ``b = used[i]`` and every character ``χ``."""
        v = self.column(i)
        if self.walsh:
            w = kernels.walsh_hadamard(np.ascontiguousarray(v.real)) / sqrt(self.n)
            return w.astype(self.sr.dtype)
        shape = self.G.orders or (1,)
        return np.fft.fftn(v.reshape(shape)).reshape(-1) / sqrt(self.n)


def _state_vector_distribution(inst, chars):
    sv = _StateVector(inst)
    if sv.used.size * inst.group.order > FULL_DISTRIBUTION_LIMIT:
        raise SizeLimitError("full distribution too large; sample lazily instead")
    amps = np.stack([sv.amplitudes(i)[chars] for i in range(sv.used.size)])
    if inst.semiring is REAL:
        amps = amps.real
    probs = np.abs(amps) ** 2
    return OutcomeDistribution(inst.group, inst.label_bits, sv.used.copy(), np.asarray(chars),
                               probs, amps, "state_vector")


def theoretical_distribution(inst):
    """``|H|^2/|G|^2`` on ``im(s) x Ann(H)``, zero elsewhere."""
    _require_abelian(inst)
    G, H = inst.group, inst.subgroup
    ann = annihilator(G, H).elements
    labels = np.unique(inst.coset_labels)
    p = (H.order / G.order) ** 2
    probs = np.full((labels.size, ann.size), p)
    return OutcomeDistribution(G, inst.label_bits, labels, np.asarray(ann), probs, None,
                               "closed_form")


# --- sampling ------------------------------------------------------------------------

class Sampler:
    """Seeded i.i.d. draws of ``(b, χ)`` pairs.

    Each draw consumes one uniform ``u`` from a Philox generator and inverts
    the joint CDF over lexicographically ordered ``(b, χ)``: the label block
    is found from the cumulative label probabilities, and the character
    within the block from the conditional distribution of that label, which
    is computed on demand from the collapsed state.
    """

    CACHE = 64

    def __init__(self, inst, seed=0, zero_tol=1e-12):
        _require_abelian(inst)
        chars = _usable_characters(inst)
        if chars.size < inst.group.order:
            raise SemiringCapabilityError(
                f"sampling over the {inst.semiring.name} semiring needs every character "
                f"of {inst.group.label}"
            )
        self.inst = inst
        self.seed = seed
        self.rng = np.random.Generator(np.random.Philox(seed))
        self.sv = _StateVector(inst)
        self.zero_tol = zero_tol
        self.label_cdf = np.cumsum(self.sv.counts) / inst.group.order
        self.label_cdf[-1] = 1.0
        self._cond = OrderedDict()
        self.draws = 0

    def _conditional(self, i):
        cdf = self._cond.get(i)
        if cdf is None:
            p = np.abs(self.sv.amplitudes(i)) ** 2
            p[p < self.zero_tol] = 0.0
            cdf = np.cumsum(p / p.sum())
            cdf[-1] = 1.0
            self._cond[i] = cdf
            if len(self._cond) > self.CACHE:
                self._cond.popitem(last=False)
        else:
            self._cond.move_to_end(i)
        return cdf

    def draw(self):
        u = self.rng.random()
        i = int(np.searchsorted(self.label_cdf, u, side="right"))
        i = min(i, self.label_cdf.size - 1)
        lo = self.label_cdf[i - 1] if i else 0.0
        w = (u - lo) / (self.label_cdf[i] - lo)
        cdf = self._conditional(i)
        j = min(int(np.searchsorted(cdf, w, side="right")), cdf.size - 1)
        self.draws += 1
        return int(self.sv.used[i]), j

    def __iter__(self):
        while True:
            yield self.draw()

    def take(self, count):
        return [self.draw() for _ in range(count)]


def sample(inst, seed, count):
    return Sampler(inst, seed).take(count)


# --- non-abelian measurement -----------------------------------------------------------

@dataclass
class NonabelianDistribution:
    group: object
    label_bits: int
    labels: np.ndarray
    irreps: list
    probs: np.ndarray
    closed_form: np.ndarray
    kernel_condition: np.ndarray
    sum_condition: np.ndarray

    def total(self):
        return float(self.probs.sum())

    def support(self, tol=1e-12):
        ii, jj = np.nonzero(self.probs > tol)
        return [(int(self.labels[i]), self.irreps[j].name) for i, j in zip(ii, jj)]

    def rows(self, include_zero=True):
        out = []
        for i, b in enumerate(self.labels):
            for j, rho in enumerate(self.irreps):
                p = float(self.probs[i, j])
                if not include_zero and p <= 1e-12:
                    continue
                out.append({
                    "b": label_name(b, self.label_bits),
                    "rho": rho.name,
                    "dim": rho.dim,
                    "prob": round(p, 15) + 0.0,
                    "closed_form": round(float(self.closed_form[i, j]), 15) + 0.0,
                    "H_in_kernel": bool(self.kernel_condition[j]),
                    "sum_over_H_nonzero": bool(self.sum_condition[j]),
                })
        return out


def nonabelian_distribution(inst, irreps, tol=1e-9):
    """Probabilities ``||A_{b,ρ}||_F^2`` of the irrep measurement.

    ``A_{b,ρ} = sqrt(d_ρ/|G|) Σ_g conj(ρ(g)) ψ_b(g)`` where ``ψ_b`` is the
    collapsed group register for label ``b``. The closed form
    ``|H|^2/|G|^2 · d_ρ^2`` (when ``H`` lies in the kernel of ``ρ``) and two
    candidate support conditions are reported next to it.
    """
    G = inst.group
    if G.is_abelian and not hasattr(G, "table"):
        G = cayley_from_abelian(G)
    for rho in irreps:
        rep = validate_irrep(G, rho, tol)
        if not rep.passed:
            bad = ", ".join(c.name for c in rep.failures())
            raise IncompleteIrrepError(f"irrep {rho.name} fails: {bad}")
    if sum(r.dim ** 2 for r in irreps) != G.order:
        raise IncompleteIrrepError(
            f"irrep dimensions give sum d^2 = {sum(r.dim ** 2 for r in irreps)} != |G| = {G.order}"
        )
    n = G.order
    used = np.unique(inst.labels)
    H = inst.subgroup.elements
    probs = np.zeros((used.size, len(irreps)))
    closed = np.zeros_like(probs)
    ker = np.zeros(len(irreps), dtype=bool)
    nonzero_sum = np.zeros(len(irreps), dtype=bool)
    for j, rho in enumerate(irreps):
        M = np.asarray(rho.matrices)
        ker[j] = bool(np.max(np.abs(M[H] - np.eye(rho.dim))) <= tol)
        nonzero_sum[j] = bool(np.max(np.abs(M[H].sum(axis=0))) > tol)
        for i, b in enumerate(used):
            psi = (inst.labels == b) / sqrt(n)
            A = sqrt(rho.dim / n) * np.einsum("gij,g->ij", M.conj(), psi)
            probs[i, j] = float(np.sum(np.abs(A) ** 2))
            closed[i, j] = (inst.subgroup.order / n) ** 2 * rho.dim ** 2 if ker[j] else 0.0
    return NonabelianDistribution(inst.group, inst.label_bits, used, list(irreps), probs,
                                  closed, ker, nonzero_sum)


# --- tensor identities of the quotient construction -----------------------------------------

def quotient_tensors(inst):
    """``q: G -> G/H``, section ``r``, inclusion ``i_H: H -> G`` and labelling ``s``."""
    sr = inst.semiring
    qd = inst.quotient
    Go = inst.group_object()
    Qo = IndexSet(f"{inst.group.label}/H", qd.quotient.order)
    Ho = IndexSet(f"H<{inst.group.label}", inst.subgroup.order)
    q = from_function(qd.q, Go, Qo, sr)
    r = from_function(qd.reps, Qo, Go, sr)
    i_h = from_function(qd.inclusion, Ho, Go, sr)
    s = from_function(inst.coset_labels, Qo, inst.label_object(), sr)
    return {"q": q, "r": r, "i_H": i_h, "s": s, "objects": (Go, Qo, Ho)}


def instance_identities(inst, tol=1e-9):
    """Tensor identities of the quotient data, coset states and annihilator.

    Returns a list of :class:`IdentityCheck`; meant for small instances.
    """
    sr = inst.semiring
    thr = 0.0 if sr is BOOLEAN else tol
    G, H = inst.group, inst.subgroup
    T = quotient_tensors(inst)
    q, r, i_h, s = T["q"], T["r"], T["i_H"], T["s"]
    Go, Qo, Ho = T["objects"]
    Q = inst.quotient.quotient
    ZH = point_structure(Ho, sr)
    XQ = group_structure(Q, sr, obj=Qo)
    checks = []

    def add(name, value):
        checks.append(IdentityCheck(name, float(value), float(value) <= thr))

    add("quotient kills subgroup", residual(compose(i_h, q), compose(ZH.counit, XQ.unit)))
    add("unit effect pulls back to subgroup",
        residual(compose(q, XQ.counit), compose(dagger(i_h), ZH.counit)))
    add("section splits quotient", residual(compose(r, q), identity(Qo, sr)))
    add("section is isometric", residual(compose(r, dagger(r)), identity(Qo, sr)))
    add("inclusion is isometric", residual(compose(i_h, dagger(i_h)), identity(Ho, sr)))
    add("labelling is injective", residual(compose(s, dagger(s)), identity(Qo, sr)))

    worst = 0.0
    qt = dagger(q)
    table = G.mul_table() if G.order <= 4096 else None
    for c in range(Q.order):
        e = np.zeros(Q.order)
        e[c] = 1
        got = compose(Tensor(e.reshape(-1, 1), Qo, (), sr), qt).vector()
        want = np.zeros(G.order)
        gb = int(inst.quotient.reps[c])
        members = table[gb, H.elements] if table is not None else inst.quotient.coset(c)
        want[members] = 1
        worst = max(worst, sr.residual(np.asarray(got), sr.coerce(want)))
    add("coset state", worst)

    if G.is_abelian and sr is not BOOLEAN:
        chars = _usable_characters(inst)
        ann = set(annihilator(G, H).elements.tolist())
        tab = character_table(G, COMPLEX)
        mismatch = 0
        for p in chars:
            row = tab[p].real if sr is REAL else tab[p]
            eff = Tensor(np.conj(row).reshape(1, -1), (), Go, sr)
            kills = residual(compose(i_h, eff), ZH.counit) <= tol
            mismatch += kills != (int(p) in ann)
        add("annihilator definition", mismatch)

        # unnormalized amplitude on a support point
        U = evaluate_layers(_oracle_layers(inst, sr), (Go, inst.label_object()), sr) \
            if G.order * inst.n_labels <= DENSE_ORACLE_LIMIT else None
        if U is not None:
            Zg = point_structure(Go, sr)
            Xl = _label_structure(inst, sr)
            out = compose(tensor_product(Zg.unit, Xl.unit), U)
            b = int(inst.coset_labels[0])
            chi = int(sorted(ann)[-1])
            row = tab[chi].real if sr is REAL else tab[chi]
            eb = np.zeros(inst.n_labels)
            eb[b] = 1
            eff = Tensor(np.kron(np.conj(row), eb).reshape(1, -1), (), (Go, inst.label_object()), sr)
            c = compose(out, eff).item()
            add("unnormalized amplitude squared is |H|^2", abs(abs(c) ** 2 - H.order ** 2))
            add("uniform subgroup state has norm |H|",
                abs(compose(ZH.unit, dagger(ZH.unit)).item() - H.order))
    return checks


def strong_pair_for(inst):
    return strong_pair(inst.group, inst.semiring)
