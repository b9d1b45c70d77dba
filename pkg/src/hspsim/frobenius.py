"""Point and group structures as tensors, and numerical checks of their laws.

Every law is verified by contracting both sides and taking the largest
entrywise residual. Cups and caps are never stored: they are the composites
``comult ∘ unit`` and ``counit ∘ mult`` of the structure they belong to.
"""
import json
from dataclasses import dataclass, field, replace
from math import sqrt

import numpy as np

from hspsim import kernels
from hspsim.groups import Character, character_table, is_real_character
from hspsim.semiring import BOOLEAN, COMPLEX, REAL, get_semiring
from hspsim.tensor import (
    IndexSet,
    Tensor,
    basis_state,
    compose,
    dagger,
    evaluate_layers,
    from_function,
    identity,
    reorder_codomain,
    residual,
    scalar,
    state,
    swap,
    tensor_product,
)


class PreconditionError(ValueError):
    """A law suite was asked to run on structures that fail their own laws."""


def group_object(K):
    names = tuple(K.element_name(i) for i in range(K.order)) if K.order <= 4096 else None
    return IndexSet(K.label, K.order, names)


def _as_object(K):
    return K if isinstance(K, IndexSet) else group_object(K)


@dataclass(frozen=True)
class FrobeniusStructure:
    """A dagger Frobenius algebra on ``obj``.

    ``xi`` is the normalisation scalar with ``mult ∘ comult = xi_sq · id``
    for quasi-special structures; ``xi`` is ``None`` when no square root of
    ``xi_sq`` exists in the semiring (the boolean case).
    """

    obj: IndexSet
    mult: Tensor
    unit: Tensor
    comult: Tensor
    counit: Tensor
    xi: object
    xi_sq: object
    special: bool
    commutative: bool
    balanced_symmetric: bool = True
    name: str = ""

    @property
    def semiring(self):
        return self.mult.semiring

    @classmethod
    def from_algebra(cls, mult, unit, **kw):
        return cls(mult.codomain[0], mult, unit, dagger(mult), dagger(unit), **kw)

    def with_mult(self, mult, unit=None, name=None):
        """Same flags with a replaced (co)multiplication; used for negative controls."""
        unit = self.unit if unit is None else unit
        return replace(
            self, mult=mult, unit=unit, comult=dagger(mult), counit=dagger(unit),
            name=name or self.name + "*",
        )

    def cup(self):
        return compose(self.unit, self.comult)

    def cap(self):
        return compose(self.mult, self.counit)


def point_structure(K, semiring=COMPLEX, basis=None):
    """Copy/delete structure of the basis of ``K`` (or of the columns of ``basis``).

    ``basis`` is an optional orthonormal matrix whose columns replace the
    computational basis; it exists so tests can build a point structure that
    is not compatible with a given group structure.
    """
    sr = get_semiring(semiring)
    obj = _as_object(K)
    n = obj.size
    copy = from_function(np.arange(n) * (n + 1), obj, (obj, obj), sr)
    dele = Tensor(np.ones((1, n)), (), obj, sr)
    if basis is not None:
        U = Tensor(np.asarray(basis), obj, obj, sr)
        Ud = dagger(U)
        copy = compose(compose(Ud, copy), tensor_product(U, U))
        dele = compose(Ud, dele)
    return FrobeniusStructure(
        obj, dagger(copy), dagger(dele), copy, dele,
        xi=sr.one(), xi_sq=sr.one(), special=True, commutative=True,
        name=f"point({obj.label})",
    )


def group_structure(K, semiring=COMPLEX, obj=None):
    """Group multiplication of ``K``; ``obj`` optionally relabels the carrier index set."""
    sr = get_semiring(semiring)
    obj = obj or _as_object(K)
    table = K.mul_table()
    mult = from_function(table.reshape(-1), (obj, obj), obj, sr)
    unit = basis_state(obj, K.unit, sr)
    xi = None if sr is BOOLEAN else sr.dtype.type(sqrt(K.order))
    return FrobeniusStructure.from_algebra(
        mult, unit, xi=xi, xi_sq=sr.from_count(K.order),
        special=K.order == 1, commutative=bool(K.is_abelian),
        name=f"group({obj.label})",
    )


@dataclass(frozen=True)
class StrongPair:
    Z: FrobeniusStructure
    X: FrobeniusStructure
    antipode: Tensor

    def swapped(self):
        """The pair with colours exchanged; the antipode is shared."""
        return StrongPair(self.X, self.Z, self.antipode)


def antipode_of(Z, X):
    """``(cap_Z ⊗ 1)(1 ⊗ cup_X)``, the map H -> H built from the two structures."""
    H = Z.obj
    return evaluate_layers([(X.cup(), 1), (Z.cap(), 0)], H, Z.semiring)


def strong_pair(K, semiring=COMPLEX):
    Z = point_structure(K, semiring)
    X = group_structure(K, semiring)
    return StrongPair(Z, X, antipode_of(Z, X))


def make_pair(Z, X):
    return StrongPair(Z, X, antipode_of(Z, X))


# --- cups, caps and transposes on composite objects ----------------------------

def product_cup(structs):
    """Cup on ``A_1 ⊗ ... ⊗ A_n`` with output wires ``(A_1..A_n, A_1..A_n)``."""
    if not structs:
        return scalar(1)
    raw = tensor_product(*(F.cup() for F in structs))
    n = len(structs)
    order = [2 * i for i in range(n)] + [2 * i + 1 for i in range(n)]
    return reorder_codomain(raw, order)


def product_cap(structs):
    return dagger(product_cup(structs))


def transpose(f, dom_structs, cod_structs):
    """``(1_A ⊗ cap_B)(1_A ⊗ f ⊗ 1_B)(cup_A ⊗ 1_B)``, a map ``B -> A``.

    ``dom_structs`` / ``cod_structs`` give the structure on each wire of the
    domain ``A`` and codomain ``B`` of ``f``.
    """
    sr = f.semiring
    cup = product_cup(dom_structs) if dom_structs else scalar(1, sr)
    cap = product_cap(cod_structs) if cod_structs else scalar(1, sr)
    n = len(f.domain)
    return evaluate_layers([(cup, 0), (f, n), (cap, n)], f.codomain, sr)


# --- law reports ---------------------------------------------------------------

@dataclass(frozen=True)
class LawResult:
    name: str
    anchor: str
    residual: float
    passed: bool

    def to_dict(self):
        return {"law": self.name, "anchor": self.anchor,
                "residual": float(self.residual), "pass": bool(self.passed)}


@dataclass(frozen=True)
class LawReport:
    subject: str
    results: tuple = field(default_factory=tuple)
    notes: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    @property
    def max_residual(self):
        return max((r.residual for r in self.results), default=0.0)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def get(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __add__(self, other):
        return LawReport(f"{self.subject} + {other.subject}",
                         self.results + other.results, self.notes + other.notes)

    def to_dict(self):
        return {"subject": self.subject, "pass": self.passed,
                "laws": [r.to_dict() for r in self.results], "notes": list(self.notes)}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def lines(self):
        for r in self.results:
            yield f"{'PASS' if r.passed else 'FAIL'}  {r.name:<32} {r.residual:9.2e}  {r.anchor}"


def _threshold(sr, tol):
    return 0.0 if sr is BOOLEAN else tol


def _law(name, anchor, pairs, tol, sr):
    res = max(residual(a, b) for a, b in pairs)
    return LawResult(name, anchor, res, res <= _threshold(sr, tol))


def _layers(H, sr, *layers, domain=None):
    return evaluate_layers(list(layers), domain if domain is not None else H, sr)


def check_frobenius(F, tol=1e-9):
    sr = F.semiring
    H = F.obj
    mu, eta, de, ep = F.mult, F.unit, F.comult, F.counit
    idH = identity(H, sr)
    HH = (H, H)
    out = []

    out.append(_law("dagger-structure", "δ = μ†, ε = η†",
                    [(de, dagger(mu)), (ep, dagger(eta))], tol, sr))
    out.append(_law(
        "associativity", "μ(μ⊗1) = μ(1⊗μ)",
        [(_layers(H, sr, (mu, 0), (mu, 0), domain=(H, H, H)),
          _layers(H, sr, (mu, 1), (mu, 0), domain=(H, H, H)))], tol, sr))
    out.append(_law(
        "coassociativity", "(δ⊗1)δ = (1⊗δ)δ",
        [(_layers(H, sr, (de, 0), (de, 0)), _layers(H, sr, (de, 0), (de, 1)))], tol, sr))
    out.append(_law(
        "unit-law", "μ(η⊗1) = 1 = μ(1⊗η)",
        [(_layers(H, sr, (eta, 0), (mu, 0)), idH),
         (_layers(H, sr, (eta, 1), (mu, 0)), idH)], tol, sr))
    out.append(_law(
        "counit-law", "(ε⊗1)δ = 1 = (1⊗ε)δ",
        [(_layers(H, sr, (de, 0), (ep, 0)), idH),
         (_layers(H, sr, (de, 0), (ep, 1)), idH)], tol, sr))
    mid = _layers(H, sr, (mu, 0), (de, 0), domain=HH)
    out.append(_law(
        "frobenius-law", "(μ⊗1)(1⊗δ) = δμ = (1⊗μ)(δ⊗1)",
        [(_layers(H, sr, (de, 1), (mu, 0), domain=HH), mid),
         (_layers(H, sr, (de, 0), (mu, 1), domain=HH), mid)], tol, sr))
    loop = compose(de, mu)
    if F.special:
        out.append(_law("speciality", "μδ = 1", [(loop, idH)], tol, sr))
    else:
        target = Tensor(sr.mul(idH.entries, F.xi_sq), H, H, sr)
        out.append(_law("quasi-speciality", "μδ = ξ†ξ · 1", [(loop, target)], tol, sr))
        if F.xi is not None:
            xx = sr.mul(sr.dagger(F.xi), F.xi)
            r = float(np.abs(xx - F.xi_sq))
            out.append(LawResult("normalisation-scalar", "ξ†ξ = |K|", r, r <= tol))
    if F.commutative:
        sw = swap(H, H, sr)
        out.append(_law("commutativity", "μσ = μ, σδ = δ",
                        [(compose(sw, mu), mu), (compose(de, sw), de)], tol, sr))
    sw = swap(H, H, sr)
    out.append(_law("balanced-symmetry", "εμσ = εμ, σδη = δη",
                    [(compose(sw, F.cap()), F.cap()), (compose(F.cup(), sw), F.cup())], tol, sr))
    return LawReport(F.name, tuple(out))


def check_strong_complementarity(pair, tol=1e-9, require_frobenius=True):
    """Hopf law, antipode forms, bialgebra equations and transpose conditions.

    With ``require_frobenius`` (the default) both structures must pass
    :func:`check_frobenius` first; otherwise :class:`PreconditionError` is
    raised. Negative controls on deliberately broken tables pass ``False``
    to see which of the complementarity equations survive.
    """
    Z, X, s = pair.Z, pair.X, pair.antipode
    if require_frobenius:
        for F in (Z, X):
            rep = check_frobenius(F, tol)
            if not rep.passed:
                bad = ", ".join(r.name for r in rep.failures())
                raise PreconditionError(f"{F.name} fails its Frobenius laws: {bad}")
    sr = Z.semiring
    H = Z.obj
    idH = identity(H, sr)
    out = []

    def hopf(A, B):
        lhs1 = _layers(H, sr, (A.comult, 0), (s, 0), (B.mult, 0))
        lhs2 = _layers(H, sr, (A.comult, 0), (s, 1), (B.mult, 0))
        rhs = compose(A.counit, B.unit)
        return [(lhs1, rhs), (lhs2, rhs)]

    out.append(_law("hopf-law", "μ•(s⊗1)δ∘ = η•ε∘ = μ•(1⊗s)δ∘", hopf(Z, X), tol, sr))
    out.append(_law("hopf-law-swapped", "μ∘(s⊗1)δ• = η∘ε• = μ∘(1⊗s)δ•", hopf(X, Z), tol, sr))

    cupX, cupZ, capX, capZ = X.cup(), Z.cup(), X.cap(), Z.cap()
    s4 = _layers(H, sr, (cupZ, 0), (capX, 1))
    out.append(_law("antipode-self-adjoint", "(cap∘⊗1)(1⊗cup•) = (1⊗cap•)(cup∘⊗1) = s†",
                    [(s, s4), (s, dagger(s))], tol, sr))
    s2 = _layers(H, sr, (cupX, 0), (capZ, 1))
    s3 = _layers(H, sr, (cupZ, 1), (capX, 0))
    out.append(_law("antipode-alternative-forms", "(1⊗cap∘)(cup•⊗1) = (cap•⊗1)(1⊗cup∘) = s",
                    [(s2, s), (s3, s)], tol, sr))
    out.append(_law("antipode-unitary", "s†s = 1 = ss†",
                    [(compose(s, dagger(s)), idH), (compose(dagger(s), s), idH)], tol, sr))

    HH = (H, H)
    lhs = compose(X.mult, Z.comult)
    rhs = _layers(H, sr, (Z.comult, 1), (Z.comult, 0), (swap(H, H, sr), 1),
                  (X.mult, 0), (X.mult, 1), domain=HH)
    out.append(_law("bialgebra-copy-mult", "δ∘μ• = (μ•⊗μ•)(1⊗σ⊗1)(δ∘⊗δ∘)", [(lhs, rhs)], tol, sr))
    out.append(_law("bialgebra-delete-mult", "ε∘μ• = ε∘⊗ε∘",
                    [(compose(X.mult, Z.counit), tensor_product(Z.counit, Z.counit))], tol, sr))
    out.append(_law("bialgebra-copy-unit", "δ∘η• = η•⊗η•",
                    [(compose(X.unit, Z.comult), tensor_product(X.unit, X.unit))], tol, sr))
    out.append(_law("bialgebra-delete-unit", "ε∘η• = 1 (empty diagram)",
                    [(compose(X.unit, Z.counit), scalar(1, sr))], tol, sr))

    out.append(_law("transpose-unit", "η•† = (η•)^T w.r.t. ∘",
                    [(dagger(X.unit), transpose(X.unit, [], [Z]))], tol, sr))
    out.append(_law("transpose-mult", "μ•† = (μ•)^T w.r.t. ∘",
                    [(dagger(X.mult), transpose(X.mult, [Z, Z], [Z]))], tol, sr))
    return LawReport(f"{Z.name} / {X.name}", tuple(out))


def law_suite(K, semiring=COMPLEX, tol=1e-9):
    """Both Frobenius reports and the complementarity report for ``K``."""
    pair = strong_pair(K, semiring)
    return check_frobenius(pair.Z, tol) + check_frobenius(pair.X, tol) + \
        check_strong_complementarity(pair, tol)


# --- classical states, maps and homomorphisms -----------------------------------

def classical_state_residuals(F, psi):
    sr = F.semiring
    copy = residual(compose(psi, F.comult), tensor_product(psi, psi))
    delete = residual(compose(psi, F.counit), scalar(1, sr))
    trans = residual(dagger(psi), transpose(psi, [], [F]))
    return {"copy": copy, "delete": delete, "transpose": trans}


def is_classical_state(F, psi, tol=1e-9):
    thr = _threshold(F.semiring, tol)
    return all(v <= thr for v in classical_state_residuals(F, psi).values())


def classical_map_residuals(Fa, Fb, f):
    copy = residual(compose(f, Fb.comult), compose(Fa.comult, tensor_product(f, f)))
    delete = residual(compose(f, Fb.counit), Fa.counit)
    trans = residual(dagger(f), transpose(f, [Fa], [Fb]))
    return {"copy": copy, "delete": delete, "transpose": trans}


def is_classical_map(Fa, Fb, f, tol=1e-9):
    thr = _threshold(f.semiring, tol)
    return all(v <= thr for v in classical_map_residuals(Fa, Fb, f).values())


def pair_homomorphism_residuals(pairH, pairK, F):
    out = classical_map_residuals(pairH.Z, pairK.Z, F)
    out["mult"] = residual(compose(pairH.X.mult, F), compose(tensor_product(F, F), pairK.X.mult))
    out["unit"] = residual(compose(pairH.X.unit, F), pairK.X.unit)
    out["inverse"] = residual(compose(pairH.antipode, F), compose(F, pairK.antipode))
    return out


def is_pair_homomorphism(pairH, pairK, F, tol=1e-9):
    thr = _threshold(F.semiring, tol)
    return all(v <= thr for v in pair_homomorphism_residuals(pairH, pairK, F).values())


def adjoint_homomorphism_holds(pairH, pairK, F, tol=1e-9):
    """Whether ``F†`` is a homomorphism of the colour-swapped pairs, reversed."""
    return is_pair_homomorphism(pairK.swapped(), pairH.swapped(), dagger(F), tol)


# --- characters ---------------------------------------------------------------

def character_states(K, semiring=COMPLEX):
    """``(character, Σ_g χ(g)|g⟩)`` for every character of abelian ``K`` in the semiring.

    Real scalars keep only the real-valued characters; the booleans keep only
    the trivial one.
    """
    if not K.is_abelian:
        raise ValueError("character states are defined here for abelian groups only")
    sr = get_semiring(semiring)
    obj = group_object(K)
    table = character_table(K, COMPLEX)
    out = []
    for p in range(K.order):
        row = table[p]
        if sr is COMPLEX:
            vec = row
        elif sr is REAL:
            if not is_real_character(K, p):
                continue
            vec = row.real
        else:
            if p != 0:
                continue
            vec = np.ones(K.order, dtype=bool)
        out.append((Character.of(K, p), state(vec, obj, sr)))
    return out


def _bool_group_states(K):
    n = K.order
    if n > 20:
        raise ValueError("boolean character census is exhaustive; |K| must be <= 20")
    masks = kernels.bool_character_scan(
        np.ascontiguousarray(K.mul_table(), dtype=np.int64),
        np.ascontiguousarray(K.inverse_table(), dtype=np.int64), int(K.unit))
    shifts = np.arange(n - 1, -1, -1)
    return [((int(m) >> shifts) & 1).astype(bool) for m in masks]


def character_census(K, semiring=COMPLEX, tol=1e-9):
    """All verified classical states of the group structure of ``K``.

    Over the booleans every subset of ``K`` is a candidate and the scan is
    exhaustive; over real or complex scalars the candidates are the
    character vectors. Every candidate is re-checked with
    :func:`is_classical_state` before it is returned.
    """
    sr = get_semiring(semiring)
    X = group_structure(K, sr)
    if sr is BOOLEAN:
        cands = [state(v, X.obj, sr) for v in _bool_group_states(K)]
    else:
        cands = [t for _, t in character_states(K, sr)]
    return [t for t in cands if is_classical_state(X, t, tol)]


def has_enough_classical_states(F, states, tol=1e-9):
    """Span test over fields; pairwise separation of basis points over the booleans.

    The boolean branch is a proxy (linear spans need subtraction) and is
    reported as such by callers.
    """
    sr = F.semiring
    n = F.obj.size
    if not states:
        return False
    M = np.stack([np.asarray(t.vector()) for t in states], axis=1)
    if sr.field_like:
        return int(np.linalg.matrix_rank(M, tol=max(tol, 1e-12) * n)) == n
    rows = [tuple(r) for r in M.astype(bool)]
    return len(set(rows)) == n


# --- group law recovered from a strong pair -------------------------------------

@dataclass(frozen=True)
class RecoveredGroup:
    table: np.ndarray
    unit: int
    inverse: np.ndarray


def _which_basis(vec, tol):
    v = np.abs(np.asarray(vec))
    k = int(np.argmax(v))
    w = v.copy()
    w[k] -= 1
    if np.max(np.abs(w)) > tol:
        return None
    return k


def recover_group(pair, tol=1e-9):
    """Read a group table off the classical states of ``pair.Z``.

    Applies ``X.mult`` to pairs of basis states, ``X.unit`` and the antipode
    to basis states; raises ``ValueError`` if any result is not a basis
    state.
    """
    n = pair.Z.obj.size
    mu = np.asarray(pair.X.mult.entries)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            k = _which_basis(mu[:, a * n + b], tol)
            if k is None:
                raise ValueError(f"product of basis states {a}, {b} is not a basis state")
            table[a, b] = k
    unit = _which_basis(pair.X.unit.vector(), tol)
    if unit is None:
        raise ValueError("unit is not a basis state")
    s = np.asarray(pair.antipode.entries)
    inverse = np.empty(n, dtype=np.int64)
    for a in range(n):
        k = _which_basis(s[:, a], tol)
        if k is None:
            raise ValueError(f"antipode of basis state {a} is not a basis state")
        inverse[a] = k
    return RecoveredGroup(table, unit, inverse)
