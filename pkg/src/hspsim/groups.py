"""Finite groups, subgroups, quotients, characters and annihilators.

Abelian groups live in cyclic-factor form ``Z_{n_1} x ... x Z_{n_k}``; their
elements are flat mixed-radix indices (leftmost factor slowest), so index
order is lexicographic order of residue vectors. Small non-abelian groups are
given by a validated Cayley table. Both expose the same small protocol used by
the tensor-level code: ``order``, ``unit``, ``mul_table()``,
``inverse_table()``, ``is_abelian`` and ``element_name(i)``.
"""
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm, prod

import numpy as np

from hspsim import kernels
from hspsim.semiring import BOOLEAN, COMPLEX, REAL, get_semiring

#: largest group for which brute-force enumeration is attempted
ENUMERATION_LIMIT = 1 << 20


class GroupTableError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


class NotRepresentableError(ValueError):
    """A character value does not exist in the requested semiring."""


# --- groups --------------------------------------------------------------------

class AbelianGroup:
    """``Z_{n_1} x ... x Z_{n_k}`` with componentwise addition.

    An empty ``orders`` list is the trivial group.
    """

    is_abelian = True
    unit = 0

    def __init__(self, orders, label=None):
        orders = tuple(int(n) for n in orders)
        if any(n < 2 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {orders}")
        self.orders = orders
        self.order = prod(orders)
        self._orders = np.array(orders, dtype=np.int64)
        self._strides = np.array(
            [prod(orders[j + 1:]) for j in range(len(orders))], dtype=np.int64
        )
        self.label = label or (" x ".join(f"Z{n}" for n in orders) if orders else "1")

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and other.orders == self.orders

    def __hash__(self):
        return hash(("abelian", self.orders))

    def __repr__(self):
        return f"AbelianGroup({list(self.orders)})"

    @property
    def rank(self):
        return len(self.orders)

    @property
    def exponent(self):
        return lcm(*self.orders) if self.orders else 1

    def dual(self):
        """The character group, identified with ``G`` via exponent vectors."""
        return AbelianGroup(self.orders, label=f"dual({self.label})")

    # element encoding
    def index(self, elem):
        if isinstance(elem, (int, np.integer)):
            i = int(elem)
            if not 0 <= i < self.order:
                raise ValueError(f"element index {i} outside {self.label}")
            return i
        if isinstance(elem, str):
            elem = [int(c) for c in elem.replace(",", " ").split()] if (
                "," in elem or " " in elem
            ) else [int(c) for c in elem]
        res = [int(m) for m in elem]
        if len(res) != self.rank:
            raise ValueError(f"element {elem!r} has {len(res)} residues, expected {self.rank}")
        if any(not 0 <= m < n for m, n in zip(res, self.orders)):
            raise ValueError(f"element {elem!r} has residues outside {self.orders}")
        return int(sum(m * s for m, s in zip(res, self._strides)))

    def residues(self, idx):
        idx = self.index(idx)
        return tuple(int(x) for x in (idx // self._strides) % self._orders)

    def residue_array(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self._strides) % self._orders

    def encode(self, residues):
        residues = np.asarray(residues, dtype=np.int64) % self._orders
        return residues @ self._strides

    def element_name(self, idx):
        res = self.residues(idx)
        if all(n <= 10 for n in self.orders):
            return "".join(str(m) for m in res)
        return "(" + ",".join(str(m) for m in res) + ")"

    # arithmetic
    def op(self, a, b):
        return self.encode(self.residue_array(a) + self.residue_array(b))

    def inv(self, a):
        return self.encode(-self.residue_array(a))

    def element_order(self, idx):
        return lcm(*(n // gcd(m, n) for m, n in zip(self.residues(idx), self.orders))) if self.rank else 1

    @cached_property
    def _mul_table(self):
        if self.order > 4096:
            raise SizeLimitError(f"Cayley table of {self.label} ({self.order}^2 entries) not built")
        idx = np.arange(self.order)
        t = self.op(idx[:, None], idx[None, :])
        t.setflags(write=False)
        return t

    def mul_table(self):
        return self._mul_table

    def inverse_table(self):
        return self.inv(np.arange(self.order))


class CayleyGroup:
    """A finite group given by its multiplication table ``table[a, b] = a*b``."""

    def __init__(self, table, names=None, label="G"):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise GroupTableError("Cayley table must be a non-empty square matrix")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise GroupTableError("Cayley table entries must lie in 0..size-1")
        left = t[t[:, :, None], np.arange(n)[None, None, :]]
        right = t[np.arange(n)[:, None, None], t[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise GroupTableError(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        units = [e for e in range(n) if np.array_equal(t[e], np.arange(n))
                 and np.array_equal(t[:, e], np.arange(n))]
        if not units:
            raise GroupTableError("table has no two-sided unit")
        e = units[0]
        inverse = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            right_inv = np.nonzero(t[a] == e)[0]
            if right_inv.size != 1 or t[right_inv[0], a] != e:
                raise GroupTableError(f"element {a} has no two-sided inverse")
            inverse[a] = right_inv[0]
        t.setflags(write=False)
        inverse.setflags(write=False)
        self.table = t
        self.order = n
        self.unit = int(e)
        self._inverse = inverse
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        if len(self.names) != n:
            raise GroupTableError("one name per element required")
        self.label = label
        self.is_abelian = bool(np.array_equal(t, t.T))

    def __repr__(self):
        return f"CayleyGroup({self.label}, order={self.order})"

    def index(self, elem):
        if isinstance(elem, str) and elem in self.names:
            return self.names.index(elem)
        i = int(elem)
        if not 0 <= i < self.order:
            raise ValueError(f"element index {i} outside {self.label}")
        return i

    def element_name(self, idx):
        return self.names[idx]

    def op(self, a, b):
        return self.table[a, b]

    def inv(self, a):
        return self._inverse[a]

    def mul_table(self):
        return self.table

    def inverse_table(self):
        return self._inverse

    def element_order(self, idx):
        k, x = 1, int(idx)
        while x != self.unit:
            x = int(self.table[x, idx])
            k += 1
        return k


def cayley_from_abelian(G):
    names = [G.element_name(i) for i in range(G.order)]
    return CayleyGroup(G.mul_table(), names=names, label=G.label)


# --- subgroups -----------------------------------------------------------------

class Subgroup:
    """A subgroup of ``parent``, stored as its sorted element indices."""

    def __init__(self, parent, elements, generators=None):
        self.parent = parent
        els = np.unique(np.asarray(elements, dtype=np.int64))
        els.setflags(write=False)
        self.elements = els
        self._generators = None if generators is None else tuple(int(g) for g in generators)

    @property
    def order(self):
        return int(self.elements.size)

    def __len__(self):
        return self.order

    def __contains__(self, g):
        g = self.parent.index(g)
        i = np.searchsorted(self.elements, g)
        return bool(i < self.elements.size and self.elements[i] == g)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and _same_group(self.parent, other.parent)
            and np.array_equal(self.elements, other.elements)
        )

    def __repr__(self):
        names = [self.parent.element_name(int(g)) for g in self.elements[:8]]
        more = ", ..." if self.order > 8 else ""
        return f"Subgroup(<{self.parent.label}>, {{{', '.join(names)}{more}}})"

    def mask(self):
        m = np.zeros(self.parent.order, dtype=np.bool_)
        m[self.elements] = True
        return m

    def names(self):
        return [self.parent.element_name(int(g)) for g in self.elements]

    @property
    def generators(self):
        if self._generators is None:
            self._generators = _greedy_generators(self.parent, self.elements)
        return self._generators

    @cached_property
    def is_normal(self):
        G = self.parent
        if G.is_abelian:
            return True
        t, inv = G.mul_table(), G.inverse_table()
        m = self.mask()
        g = np.arange(G.order)[:, None]
        conj = t[t[g, self.elements[None, :]], inv[g]]
        return bool(m[conj].all())

    def as_group(self):
        """The subgroup as a stand-alone group on its sorted elements."""
        G = self.parent
        pos = {int(g): i for i, g in enumerate(self.elements)}
        t = G.mul_table()[np.ix_(self.elements, self.elements)]
        table = np.vectorize(pos.__getitem__)(t) if t.size else t
        names = [G.element_name(int(g)) for g in self.elements]
        return CayleyGroup(table, names=names, label=f"{G.label}>H")


def _same_group(a, b):
    if isinstance(a, AbelianGroup) or isinstance(b, AbelianGroup):
        return a == b
    return a is b


def _greedy_generators(G, elements):
    gens = []
    span = Subgroup(G, [G.unit])
    for g in elements:
        if int(g) not in span:
            gens.append(int(g))
            span = subgroup_closure(G, gens)
    return tuple(gens)


def subgroup_closure(G, gens):
    """Smallest subgroup of ``G`` containing ``gens``."""
    idx = [G.index(g) for g in gens]
    if isinstance(G, AbelianGroup):
        mask = np.zeros(G.order, dtype=np.bool_)
        mask[0] = True
        for g in idx:
            mask = _extend(G, mask, g)
        return Subgroup(G, np.nonzero(mask)[0], generators=idx)
    t = G.mul_table()
    seen = {G.unit}
    frontier = [G.unit]
    while frontier:
        nxt = []
        for x in frontier:
            for g in idx:
                y = int(t[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, sorted(seen), generators=idx)


def _extend(G, mask, g):
    gen = np.array(G.residues(g), dtype=np.int64)
    return kernels.extend_span(G._orders, G._strides, mask, gen, G.element_order(g))


def trivial_subgroup(G):
    return Subgroup(G, [G.unit], generators=())


def whole_group(G):
    return Subgroup(G, np.arange(G.order))


# --- quotients -----------------------------------------------------------------

@dataclass(frozen=True)
class QuotientData:
    """``G/H`` with the quotient map, a section and the subgroup inclusion.

    ``q[g]`` is the quotient element of ``g``; ``reps[c]`` is the
    lexicographically smallest element of coset ``c`` (the section ``r``);
    ``inclusion[i]`` is the ``G``-index of the ``i``-th element of ``H``.
    ``coset_order`` lists quotient elements sorted by representative, which
    fixes the default label of each coset.
    """

    group: object
    subgroup: Subgroup
    quotient: object
    q: np.ndarray
    reps: np.ndarray
    inclusion: np.ndarray
    coset_order: np.ndarray

    def coset(self, c):
        return np.nonzero(self.q == c)[0]


def quotient(G, H):
    if not H.is_normal:
        raise NotNormalError(f"{H!r} is not normal in {G.label}")
    if isinstance(G, AbelianGroup):
        return _abelian_quotient(G, H)
    return _cayley_quotient(G, H)


def _finish_quotient(G, H, Q, q):
    reps = np.full(Q.order, -1, dtype=np.int64)
    # first occurrence in index order is the lexicographic minimum
    order = np.arange(G.order)[::-1]
    reps[q[order]] = order
    if (reps < 0).any():
        raise AssertionError("quotient map is not surjective")
    coset_order = np.argsort(reps, kind="stable")
    for arr in (q, reps, coset_order):
        arr.setflags(write=False)
    return QuotientData(G, H, Q, q, reps, H.elements, coset_order)


def _abelian_quotient(G, H):
    k = G.rank
    rows = [[G.orders[j] if i == j else 0 for j in range(k)] for i in range(k)]
    rows += [list(G.residues(g)) for g in H.generators]
    diag, V = smith_columns(rows, k)
    keep = [i for i, d in enumerate(diag) if d > 1]
    Q = AbelianGroup([diag[i] for i in keep])
    if keep:
        Vk = np.array([[V[r][i] % diag[i] for i in keep] for r in range(k)], dtype=np.int64)
        dk = np.array([diag[i] for i in keep], dtype=np.int64)
        q = Q.encode((G.residue_array(np.arange(G.order)) @ Vk) % dk)
    else:
        q = np.zeros(G.order, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    if not np.array_equal(q == 0, H.mask()):
        raise AssertionError("quotient map kernel differs from the subgroup")
    return _finish_quotient(G, H, Q, q)


def _cayley_quotient(G, H):
    t = G.mul_table()
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[t[g, H.elements]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    table = coset_of[t[np.ix_(reps, reps)]]
    names = [G.element_name(int(r)) + "H" for r in reps]
    Q = CayleyGroup(table, names=names, label=f"{G.label}/H")
    return _finish_quotient(G, H, Q, coset_of)


def smith_columns(rows, ncols):
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns ``(diag, V)`` with ``U A V = diag(d_1, ..., d_n)`` for some
    unimodular ``U``, ``d_1 | d_2 | ...`` and ``V`` the accumulated column
    transform (nested lists of Python ints).
    """
    A = [list(map(int, r)) for r in rows]
    m, n = len(A), ncols
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(dst, src, factor):
        for row in A:
            row[dst] -= factor * row[src]
        for row in V:
            row[dst] -= factor * row[src]

    def col_swap(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nonzero:
                return [abs(A[i][i]) if i < m else 0 for i in range(n)], V
            _, i, j = min(nonzero)
            A[t], A[i] = A[i], A[t]
            col_swap(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                f = A[i][t] // p
                if f:
                    A[i] = [a - f * b for a, b in zip(A[i], A[t])]
                clean &= A[i][t] == 0
            for j in range(t + 1, n):
                f = A[t][j] // p
                if f:
                    col_op(j, t, f)
                clean &= A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        if A[t][t] < 0:
            for row in A:
                row[t] = -row[t]
            for row in V:
                row[t] = -row[t]
    return [abs(A[i][i]) if i < m else 0 for i in range(n)], V


# --- characters ------------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """The character ``g -> exp(2 pi i sum_j p_j m_j / n_j)`` of an abelian group."""

    group: AbelianGroup
    exponents: tuple

    @classmethod
    def of(cls, G, p):
        return cls(G, G.dual().residues(G.dual().index(p)))

    @property
    def index(self):
        return self.group.index(self.exponents)

    def __str__(self):
        return self.group.element_name(self.index)

    def value(self, g, semiring=COMPLEX):
        return char_value(self.group, self, g, semiring)


def _pairing_weights(G):
    L = G.exponent
    return np.array([L // n for n in G.orders], dtype=np.int64), L


def pairing_residue(G, p, g):
    """``L * sum_j p_j m_j / n_j mod L`` with ``L`` the exponent of ``G``."""
    w, L = _pairing_weights(G)
    pr = G.residue_array(p)
    mr = G.residue_array(g)
    return (np.sum(pr * mr % L * w, axis=-1)) % L


def _phase_values(r, L, semiring):
    r = np.asarray(r, dtype=np.int64)
    sr = get_semiring(semiring)
    if sr is COMPLEX:
        out = np.exp(2j * np.pi * r / L)
        # exact values on quarter turns
        for num, val in ((0, 1), (1, 1j), (2, -1), (3, -1j)):
            out = np.where((4 * r) == num * L, val, out)
        return out
    real = (2 * r) % L == 0
    if not np.all(real):
        raise NotRepresentableError(
            "character value is not real; characters of order > 2 need complex scalars"
        )
    if sr is REAL:
        return np.where(r == 0, 1.0, -1.0)
    if sr is BOOLEAN:
        if np.any(r != 0):
            raise NotRepresentableError("only the trivial character exists over the booleans")
        return np.ones(r.shape, dtype=np.bool_)
    raise NotRepresentableError(f"no character values for semiring {sr.name}")


def char_value(G, p, g, semiring=COMPLEX):
    if isinstance(p, Character):
        p = p.exponents
    _, L = _pairing_weights(G)
    v = _phase_values(pairing_residue(G, G.index(p), G.index(g)), L, semiring)
    return v[()] if np.ndim(v) == 0 else v


def character_table(G, semiring=COMPLEX):
    """``T[p, g] = chi_p(g)`` for all characters and elements (small groups)."""
    if G.order > 4096:
        raise SizeLimitError("character table too large")
    idx = np.arange(G.order)
    _, L = _pairing_weights(G)
    return _phase_values(pairing_residue(G, idx[:, None], idx[None, :]), L, semiring)


def is_real_character(G, p):
    _, L = _pairing_weights(G)
    r = pairing_residue(G, G.index(p), np.arange(G.order))
    return bool(np.all((2 * r) % L == 0))


def _char_rows(G, chars):
    if isinstance(chars, Subgroup):
        chars = chars.generators
    D = G.dual()
    rows = []
    for c in chars:
        if isinstance(c, Character):
            rows.append(c.exponents)
        else:
            rows.append(D.residues(D.index(c)))
    return np.array(sorted(set(map(tuple, rows))), dtype=np.int64).reshape(-1, G.rank)


def annihilator(G, H):
    """Characters trivial on ``H``, as a subgroup of the dual group."""
    w, L = _pairing_weights(G)
    gens = np.array([G.residues(h) for h in H.generators], dtype=np.int64).reshape(-1, G.rank)
    D = G.dual()
    mask = kernels.annihilated_mask(D._orders, D._strides, w, L, gens)
    return Subgroup(D, np.nonzero(mask)[0])


def double_annihilator(G, chars):
    """Elements of ``G`` on which every character in ``chars`` is trivial."""
    if G.order > ENUMERATION_LIMIT:
        raise SizeLimitError(
            f"|G| = {G.order} exceeds the enumeration limit {ENUMERATION_LIMIT}; "
            "use simon_solve or supply structure"
        )
    w, L = _pairing_weights(G)
    rows = _char_rows(G, chars)
    mask = kernels.annihilated_mask(G._orders, G._strides, w, L, rows)
    return Subgroup(G, np.nonzero(mask)[0])


def all_subgroups(G):
    """Every subgroup of an abelian group, by closure of element pairs."""
    found = {}
    frontier = [trivial_subgroup(G)]
    found[tuple(frontier[0].elements)] = frontier[0]
    while frontier:
        nxt = []
        for S in frontier:
            for g in range(G.order):
                if g in S:
                    continue
                T = subgroup_closure(G, list(S.generators) + [g])
                key = tuple(T.elements)
                if key not in found:
                    found[key] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, tuple(S.elements)))


# --- irreducible representations ------------------------------------------------

@dataclass(frozen=True)
class Irrep:
    name: str
    dim: int
    matrices: np.ndarray  # (|G|, dim, dim), complex

    def character(self):
        return np.trace(self.matrices, axis1=1, axis2=2)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class IrrepReport:
    irrep: str
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def validate_irrep(G, rho, tol=1e-9):
    """Check homomorphism, unit, unitarity and the character-norm criterion."""
    M = np.asarray(rho.matrices, dtype=np.complex128)
    if M.shape != (G.order, rho.dim, rho.dim):
        raise ValueError(
            f"irrep {rho.name}: expected matrices of shape {(G.order, rho.dim, rho.dim)}, got {M.shape}"
        )
    t = G.mul_table()
    eye = np.eye(rho.dim)
    prods = np.einsum("aij,bjk->abik", M, M)
    hom = float(np.max(np.abs(prods - M[t]))) if G.order else 0.0
    unit = float(np.max(np.abs(M[G.unit] - eye)))
    unitary = float(np.max(np.abs(np.einsum("aji,ajk->aik", M.conj(), M) - eye)))
    chi = np.trace(M, axis1=1, axis2=2)
    irreducible = abs(float(np.sum(np.abs(chi) ** 2) / G.order) - 1.0)
    checks = tuple(
        IdentityCheck(name, r, r <= tol)
        for name, r in (
            ("homomorphism", hom),
            ("unit", unit),
            ("unitarity", unitary),
            ("irreducibility", irreducible),
        )
    )
    return IrrepReport(rho.name, checks)


def abelian_irreps(G):
    """Characters of an abelian group as one-dimensional irreps."""
    T = character_table(G)
    return [
        Irrep(G.element_name(p), 1, T[p].reshape(-1, 1, 1)) for p in range(G.order)
    ]
