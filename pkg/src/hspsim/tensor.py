"""Dense tensors over a semiring: the morphisms of RMat(R).

A :class:`Tensor` is a map from the product of its ``domain`` index sets to the
product of its ``codomain`` index sets, stored as a 2-D array of shape
``(prod(codomain sizes), prod(domain sizes))``. Flattening of a list of index
sets is row-major with the leftmost index set varying slowest; this order is
part of the external contract (JSON dumps and golden files depend on it).

``f >> g`` is sequential composition (``f`` first) and ``f @ g`` is the
tensor product, in the usual string-diagram reading order.
"""
from dataclasses import dataclass, field
from math import prod

import numpy as np

from hspsim.semiring import COMPLEX, check_same, get_semiring


class ShapeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class IndexSet:
    """A labelled finite set; the objects of RMat(R)."""

    label: str
    size: int
    names: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if int(self.size) < 1:
            raise ValueError(f"index set {self.label!r} must have size >= 1")
        if self.names is not None and len(self.names) != self.size:
            raise ValueError(f"index set {self.label!r}: expected {self.size} names")

    def __str__(self):
        return f"{self.label}[{self.size}]"


def _objects(objs):
    if objs is None:
        return ()
    if isinstance(objs, IndexSet):
        return (objs,)
    return tuple(objs)


def signature(objs):
    return "(" + " ⊗ ".join(str(o) for o in objs) + ")" if objs else "I"


class Tensor:
    __slots__ = ("codomain", "domain", "entries", "semiring")

    def __init__(self, entries, codomain=(), domain=(), semiring=COMPLEX):
        sr = get_semiring(semiring)
        cod = _objects(codomain)
        dom = _objects(domain)
        rows = prod(o.size for o in cod)
        cols = prod(o.size for o in dom)
        arr = np.array(sr.coerce(entries), dtype=sr.dtype, copy=True)
        if arr.size != rows * cols:
            raise ShapeMismatchError(
                f"{arr.size} entries supplied for a {signature(dom)} -> "
                f"{signature(cod)} tensor ({rows}x{cols})"
            )
        arr = arr.reshape(rows, cols)
        arr.setflags(write=False)
        object.__setattr__(self, "codomain", cod)
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "semiring", sr)

    @classmethod
    def _wrap(cls, arr, codomain, domain, sr):
        """Adopt a freshly computed array of the right dtype and shape without copying."""
        t = cls.__new__(cls)
        arr = arr.reshape(prod(o.size for o in codomain), prod(o.size for o in domain))
        arr.setflags(write=False)
        object.__setattr__(t, "codomain", codomain)
        object.__setattr__(t, "domain", domain)
        object.__setattr__(t, "entries", arr)
        object.__setattr__(t, "semiring", sr)
        return t

    def __setattr__(self, name, value):
        raise AttributeError("Tensor objects are immutable")

    @property
    def shape(self):
        return self.entries.shape

    def legs(self):
        """Entries reshaped to one axis per index set, codomain first."""
        sizes = [o.size for o in self.codomain] + [o.size for o in self.domain]
        return self.entries.reshape(sizes) if sizes else self.entries.reshape(())

    def vector(self):
        """Entries of a state (empty domain) as a flat array."""
        if self.domain:
            raise ShapeMismatchError(f"not a state: domain is {signature(self.domain)}")
        return self.entries[:, 0]

    def item(self):
        if self.domain or self.codomain:
            raise ShapeMismatchError("not a scalar")
        return self.entries[0, 0]

    def __rshift__(self, other):
        return compose(self, other)

    def __matmul__(self, other):
        return tensor_product(self, other)

    def __repr__(self):
        return (
            f"Tensor({signature(self.domain)} -> {signature(self.codomain)}, "
            f"{self.semiring.name})"
        )


# --- core operations ---------------------------------------------------------

def compose(f, g):
    """``g ∘ f``: apply ``f`` first, then ``g``."""
    sr = check_same(f.semiring, g.semiring)
    if f.codomain != g.domain:
        raise ShapeMismatchError(
            f"cannot compose {signature(f.domain)} -> {signature(f.codomain)} "
            f"with {signature(g.domain)} -> {signature(g.codomain)}"
        )
    return Tensor(sr.matmul(g.entries, f.entries), g.codomain, f.domain, sr)


def tensor_product(*tensors):
    if not tensors:
        return scalar(1)
    sr = check_same(*(t.semiring for t in tensors))
    out = tensors[0]
    for t in tensors[1:]:
        out = Tensor(
            sr.kron(out.entries, t.entries),
            out.codomain + t.codomain,
            out.domain + t.domain,
            sr,
        )
    return out


def dagger(f):
    sr = f.semiring
    return Tensor(sr.dagger(f.entries.T), f.domain, f.codomain, sr)


def _check_parallel(f, g):
    check_same(f.semiring, g.semiring)
    if f.shape != g.shape:
        raise ShapeMismatchError(
            f"cannot compare {signature(f.domain)} -> {signature(f.codomain)} "
            f"with {signature(g.domain)} -> {signature(g.codomain)}"
        )


def residual(f, g):
    """Max entrywise absolute difference (boolean: 1.0 if any entry differs)."""
    _check_parallel(f, g)
    return f.semiring.residual(f.entries, g.entries)


def approx_equal(f, g, tol=1e-9):
    """Entrywise equality within ``tol``; exact for the boolean semiring."""
    return residual(f, g) <= (0.0 if f.semiring.name == "boolean" else tol)


def add(f, g):
    _check_parallel(f, g)
    return Tensor(f.semiring.add(f.entries, g.entries), f.codomain, f.domain, f.semiring)


def scale(f, s):
    sr = f.semiring
    return Tensor(sr.mul(f.entries, sr.dtype.type(s)), f.codomain, f.domain, sr)


def apply_at(t, f, start=0):
    """Apply ``f`` to the codomain wires ``start .. start+len(f.domain)-1`` of ``t``.

    Equal to ``t >> (identity(before) @ f @ identity(after))`` without
    materializing the Kronecker product.
    """
    sr = check_same(t.semiring, f.semiring)
    width = len(f.domain)
    if tuple(t.codomain[start:start + width]) != f.domain:
        raise ShapeMismatchError(
            f"cannot apply {signature(f.domain)} -> {signature(f.codomain)} at wire "
            f"{start} of codomain {signature(t.codomain)}"
        )
    before = t.codomain[:start]
    after = t.codomain[start + width:]
    pre = prod(o.size for o in before)
    mid = prod(o.size for o in f.domain)
    post = prod(o.size for o in after)
    cols = t.entries.shape[1]
    block = t.entries.reshape(pre, mid, post * cols)
    out = np.ascontiguousarray(sr.batched_matmul(f.entries, block), dtype=sr.dtype)
    return Tensor._wrap(out, before + f.codomain + after, t.domain, sr)


# --- builders ------------------------------------------------------------------

def identity(objs, semiring=COMPLEX):
    objs = _objects(objs)
    n = prod(o.size for o in objs)
    return Tensor(np.eye(n), objs, objs, semiring)


def swap(a, b, semiring=COMPLEX):
    """The symmetry ``a ⊗ b -> b ⊗ a`` sending basis ``(i, j)`` to ``(j, i)``."""
    a, b = _objects(a), _objects(b)
    na = prod(o.size for o in a)
    nb = prod(o.size for o in b)
    m = np.zeros((nb * na, na * nb))
    i, j = np.meshgrid(np.arange(na), np.arange(nb), indexing="ij")
    m[(j * na + i).ravel(), (i * nb + j).ravel()] = 1
    return Tensor(m, b + a, a + b, semiring)


def zero(domain, codomain, semiring=COMPLEX):
    dom, cod = _objects(domain), _objects(codomain)
    return Tensor(
        np.zeros((prod(o.size for o in cod), prod(o.size for o in dom))), cod, dom, semiring
    )


def scalar(s, semiring=COMPLEX):
    """A tensor with empty domain and codomain, i.e. a single scalar."""
    return Tensor([[s]], (), (), semiring)


def state(vector, obj, semiring=COMPLEX):
    return Tensor(np.asarray(vector).reshape(-1, 1), obj, (), semiring)


def effect(vector, obj, semiring=COMPLEX):
    return Tensor(np.asarray(vector).reshape(1, -1), (), obj, semiring)


def basis_state(obj, k, semiring=COMPLEX):
    v = np.zeros(obj.size)
    v[k] = 1
    return state(v, obj, semiring)


def from_function(table, domain, codomain, semiring=COMPLEX):
    """Linear extension of a function given as ``table[i] = image of basis i``.

    ``domain`` and ``codomain`` may be lists of index sets; ``table`` indexes
    their flattened products.
    """
    dom, cod = _objects(domain), _objects(codomain)
    table = np.asarray(table, dtype=np.int64).reshape(-1)
    cols = prod(o.size for o in dom)
    rows = prod(o.size for o in cod)
    if table.size != cols:
        raise ShapeMismatchError(f"function table has {table.size} entries, expected {cols}")
    if table.size and (table.min() < 0 or table.max() >= rows):
        raise ShapeMismatchError("function table points outside the codomain")
    m = np.zeros((rows, cols))
    m[table, np.arange(cols)] = 1
    return Tensor(m, cod, dom, semiring)


def permute_wires(objs, order, semiring=COMPLEX):
    """The symmetry sending wire ``order[i]`` of ``objs`` to position ``i``."""
    objs = _objects(objs)
    sizes = [o.size for o in objs]
    n = prod(sizes)
    src = np.unravel_index(np.arange(n), sizes) if objs else ()
    dst = np.ravel_multi_index([src[k] for k in order], [sizes[k] for k in order]) if objs else [0]
    return from_function(dst, objs, [objs[k] for k in order], semiring)


def evaluate_layers(layers, domain, semiring=COMPLEX, budget=1 << 22):
    """Sequential composite of ``(tensor, wire_offset)`` layers on ``domain``.

    Equals ``identity(domain) >> L_1 >> L_2 >> ...`` where each ``L_i`` is the
    layer tensor padded with identities. Input columns are processed in chunks
    so no intermediate holds more than about ``budget`` entries.
    """
    dom = _objects(domain)
    cols = prod(o.size for o in dom)
    wires = list(dom)
    peak = max(1, cols)
    for t, at in layers:
        width = len(t.domain)
        if tuple(wires[at:at + width]) != t.domain:
            raise ShapeMismatchError(
                f"layer {signature(t.domain)} -> {signature(t.codomain)} does not fit "
                f"wires {signature(wires)} at offset {at}"
            )
        wires[at:at + width] = t.codomain
        peak = max(peak, prod(o.size for o in wires))
    step = max(1, budget // peak)
    sr = get_semiring(semiring)
    blocks = []
    for start in range(0, cols, step):
        width = min(step, cols - start)
        batch = IndexSet("_batch", width)
        cur = _padded_columns(layers[0], dom, start, width, sr) if layers else None
        if cur is None:
            x = np.zeros((cols, width), dtype=sr.dtype)
            x[np.arange(start, start + width), np.arange(width)] = 1
            cur = Tensor._wrap(x, dom, (batch,), sr)
            rest = layers
        else:
            cur = Tensor._wrap(cur, _after_layer(dom, layers[0]), (batch,), sr)
            rest = layers[1:]
        for t, at in rest:
            cur = apply_at(cur, t, at)
        blocks.append(cur.entries)
    out = blocks[0] if len(blocks) == 1 else np.concatenate(blocks, axis=1)
    return Tensor._wrap(np.ascontiguousarray(out), tuple(wires), dom, sr)


def _after_layer(dom, layer):
    t, at = layer
    return dom[:at] + t.codomain + dom[at + len(t.domain):]


def _padded_columns(layer, dom, start, width, sr):
    """Columns ``start .. start+width`` of ``1 ⊗ f ⊗ 1``, built without an identity input."""
    f, at = layer
    pre = prod(o.size for o in dom[:at])
    mid = prod(o.size for o in f.domain)
    post = prod(o.size for o in dom[at + len(f.domain):])
    rows = f.entries.shape[0]
    c = np.arange(start, start + width)
    p, m, q = c // (mid * post), (c // post) % mid, c % post
    out = np.zeros((pre, rows, post, width), dtype=sr.dtype)
    out[p, :, q, np.arange(width)] = f.entries[:, m].T
    return out


def reorder_codomain(t, order):
    """``t`` followed by the wire permutation moving codomain wire ``order[i]`` to ``i``.

    Same result as ``t >> permute_wires(t.codomain, order)`` by transposing
    axes instead of building the permutation matrix.
    """
    cod = t.codomain
    legs = t.entries.reshape([o.size for o in cod] + [t.entries.shape[1]])
    moved = np.transpose(legs, list(order) + [len(cod)])
    return Tensor(moved, tuple(cod[k] for k in order), t.domain, t.semiring)
