"""Involutive commutative semirings of scalars.

Three semirings ship: complex numbers with conjugation, reals and booleans
(both with the trivial involution). A semiring is chosen once per tensor and
never mixed; every array-level operation the tensor layer needs is routed
through the semiring object so adding a fourth one means subclassing
:class:`Semiring`.
"""
import numpy as np

from hspsim import kernels


class SemiringMismatchError(TypeError):
    pass


class Semiring:
    name = "abstract"
    dtype = None
    #: rank/span arguments are available (the semiring is a field)
    field_like = False
    #: c^dagger c is a probability in the usual sense
    probabilistic = False

    def zero(self):
        return self.dtype.type(0)

    def one(self):
        return self.dtype.type(1)

    def coerce(self, values):
        return np.asarray(values, dtype=self.dtype)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def dagger(self, x):
        return x

    def matmul(self, a, b):
        return a @ b

    def batched_matmul(self, a, b):
        """``a @ b[p]`` for every leading index ``p`` of the 3-D array ``b``."""
        pre, mid, rest = b.shape
        flat = np.ascontiguousarray(b.transpose(1, 0, 2)).reshape(mid, pre * rest)
        return self.matmul(a, flat).reshape(a.shape[0], pre, rest).transpose(1, 0, 2)

    def kron(self, a, b):
        return np.kron(a, b)

    def einsum(self, spec, *operands):
        return np.einsum(spec, *operands)

    def residual(self, a, b):
        """Largest entrywise discrepancy; 0 for identical arrays."""
        if a.size == 0:
            return 0.0
        return float(np.max(np.abs(a - b)))

    def from_count(self, n):
        """The scalar 1 + 1 + ... + 1 (n terms)."""
        return self.dtype.type(n)

    def __repr__(self):
        return f"<semiring {self.name}>"

    def __reduce__(self):
        return (get_semiring, (self.name,))


class ComplexF(Semiring):
    name = "complex"
    dtype = np.dtype(np.complex128)
    field_like = True
    probabilistic = True

    def dagger(self, x):
        return np.conj(x)


class RealF(Semiring):
    name = "real"
    dtype = np.dtype(np.float64)
    field_like = True
    probabilistic = True


class Boolean(Semiring):
    """Booleans with OR as addition and AND as multiplication."""

    name = "boolean"
    dtype = np.dtype(np.bool_)

    def coerce(self, values):
        arr = np.asarray(values)
        if arr.dtype != np.bool_:
            arr = arr != 0
        return arr

    def add(self, x, y):
        return np.logical_or(x, y)

    def mul(self, x, y):
        return np.logical_and(x, y)

    def matmul(self, a, b):
        return kernels.bool_matmul(a, b)

    def kron(self, a, b):
        return np.kron(a, b).astype(np.bool_)

    def einsum(self, spec, *operands):
        ints = [np.asarray(op, dtype=np.int64) for op in operands]
        return np.einsum(spec, *ints) > 0

    def residual(self, a, b):
        return float(np.any(a != b))

    def from_count(self, n):
        return np.bool_(n > 0)


COMPLEX = ComplexF()
REAL = RealF()
BOOLEAN = Boolean()

SEMIRINGS = {s.name: s for s in (COMPLEX, REAL, BOOLEAN)}


def get_semiring(name):
    if isinstance(name, Semiring):
        return name
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(
            f"unknown semiring {name!r}; expected one of {sorted(SEMIRINGS)}"
        ) from None


def check_same(*semirings):
    first = semirings[0]
    for other in semirings[1:]:
        if other is not first:
            raise SemiringMismatchError(
                f"cannot mix semirings {first.name} and {other.name}"
            )
    return first
