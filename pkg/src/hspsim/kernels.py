"""Hot inner loops, each with a numba and a pure-numpy implementation.

The public names (``bool_matmul``, ``annihilated_mask``, ...) are bound to the
numba variants unless numba is missing or ``HSPSIM_DISABLE_NUMBA`` is set.
Both variants are always importable through :data:`IMPLEMENTATIONS` so tests
and ``benchmarks/bench_kernels.py`` can compare them directly.

Conventions shared by every kernel:

* abelian group elements are flat indices in mixed radix, leftmost factor
  slowest (``strides[j] = prod(orders[j+1:])``);
* GF(2) rows and Simon exponent vectors are unsigned integers whose most
  significant of ``n`` bits is the first coordinate.
"""
import numpy as np

from hspsim._accel import USE_NUMBA, njit

_CHUNK = 1 << 22


# --- boolean matrix product -------------------------------------------------

def _bool_matmul_numpy(a, b):
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


@njit(cache=True)
def _bool_matmul_numba(a, b):
    n, m = a.shape
    p = b.shape[1]
    out = np.zeros((n, p), dtype=np.bool_)
    for i in range(n):
        for k in range(m):
            if a[i, k]:
                for j in range(p):
                    if b[k, j]:
                        out[i, j] = True
    return out


def _decode_numpy(idx, orders, strides):
    return (idx[:, None] // strides[None, :]) % orders[None, :]


# --- which group elements pair to zero with every given character -----------

def _annihilated_mask_numpy(orders, strides, weights, modulus, chars):
    size = int(np.prod(orders)) if orders.shape[0] else 1
    mask = np.ones(size, dtype=np.bool_)
    if chars.shape[0] == 0:
        return mask
    step = max(1, _CHUNK // max(chars.shape[0], 1))
    for start in range(0, size, step):
        idx = np.arange(start, min(size, start + step), dtype=np.int64)
        scaled = (_decode_numpy(idx, orders, strides) * weights) % modulus
        res = (scaled @ chars.T) % modulus
        mask[start:start + idx.shape[0]] = np.all(res == 0, axis=1)
    return mask


@njit(cache=True)
def _annihilated_mask_numba(orders, strides, weights, modulus, chars):
    k = orders.shape[0]
    size = 1
    for j in range(k):
        size *= orders[j]
    s = chars.shape[0]
    mask = np.ones(size, dtype=np.bool_)
    res = np.zeros(k, dtype=np.int64)
    for i in range(size):
        for j in range(k):
            res[j] = (i // strides[j]) % orders[j] * weights[j] % modulus
        for c in range(s):
            acc = 0
            for j in range(k):
                acc = (acc + res[j] * chars[c, j]) % modulus
            if acc != 0:
                mask[i] = False
                break
    return mask


# --- sumset of a subgroup mask with a cyclic subgroup ------------------------

def _extend_span_numpy(orders, strides, mask, gen, gen_order):
    idx = np.nonzero(mask)[0]
    res = _decode_numpy(idx, orders, strides)
    out = mask.copy()
    for c in range(1, gen_order):
        shifted = (res + c * gen[None, :]) % orders[None, :]
        out[shifted @ strides] = True
    return out


@njit(cache=True)
def _extend_span_numba(orders, strides, mask, gen, gen_order):
    size = mask.shape[0]
    k = orders.shape[0]
    out = mask.copy()
    res = np.zeros(k, dtype=np.int64)
    for idx in range(size):
        if not mask[idx]:
            continue
        for j in range(k):
            res[j] = (idx // strides[j]) % orders[j]
        for c in range(1, gen_order):
            flat = 0
            for j in range(k):
                flat += ((res[j] + c * gen[j]) % orders[j]) * strides[j]
            out[flat] = True
    return out


# --- incremental GF(2) elimination on machine words --------------------------

def _gf2_insert_numpy(basis, row):
    row = int(row)
    for p in range(basis.shape[0] - 1, -1, -1):
        if (row >> p) & 1:
            if basis[p]:
                row ^= int(basis[p])
            else:
                basis[p] = np.uint64(row)
                return True
    return False


@njit(cache=True)
def _gf2_insert_numba(basis, row):
    one = np.uint64(1)
    for p in range(basis.shape[0] - 1, -1, -1):
        if (row >> np.uint64(p)) & one:
            if basis[p] != 0:
                row ^= basis[p]
            else:
                basis[p] = row
                return True
    return False


# --- Walsh-Hadamard transform (characters of Z_2^n, real arithmetic) --------

def _walsh_hadamard_numpy(v):
    n = v.shape[0]
    out = np.array(v, dtype=np.float64)
    h = 1
    while h < n:
        blocks = out.reshape(-1, 2, h)
        out = np.concatenate(
            (blocks[:, 0] + blocks[:, 1], blocks[:, 0] - blocks[:, 1]), axis=1
        ).reshape(n)
        h *= 2
    return out


@njit(cache=True)
def _walsh_hadamard_numba(v):
    n = v.shape[0]
    out = v.astype(np.float64)
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            for i in range(start, start + h):
                x = out[i]
                y = out[i + h]
                out[i] = x + y
                out[i + h] = x - y
        h *= 2
    return out


# --- the coherent oracle as a basis permutation ------------------------------

def _oracle_permutation_numpy(labels, n_labels):
    g = np.arange(labels.shape[0], dtype=np.int64)[:, None]
    t = np.arange(n_labels, dtype=np.int64)[None, :]
    return (g * n_labels + (labels[:, None] ^ t)).reshape(-1)


@njit(cache=True)
def _oracle_permutation_numba(labels, n_labels):
    size = labels.shape[0]
    out = np.empty(size * n_labels, dtype=np.int64)
    for g in range(size):
        base = g * n_labels
        for t in range(n_labels):
            out[base + t] = base + (labels[g] ^ t)
    return out


# --- boolean character census --------------------------------------------------

def _bool_character_scan_numpy(table, inverse, unit):
    n = table.shape[0]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    found = []
    step = max(1, _CHUNK // (n * n))
    total = 1 << n
    for start in range(0, total, step):
        masks = np.arange(start, min(total, start + step), dtype=np.int64)
        bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(np.bool_)
        ok = bits[:, unit].copy()
        ok &= np.all(bits[:, inverse] == bits, axis=1)
        prod = bits[:, table]
        ok &= np.all(prod == (bits[:, :, None] & bits[:, None, :]), axis=(1, 2))
        found.extend(masks[ok].tolist())
    return np.array(found, dtype=np.int64)


@njit(cache=True)
def _bool_character_scan_numba(table, inverse, unit):
    n = table.shape[0]
    total = 1 << n
    out = np.empty(total, dtype=np.int64)
    count = 0
    bits = np.zeros(n, dtype=np.bool_)
    for mask in range(total):
        for g in range(n):
            bits[g] = (mask >> (n - 1 - g)) & 1
        if not bits[unit]:
            continue
        ok = True
        for g in range(n):
            if bits[inverse[g]] != bits[g]:
                ok = False
                break
        if not ok:
            continue
        for g in range(n):
            for h in range(n):
                if bits[table[g, h]] != (bits[g] and bits[h]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out[count] = mask
            count += 1
    return out[:count]


IMPLEMENTATIONS = {
    "numpy": {
        "bool_matmul": _bool_matmul_numpy,
        "annihilated_mask": _annihilated_mask_numpy,
        "extend_span": _extend_span_numpy,
        "gf2_insert": _gf2_insert_numpy,
        "walsh_hadamard": _walsh_hadamard_numpy,
        "oracle_permutation": _oracle_permutation_numpy,
        "bool_character_scan": _bool_character_scan_numpy,
    },
    "numba": {
        "bool_matmul": _bool_matmul_numba,
        "annihilated_mask": _annihilated_mask_numba,
        "extend_span": _extend_span_numba,
        "gf2_insert": _gf2_insert_numba,
        "walsh_hadamard": _walsh_hadamard_numba,
        "oracle_permutation": _oracle_permutation_numba,
        "bool_character_scan": _bool_character_scan_numba,
    },
}

BACKEND = "numba" if USE_NUMBA else "numpy"
_active = IMPLEMENTATIONS[BACKEND]

bool_matmul = _active["bool_matmul"]
annihilated_mask = _active["annihilated_mask"]
extend_span = _active["extend_span"]
gf2_insert = _active["gf2_insert"]
walsh_hadamard = _active["walsh_hadamard"]
oracle_permutation = _active["oracle_permutation"]
bool_character_scan = _active["bool_character_scan"]
