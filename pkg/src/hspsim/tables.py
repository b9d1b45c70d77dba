"""Shipped Cayley and irrep tables for S3, D4 and Q8, plus the JSON schema.

The JSON document is ``{"size", "table", "irreps": [{"name", "dim",
"matrices"}]}`` where ``matrices[g][i][j]`` is an ``[re, im]`` pair. Optional
``"names"`` and ``"label"`` keys carry element names and the group label.

The files under ``hspsim/data`` are produced by :func:`write_builtin_tables`
from the constructions below and loaded through :func:`load_cayley_json`.
"""
import json
from importlib import resources
from itertools import permutations
from pathlib import Path

import numpy as np

from hspsim.groups import CayleyGroup, Irrep

BUILTIN = ("S3", "D4", "Q8")


def _table_from_faithful(mats, tol=1e-9):
    n = len(mats)
    flat = np.array([m.ravel() for m in mats])
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            d = np.abs(flat - (mats[a] @ mats[b]).ravel()).max(axis=1)
            table[a, b] = int(np.argmin(d))
            if d[table[a, b]] > tol:
                raise AssertionError("representation is not closed under products")
    return table


def build_s3():
    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    # (a*b)(x) = a(b(x))
    table = np.array([[idx[tuple(a[b[x]] for x in range(3))] for b in perms] for a in perms])
    names = ["".join(map(str, p)) for p in perms]
    G = CayleyGroup(table, names=names, label="S3")

    def sign(p):
        inv = sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3))
        return -1.0 if inv % 2 else 1.0

    basis = np.array([[1, -1, 0], [1, 1, -2]], dtype=float).T
    basis /= np.linalg.norm(basis, axis=0)
    std = []
    for p in perms:
        P = np.zeros((3, 3))
        P[list(p), range(3)] = 1
        std.append(basis.T @ P @ basis)
    irreps = [
        Irrep("trivial", 1, np.ones((6, 1, 1), dtype=complex)),
        Irrep("sign", 1, np.array([sign(p) for p in perms], dtype=complex).reshape(6, 1, 1)),
        Irrep("standard", 2, np.array(std, dtype=complex)),
    ]
    return G, irreps


def build_d4():
    R = np.array([[0.0, -1.0], [1.0, 0.0]])
    S = np.diag([1.0, -1.0])
    mats, names, signs = [], [], []
    for k in range(4):
        for j in range(2):
            mats.append(np.linalg.matrix_power(R, k) @ np.linalg.matrix_power(S, j))
            names.append(("e" if k == 0 and j == 0 else "") + ("r" * k) + ("s" * j))
            signs.append((k, j))
    G = CayleyGroup(_table_from_faithful(mats), names=names, label="D4")
    irreps = []
    for er, es, name in ((1, 1, "trivial"), (1, -1, "chi_s"), (-1, 1, "chi_r"), (-1, -1, "chi_rs")):
        vals = np.array([er ** k * es ** j for k, j in signs], dtype=complex)
        irreps.append(Irrep(name, 1, vals.reshape(8, 1, 1)))
    irreps.append(Irrep("standard", 2, np.array(mats, dtype=complex)))
    return G, irreps


def build_q8():
    one = np.eye(2, dtype=complex)
    qi = np.array([[1j, 0], [0, -1j]])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    qk = qi @ qj
    units = [("1", one), ("i", qi), ("j", qj), ("k", qk)]
    mats, names, parts = [], [], []
    for uname, u in units:
        for sgn in (1, -1):
            mats.append(sgn * u)
            names.append(("" if sgn == 1 else "-") + uname)
            parts.append(uname)
    G = CayleyGroup(_table_from_faithful(mats), names=names, label="Q8")
    irreps = []
    for ei, ej, name in ((1, 1, "trivial"), (1, -1, "chi_i"), (-1, 1, "chi_j"), (-1, -1, "chi_k")):
        val = {"1": 1, "i": ei, "j": ej, "k": ei * ej}
        irreps.append(Irrep(name, 1, np.array([val[p] for p in parts], dtype=complex).reshape(8, 1, 1)))
    irreps.append(Irrep("quaternion", 2, np.array(mats, dtype=complex)))
    return G, irreps


_BUILDERS = {"S3": build_s3, "D4": build_d4, "Q8": build_q8}


def to_json_document(G, irreps):
    return {
        "label": G.label,
        "size": G.order,
        "names": list(G.names),
        "table": G.mul_table().tolist(),
        "irreps": [
            {
                "name": r.name,
                "dim": r.dim,
                "matrices": [
                    [[[float(z.real), float(z.imag)] for z in row] for row in m]
                    for m in np.asarray(r.matrices)
                ],
            }
            for r in irreps
        ],
    }


def from_json_document(doc):
    size = int(doc["size"])
    G = CayleyGroup(doc["table"], names=doc.get("names"), label=doc.get("label", "G"))
    if G.order != size:
        raise ValueError(f"declared size {size} does not match the {G.order}x{G.order} table")
    irreps = []
    for r in doc.get("irreps", []):
        m = np.array(r["matrices"], dtype=float)
        dim = int(r["dim"])
        if m.shape != (size, dim, dim, 2):
            raise ValueError(f"irrep {r['name']}: matrices must have shape {(size, dim, dim, 2)}")
        irreps.append(Irrep(r["name"], dim, m[..., 0] + 1j * m[..., 1]))
    return G, irreps


def load_cayley_json(source):
    """Load a group and its irreps from a path, a JSON string, or a dict."""
    if isinstance(source, dict):
        return from_json_document(source)
    path = Path(source)
    return from_json_document(json.loads(path.read_text()))


def builtin(name):
    """One of the shipped groups, read from the packaged JSON table."""
    key = name.upper()
    if key not in BUILTIN:
        raise KeyError(f"no shipped table for {name!r}; available: {', '.join(BUILTIN)}")
    text = resources.files("hspsim").joinpath("data", f"{key.lower()}.json").read_text()
    return from_json_document(json.loads(text))


def write_builtin_tables(directory=None):
    directory = Path(directory or Path(__file__).parent / "data")
    directory.mkdir(parents=True, exist_ok=True)
    for key, build in _BUILDERS.items():
        doc = to_json_document(*build())
        (directory / f"{key.lower()}.json").write_text(json.dumps(doc) + "\n")


if __name__ == "__main__":
    write_builtin_tables()
