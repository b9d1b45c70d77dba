"""Named instances and groups used by the tests, the CLI and the benchmarks.

``DISTRIBUTION_CATALOG`` holds instances small enough for every evaluator
(including the tensor-level one). ``SCALE_CATALOG`` adds larger Simon
instances that only the state-vector path and the sampler handle.
"""
from dataclasses import dataclass
from functools import lru_cache

from hspsim.groups import AbelianGroup, whole_group
from hspsim.hsp import build_instance, simon_instance
from hspsim.postprocess import dlog_instance, order_instance
from hspsim.tables import builtin


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: object
    scale: bool = False

    def instance(self, semiring="complex"):
        inst = self.build()
        return inst if semiring == "complex" else inst.with_semiring(semiring)


def _abelian(orders, gens, name):
    G = AbelianGroup(orders)
    return lambda: build_instance(G, gens, name=name)


def _whole():
    G = AbelianGroup([4, 2])
    return build_instance(G, whole_group(G), name="Z4 x Z2 / itself")


DISTRIBUTION_CATALOG = (
    CatalogEntry("simon-1", lambda: simon_instance(1, "1")),
    CatalogEntry("simon-2", lambda: simon_instance(2, "11")),
    CatalogEntry("simon-3", lambda: simon_instance(3, "101")),
    CatalogEntry("simon-4", lambda: simon_instance(4, "1010")),
    CatalogEntry("z6-by-2", _abelian([6], [2], "Z6 / <2>")),
    CatalogEntry("dlog-p5", lambda: dlog_instance(5, 2, 3)),
    CatalogEntry("whole-group", _whole),
    CatalogEntry("trivial-subgroup", _abelian([6], [], "Z6 / 1")),
    CatalogEntry("z2xz4-by-12", _abelian([2, 4], ["12"], "Z2 x Z4 / <(1,2)>")),
    CatalogEntry("order-15-2", lambda: order_instance(15, 2)),
    CatalogEntry("z3sq-by-11", _abelian([3, 3], ["11"], "Z3 x Z3 / <(1,1)>")),
    CatalogEntry("z9-by-3", _abelian([9], [3], "Z9 / <3>")),
    CatalogEntry("z12-by-4", _abelian([12], [4], "Z12 / <4>")),
    CatalogEntry("z2xz6-by-13", _abelian([2, 6], ["13"], "Z2 x Z6 / <(1,3)>")),
    CatalogEntry("z3-trivial", _abelian([3], [], "Z3 / 1")),
)

SCALE_CATALOG = (
    CatalogEntry("simon-8", lambda: simon_instance(8, "10110010"), scale=True),
    CatalogEntry("simon-12", lambda: simon_instance(12, "101100111010"), scale=True),
)

CATALOG = DISTRIBUTION_CATALOG + SCALE_CATALOG


def entry(name):
    for e in CATALOG:
        if e.name == name:
            return e
    raise KeyError(f"unknown catalog instance {name!r}; known: {', '.join(e.name for e in CATALOG)}")


@lru_cache(maxsize=None)
def instance(name, semiring="complex"):
    return entry(name).instance(semiring)


def law_suite_groups():
    """The groups whose strong pairs the law suite covers."""
    return [
        AbelianGroup([2]),
        AbelianGroup([3]),
        AbelianGroup([4]),
        AbelianGroup([2, 2]),
        AbelianGroup([6]),
        AbelianGroup([2, 2, 2, 2]),
        builtin("S3")[0],
        builtin("D4")[0],
    ]
