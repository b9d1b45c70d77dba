"""Command-line front end: ``hspsim {laws,dist,run,simon,nonabelian}``.

Machine-readable JSON goes to stdout (or ``--out``), a human-readable table
to stderr. Exit codes: 0 success, 1 configuration error, 2 law or
discrepancy failure, 3 semiring capability failure, 4 promise violation.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from hspsim import __version__
from hspsim.catalog import entry as catalog_entry
from hspsim.frobenius import (
    character_census,
    character_states,
    check_frobenius,
    check_strong_complementarity,
    group_structure,
    has_enough_classical_states,
    strong_pair,
)
from hspsim.groups import (
    AbelianGroup,
    GroupTableError,
    NotNormalError,
    NotRepresentableError,
    SizeLimitError,
    abelian_irreps,
)
from hspsim.hsp import (
    PartialDistributionError,
    PromiseViolationError,
    SemiringCapabilityError,
    build_instance,
    build_oracle,
    exact_distribution,
    label_name,
    max_difference,
    nonabelian_distribution,
    simon_instance,
    theoretical_distribution,
    IncompleteIrrepError,
)
from hspsim.postprocess import (
    NotCoprimeError,
    NotPrimitiveRootError,
    Sampler,
    dlog_instance,
    order_instance,
    run_until_stable,
    simon_solve,
)
from hspsim.semiring import get_semiring
from hspsim.tables import BUILTIN, builtin, load_cayley_json

EXIT_OK, EXIT_CONFIG, EXIT_FAILURE, EXIT_SEMIRING, EXIT_PROMISE = 0, 1, 2, 3, 4

#: law suites are dense contractions of size about |K|^5; larger groups are skipped
LAW_SUITE_LIMIT = 16

CONFIG_KEYS = {"semiring", "group", "subgroup_generators", "label_bits", "labeling", "seed",
               "catalog", "dlog", "order", "name"}


class ConfigError(ValueError):
    pass


# --- configuration -------------------------------------------------------------------

def load_config(path):
    if path is None:
        raise ConfigError("--config FILE is required for this subcommand")
    try:
        cfg = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return cfg


def _group_from_spec(spec, base):
    if not isinstance(spec, dict):
        raise ConfigError('"group" must be an object with "orders" or "cayley"')
    if "orders" in spec:
        return AbelianGroup(spec["orders"]), None
    if "cayley" in spec:
        src = spec["cayley"]
        if isinstance(src, str) and src.upper() in BUILTIN:
            return builtin(src)
        if isinstance(src, str):
            p = Path(src)
            if not p.is_absolute() and base is not None:
                p = base / p
            return load_cayley_json(p)
        return load_cayley_json(src)
    raise ConfigError('"group" needs an "orders" list or a "cayley" table')


def _semiring(cfg, args):
    name = args.semiring or cfg.get("semiring", "complex")
    return get_semiring(name)


def instance_from_config(cfg, args, base=None):
    """Returns ``(instance, irreps or None)``."""
    sr = _semiring(cfg, args)
    if "catalog" in cfg:
        return catalog_entry(cfg["catalog"]).instance(sr.name), None
    if "dlog" in cfg:
        d = cfg["dlog"]
        return dlog_instance(int(d["p"]), int(d["g"]), int(d["a"]), semiring=sr), None
    if "order" in cfg:
        d = cfg["order"]
        return order_instance(int(d["modulus"]), int(d["a"]), semiring=sr), None
    if "group" not in cfg:
        raise ConfigError('config needs one of "group", "catalog", "dlog" or "order"')
    G, irreps = _group_from_spec(cfg["group"], base)
    gens = cfg.get("subgroup_generators", [])
    if not isinstance(gens, list):
        raise ConfigError('"subgroup_generators" must be a list')
    gens = [g if not isinstance(g, list) else G.encode(g) for g in gens]
    inst = build_instance(G, gens, label_bits=cfg.get("label_bits"),
                          labeling=cfg.get("labeling"), semiring=sr,
                          name=cfg.get("name", ""))
    return inst, irreps


# --- output helpers --------------------------------------------------------------------

def _emit(args, payload):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _err(*lines):
    for line in lines:
        print(line, file=sys.stderr)


def _seed(cfg, args):
    if args.seed is not None:
        return args.seed
    return int(cfg.get("seed", 0))


# --- subcommands ---------------------------------------------------------------------

def _law_block(label, K, sr, tol):
    if K.order > LAW_SUITE_LIMIT:
        return {"group": label, "order": K.order, "skipped": f"|K| > {LAW_SUITE_LIMIT}"}, True
    pair = strong_pair(K, sr)
    reports = [check_frobenius(pair.Z, tol), check_frobenius(pair.X, tol)]
    ok = all(r.passed for r in reports)
    if ok:
        reports.append(check_strong_complementarity(pair, tol))
        ok = reports[-1].passed
    block = {"group": label, "order": K.order, "commutative": bool(K.is_abelian),
             "reports": [r.to_dict() for r in reports], "pass": ok}
    if sr.name == "boolean" and K.order <= 20:
        census = character_census(K, sr, tol)
        block["character_census"] = {"count": len(census),
                                     "states": [np.asarray(t.vector()).astype(int).tolist()
                                                for t in census]}
    elif isinstance(K, AbelianGroup) and K.order <= 4096 and sr.name != "boolean":
        X = group_structure(K, sr)
        states = [t for _, t in character_states(K, sr)]
        block["character_census"] = {"count": len(states)}
        block["enough_classical_states"] = has_enough_classical_states(X, states, tol)
    _err(f"== {label} (|K| = {K.order}, {sr.name})")
    for r in reports:
        _err(*r.lines())
    return block, ok


def cmd_laws(args, cfg, base):
    inst, _ = instance_from_config(cfg, args, base)
    sr = inst.semiring
    G, Q = inst.group, inst.quotient.quotient
    H = inst.subgroup.as_group()
    L = AbelianGroup([2] * inst.label_bits, label=f"Z2^{inst.label_bits}")
    blocks, ok = [], True
    for label, K in (("G", G), ("H", H), ("G/H", Q), ("labels", L)):
        b, passed = _law_block(label, K, sr, args.tol)
        blocks.append(b)
        ok &= passed
    if sr.name == "boolean":
        blocks.append({"note": "boolean semiring: separation of basis points is used as "
                               "the proxy for having enough classical states"})
    _emit(args, {"command": "laws", "instance": inst.describe(), "pairs": blocks, "pass": ok})
    return EXIT_OK if ok else EXIT_FAILURE


def _dist_payload(inst, dist, theory, args):
    return {
        "command": "dist",
        "instance": inst.describe(),
        "method": dist.method,
        "rows": dist.rows(include_zero=args.all),
        "theoretical_rows": theory.rows(include_zero=args.all),
        "total": round(dist.total(), 12),
        "support_size": len(dist.support()),
    }


def cmd_dist(args, cfg, base):
    inst, _ = instance_from_config(cfg, args, base)
    theory = theoretical_distribution(inst)
    if inst.semiring.name == "boolean":
        raise SemiringCapabilityError(
            "the boolean semiring has only the trivial character; no outcome distribution")
    method = "state_vector" if args.state_vector else "auto"
    try:
        dist = exact_distribution(inst, method)
    except PartialDistributionError as exc:
        X = group_structure(inst.group, inst.semiring)
        states = [t for _, t in character_states(inst.group, inst.semiring)]
        enough = has_enough_classical_states(X, states, args.tol)
        payload = _dist_payload(inst, exc.partial, theory, args)
        payload.update({"error": str(exc), "enough_classical_states": enough})
        _emit(args, payload)
        _err(f"error: {exc}",
             f"the {inst.semiring.name} semiring lacks enough characters of "
             f"{inst.group.label}, so the subgroup cannot be recovered from samples")
        return EXIT_SEMIRING
    gap = max_difference(dist, theory)
    payload = _dist_payload(inst, dist, theory, args)
    payload["max_discrepancy"] = gap
    _emit(args, payload)
    D = inst.group.dual()
    _err(f"{'b':>10} {'chi':>10} {'exact':>12} {'theory':>12}")
    for (b, chi), p in sorted(dist.as_dict(1e-12).items()):
        _err(f"{label_name(b, inst.label_bits):>10} {D.element_name(chi):>10} "
             f"{p:12.6f} {theory.prob(b, chi):12.6f}")
    _err(f"max discrepancy {gap:.3e} (tol {args.tol:g}), total mass {dist.total():.12f}")
    return EXIT_OK if gap <= args.tol else EXIT_FAILURE


def cmd_run(args, cfg, base):
    inst, _ = instance_from_config(cfg, args, base)
    if inst.semiring.name == "boolean":
        raise SemiringCapabilityError("sampling needs a probabilistic semiring")
    build_oracle(inst, args.tol)
    res = run_until_stable(inst, _seed(cfg, args), stability_t=args.stability, cap=args.cap)
    payload = {"command": "run", "instance": inst.describe(), "seed": _seed(cfg, args)}
    payload.update(res.to_dict())
    payload["success"] = res.matches(inst.subgroup)
    if args.transcript:
        Path(args.transcript).write_text("".join(json.dumps(r, sort_keys=True) + "\n"
                                                 for r in res.transcript))
        payload["transcript_path"] = str(args.transcript)
    else:
        payload["transcript"] = res.transcript
    _emit(args, payload)
    _err(f"recovered |H| = {res.subgroup.order} after {res.samples} samples; "
         f"success = {payload['success']}", *res.warnings)
    if res.state.promise_violated:
        return EXIT_PROMISE
    return EXIT_OK


def _parse_z(z, N, seed):
    if z is None or z == "random":
        rng = np.random.Generator(np.random.Philox(seed))
        return int(rng.integers(1, 1 << N))
    s = str(z)
    if len(s) == N and set(s) <= {"0", "1"}:
        return int(s, 2)
    return int(s, 0)


def cmd_simon(args, cfg, base):
    N = args.N
    sr = get_semiring(args.semiring or "complex")
    seed = args.seed if args.seed is not None else 0
    if args.oracle:
        labels = json.loads(Path(args.oracle).read_text())
        if isinstance(labels, dict):
            labels = labels["labeling"]
        G = AbelianGroup([2] * N)
        z_true = _period_from_labeling(labels, G)
        inst = simon_instance(N, z_true, labeling=labels, semiring=sr,
                              label_bits=args.label_bits or _label_width(labels, N))
    else:
        z_true = _parse_z(args.z, N, seed)
        inst = simon_instance(N, z_true, semiring=sr)
    if sr.name == "boolean":
        raise SemiringCapabilityError("sampling needs a probabilistic semiring")
    res = simon_solve(N, Sampler(inst, seed))
    payload = {"command": "simon", "N": N, "seed": seed, "semiring": sr.name,
               "z_true": format(z_true, f"0{N}b"), "z_recovered": res.z_bits,
               "samples": res.samples, "success": res.z == z_true}
    _emit(args, payload)
    _err(f"recovered z = {res.z_bits} from {res.samples} samples; success = {payload['success']}")
    return EXIT_OK


def _label_width(labels, N):
    if all(isinstance(v, str) for v in labels):
        return max(len(v) for v in labels)
    top = max(int(v, 2) if isinstance(v, str) else int(v) for v in labels)
    return max(1, N - 1, top.bit_length())


def _period_from_labeling(labels, G):
    """The non-zero ``z`` with ``f(0) = f(z)``; the promise itself is checked later."""
    vals = [int(v, 2) if isinstance(v, str) else int(v) for v in labels]
    if len(vals) != G.order:
        raise ConfigError(f"oracle table must have {G.order} entries")
    same = [x for x in range(1, G.order) if vals[x] == vals[0]]
    if len(same) != 1:
        raise PromiseViolationError(
            f"f(0) is shared by {len(same)} non-zero inputs; Simon's promise needs exactly one",
            witness=(0, same[0]) if same else None)
    return same[0]


def cmd_nonabelian(args, cfg, base):
    inst, irreps = instance_from_config(cfg, args, base)
    if irreps is None:
        if not inst.group.is_abelian:
            raise ConfigError("no irreps available for this group")
        irreps = abelian_irreps(inst.group)
    dist = nonabelian_distribution(inst, irreps, args.tol)
    gap = float(np.max(np.abs(dist.probs - dist.closed_form)))
    payload = {"command": "nonabelian", "instance": inst.describe(),
               "rows": dist.rows(include_zero=True), "total": round(dist.total(), 12),
               "support": [[format(b, f"0{inst.label_bits}b"), r] for b, r in dist.support()],
               "closed_form_max_gap": gap}
    _emit(args, payload)
    _err(f"{'b':>8} {'rho':>12} {'dim':>4} {'prob':>10} {'|H|^2 d^2/|G|^2':>16}")
    for r in dist.rows():
        _err(f"{r['b']:>8} {r['rho']:>12} {r['dim']:>4} {r['prob']:10.6f} {r['closed_form']:16.6f}")
    _err(f"total mass {dist.total():.12f}")
    return EXIT_OK if abs(dist.total() - 1) <= args.tol else EXIT_FAILURE


# --- entry point ---------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="instance config (JSON)")
    common.add_argument("--semiring", choices=["complex", "real", "boolean"])
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", help="write the JSON result to this file")

    p = argparse.ArgumentParser(prog="hspsim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hspsim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("laws", parents=[common], help="law suites for G, H, G/H and the labels")
    d = sub.add_parser("dist", parents=[common], help="exact vs closed-form distribution")
    d.add_argument("--state-vector", action="store_true", help="use the state-vector evaluator")
    d.add_argument("--all", action="store_true", help="include zero-probability rows")
    r = sub.add_parser("run", parents=[common], help="sample and recover the hidden subgroup")
    r.add_argument("--stability", type=int, default=10)
    r.add_argument("--cap", type=int)
    r.add_argument("--transcript", help="write the sample transcript as JSON lines")
    s = sub.add_parser("simon", parents=[common], help="Simon's problem via GF(2) elimination")
    s.add_argument("N", type=int)
    s.add_argument("--z", help='hidden period: bit string, integer, or "random" (default)')
    s.add_argument("--oracle", help="JSON list of labels f(x), one per x in Z_2^N")
    s.add_argument("--label-bits", type=int)
    sub.add_parser("nonabelian", parents=[common], help="irrep measurement probabilities")
    return p


COMMANDS = {"laws": cmd_laws, "dist": cmd_dist, "run": cmd_run, "simon": cmd_simon,
            "nonabelian": cmd_nonabelian}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simon":
            cfg, base = {}, None
        else:
            cfg = load_config(args.config)
            base = Path(args.config).resolve().parent
        return COMMANDS[args.command](args, cfg, base)
    except PromiseViolationError as exc:
        _err(f"promise violation: {exc}")
        return EXIT_PROMISE
    except (SemiringCapabilityError, NotRepresentableError) as exc:
        _err(f"semiring capability: {exc}")
        return EXIT_SEMIRING
    except (ConfigError, GroupTableError, NotNormalError, SizeLimitError, NotCoprimeError,
            NotPrimitiveRootError, IncompleteIrrepError, KeyError, TypeError, ValueError,
            OSError) as exc:
        _err(f"config error: {exc}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
