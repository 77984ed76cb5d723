"""Command-line front end.

Instances are small JSON documents:

    {
      "ring":       {"constructor": "zmod", "args": [6]},
      "module":     {"free": 2, "relations": [[2, 0]]},
      "submodules": {"N": [[2, 0], [0, 2]]},
      "multset":    [3]
    }

Ring constructors: ``zmod`` (args ``[n]``), ``product`` (args: list of ring
descriptors), ``polyquo`` (args ``[n, [c0, c1, ...]]`` with a little-endian
monic modulus).  Module vectors reference ring elements by canonical index;
``spm ring-info`` prints the alias table.

Exit codes: 0 success / verification pass, 1 verification failure,
2 invalid input or rejected precondition, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import primes
from .budgets import Budgets, BudgetExceeded
from .errors import ImproperSubmoduleError, InvalidInput
from .modules import (
    FinModule,
    Submodule,
    colon,
    is_flat,
    localize_module,
    make_free,
    submodule_generate,
)
from .rings import (
    FiniteRing,
    ideal_generate,
    make_poly_quotient,
    make_product,
    make_zmod,
    saturate,
)
from .verify import (
    CLAIMS,
    CorpusConfig,
    VerificationReport,
    module_descriptor,
    multset_descriptor,
    run_all,
    verify_example_1_2,
    verify_thm_1_5,
    verify_thm_2_3,
    _ModuleCtx,
    _antichain_module,
    _maxring_shadow_module,
    _prop11_module,
    _sspec_max_module,
    _thm17_module,
    _timed,
)

COMMANDS = (
    "colon",
    "sspec",
    "srad",
    "sht",
    "is-prime",
    "is-semiprime",
    "is-strongly-prime",
    "is-strongly-semiprime",
    "localize",
    "is-flat",
    "ring-info",
    "verify",
)


# ---------------------------------------------------------------------------
# instance parsing


@dataclass(frozen=True)
class InstanceSpec:
    ring: dict
    module: dict | None = None
    submodules: dict = field(default_factory=dict)
    multset: list | None = None

    def to_json(self) -> str:
        doc = {"ring": self.ring}
        if self.module is not None:
            doc["module"] = self.module
        if self.submodules:
            doc["submodules"] = self.submodules
        if self.multset is not None:
            doc["multset"] = self.multset
        return json.dumps(doc, sort_keys=True)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidInput(msg)


def _check_ring_desc(desc, path: str) -> None:
    _require(isinstance(desc, dict), f"{path}: expected an object")
    ctor = desc.get("constructor")
    _require(
        ctor in ("zmod", "product", "polyquo"),
        f"{path}.constructor: unknown constructor {ctor!r}",
    )
    args = desc.get("args")
    _require(isinstance(args, list), f"{path}.args: expected a list")
    if ctor == "zmod":
        _require(
            len(args) == 1 and isinstance(args[0], int),
            f"{path}.args: zmod takes one integer",
        )
    elif ctor == "product":
        _require(len(args) >= 2, f"{path}.args: product takes at least 2 ring descriptors")
        for i, sub in enumerate(args):
            _check_ring_desc(sub, f"{path}.args[{i}]")
    else:  # polyquo
        _require(
            len(args) == 2
            and isinstance(args[0], int)
            and isinstance(args[1], list)
            and all(isinstance(c, int) for c in args[1]),
            f"{path}.args: polyquo takes (n, coefficient list)",
        )


def parse_instance(text: str) -> InstanceSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"instance is not valid JSON: {e}") from e
    _require(isinstance(doc, dict), "instance: expected a JSON object")
    unknown = set(doc) - {"ring", "module", "submodules", "multset"}
    _require(not unknown, f"instance: unknown field(s) {sorted(unknown)}")
    _require("ring" in doc, "instance: missing required field 'ring'")
    _check_ring_desc(doc["ring"], "ring")
    module = doc.get("module")
    if module is not None:
        _require(isinstance(module, dict), "module: expected an object")
        _require(isinstance(module.get("free"), int), "module.free: expected an integer rank")
        rank = module["free"]
        _require(rank >= 0, "module.free: rank must be >= 0")
        rels = module.get("relations", [])
        _require(isinstance(rels, list), "module.relations: expected a list of vectors")
        for i, v in enumerate(rels):
            _require(
                isinstance(v, list) and all(isinstance(c, int) for c in v),
                f"module.relations[{i}]: expected an integer vector",
            )
            _require(
                len(v) == rank,
                f"module.relations[{i}]: vector length {len(v)} != rank {rank}",
            )
    subs = doc.get("submodules", {})
    _require(isinstance(subs, dict), "submodules: expected an object of named generator lists")
    for name, gens in subs.items():
        _require(isinstance(gens, list), f"submodules.{name}: expected a list of vectors")
        for i, v in enumerate(gens):
            _require(
                isinstance(v, list) and all(isinstance(c, int) for c in v),
                f"submodules.{name}[{i}]: expected an integer vector",
            )
            if module is not None:
                _require(
                    len(v) == module["free"],
                    f"submodules.{name}[{i}]: vector length {len(v)} != rank {module['free']}",
                )
    mult = doc.get("multset")
    if mult is not None:
        _require(
            isinstance(mult, list) and mult and all(isinstance(s, int) for s in mult),
            "multset: expected a nonempty list of ring element indices",
        )
    return InstanceSpec(doc["ring"], module, subs, mult)


def build_ring(desc: dict, path: str = "ring") -> FiniteRing:
    ctor, args = desc["constructor"], desc["args"]
    if ctor == "zmod":
        return make_zmod(args[0])
    if ctor == "product":
        return make_product([build_ring(a, f"{path}.args[{i}]") for i, a in enumerate(args)])
    return make_poly_quotient(make_zmod(args[0]), list(args[1]))


class Instance:
    """A parsed spec resolved into live objects, with positioned errors."""

    def __init__(self, spec: InstanceSpec, budgets: Budgets):
        self.spec = spec
        self.budgets = budgets
        self.ring = build_ring(spec.ring)
        self._module: FinModule | None = None

    @property
    def module(self) -> FinModule:
        if self._module is None:
            if self.spec.module is None:
                raise InvalidInput("instance has no 'module' field but the command needs one")
            rank = self.spec.module["free"]
            n = self.ring.order
            for i, v in enumerate(self.spec.module.get("relations", [])):
                for j, c in enumerate(v):
                    _require(
                        0 <= c < n,
                        f"module.relations[{i}][{j}]: element index {c} out of range "
                        f"for ring of order {n}",
                    )
            self._module = FinModule(self.ring, rank, self.spec.module.get("relations", []))
            self.budgets.check_module_order(self._module.order)
        return self._module

    def submodule(self, name: str = "N") -> Submodule:
        subs = self.spec.submodules
        if name not in subs:
            if name == "N" and len(subs) == 1:
                name = next(iter(subs))
            else:
                raise InvalidInput(f"instance has no submodule named {name!r}")
        M = self.module
        idx = []
        for i, v in enumerate(subs[name]):
            for j, c in enumerate(v):
                _require(
                    0 <= c < self.ring.order,
                    f"submodules.{name}[{i}][{j}]: element index {c} out of range "
                    f"for ring of order {self.ring.order}",
                )
            idx.append(M.elem(v).index)
        return submodule_generate(M, idx)

    def multset(self):
        if self.spec.multset is None:
            raise InvalidInput("instance has no 'multset' field but the command needs one")
        for i, s in enumerate(self.spec.multset):
            _require(
                0 <= s < self.ring.order,
                f"multset[{i}]: element index {s} out of range for ring of order "
                f"{self.ring.order}",
            )
        return saturate(self.ring, self.spec.multset)


# ---------------------------------------------------------------------------
# rendering


def element_alias(R: FiniteRing, i: int) -> str:
    if hasattr(R, "product_factors"):
        digits = []
        rem = i
        for f in R.product_factors:
            digits.append(element_alias(f, rem % f.order))
            rem //= f.order
        return "(" + ",".join(digits) + ")"
    if hasattr(R, "poly_base_n"):
        n = R.poly_base_n
        coeffs = []
        rem = i
        while rem:
            coeffs.append(rem % n)
            rem //= n
        terms = []
        for p, c in reversed(list(enumerate(coeffs))):
            if c == 0:
                continue
            if p == 0:
                terms.append(str(c))
            else:
                x = "x" if p == 1 else f"x^{p}"
                terms.append(x if c == 1 else f"{c}{x}")
        return "+".join(terms) if terms else "0"
    return str(i)


def _vec(M: FinModule, i: int) -> list[int]:
    return [int(c) for c in M.vecs[int(i)]]


def _sub_row(N: Submodule) -> dict:
    return {"size": N.order, "generators": [_vec(N.module, g) for g in N.generators]}


def _ideal_row(I) -> dict:
    return {
        "elements": [int(e) for e in I.elements],
        "generators": [int(g) for g in I.generators],
    }


def _witness_json(M: FinModule, kind: str, witness):
    if witness is None:
        return None
    if kind in ("is-prime", "is-semiprime"):
        return {"r": int(witness[0]), "x": _vec(M, witness[1])}
    if kind == "is-strongly-prime":
        return {"x": _vec(M, witness[0]), "y": _vec(M, witness[1])}
    return {"x": _vec(M, witness[0])}


# ---------------------------------------------------------------------------
# command handlers: each returns (stdout lines, reports, exit code)


def _cmd_colon(inst: Instance):
    M = inst.module
    N = inst.submodule()
    I = colon(N, M)
    desc = module_descriptor(M)
    lines = [
        f"(N : M) for N of size {N.order} in {desc}",
        f"  elements   {[int(e) for e in I.elements]}",
        f"  generators {[int(g) for g in I.generators]}",
    ]
    return lines, [_result_report("colon", desc, _ideal_row(I))], 0


def _cmd_sspec(inst: Instance):
    M = inst.module
    poset = primes.s_spec(M, inst.budgets)
    desc = module_descriptor(M)
    lines = [f"S-Spec of {desc}: {len(poset.nodes)} strongly prime submodule(s)"]
    lines.append("  size  generators")
    for P in poset.nodes:
        lines.append(f"  {P.order:<5} {[_vec(M, g) for g in P.generators]}")
    payload = {"nodes": [_sub_row(P) for P in poset.nodes]}
    return lines, [_result_report("sspec", desc, payload)], 0


def _cmd_srad(inst: Instance):
    M = inst.module
    N = inst.submodule()
    rad = primes.s_rad(N, M, inst.budgets)
    desc = module_descriptor(M)
    lines = [
        f"s-rad of N (size {N.order}) in {desc}",
        f"  size       {rad.order}" + ("  (= M: no strongly prime contains N)" if rad.order == M.order else ""),
        f"  generators {[_vec(M, g) for g in rad.generators]}",
    ]
    return lines, [_result_report("srad", desc, _sub_row(rad))], 0


def _cmd_sht(inst: Instance):
    M = inst.module
    N = inst.submodule()
    r = primes.s_ht(N, M, inst.budgets)
    desc = module_descriptor(M)
    if r.defined:
        lines = [
            f"s-ht of N (size {N.order}) in {desc}: {r.value}",
            f"  witness chain sizes: {[P.order for P in r.witness_chain]}",
        ]
        payload = {"value": r.value, "chain": [_sub_row(P) for P in r.witness_chain]}
    else:
        lines = [f"s-ht of N (size {N.order}) in {desc}: undefined (no strongly prime contains N)"]
        payload = {"value": None, "chain": []}
    return lines, [_result_report("sht", desc, payload)], 0


_PREDICATES = {
    "is-prime": primes.is_prime,
    "is-semiprime": primes.is_semiprime,
    "is-strongly-prime": primes.is_strongly_prime,
    "is-strongly-semiprime": primes.is_strongly_semiprime,
}


def _cmd_predicate(kind: str, inst: Instance):
    M = inst.module
    N = inst.submodule()
    res = _PREDICATES[kind](N, M)
    desc = module_descriptor(M)
    w = _witness_json(M, kind, res.witness)
    lines = [f"{kind} for N (size {N.order}) in {desc}: {res.holds}"]
    if w is not None:
        lines.append(f"  witness {w}")
    rep = VerificationReport(kind, desc, "pass" if res.holds else "fail", w, 0.0)
    return lines, [rep], 0


def _cmd_localize(inst: Instance):
    M = inst.module
    U = inst.multset()
    loc = localize_module(M, U)
    desc = f"{module_descriptor(M)};{multset_descriptor(U)}"
    lines = [
        f"localization of {module_descriptor(M)} at {multset_descriptor(U)}",
        f"  ring order    {loc.ring_loc.ring.order}"
        + ("  (degenerate: 0 inverted)" if loc.degenerate else ""),
        f"  kernel K      {[int(e) for e in loc.ring_loc.kernel.elements]}",
        f"  module order  {loc.module.order}",
        f"  torsion T     {[_vec(M, e) for e in loc.torsion.elements]}",
    ]
    payload = {
        "ring_order": loc.ring_loc.ring.order,
        "kernel": _ideal_row(loc.ring_loc.kernel),
        "module_order": loc.module.order,
        "torsion": _sub_row(loc.torsion),
        "degenerate": loc.degenerate,
    }
    return lines, [_result_report("localize", desc, payload)], 0


def _cmd_is_flat(inst: Instance):
    M = inst.module
    res = is_flat(M, inst.budgets)
    desc = module_descriptor(M)
    lines = [f"is-flat for {desc}: {res.flat}"]
    for c in res.certificate:
        lines.append(
            f"  maximal ideal {c['maximal_ideal']}: g={c['min_generators']}, "
            f"|M_loc|={c['local_module_order']}, |R_loc|={c['local_ring_order']}, "
            f"free={c['free']}"
        )
    for s in res.skipped:
        lines.append(f"  skipped: {s}")
    payload = {"flat": res.flat, "certificate": list(res.certificate), "skipped": list(res.skipped)}
    return lines, [_result_report("is-flat", desc, payload)], 0


def _cmd_ring_info(inst: Instance):
    R = inst.ring
    lines = [f"ring {R.label}: order {R.order}, zero={R.zero}, one={R.one}"]
    lines.append("  index  alias")
    aliases = {}
    for i in range(R.order):
        aliases[str(i)] = element_alias(R, i)
        lines.append(f"  {i:<6} {element_alias(R, i)}")
    return lines, [_result_report("ring-info", R.label, {"aliases": aliases})], 0


def _result_report(claim: str, instance: str, payload: dict) -> VerificationReport:
    return VerificationReport(claim, instance, "pass", payload, 0.0)


def _cmd_verify(args, inst: Instance | None, budgets: Budgets):
    claim = args.claim
    if claim != "all" and claim not in CLAIMS:
        raise InvalidInput(f"unknown claim id {claim!r}; choose from {('all',) + CLAIMS}")
    if inst is None:
        config = CorpusConfig(budgets=budgets)
        bundle = run_all(config, claims=None if claim == "all" else (claim,))
        counts = bundle.counts()
        lines = [
            f"verify {claim}: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['skipped']} skipped over {bundle.stats['modules']} modules "
            f"/ {bundle.stats['rings']} rings"
        ]
        for r in bundle.failures[:20]:
            lines.append(f"  FAIL {r.claim} {r.instance}: {r.witness}")
        if bundle.exploratory:
            lines.append(f"  exploratory notes: {len(bundle.exploratory)} (not failures)")
            for e in bundle.exploratory[:3]:
                lines.append(f"    {e['claim']} {e['instance']}: count={e['count']}")
        return lines, bundle.to_json(), (0 if bundle.ok else 1)

    reports = _verify_single(claim, inst, budgets)
    lines = []
    code = 0
    for r in reports:
        lines.append(f"{r.claim} {r.instance}: {r.verdict}")
        if r.failed:
            lines.append(f"  witness {r.witness}")
            code = 1
    return lines, [r.as_dict() for r in reports], code


def _verify_single(claim: str, inst: Instance, budgets: Budgets) -> list[VerificationReport]:
    if claim == "ex-1.2":
        gens = inst.spec.submodules.get("P")
        if gens is None:
            raise InvalidInput("verify ex-1.2 needs a submodule named 'P' (the prime ideal)")
        flat_gens = []
        for i, v in enumerate(gens):
            _require(len(v) == 1, f"submodules.P[{i}]: prime-ideal generators must be 1-vectors")
            flat_gens.append(v[0])
        ideal = ideal_generate(inst.ring, flat_gens)
        return [verify_example_1_2(inst.ring, ideal, budgets)]
    if claim == "thm-1.5" or claim == "cor-1.6":
        return verify_thm_1_5(inst.module, inst.multset(), budgets)
    if claim.startswith("thm-2.3"):
        gens = inst.spec.submodules.get("N", [])
        idx = [inst.module.elem(v).index for v in gens]
        return verify_thm_2_3(inst.module, idx, budgets)
    module_level = {
        "prop-1.1": _prop11_module,
        "antichain": _antichain_module,
        "sspec-max": _sspec_max_module,
        "prop-1.3": _sspec_max_module,
        "maxring-shadow": _maxring_shadow_module,
    }
    M = inst.module
    ctx = _ModuleCtx(M, module_descriptor(M), budgets)
    if claim == "thm-1.7":
        return [_timed("thm-1.7", ctx.desc, lambda: _thm17_module(ctx, {}, []))]
    fn = module_level.get(claim)
    if fn is None:
        raise InvalidInput(f"claim {claim!r} has no single-instance form; run without --instance")
    return [_timed(claim, ctx.desc, lambda: fn(ctx))]


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spm",
        description="Finite rings, finite modules, and strongly prime submodules.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("claim", nargs="?", default="all", help="claim id for the verify command")
    p.add_argument("--instance", help="path to a JSON instance file")
    p.add_argument("--json", dest="json_out", help="write the machine-readable report here")
    p.add_argument("--max-module-order", type=int, default=Budgets.max_module_order)
    p.add_argument("--max-submodules", type=int, default=Budgets.max_submodules)
    p.add_argument("--seed", type=int, default=Budgets.seed)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    budgets = Budgets(args.max_module_order, args.max_submodules, args.seed)
    try:
        inst = None
        if args.instance is not None:
            with open(args.instance, encoding="utf-8") as fh:
                inst = Instance(parse_instance(fh.read()), budgets)
        if args.command == "verify":
            lines, reports, code = _cmd_verify(args, inst, budgets)
        else:
            if inst is None:
                raise InvalidInput(f"command {args.command!r} requires --instance")
            handlers = {
                "colon": _cmd_colon,
                "sspec": _cmd_sspec,
                "srad": _cmd_srad,
                "sht": _cmd_sht,
                "localize": _cmd_localize,
                "is-flat": _cmd_is_flat,
                "ring-info": _cmd_ring_info,
            }
            if args.command in _PREDICATES:
                lines, reports, code = _cmd_predicate(args.command, inst)
            else:
                lines, reports, code = handlers[args.command](inst)
        print("\n".join(lines))
        if args.json_out:
            payload = [r.as_dict() if isinstance(r, VerificationReport) else r for r in reports]
            with open(args.json_out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)
                fh.write("\n")
        return code
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InvalidInput, ImproperSubmoduleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
