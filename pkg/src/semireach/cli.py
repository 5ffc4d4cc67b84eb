"""Command-line surface: JSON (de)serialization of instances, solver
dispatch with structural auto-routing, witness verification, instance
generation, and the solver-vs-oracle cross-check harness.

All integers travel as decimal strings so consumers never face
precision limits.  Exit codes: 0 yes, 1 no, 2 unknown, 3 error.
"""

from __future__ import annotations

import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import click

from . import problems as P
from .bridge import GEN_HARD_VARIANTS, gen_hard
from .core import AffineMap, Mat2, UTMat, Vec2
from .detpm1 import solve_detminus1, solve_detpm1
from .machines import (Bca, Prm, PrmBudget, reach_bca, reach_prm,
                       reduce_bca_to_arm)
from .mortality import solve_mortality
from .oracle import oracle_solve, replay
from .problems import Budget, ProblemInstance, Verdict
from .utsolvers import (reduce_membership_to_scalar,
                        solve_membership_nonzero_diag,
                        solve_membership_one_zero, solve_vecreach_ut22)

BCA_REACHABILITY = "bca-reachability"
ARM_REACHABILITY = "arm-reachability"

_INT_RE = re.compile(r"^-?(0|[1-9][0-9]*)$")

SOLVER_NAMES = ("auto", "oracle", "detpm1", "detminus1", "utvec",
                "utmember", "mortality", "machines")

EXIT_BY_KIND = {"yes": 0, "no": 1, "unknown": 2}


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class MachineInstance:
    """A reachability question about a counter or register machine."""

    problem: str  # BCA_REACHABILITY | ARM_REACHABILITY
    machine: Union[Bca, Prm]
    source: tuple
    target: tuple


# ---------------------------------------------------------------------------
# JSON encoding


def _enc_int(n: int) -> str:
    return str(int(n))


def _dec_int(s) -> int:
    if not isinstance(s, str) or not _INT_RE.match(s):
        raise SchemaError(f"bad integer encoding {s!r}")
    return int(s)


def _enc_rat(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _dec_rat(s) -> Fraction:
    if not isinstance(s, str):
        raise SchemaError(f"bad rational encoding {s!r}")
    num, _, den = s.partition("/")
    if den:
        return Fraction(_dec_int(num), _dec_int(den))
    return Fraction(_dec_int(num))


def _enc_matrix(m):
    if isinstance(m, UTMat):
        return [_enc_int(m.a), _enc_int(m.b), _enc_int(m.c)]
    return [[_enc_int(m.m11), _enc_int(m.m12)],
            [_enc_int(m.m21), _enc_int(m.m22)]]


def _dec_matrix(doc):
    if not isinstance(doc, list):
        raise SchemaError(f"bad matrix encoding {doc!r}")
    if len(doc) == 3:
        return UTMat(*(_dec_int(v) for v in doc))
    if len(doc) == 2 and all(isinstance(r, list) and len(r) == 2 for r in doc):
        return Mat2(*(_dec_int(v) for r in doc for v in r))
    raise SchemaError(f"bad matrix encoding {doc!r}")


def _enc_affine(f: AffineMap):
    return {"a": _enc_int(f.a), "b": _enc_int(f.b), "c": _enc_int(f.c)}


def _dec_affine(doc, domain: str) -> AffineMap:
    if not isinstance(doc, dict) or set(doc) - {"a", "b", "c"}:
        raise SchemaError(f"bad affine map encoding {doc!r}")
    return AffineMap.make(_dec_int(doc["a"]), _dec_int(doc["b"]),
                          _dec_int(doc.get("c", "1")), domain)


def _enc_vec(v: Vec2):
    return [_enc_int(v.v1), _enc_int(v.v2)]


def _dec_vec(doc) -> Vec2:
    if not isinstance(doc, list) or len(doc) != 2:
        raise SchemaError(f"bad vector encoding {doc!r}")
    return Vec2(_dec_int(doc[0]), _dec_int(doc[1]))


def _enc_machine(m):
    if isinstance(m, Bca):
        return {"states": list(m.states), "bound": _enc_int(m.bound),
                "transitions": [[s, _enc_int(p), d]
                                for s, p, d in m.transitions]}
    return {"states": list(m.states),
            "transitions": [[s, d, [_enc_int(c) for c in p]]
                            for s, d, p in m.transitions]}


def _dec_machine(doc, problem: str):
    if not isinstance(doc, dict) or "states" not in doc \
            or "transitions" not in doc:
        raise SchemaError("machine needs states and transitions")
    states = tuple(doc["states"])
    if not all(isinstance(q, str) for q in states):
        raise SchemaError("machine states must be strings")
    if problem == BCA_REACHABILITY:
        return Bca(states, _dec_int(doc["bound"]),
                   tuple((s, _dec_int(p), d)
                         for s, p, d in doc["transitions"]))
    return Prm(states, tuple((s, d, tuple(_dec_int(c) for c in p))
                             for s, d, p in doc["transitions"]))


def _enc_config(conf):
    return [conf[0], _enc_int(conf[1])]


def _dec_config(doc):
    if not isinstance(doc, list) or len(doc) != 2 \
            or not isinstance(doc[0], str):
        raise SchemaError(f"bad machine configuration {doc!r}")
    return (doc[0], _dec_int(doc[1]))


_AFFINE_TAGS = (P.AFFINE_MEMBERSHIP_Z, P.AFFINE_REACHABILITY_Z,
                P.AFFINE_REACHABILITY_Q)
_VECTOR_TAGS = (P.VECTOR_REACHABILITY, P.SCALAR_REACHABILITY,
                P.ZERO_REACHABILITY)


def serialize_instance(inst) -> dict:
    if isinstance(inst, MachineInstance):
        return {"problem": inst.problem,
                "machine": _enc_machine(inst.machine),
                "x": _enc_config(inst.source),
                "y": _enc_config(inst.target)}
    p = inst.problem
    doc = {"problem": p}
    if p in _AFFINE_TAGS:
        doc["generators"] = [_enc_affine(f) for f in inst.generators]
        if p == P.AFFINE_MEMBERSHIP_Z:
            doc["target"] = _enc_affine(inst.target)
        elif p == P.AFFINE_REACHABILITY_Z:
            doc["x"], doc["y"] = _enc_int(inst.x), _enc_int(inst.y)
        else:
            doc["x"], doc["y"] = _enc_rat(inst.x), _enc_rat(inst.y)
        return doc
    doc["generators"] = [_enc_matrix(m) for m in inst.generators]
    if p == P.MATRIX_MEMBERSHIP:
        doc["target"] = _enc_matrix(inst.target)
    elif p in _VECTOR_TAGS:
        doc["x"], doc["y"] = _enc_vec(inst.x), _enc_vec(inst.y)
        if p == P.SCALAR_REACHABILITY:
            doc["lambda"] = _enc_int(inst.lam)
    return doc


def parse_instance(doc):
    if not isinstance(doc, dict) or "problem" not in doc:
        raise SchemaError("instance file needs a problem tag")
    p = doc["problem"]
    if p in (BCA_REACHABILITY, ARM_REACHABILITY):
        return MachineInstance(p, _dec_machine(doc.get("machine"), p),
                               _dec_config(doc.get("x")),
                               _dec_config(doc.get("y")))
    if p not in P.PROBLEM_TAGS:
        raise SchemaError(f"unknown problem tag {p!r}")
    gens_doc = doc.get("generators", [])
    if not isinstance(gens_doc, list):
        raise SchemaError("generators must be a list")
    kw = {}
    try:
        return _parse_fields(doc, p, gens_doc, kw)
    except KeyError as e:
        raise SchemaError(f"missing field {e.args[0]!r}")


def _parse_fields(doc, p, gens_doc, kw):
    if p in _AFFINE_TAGS:
        domain = "Q" if p == P.AFFINE_REACHABILITY_Q else "Z"
        gens = tuple(_dec_affine(g, domain) for g in gens_doc)
        if p == P.AFFINE_MEMBERSHIP_Z:
            kw["target"] = _dec_affine(doc["target"], domain)
        elif p == P.AFFINE_REACHABILITY_Z:
            kw["x"], kw["y"] = _dec_int(doc["x"]), _dec_int(doc["y"])
        else:
            kw["x"], kw["y"] = _dec_rat(doc["x"]), _dec_rat(doc["y"])
    else:
        gens = tuple(_dec_matrix(g) for g in gens_doc)
        if p == P.MATRIX_MEMBERSHIP:
            kw["target"] = _dec_matrix(doc["target"])
        elif p in _VECTOR_TAGS:
            kw["x"], kw["y"] = _dec_vec(doc["x"]), _dec_vec(doc["y"])
            if p == P.SCALAR_REACHABILITY:
                kw["lambda"] = _dec_int(doc["lambda"])
    if "lambda" in kw:
        kw["lam"] = kw.pop("lambda")
    try:
        return ProblemInstance(p, gens, **kw)
    except (KeyError, ValueError) as e:
        raise SchemaError(str(e))


def serialize_result(verdict: Verdict, solver: str, budget: dict) -> dict:
    return {"verdict": verdict.kind,
            "witness": [_enc_int(i) for i in verdict.witness]
            if verdict.witness is not None else None,
            "certificate": verdict.certificate,
            "solver": solver,
            "budget": budget}


# ---------------------------------------------------------------------------
# Routing


def _as_mat2(m):
    return m.to_mat2() if isinstance(m, UTMat) else m


def _all_ut(inst) -> bool:
    mats = list(inst.generators)
    if inst.problem == P.MATRIX_MEMBERSHIP:
        mats.append(inst.target)
    return all(isinstance(m, UTMat) for m in mats)


_MATRIX_PROBLEMS = (P.MATRIX_MEMBERSHIP,) + _VECTOR_TAGS


def _detminus1_ok(inst) -> bool:
    return inst.problem in _MATRIX_PROBLEMS and _all_ut(inst) \
        and all(g.det() == -1 for g in inst.generators)


def _detpm1_ok(inst) -> bool:
    if inst.problem not in _MATRIX_PROBLEMS or not _all_ut(inst):
        return False
    if not all(g.det() in (1, -1) for g in inst.generators):
        return False
    return inst.problem != P.MATRIX_MEMBERSHIP \
        or inst.target.det() in (1, -1)


def _utmember_ok(inst) -> bool:
    return inst.problem == P.MATRIX_MEMBERSHIP and _all_ut(inst)


def _utvec_ok(inst) -> bool:
    return inst.problem == P.VECTOR_REACHABILITY \
        and all(isinstance(g, UTMat) and g.c != 0 for g in inst.generators)


def _mortality_ok(inst) -> bool:
    return inst.problem == P.MORTALITY \
        and all(_as_mat2(g).det() in (0, 1) for g in inst.generators)


def _solve_utmember(inst, budget: Budget, prm: PrmBudget) -> Verdict:
    gens, t = list(inst.generators), inst.target
    if all(g.a != 0 and g.c != 0 for g in gens) and t.a != 0 and t.c != 0:
        return solve_membership_nonzero_diag(gens, t)
    if all(g.c != 0 for g in gens):
        return solve_membership_one_zero(gens, t, prm, nonzero="c")
    if all(g.a != 0 for g in gens):
        return solve_membership_one_zero(gens, t, prm, nonzero="a")
    return reduce_membership_to_scalar(gens, t, budget, prm)


def _solve_machines(mi: MachineInstance, prm: PrmBudget) -> Verdict:
    if mi.problem == BCA_REACHABILITY:
        return reach_bca(mi.machine, mi.source, mi.target)
    return reach_prm(mi.machine, mi.source, mi.target, prm)


def dispatch(inst, solver: str, budget: Budget, prm: PrmBudget):
    """Run the requested solver, or route by structural preconditions
    (most specific hypothesis first) when solver is "auto"."""
    if isinstance(inst, MachineInstance):
        if solver not in ("auto", "machines"):
            raise SchemaError(f"solver {solver} cannot handle {inst.problem}")
        return _solve_machines(inst, prm), "machines"
    if solver == "machines":
        raise SchemaError("machines solver needs a machine instance")
    if solver == "auto":
        if _detminus1_ok(inst):
            return solve_detminus1(inst), "detminus1"
        if _detpm1_ok(inst):
            return solve_detpm1(inst), "detpm1"
        if _utmember_ok(inst):
            return _solve_utmember(inst, budget, prm), "utmember"
        if _utvec_ok(inst):
            return solve_vecreach_ut22(list(inst.generators), inst.x,
                                       inst.y, prm), "utvec"
        if _mortality_ok(inst):
            return solve_mortality(list(inst.generators), budget), "mortality"
        return oracle_solve(inst, budget), "oracle"
    checks = {"detminus1": _detminus1_ok, "detpm1": _detpm1_ok,
              "utmember": _utmember_ok, "utvec": _utvec_ok,
              "mortality": _mortality_ok}
    if solver in checks:
        if not checks[solver](inst):
            raise SchemaError(
                f"instance does not meet the {solver} preconditions")
        if solver == "detminus1":
            return solve_detminus1(inst), solver
        if solver == "detpm1":
            return solve_detpm1(inst), solver
        if solver == "utmember":
            return _solve_utmember(inst, budget, prm), solver
        if solver == "utvec":
            return solve_vecreach_ut22(list(inst.generators), inst.x,
                                       inst.y, prm), solver
        return solve_mortality(list(inst.generators), budget), solver
    return oracle_solve(inst, budget), "oracle"


# ---------------------------------------------------------------------------
# Witness replay with step diagnostics


def replay_machine(mi: MachineInstance, witness) -> Optional[str]:
    """None if the transition-index witness drives source to target,
    else a description of the first divergent step."""
    trans = mi.machine.transitions
    conf = mi.source
    for step, i in enumerate(witness):
        if not 0 <= i < len(trans):
            return f"step {step}: transition index {i} out of range"
        if mi.problem == BCA_REACHABILITY:
            s, p, d = trans[i]
            if s != conf[0]:
                return f"step {step}: transition {i} starts at {s!r}, " \
                       f"machine is at {conf[0]!r}"
            c = conf[1] + p
            if not 0 <= c <= mi.machine.bound:
                return f"step {step}: counter {c} leaves " \
                       f"[0, {mi.machine.bound}]"
            conf = (d, c)
        else:
            s, d, p = trans[i]
            if s != conf[0]:
                return f"step {step}: transition {i} starts at {s!r}, " \
                       f"machine is at {conf[0]!r}"
            from .machines import poly_eval
            conf = (d, poly_eval(p, conf[1]))
    if conf != mi.target:
        return f"step {len(witness)}: run ends at {conf}, " \
               f"target is {mi.target}"
    return None


def replay_instance(inst, witness) -> Optional[str]:
    if isinstance(inst, MachineInstance):
        return replay_machine(inst, witness)
    n = len(inst.generators)
    for step, i in enumerate(witness):
        if not 0 <= i < n:
            return f"step {step}: generator index {i} out of range"
    if not replay(inst, tuple(witness)):
        return f"step {len(witness)}: replayed product misses the target"
    return None


# ---------------------------------------------------------------------------
# Random instance generation (shared by gen random and xcheck)


def _rand_ut(rng, lo=-3, hi=3):
    return UTMat(rng.randint(lo, hi), rng.randint(lo, hi), rng.randint(lo, hi))


def _rand_word_product(rng, gens, ident, max_len=4):
    prod = ident
    for _ in range(rng.randint(0, max_len)):
        if not gens:
            break
        prod = prod * rng.choice(gens)
    return prod


def _rand_vec_problem(rng, problem, gens):
    x = Vec2(rng.randint(-3, 3), rng.randint(-3, 3))
    if rng.random() < 0.5 and gens:
        v = x
        for _ in range(rng.randint(0, 4)):
            v = rng.choice(gens).apply(v)
    else:
        v = Vec2(rng.randint(-6, 6), rng.randint(-6, 6))
    if problem == P.VECTOR_REACHABILITY:
        return ProblemInstance(problem, gens, x=x, y=v)
    y = Vec2(rng.randint(-3, 3), rng.randint(-3, 3))
    if problem == P.ZERO_REACHABILITY:
        return ProblemInstance(problem, gens, x=x, y=y)
    lam = y.v1 * v.v1 + y.v2 * v.v2 if rng.random() < 0.5 \
        else rng.randint(-6, 6)
    return ProblemInstance(problem, gens, x=x, y=y, lam=lam)


def random_instance(rng: random.Random, family: str) -> ProblemInstance:
    if family == "detpm1":
        gens = tuple(UTMat(rng.choice((1, -1)), rng.randint(-3, 3),
                           rng.choice((1, -1)))
                     for _ in range(rng.randint(0, 4)))
    elif family == "detminus1":
        gens = []
        for _ in range(rng.randint(0, 4)):
            a = rng.choice((1, -1))
            gens.append(UTMat(a, rng.randint(-3, 3), -a))
        gens = tuple(gens)
    elif family in ("utvec", "utmember", "random"):
        gens = tuple(_rand_ut(rng) for _ in range(rng.randint(0, 4)))
        if family == "utvec":
            gens = tuple(UTMat(g.a, g.b, g.c if g.c else 1) for g in gens)
    elif family == "mortality":
        gens = []
        for _ in range(rng.randint(1, 4)):
            while True:
                m = Mat2(*(rng.randint(-3, 3) for _ in range(4)))
                if m.det() in (0, 1):
                    gens.append(m)
                    break
        return ProblemInstance(P.MORTALITY, tuple(gens))
    else:
        raise SchemaError(f"unknown family {family!r}")
    if family == "utvec":
        return _rand_vec_problem(rng, P.VECTOR_REACHABILITY, gens)
    if family == "utmember":
        target = _rand_word_product(rng, gens, UTMat.identity()) \
            if rng.random() < 0.6 else _rand_ut(rng, -5, 5)
        return ProblemInstance(P.MATRIX_MEMBERSHIP, gens, target=target)
    problem = rng.choice(_MATRIX_PROBLEMS)
    if problem == P.MATRIX_MEMBERSHIP:
        target = _rand_word_product(rng, gens, UTMat.identity()) \
            if rng.random() < 0.6 else _rand_ut(rng, -5, 5)
        if family in ("detpm1", "detminus1") and rng.random() < 0.7:
            # keep the target inside the solver's hypothesis most times
            target = UTMat(rng.choice((1, -1)), rng.randint(-5, 5),
                           rng.choice((1, -1)))
        return ProblemInstance(problem, gens, target=target)
    return _rand_vec_problem(rng, problem, gens)


def _random_bca(rng: random.Random) -> MachineInstance:
    nstates = rng.randint(2, 4)
    bound = rng.randint(1, 7)
    states = tuple(f"q{i}" for i in range(nstates))
    trans = tuple((rng.choice(states), rng.randint(-bound, bound),
                   rng.choice(states))
                  for _ in range(rng.randint(1, 6)))
    m = Bca(states, bound, trans)
    src = (rng.choice(states), rng.randint(0, bound))
    dst = (rng.choice(states), rng.randint(0, bound))
    return MachineInstance(BCA_REACHABILITY, m, src, dst)


# ---------------------------------------------------------------------------
# Commands


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(str(e))


def _fail(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(3)


@click.group()
def main():
    """Decision procedures for 2x2 matrix and affine reachability."""


@main.command()
@click.argument("instance", type=str)
@click.option("--solver", default="auto", type=click.Choice(SOLVER_NAMES))
@click.option("--max-len", default=12, show_default=True,
              help="word-length budget for search-based solvers")
@click.option("--max-magnitude", default=10 ** 6, show_default=True,
              help="entry-magnitude cap for search-based solvers")
@click.option("--max-steps", default=4096, show_default=True,
              help="stored-configuration cap for register-machine search")
def solve(instance, solver, max_len, max_magnitude, max_steps):
    """Solve the instance in INSTANCE (a JSON file, or - for stdin)."""
    budget = Budget(max_len, max_magnitude)
    prm = PrmBudget(max_steps, max_magnitude)
    try:
        inst = parse_instance(_read_json(instance))
        verdict, used = dispatch(inst, solver, budget, prm)
    except (SchemaError, ValueError) as e:
        _fail(str(e))
    click.echo(json.dumps(serialize_result(
        verdict, used,
        {"max-len": max_len, "max-magnitude": max_magnitude,
         "max-steps": max_steps}), indent=2))
    sys.exit(EXIT_BY_KIND[verdict.kind])


@main.command()
@click.argument("instance", type=str)
@click.argument("result", type=str)
def verify(instance, result):
    """Replay the witness in RESULT against INSTANCE."""
    try:
        inst = parse_instance(_read_json(instance))
        res = _read_json(result)
        if not isinstance(res, dict) or res.get("verdict") != "yes":
            raise SchemaError("result file must carry a yes verdict")
        witness = [_dec_int(i) for i in res.get("witness") or []]
    except (SchemaError, ValueError) as e:
        _fail(str(e))
    diag = replay_instance(inst, witness)
    if diag is not None:
        click.echo(f"replay mismatch: {diag}", err=True)
        sys.exit(1)
    click.echo("witness ok")
    sys.exit(0)


@main.command()
@click.argument("family",
                type=click.Choice(("multisubsetsum", "bca2arm", "random")))
@click.option("--a", "avals", default="", help="comma-separated weights")
@click.option("--t", "target_sum", default=0, help="target sum")
@click.option("--variant", default="membership",
              type=click.Choice(GEN_HARD_VARIANTS))
@click.option("--seed", default=0, show_default=True)
@click.option("--problem", default=P.MATRIX_MEMBERSHIP,
              type=click.Choice(sorted(P.PROBLEM_TAGS)))
@click.option("--count", default=3, show_default=True,
              help="generator count for the random family")
def gen(family, avals, target_sum, variant, seed, problem, count):
    """Emit an instance file on standard output."""
    rng = random.Random(seed)
    try:
        if family == "multisubsetsum":
            weights = [int(v) for v in avals.split(",") if v.strip() != ""]
            inst = gen_hard(weights, target_sum, variant)
        elif family == "bca2arm":
            bca = _random_bca(rng)
            red = reduce_bca_to_arm(bca.machine, bca.source, bca.target)
            inst = MachineInstance(ARM_REACHABILITY, red.machine,
                                   red.source, red.target)
        else:
            gens = tuple(_rand_ut(rng) for _ in range(count))
            if problem == P.MORTALITY:
                inst = ProblemInstance(problem, gens)
            elif problem == P.MATRIX_MEMBERSHIP:
                inst = ProblemInstance(
                    problem, gens,
                    target=_rand_word_product(rng, list(gens),
                                              UTMat.identity()))
            elif problem in _VECTOR_TAGS:
                inst = _rand_vec_problem(rng, problem, gens)
            elif problem == P.AFFINE_MEMBERSHIP_Z:
                fs = tuple(AffineMap(rng.randint(-3, 3), rng.randint(-3, 3))
                           for _ in range(count))
                t = AffineMap(1, 0)
                for _ in range(rng.randint(0, 4)):
                    if fs:
                        t = t.compose(rng.choice(fs))
                inst = ProblemInstance(problem, fs, target=t)
            elif problem == P.AFFINE_REACHABILITY_Z:
                fs = tuple(AffineMap(rng.randint(-3, 3), rng.randint(-3, 3))
                           for _ in range(count))
                inst = ProblemInstance(problem, fs, x=rng.randint(-5, 5),
                                       y=rng.randint(-9, 9))
            else:
                fs = tuple(AffineMap.make(rng.randint(-3, 3),
                                          rng.randint(-3, 3),
                                          rng.choice((1, 2, 3)), "Q")
                           for _ in range(count))
                inst = ProblemInstance(
                    problem, fs, x=Fraction(rng.randint(-5, 5)),
                    y=Fraction(rng.randint(-9, 9), rng.randint(1, 3)))
    except (SchemaError, ValueError) as e:
        _fail(str(e))
    click.echo(json.dumps(serialize_instance(inst), indent=2))


@main.command()
@click.option("--count", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--family", default="random", show_default=True,
              type=click.Choice(("detpm1", "detminus1", "utvec", "utmember",
                                 "mortality", "random")))
@click.option("--max-len", default=8, show_default=True)
@click.option("--max-magnitude", default=10 ** 6, show_default=True)
@click.option("--max-steps", default=4096, show_default=True)
def xcheck(count, seed, family, max_len, max_magnitude, max_steps):
    """Cross-check the routed solver against the brute-force oracle on
    seeded random instances and report definitive disagreements."""
    rng = random.Random(seed)
    budget = Budget(max_len, max_magnitude)
    prm = PrmBudget(max_steps, max_magnitude)
    report = {"count": count, "seed": seed, "family": family,
              "disagreements": 0, "unknown": 0, "bad-witnesses": 0,
              "details": []}
    for idx in range(count):
        inst = random_instance(rng, family)
        verdict, used = dispatch(inst, "auto", budget, prm)
        oracle = oracle_solve(inst, budget)
        if verdict.is_yes and replay_instance(inst, verdict.witness) \
                is not None:
            report["bad-witnesses"] += 1
            report["details"].append(
                {"index": idx, "solver": used, "kind": "bad-witness",
                 "instance": serialize_instance(inst)})
        if not verdict.definitive or not oracle.definitive:
            report["unknown"] += 1
        elif verdict.is_yes != oracle.is_yes:
            report["disagreements"] += 1
            report["details"].append(
                {"index": idx, "solver": used, "kind": "disagreement",
                 "solver-verdict": verdict.kind, "oracle": oracle.kind,
                 "instance": serialize_instance(inst)})
    click.echo(json.dumps(report, indent=2))
    sys.exit(0 if report["disagreements"] == 0
             and report["bad-witnesses"] == 0 else 1)


if __name__ == "__main__":
    main()
