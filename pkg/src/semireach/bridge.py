"""Inter-reductions between affine-function problems and matrix problems,
the Turing reduction from rational affine reachability to vector
reachability, and multi-subset-sum hardness-instance generators."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import problems as P
from .core import AffineMap, Mat2, UTMat, Vec2
from .problems import ProblemInstance, Verdict, no, unknown


def encode_affine(inst: ProblemInstance) -> ProblemInstance:
    """Translate an affine-tagged instance into the matching matrix
    instance (membership, vector reachability, or zero-reachability)."""
    p = inst.problem
    if p == P.AFFINE_MEMBERSHIP_Z:
        return ProblemInstance(
            P.MATRIX_MEMBERSHIP,
            tuple(f.matrix() for f in inst.generators),
            target=inst.target.matrix())
    if p == P.AFFINE_REACHABILITY_Z:
        return ProblemInstance(
            P.VECTOR_REACHABILITY,
            tuple(f.matrix() for f in inst.generators),
            x=Vec2(inst.x, 1), y=Vec2(inst.y, 1))
    if p == P.AFFINE_REACHABILITY_Q:
        xf, yf = Fraction(inst.x), Fraction(inst.y)
        if yf == 0:
            raise ValueError("target value 0 has a degenerate row encoding")
        # row (y2, -y1) annihilates exactly the multiples of (y1, y2)
        return ProblemInstance(
            P.ZERO_REACHABILITY,
            tuple(f.matrix() for f in inst.generators),
            x=Vec2(xf.numerator, xf.denominator),
            y=Vec2(yf.denominator, -yf.numerator))
    raise ValueError(f"not an affine-tagged instance: {p}")


def decode_affine(inst: ProblemInstance) -> ProblemInstance:
    """Inverse of encode_affine on canonically encoded instances."""
    p = inst.problem
    gens = inst.generators
    if p == P.MATRIX_MEMBERSHIP:
        if not all(isinstance(m, UTMat) and m.c == 1 for m in gens) or \
           not (isinstance(inst.target, UTMat) and inst.target.c == 1):
            raise ValueError("not an encoded integer affine membership instance")
        return ProblemInstance(
            P.AFFINE_MEMBERSHIP_Z,
            tuple(AffineMap(m.a, m.b) for m in gens),
            target=AffineMap(inst.target.a, inst.target.b))
    if p == P.VECTOR_REACHABILITY:
        if not all(isinstance(m, UTMat) and m.c == 1 for m in gens) or \
           inst.x.v2 != 1 or inst.y.v2 != 1:
            raise ValueError("not an encoded integer affine reachability instance")
        return ProblemInstance(
            P.AFFINE_REACHABILITY_Z,
            tuple(AffineMap(m.a, m.b) for m in gens),
            x=inst.x.v1, y=inst.y.v1)
    if p == P.ZERO_REACHABILITY:
        if not all(isinstance(m, UTMat) for m in gens):
            raise ValueError("not an encoded rational affine reachability instance")
        if inst.x.v2 == 0 or inst.y.v1 == 0:
            raise ValueError("degenerate start or target encoding")
        return ProblemInstance(
            P.AFFINE_REACHABILITY_Q,
            tuple(AffineMap.make(m.a, m.b, m.c, "Q") for m in gens),
            x=Fraction(inst.x.v1, inst.x.v2),
            y=Fraction(-inst.y.v2, inst.y.v1))
    raise ValueError(f"cannot decode problem {p}")


def reduce_affQ_to_vecreach(inst: ProblemInstance) -> list[ProblemInstance]:
    """Rational affine reachability as a disjunction of vector-reachability
    instances targeting the zero vector.

    Applying a constant function resets the orbit, so every run splits as
    "maybe one last constant, then non-constant functions only": one
    sub-instance starts at x, and one starts at each constant's value,
    all with the constants removed and an extra annihilator generator.
    """
    if inst.problem != P.AFFINE_REACHABILITY_Q:
        raise ValueError("expected a rational affine reachability instance")
    yf = Fraction(inst.y)
    annihilator = UTMat(yf.denominator, -yf.numerator, 0)
    nonconst = [f for f in inst.generators if f.a != 0]
    consts = [Fraction(f.b, f.c) for f in inst.generators if f.a == 0]
    gens = tuple(f.matrix() for f in nonconst) + (annihilator,)
    starts = [Fraction(inst.x)] + consts
    return [
        ProblemInstance(P.VECTOR_REACHABILITY, gens,
                        x=Vec2(s.numerator, s.denominator), y=Vec2(0, 0))
        for s in starts
    ]


def disjunction(verdicts: Sequence[Verdict]) -> Verdict:
    """Combine Turing-reduction sub-verdicts: Yes dominates, then Unknown,
    then No."""
    for v in verdicts:
        if v.is_yes:
            return v
    if any(not v.definitive for v in verdicts):
        return unknown()
    return no("saturation")


GEN_HARD_VARIANTS = ("membership", "vector", "zero-reach", "det-minus-one",
                     "mortality")


def gen_hard(a: Sequence[int], t: int, variant: str) -> ProblemInstance:
    """Hardness instance from a multi-subset-sum input: the result is Yes
    iff some nonnegative combination of the a_i sums to t."""
    a = list(a)
    if any(v < 0 for v in a) or t < 0:
        raise ValueError("multi-subset-sum inputs are nonnegative")
    if variant == "membership":
        return ProblemInstance(P.MATRIX_MEMBERSHIP,
                               tuple(UTMat(1, ai, 1) for ai in a),
                               target=UTMat(1, t, 1))
    if variant == "vector":
        return ProblemInstance(P.VECTOR_REACHABILITY,
                               tuple(UTMat(1, ai, 1) for ai in a),
                               x=Vec2(0, 1), y=Vec2(t, 1))
    if variant == "zero-reach":
        # row (1, -t) applied to (sum, 1)
        return ProblemInstance(P.ZERO_REACHABILITY,
                               tuple(UTMat(1, ai, 1) for ai in a),
                               x=Vec2(0, 1), y=Vec2(1, -t))
    if variant == "det-minus-one":
        gens = tuple(UTMat(-1, -ai, -1) for ai in a) + (UTMat(-1, 0, -1),)
        return ProblemInstance(P.MATRIX_MEMBERSHIP, gens,
                               target=UTMat(1, t, 1))
    if variant == "mortality":
        gens = tuple(Mat2(1, ai, 0, 1) for ai in a) + (Mat2(0, 0, 1, -t),)
        return ProblemInstance(P.MORTALITY, gens)
    raise ValueError(f"unknown gen_hard variant {variant!r}")


def subset_sum_dp(a: Sequence[int], t: int) -> bool:
    """Independent dynamic-programming answer to multi-subset-sum: is t a
    nonnegative integer combination of the a_i?"""
    if t < 0:
        return False
    reach = [False] * (t + 1)
    reach[0] = True
    for v in range(1, t + 1):
        reach[v] = any(ai != 0 and ai <= v and reach[v - ai] for ai in a)
    return reach[t]
