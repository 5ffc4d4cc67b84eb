"""Sign-pair automaton, run-value sets, and the exact solvers for
determinant +-1 and all-determinant--1 generator sets."""

import itertools
import random

import pytest

from semireach import problems as P
from semireach.core import UTMat, Vec2
from semireach.detpm1 import (SIGN_STATES, build_zvass, detminus1_summary,
                              realize_run, solve_detminus1, solve_detpm1,
                              value_set)
from semireach.oracle import oracle_solve, replay
from semireach.problems import Budget, ProblemInstance


def test_build_zvass_transitions():
    v = build_zvass([UTMat(-1, 3, -1)])
    by_src = {src: (w, dst) for src, w, dst in v.transitions}
    assert by_src[(1, 1)] == (-3, (-1, -1))
    assert by_src[(1, -1)] == (3, (-1, 1))
    assert by_src[(-1, 1)] == (3, (1, -1))
    assert by_src[(-1, -1)] == (-3, (1, 1))
    # a unipotent generator self-loops with weight s*t*b
    u = build_zvass([UTMat(1, 5, 1)])
    for src, w, dst in u.transitions:
        assert dst == src and w == src[0] * src[1] * 5
    assert build_zvass([]).transitions == ()
    with pytest.raises(ValueError):
        build_zvass([UTMat(2, 0, 1)])


def test_value_set_examples():
    v = build_zvass([UTMat(1, 2, 1)])
    s = value_set(v, (1, 1), (1, 1))
    assert s.agrees_with(lambda t: t >= 0 and t % 2 == 0, -10, 30)
    assert value_set(v, (1, 1), (-1, -1)).is_empty()

    neg = build_zvass([UTMat(-1, 0, -1)])
    assert value_set(neg, (1, 1), (-1, -1)).agrees_with(
        lambda t: t == 0, -10, 10)
    assert value_set(neg, (1, 1), (1, -1)).is_empty()

    empty = build_zvass([])
    assert value_set(empty, (1, 1), (1, 1)).agrees_with(
        lambda t: t == 0, -10, 10)
    with pytest.raises(ValueError):
        value_set(empty, (0, 1), (1, 1))


def _products_by_state(gens, maxlen):
    """{(s, t): set of top-right values} over words up to maxlen."""
    out = {}
    level = {UTMat.identity()}
    seen = set()
    for _ in range(maxlen + 1):
        for m in level:
            out.setdefault((m.a, m.c), set()).add(m.c * m.b)
        seen |= level
        level = {m * g for m in level for g in gens} - seen
    return out


def test_value_set_matches_word_enumeration():
    rng = random.Random(21)
    for _ in range(60):
        k = rng.randint(0, 3)
        gens = [UTMat(rng.choice((1, -1)), rng.randint(-3, 3),
                      rng.choice((1, -1))) for _ in range(k)]
        v = build_zvass(gens)
        got = {st: value_set(v, (1, 1), st) for st in SIGN_STATES}
        want = _products_by_state(gens, 6)
        for st in SIGN_STATES:
            for val in want.get(st, ()):
                assert got[st].member(val), (gens, st, val)
        # and realized values really occur as run values of actual words
        for st in SIGN_STATES:
            for b, step in got[st].components[:4]:
                for val in (b, b + 2 * step):
                    word = realize_run(gens, (1, 1), st, val)
                    assert word is not None, (gens, st, val)
                    prod = UTMat.identity()
                    for i in word:
                        prod = prod * gens[i]
                    assert (prod.a, prod.c) == st
                    assert prod.c * prod.b == val


def test_solve_detpm1_membership_examples():
    from semireach.bridge import gen_hard
    inst = gen_hard([3, 5], 11, "membership")
    v = solve_detpm1(inst)
    assert v.is_yes and replay(inst, v.witness)

    ident = ProblemInstance(P.MATRIX_MEMBERSHIP,
                            (UTMat(-1, 2, 1), UTMat(1, 0, -1)),
                            target=UTMat.identity())
    assert solve_detpm1(ident).is_yes

    parity = ProblemInstance(P.MATRIX_MEMBERSHIP, (UTMat(1, 2, 1),),
                             target=UTMat(1, 1, 1))
    assert solve_detpm1(parity).is_no

    with pytest.raises(ValueError):
        solve_detpm1(ProblemInstance(P.MATRIX_MEMBERSHIP, (UTMat(2, 0, 1),),
                                     target=UTMat(1, 0, 1)))
    with pytest.raises(ValueError):
        solve_detpm1(ProblemInstance(P.MATRIX_MEMBERSHIP, (UTMat(1, 0, 1),),
                                     target=UTMat(2, 0, 1)))


def test_solve_detpm1_vector_and_scalar():
    g = (UTMat(1, 1, 1),)
    inst = ProblemInstance(P.VECTOR_REACHABILITY, g, x=Vec2(1, 1),
                           y=Vec2(4, 1))
    v = solve_detpm1(inst)
    assert v.is_yes and replay(inst, v.witness)
    assert solve_detpm1(ProblemInstance(
        P.VECTOR_REACHABILITY, g, x=Vec2(1, 1), y=Vec2(4, 2))).is_no
    sc = ProblemInstance(P.SCALAR_REACHABILITY, g, x=Vec2(0, 1),
                         y=Vec2(1, 0), lam=7)
    v = solve_detpm1(sc)
    assert v.is_yes and replay(sc, v.witness)
    z = ProblemInstance(P.ZERO_REACHABILITY, g, x=Vec2(-3, 1), y=Vec2(1, 0))
    assert solve_detpm1(z).is_yes


def _random_pm1_instance(rng):
    k = rng.randint(0, 4)
    gens = tuple(UTMat(rng.choice((1, -1)), rng.randint(-3, 3),
                       rng.choice((1, -1))) for _ in range(k))
    p = rng.choice((P.MATRIX_MEMBERSHIP, P.VECTOR_REACHABILITY,
                    P.SCALAR_REACHABILITY, P.ZERO_REACHABILITY))
    if p == P.MATRIX_MEMBERSHIP:
        return ProblemInstance(p, gens, target=UTMat(
            rng.choice((1, -1)), rng.randint(-6, 6), rng.choice((1, -1))))
    x = Vec2(rng.randint(-3, 3), rng.randint(-3, 3))
    y = Vec2(rng.randint(-6, 6), rng.randint(-6, 6))
    if p == P.VECTOR_REACHABILITY:
        return ProblemInstance(p, gens, x=x, y=y)
    if p == P.SCALAR_REACHABILITY:
        return ProblemInstance(p, gens, x=x, y=y, lam=rng.randint(-6, 6))
    return ProblemInstance(p, gens, x=x, y=y)


def test_solve_detpm1_cross_check():
    rng = random.Random(22)
    B = Budget(8, 10 ** 6)
    for _ in range(150):
        inst = _random_pm1_instance(rng)
        got = solve_detpm1(inst)
        assert got.definitive
        if got.is_yes:
            assert replay(inst, got.witness), inst
        want = oracle_solve(inst, B)
        if want.definitive:
            assert got.is_yes == want.is_yes, inst


def test_detminus1_summary_example():
    s = detminus1_summary([UTMat(1, 1, -1), UTMat(-1, 0, 1)])
    assert s.g == 0
    assert s.S == frozenset({1, -1})
    assert len(s.Mprime) == 4
    assert all((m.a, m.c) in ((1, 1), (-1, -1)) for m in s.Mprime)
    with pytest.raises(ValueError):
        detminus1_summary([UTMat(1, 0, 1)])


def test_solve_detminus1_examples():
    g = (UTMat(1, 3, -1),)
    yes_t = ProblemInstance(P.MATRIX_MEMBERSHIP, g, target=UTMat(1, 3, -1))
    v = solve_detminus1(yes_t)
    assert v.is_yes and replay(yes_t, v.witness)
    assert solve_detminus1(ProblemInstance(
        P.MATRIX_MEMBERSHIP, g, target=UTMat(1, 0, -1))).is_no

    g2 = (UTMat(1, 1, -1), UTMat(-1, 0, 1))
    assert solve_detminus1(ProblemInstance(
        P.MATRIX_MEMBERSHIP, g2, target=UTMat(1, 5, 1))).is_no
    assert solve_detminus1(ProblemInstance(
        P.MATRIX_MEMBERSHIP, g2, target=UTMat.identity())).is_yes
    assert solve_detminus1(ProblemInstance(
        P.MATRIX_MEMBERSHIP, g, target=UTMat.identity())).is_yes


def _random_m1_instance(rng):
    k = rng.randint(1, 4)
    gens = tuple(UTMat(s, rng.randint(-3, 3), -s)
                 for s in (rng.choice((1, -1)) for _ in range(k)))
    p = rng.choice((P.MATRIX_MEMBERSHIP, P.VECTOR_REACHABILITY,
                    P.SCALAR_REACHABILITY, P.ZERO_REACHABILITY))
    if p == P.MATRIX_MEMBERSHIP:
        return ProblemInstance(p, gens, target=UTMat(
            rng.choice((1, -1)), rng.randint(-6, 6), rng.choice((1, -1))))
    x = Vec2(rng.randint(-3, 3), rng.randint(-3, 3))
    y = Vec2(rng.randint(-6, 6), rng.randint(-6, 6))
    if p == P.VECTOR_REACHABILITY:
        return ProblemInstance(p, gens, x=x, y=y)
    if p == P.SCALAR_REACHABILITY:
        return ProblemInstance(p, gens, x=x, y=y, lam=rng.randint(-6, 6))
    return ProblemInstance(p, gens, x=x, y=y)


def test_solve_detminus1_cross_check_and_agreement_with_detpm1():
    rng = random.Random(23)
    B = Budget(8, 10 ** 6)
    for _ in range(150):
        inst = _random_m1_instance(rng)
        got = solve_detminus1(inst)
        assert got.definitive
        if got.is_yes:
            assert replay(inst, got.witness), inst
        alt = solve_detpm1(inst)
        assert alt.is_yes == got.is_yes, inst
        want = oracle_solve(inst, B)
        if want.definitive:
            assert got.is_yes == want.is_yes, inst


def test_detminus1_never_unknown_on_large_entries():
    # entries far beyond any search budget still come back definitive
    g = (UTMat(1, 10 ** 9, -1), UTMat(-1, 10 ** 9 + 7, 1))
    inst = ProblemInstance(P.MATRIX_MEMBERSHIP, g,
                           target=UTMat(1, 7, 1))
    v = solve_detminus1(inst)
    assert v.definitive
    if v.is_yes:
        assert replay(inst, v.witness)
