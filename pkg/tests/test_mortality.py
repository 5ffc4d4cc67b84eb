"""Mortality for 2x2 generators with determinants 0 or 1, plus the
change-of-basis parametrization of the vector stabilizer."""

import random
from math import gcd

import pytest

from semireach import problems as P
from semireach.bridge import gen_hard
from semireach.core import Mat2, Vec2
from semireach.mortality import (StabilizerBasis, solve_mortality,
                                 stabilizer_basis)
from semireach.oracle import oracle_solve, replay
from semireach.problems import Budget, ProblemInstance

B = Budget(8, 10 ** 6)


def _rand_primitive(rng):
    while True:
        v = Vec2(rng.randint(-9, 9), rng.randint(-9, 9))
        if not v.is_zero() and gcd(v.v1, v.v2) == 1:
            return v


def test_stabilizer_basis_examples():
    sb = stabilizer_basis(Vec2(1, 0), Vec2(0, 1))
    assert sb.C == Mat2.identity()
    assert sb.B == Mat2(0, -1, 1, 0)

    sb = stabilizer_basis(Vec2(2, 3), Vec2(1, 0))
    assert sb.C == Mat2(-1, 1, -3, 2)
    assert sb.C.apply(Vec2(2, 3)) == Vec2(1, 0) and sb.C.det() == 1

    with pytest.raises(ValueError):
        stabilizer_basis(Vec2(2, 4), Vec2(1, 0))
    with pytest.raises(ValueError):
        stabilizer_basis(Vec2(1, 0), Vec2(0, 0))


def test_stabilizer_basis_sound_and_injective():
    rng = random.Random(41)
    for _ in range(200):
        x = _rand_primitive(rng)
        y = _rand_primitive(rng)
        sb = stabilizer_basis(x, y)
        seen = set()
        for k in range(-20, 21):
            m = sb.at(k)
            assert m.det() == 1
            assert m.apply(x) == y, (x, y, k)
            key = (m.m11, m.m12, m.m21, m.m22)
            assert key not in seen
            seen.add(key)


def test_mortality_examples():
    inst = gen_hard([3, 5], 11, "mortality")
    v = solve_mortality(inst.generators, B)
    assert v.is_yes and replay(inst, v.witness)

    assert solve_mortality((Mat2(1, 1, 0, 1), Mat2(2, 1, 1, 1)), B).is_no
    z = solve_mortality((Mat2(1, 0, 0, 1), Mat2(0, 0, 0, 0)), B)
    assert z.is_yes and z.witness == (1,)
    with pytest.raises(ValueError):
        solve_mortality((Mat2(1, 0, 0, -1),), B)


def _random_mortality_gens(rng):
    gens = []
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.5:
            # a singular matrix as an outer product
            u = (rng.randint(-2, 2), rng.randint(-2, 2))
            w = (rng.randint(-2, 2), rng.randint(-2, 2))
            gens.append(Mat2(u[0] * w[0], u[0] * w[1],
                             u[1] * w[0], u[1] * w[1]))
        else:
            while True:
                m = Mat2(rng.randint(-2, 2), rng.randint(-2, 2),
                         rng.randint(-2, 2), rng.randint(-2, 2))
                if m.det() == 1:
                    gens.append(m)
                    break
    return tuple(gens)


def test_mortality_cross_check():
    rng = random.Random(42)
    for _ in range(200):
        gens = _random_mortality_gens(rng)
        got = solve_mortality(gens, B)
        inst = ProblemInstance(P.MORTALITY, gens)
        if got.is_yes:
            assert replay(inst, got.witness), gens
        want = oracle_solve(inst, B)
        if want.definitive and got.definitive:
            assert got.is_yes == want.is_yes, gens
        if want.is_yes:
            assert got.is_yes, gens


def _inv_sl(m: Mat2) -> Mat2:
    assert m.det() == 1
    return Mat2(m.m22, -m.m12, -m.m21, m.m11)


def test_orbit_answer_matches_shear_parametrization():
    # a determinant-1 product maps x to +-y exactly when it equals
    # +-B * (1 k; 0 1) * C for some integer k; verify on word sweeps
    rng = random.Random(43)
    for _ in range(60):
        sl = []
        for _ in range(rng.randint(1, 2)):
            while True:
                m = Mat2(rng.randint(-2, 2), rng.randint(-2, 2),
                         rng.randint(-2, 2), rng.randint(-2, 2))
                if m.det() == 1:
                    sl.append(m)
                    break
        x = _rand_primitive(rng)
        y = _rand_primitive(rng)
        sb = stabilizer_basis(x, y)
        binv, cinv = _inv_sl(sb.B), _inv_sl(sb.C)
        products = {Mat2.identity()}
        frontier = [Mat2.identity()]
        for _ in range(6):
            nxt = []
            for m in frontier:
                for g in sl:
                    p = m * g
                    if p in products:
                        continue
                    products.add(p)
                    nxt.append(p)
            frontier = nxt
        neg_y = Vec2(-y.v1, -y.v2)
        for m in products:
            hits = m.apply(x) in (y, neg_y)
            in_coset = False
            for s in (1, -1):
                sm = Mat2(s * m.m11, s * m.m12, s * m.m21, s * m.m22)
                n = binv * sm * cinv
                if (n.m11, n.m21, n.m22) == (1, 0, 1):
                    in_coset = True
                    assert sm == sb.at(n.m12)
            assert hits == in_coset, (sl, x, y, m)
