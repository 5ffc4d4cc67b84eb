"""Brute-force breadth-first exploration of finitely generated monoids.

The ground-truth oracle for every problem kind.  Witnesses are canonical:
shortest first, ties broken by lexicographically least index sequence.
"""

from __future__ import annotations

from fractions import Fraction

from . import problems as P
from .core import AffineMap, Mat2, UTMat, Vec2
from .problems import Budget, ProblemInstance, Verdict, no, unknown, yes


def _magnitude(state) -> int:
    if isinstance(state, Mat2):
        return max(abs(state.m11), abs(state.m12), abs(state.m21), abs(state.m22))
    if isinstance(state, UTMat):
        return max(abs(state.a), abs(state.b), abs(state.c))
    if isinstance(state, Vec2):
        return max(abs(state.v1), abs(state.v2))
    if isinstance(state, Fraction):
        return max(abs(state.numerator), state.denominator)
    if isinstance(state, AffineMap):
        return max(abs(state.a), abs(state.b), abs(state.c))
    return abs(state)


def _search(start, gens, step, hit, budget: Budget, mode: str) -> Verdict:
    """Canonical-witness BFS.

    mode "append": step j extends the witness on the right (matrix states).
    mode "prepend": step j extends it on the left (states built by applying
    the new generator to the current state).  Either way each level is
    generated in lexicographic witness order, so the first witness found
    for any state is the canonical one.
    """
    if hit(start):
        return yes(())
    visited = {start}
    frontier = [((), start)]
    pruned = False
    for _ in range(budget.max_len):
        nxt = []
        seen_here = set()
        if mode == "append":
            pairs = ((w, s, j) for (w, s) in frontier for j in range(len(gens)))
        else:
            pairs = ((w, s, j) for j in range(len(gens)) for (w, s) in frontier)
        for w, s, j in pairs:
            t = step(s, j)
            if t in visited or t in seen_here:
                continue
            if budget.max_entry is not None and _magnitude(t) > budget.max_entry:
                pruned = True
                continue
            nw = w + (j,) if mode == "append" else (j,) + w
            if hit(t):
                return yes(nw)
            seen_here.add(t)
            nxt.append((nw, t))
        if not nxt:
            return no("saturation") if not pruned else unknown()
        visited.update(seen_here)
        frontier = nxt
    return unknown()


def _as_mat2(m) -> Mat2:
    return m.to_mat2() if isinstance(m, UTMat) else m


def _matrix_gens(inst: ProblemInstance):
    """Generators in one common kind (UTMat when all are, else Mat2)."""
    gens = list(inst.generators)
    extra = [inst.target] if inst.target is not None else []
    if all(isinstance(m, UTMat) for m in gens + extra):
        return gens, inst.target, UTMat.identity()
    return ([_as_mat2(m) for m in gens],
            _as_mat2(inst.target) if inst.target is not None else None,
            Mat2.identity())


def oracle_solve(inst: ProblemInstance, budget: Budget) -> Verdict:
    """Solve any problem kind by exhaustive search up to the budget.

    Yes comes with a canonical witness.  No is only issued when the
    deduplicated reachable set saturated strictly below the budget with
    no magnitude pruning; everything else is Unknown.
    """
    p = inst.problem
    if p == P.MATRIX_MEMBERSHIP:
        gens, target, ident = _matrix_gens(inst)
        return _search(ident, gens, lambda s, j: s * gens[j],
                       lambda s: s == target, budget, "append")
    if p == P.MORTALITY:
        gens, _, ident = _matrix_gens(inst)
        return _search(ident, gens, lambda s, j: s * gens[j],
                       lambda s: s.is_zero(), budget, "append")
    if p == P.VECTOR_REACHABILITY:
        gens = list(inst.generators)
        return _search(inst.x, gens, lambda s, j: gens[j].apply(s),
                       lambda s: s == inst.y, budget, "prepend")
    if p in (P.SCALAR_REACHABILITY, P.ZERO_REACHABILITY):
        gens = list(inst.generators)
        lam = 0 if p == P.ZERO_REACHABILITY else inst.lam
        row = inst.y

        def hit(v: Vec2) -> bool:
            return row.v1 * v.v1 + row.v2 * v.v2 == lam

        return _search(inst.x, gens, lambda s, j: gens[j].apply(s), hit,
                       budget, "prepend")
    if p == P.AFFINE_MEMBERSHIP_Z:
        gens = list(inst.generators)
        ident = AffineMap.make(1, 0, 1, "Z")
        return _search(ident, gens, lambda s, j: s.compose(gens[j]),
                       lambda s: s == inst.target, budget, "append")
    if p in (P.AFFINE_REACHABILITY_Z, P.AFFINE_REACHABILITY_Q):
        gens = list(inst.generators)
        start = inst.x if p == P.AFFINE_REACHABILITY_Z else Fraction(inst.x)
        target = inst.y if p == P.AFFINE_REACHABILITY_Z else Fraction(inst.y)
        return _search(start, gens, lambda s, j: gens[j].apply(s),
                       lambda s: s == target, budget, "prepend")
    raise ValueError(f"oracle cannot handle problem {p!r}")


def replay(inst: ProblemInstance, witness) -> bool:
    """Check that a witness replays exactly to the claimed fact."""
    gens = list(inst.generators)
    idx = list(witness)
    if any(not 0 <= i < len(gens) for i in idx):
        return False
    p = inst.problem
    if p in (P.MATRIX_MEMBERSHIP, P.MORTALITY):
        mgens, target, prod = _matrix_gens(inst)
        for i in idx:
            prod = prod * mgens[i]
        return prod.is_zero() if p == P.MORTALITY else prod == target
    if p in (P.VECTOR_REACHABILITY, P.SCALAR_REACHABILITY, P.ZERO_REACHABILITY):
        v = inst.x
        for i in reversed(idx):
            v = gens[i].apply(v)
        if p == P.VECTOR_REACHABILITY:
            return v == inst.y
        lam = 0 if p == P.ZERO_REACHABILITY else inst.lam
        return inst.y.v1 * v.v1 + inst.y.v2 * v.v2 == lam
    if p == P.AFFINE_MEMBERSHIP_Z:
        f = AffineMap.make(1, 0, 1, "Z")
        for i in idx:
            f = f.compose(gens[i])
        return f == inst.target
    if p in (P.AFFINE_REACHABILITY_Z, P.AFFINE_REACHABILITY_Q):
        v = inst.x if p == P.AFFINE_REACHABILITY_Z else Fraction(inst.x)
        for i in reversed(idx):
            v = gens[i].apply(v)
        target = inst.y if p == P.AFFINE_REACHABILITY_Z else Fraction(inst.y)
        return v == target
    raise ValueError(f"cannot replay problem {p!r}")
