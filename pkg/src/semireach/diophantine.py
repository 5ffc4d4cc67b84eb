"""Exact integer linear algebra: Hermite normal form, linear systems over Z
with nonnegativity/parity side constraints, and one-dimensional semilinear
(arithmetic progression) sets."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .core import xgcd


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form: returns (H, U) with H == U*A, U unimodular.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(row) for row in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if H[i][c] != 0), None)
        if piv is None:
            continue
        H[r], H[piv] = H[piv], H[r]
        U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            u, v, g = xgcd(a, b)
            aa, bb = a // g, b // g
            # [[u, v], [-bb, aa]] has determinant 1
            H[r], H[i] = ([u * x + v * y for x, y in zip(H[r], H[i])],
                          [-bb * x + aa * y for x, y in zip(H[r], H[i])])
            U[r], U[i] = ([u * x + v * y for x, y in zip(U[r], U[i])],
                          [-bb * x + aa * y for x, y in zip(U[r], U[i])])
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def _mat_vec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


# ---------------------------------------------------------------------------
# Linear systems over Z


@dataclass(frozen=True)
class LinearSystem:
    """Rows * x == rhs over Z, with per-variable free/nonneg flags and
    optional parity constraints (sum over an index set == r mod 2)."""

    rows: tuple
    rhs: tuple
    flags: tuple = ()  # "free" | "nonneg" per variable; default all free
    parities: tuple = ()  # ((indices...), r) pairs

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        nvars = len(self.rows[0]) if self.rows else len(self.flags)
        flags = tuple(self.flags) if self.flags else ("free",) * nvars
        object.__setattr__(self, "flags", flags)
        object.__setattr__(
            self, "parities",
            tuple((tuple(ix), r % 2) for ix, r in self.parities))
        if len(self.rows) != len(self.rhs):
            raise ValueError("row/rhs dimension mismatch")
        if any(len(r) != len(flags) for r in self.rows):
            raise ValueError("row/flag dimension mismatch")


@dataclass(frozen=True)
class LinearResult:
    kind: str  # "some" | "none" | "unknown"
    assignment: Optional[tuple] = None
    particular: Optional[tuple] = None  # general solution, free systems only
    basis: tuple = ()


def _solve_free(rows, rhs) -> Optional[tuple[list[int], list[list[int]]]]:
    """All-free integer solve; returns (particular, kernel basis) or None."""
    m, n = len(rows), len(rows[0]) if rows else 0
    if n == 0:
        return ([], []) if all(b == 0 for b in rhs) else None
    At = [[rows[i][j] for i in range(m)] for j in range(n)]
    Ht, Ut = hnf(At)  # Ht == Ut * A^T, so A * Ut^T == Ht^T
    V = [[Ut[j][i] for j in range(n)] for i in range(n)]  # columns of Ut^T
    L = [[Ht[j][i] for j in range(n)] for i in range(m)]  # A*V, column echelon
    pivots = []  # (row, col) per nonzero column, increasing rows
    for j in range(n):
        p = next((i for i in range(m) if L[i][j] != 0), None)
        if p is None:
            break
        pivots.append((p, j))
    y = [0] * n
    res = list(rhs)
    for p, j in pivots:
        if res[p] % L[p][j] != 0:
            return None
        y[j] = res[p] // L[p][j]
        for i in range(m):
            res[i] -= y[j] * L[i][j]
    if any(res):
        return None
    part = [sum(V[i][j] * y[j] for j in range(n)) for i in range(n)]
    free_cols = range(len(pivots), n)
    basis = [[V[i][j] for i in range(n)] for j in free_cols]
    return part, basis


def solve_linear(sys: LinearSystem, box_bound: int = 40,
                 max_nodes: int = 2_000_000) -> LinearResult:
    """Solve a linear system over Z.

    Parity constraints become extra equations with fresh free variables.
    Fully free systems are decided exactly (with a general-solution
    description); nonneg-flagged systems are searched over a bounded box
    of the solution lattice and may come back unknown.
    """
    nvars = len(self_flags := sys.flags)
    extra = len(sys.parities)
    rows = [list(r) + [0] * extra for r in sys.rows]
    rhs = list(sys.rhs)
    for k, (ix, r) in enumerate(sys.parities):
        row = [0] * (nvars + extra)
        for i in ix:
            row[i] += 1
        row[nvars + k] = -2
        rows.append(row)
        rhs.append(r)
    total = nvars + extra
    if not rows:
        rows = [[0] * total]
        rhs = [0]
    sol = _solve_free(rows, rhs)
    if sol is None:
        return LinearResult("none")
    part, basis = sol
    if all(f == "free" for f in self_flags):
        return LinearResult("some",
                            assignment=tuple(part[:nvars]),
                            particular=tuple(part[:nvars]),
                            basis=tuple(tuple(h[:nvars]) for h in basis))
    nonneg = [i for i, f in enumerate(self_flags) if f == "nonneg"]
    if all(part[i] >= 0 for i in nonneg):
        return LinearResult("some", assignment=tuple(part[:nvars]))
    r = len(basis)
    if r == 0:
        return LinearResult("none")
    if (2 * box_bound + 1) ** r > max_nodes:
        return LinearResult("unknown")
    for combo in itertools.product(range(-box_bound, box_bound + 1), repeat=r):
        x = [part[i] + sum(c * basis[j][i] for j, c in enumerate(combo))
             for i in range(total)]
        if all(x[i] >= 0 for i in nonneg):
            return LinearResult("some", assignment=tuple(x[:nvars]))
    return LinearResult("unknown")


# ---------------------------------------------------------------------------
# Nonnegative integer combinations (exact, with explicit coefficients)


def nonneg_combination(coeffs: Sequence[int], target: int,
                       flips: Optional[Sequence[bool]] = None,
                       parity: int = 0) -> Optional[list[int]]:
    """Counts n_i >= 0 with sum(n_i * coeffs_i) == target, optionally with
    sum of flagged counts == parity mod 2.  Exact: None means no solution.
    """
    coeffs = list(coeffs)
    flips = list(flips) if flips is not None else [False] * len(coeffs)
    parity %= 2
    has_pos = any(c > 0 for c in coeffs)
    has_neg = any(c < 0 for c in coeffs)
    if has_pos and has_neg:
        return _mixed_combination(coeffs, target, flips, parity)
    sign = -1 if has_neg else 1
    vals = [sign * c for c in coeffs]
    t = sign * target
    if t < 0:
        return None
    big = max(vals, default=0)
    if big == 0:
        if t != 0 or (parity == 1 and not any(flips)):
            return None
        counts = [0] * len(coeffs)
        if parity == 1:
            counts[flips.index(True)] = 1
        return counts
    dist, parent, mod, bigi = _residue_minima(vals, flips)
    key = (t % mod, parity)
    if key not in dist or dist[key] > t:
        return None
    counts = [0] * len(coeffs)
    node = key
    while node != (0, 0):
        node, i = parent[node]
        counts[i] += 1
    counts[bigi] += 2 * ((t - dist[key]) // mod)
    return counts


def _residue_minima(vals, flips):
    """Shortest-path over residues mod 2*max(vals), tracking parity: the
    minimal sum representable in each (residue, parity) class.  A value t
    is representable iff it sits on or above the class minimum; the gap is
    a multiple of the modulus, filled with parity-neutral pairs of the
    largest value.  Requires vals all >= 0 with max > 0."""
    big = max(vals)
    mod = 2 * big
    bigi = vals.index(big)
    dist = {(0, 0): 0}
    parent = {}
    heap = [(0, (0, 0))]
    while heap:
        d, node = heapq.heappop(heap)
        if d > dist[node]:
            continue
        r, p = node
        for i, c in enumerate(vals):
            nn = ((r + c) % mod, (p + 1) % 2 if flips[i] else p)
            if nn not in dist or d + c < dist[nn]:
                dist[nn] = d + c
                parent[nn] = (node, i)
                heapq.heappush(heap, (d + c, nn))
    return dist, parent, mod, bigi


def _mixed_combination(coeffs, target, flips, parity):
    """Mixed-sign case: integer solve, then shift into the nonneg cone
    with parity-even zero-sum bundles."""
    rows = [tuple(coeffs)]
    rhs = [target]
    parities = [(tuple(i for i, f in enumerate(flips) if f), parity)]
    res = solve_linear(LinearSystem(tuple(rows), tuple(rhs),
                                    ("free",) * len(coeffs),
                                    tuple(parities)))
    if res.kind != "some":
        return None
    z = list(res.assignment)
    ip = next(i for i, c in enumerate(coeffs) if c > 0)
    im = next(i for i, c in enumerate(coeffs) if c < 0)
    cp, cm = coeffs[ip], coeffs[im]
    # repair negatives with zero-sum, parity-even bundles: raising a
    # positive-coefficient count by 2|cm| together with z[im] by twice its
    # own coefficient leaves the sum unchanged, and symmetrically for
    # negative-coefficient counts against z[ip]; entries only ever grow
    for j, c in enumerate(coeffs):
        if z[j] >= 0:
            continue
        if c == 0:
            z[j] += 2 * ((-z[j] + 1) // 2)
        elif c > 0:
            k = (-z[j] + 2 * abs(cm) - 1) // (2 * abs(cm))
            z[j] += 2 * abs(cm) * k
            z[im] += 2 * c * k
        else:
            k = (-z[j] + 2 * cp - 1) // (2 * cp)
            z[j] += 2 * cp * k
            z[ip] += 2 * abs(c) * k
    assert all(v >= 0 for v in z)
    assert sum(v * c for v, c in zip(z, coeffs)) == target
    assert sum(z[i] for i, f in enumerate(flips) if f) % 2 == parity
    return z


# ---------------------------------------------------------------------------
# Semilinear sets


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of arithmetic rays {base + k*step : k in N}.

    step may be negative (a downward ray) or zero (a singleton); a full
    residue class b + gZ is the union of the two opposite rays.
    """

    components: tuple = ()

    def __post_init__(self):
        comps = []
        seen = set()
        for b, s in self.components:
            if (b, s) not in seen:
                seen.add((b, s))
                comps.append((b, s))
        comps = _prune(comps)
        object.__setattr__(self, "components", tuple(sorted(comps)))

    @staticmethod
    def empty() -> "SemilinearSet":
        return SemilinearSet(())

    @staticmethod
    def singleton(v: int) -> "SemilinearSet":
        return SemilinearSet(((v, 0),))

    @staticmethod
    def of_progression(base: int, *periods: int) -> "SemilinearSet":
        s = SemilinearSet(((base, 0),))
        for p in periods:
            s = s.sum(SemilinearSet(((0, p),)))
        return s

    def is_empty(self) -> bool:
        return not self.components

    def member(self, t: int) -> bool:
        return any(_ray_member(b, s, t) for b, s in self.components)

    def union(self, other: "SemilinearSet") -> "SemilinearSet":
        return SemilinearSet(self.components + other.components)

    def shift(self, d: int) -> "SemilinearSet":
        return SemilinearSet(tuple((b + d, s) for b, s in self.components))

    def sum(self, other: "SemilinearSet") -> "SemilinearSet":
        comps = []
        for b1, s1 in self.components:
            for b2, s2 in other.components:
                comps.extend(_ray_sum(b1, s1, b2, s2))
        return SemilinearSet(tuple(comps))

    def agrees_with(self, predicate, lo: int, hi: int) -> bool:
        """Sampling comparison against a membership predicate."""
        return all(self.member(t) == predicate(t) for t in range(lo, hi + 1))


def _ray_member(b: int, s: int, t: int) -> bool:
    if s == 0:
        return t == b
    d = t - b
    return d % s == 0 and d // s >= 0


def _ray_subset(c1, c2) -> bool:
    b1, s1 = c1
    b2, s2 = c2
    if not _ray_member(b2, s2, b1):
        return False
    if s1 == 0:
        return True
    if s2 == 0:
        return False
    return s1 % s2 == 0 and s1 * s2 > 0


def _prune(comps):
    if len(comps) > 512:
        return comps  # quadratic redundancy sweep not worth it
    out = []
    for i, c in enumerate(comps):
        others = comps[:i] + comps[i + 1:]
        if any(_ray_subset(c, o) for o in out) or \
           any(_ray_subset(c, o) and not _ray_subset(o, c) for o in others):
            continue
        out.append(c)
    return out


def _ray_sum(b1: int, s1: int, b2: int, s2: int):
    b = b1 + b2
    if s1 == 0 and s2 == 0:
        return [(b, 0)]
    if s1 == 0:
        return [(b, s2)]
    if s2 == 0:
        return [(b, s1)]
    g = gcd(s1, s2)
    if s1 * s2 < 0:
        return [(b, g), (b, -g)]  # full residue class
    sign = 1 if s1 > 0 else -1
    u, v = abs(s1) // g, abs(s2) // g
    if u == 1 or v == 1:
        return [(b, sign * g)]
    # numerical semigroup <u, v> with u, v coprime: everything from the
    # conductor (u-1)(v-1) upward, plus sporadic small elements
    cond = (u - 1) * (v - 1)
    reach = [False] * cond
    reach[0] = True
    for e in range(cond):
        if reach[e]:
            for d in (u, v):
                if e + d < cond:
                    reach[e + d] = True
    comps = [(b + sign * g * e, 0) for e in range(cond) if reach[e]]
    comps.append((b + sign * g * cond, sign * g))
    return comps


def combo_value_set(coeffs: Sequence[int],
                    flips: Optional[Sequence[bool]] = None,
                    parity: Optional[int] = None) -> SemilinearSet:
    """The set {sum(n_i * coeffs_i) : n_i >= 0}, optionally restricted to
    combinations whose flagged counts sum to parity mod 2, as a
    SemilinearSet.  Exact companion of nonneg_combination."""
    coeffs = list(coeffs)
    if parity is None:
        # both parities allowed: union the two restricted sets
        return combo_value_set(coeffs, flips, 0).union(
            combo_value_set(coeffs, flips, 1))
    flips = list(flips) if flips is not None else [False] * len(coeffs)
    parity %= 2
    has_pos = any(c > 0 for c in coeffs)
    has_neg = any(c < 0 for c in coeffs)
    if has_pos and has_neg:
        # any integer solution can be shifted into the nonneg cone by
        # value- and parity-preserving bundles, so the set is the full
        # lattice-coset projection of the unconstrained solutions
        flagged = tuple(i for i, f in enumerate(flips) if f)
        res = solve_linear(LinearSystem((), (), ("free",) * len(coeffs),
                                        ((flagged, parity),)))
        if res.kind != "some":
            return SemilinearSet.empty()
        w0 = sum(c * v for c, v in zip(coeffs, res.particular))
        h = 0
        for vec in res.basis:
            h = gcd(h, sum(c * v for c, v in zip(coeffs, vec)))
        if h == 0:
            return SemilinearSet.singleton(w0)
        return SemilinearSet(((w0, h), (w0, -h)))
    sign = -1 if has_neg else 1
    vals = [sign * c for c in coeffs]
    if max(vals, default=0) == 0:
        if parity == 1 and not any(flips):
            return SemilinearSet.empty()
        return SemilinearSet.singleton(0)
    dist, _, mod, _ = _residue_minima(vals, flips)
    comps = tuple((sign * d, sign * mod)
                  for (_, p), d in dist.items() if p == parity)
    return SemilinearSet(comps)
