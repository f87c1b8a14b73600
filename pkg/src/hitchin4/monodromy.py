"""SL(2,Z) monodromy factorizations for six I1 fibers and their Hurwitz
normalization to the alternating (B, A, B, A, B, A) pattern.

Matrices are integer 2x2 tuples ((a, b), (c, d)) of determinant one.  A
factorization stores factors indexed 1..k in cyclic order; the composite
along the base loop is factors[0] * factors[1] * ... (leftmost first in
the written product), which Hurwitz moves preserve.  For the I0* setting
the composite is -Id; the canonical pattern also satisfies the reversed
relation A6 A5 A4 A3 A2 A1 = -Id.

An I1 factor is parabolic with a single twist (conjugate to [[1,1],[0,1]]),
so it is determined by its primitive eigenvector up to sign.  The search in
``normalize`` runs breadth-first on factor tuples hashed modulo simultaneous
SL(2,Z) conjugation via those eigenvectors; the reachable class space is
small (a few dozen states), so the search is exact and fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

SL2Z = tuple  # ((a, b), (c, d)) of ints

IDENT: SL2Z = ((1, 0), (0, 1))
NEG_IDENT: SL2Z = ((-1, 0), (0, -1))
MAT_A: SL2Z = ((1, 1), (0, 1))
MAT_B: SL2Z = ((1, 0), (-1, 1))


class NotParabolic(ValueError):
    """Factor is not an I1 twist (trace 2, single Dehn twist)."""


class Exhausted(RuntimeError):
    """Hurwitz search hit its depth bound (a search limit, not a disproof)."""


def mat_mul(M: SL2Z, N: SL2Z) -> SL2Z:
    (a, b), (c, d) = M
    (e, f), (g, h) = N
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_inv(M: SL2Z) -> SL2Z:
    (a, b), (c, d) = M
    if a * d - b * c != 1:
        raise ValueError("determinant must be 1")
    return ((d, -b), (-c, a))


def mat_det(M: SL2Z) -> int:
    (a, b), (c, d) = M
    return a * d - b * c


def _primitive(v: tuple[int, int]) -> tuple[int, int]:
    p, q = v
    g = gcd(p, q)
    if g == 0:
        raise ValueError("zero vector")
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def is_I1_twist(M: SL2Z):
    """(True, primitive eigenvector) iff M is a single parabolic Dehn twist.

    I1 means trace 2, M != Id, and twist multiplicity one, i.e.
    M = Id + [[-pq, p^2], [-q^2, pq]] for a primitive (p, q)."""
    (a, b), (c, d) = M
    if mat_det(M) != 1:
        raise ValueError("determinant must be 1")
    if a + d != 2 or M == IDENT:
        return False, None
    # eigenvector of eigenvalue 1: (M - Id) v = 0
    if b != 0 or a != 1:
        v = _primitive((b, 1 - a))
    else:
        v = _primitive((d - 1, c)) if (d != 1 or c != 0) else None
    if v is None:
        return False, None
    p, q = v
    model = ((1 - p * q, p * p), (-q * q, 1 + p * q))
    return (model == M), (v if model == M else None)


def twist_of_vector(v: tuple[int, int]) -> SL2Z:
    p, q = _primitive(v)
    return ((1 - p * q, p * p), (-q * q, 1 + p * q))


@dataclass(frozen=True)
class Factorization:
    """Cyclically ordered factors (index 1..k); composite along the base
    loop is factors[0] factors[1] ... factors[k-1]."""

    factors: tuple[SL2Z, ...]

    def total_product(self) -> SL2Z:
        out = IDENT
        for M in self.factors:
            out = mat_mul(out, M)
        return out

    def vectors(self) -> tuple[tuple[int, int], ...]:
        vs = []
        for i, M in enumerate(self.factors):
            ok, v = is_I1_twist(M)
            if not ok:
                raise NotParabolic(f"factor {i + 1} is not an I1 twist")
            vs.append(v)
        return tuple(vs)


def canonical_factorization() -> Factorization:
    """The alternating pattern (B, A, B, A, B, A); both composition orders
    of the six factors give -Id exactly."""
    return Factorization((MAT_B, MAT_A, MAT_B, MAT_A, MAT_B, MAT_A))


def hurwitz_move(f: Factorization, i: int, direction: int = 1) -> Factorization:
    """Elementary re-braiding at slot i (1-based, 1 <= i < k).

    direction 1:  (A_i, A_{i+1}) -> (A_{i+1}, A_{i+1}^{-1} A_i A_{i+1})
    direction 2:  (A_i, A_{i+1}) -> (A_i A_{i+1} A_i^{-1}, A_i)
    Move 2 inverts move 1; both fix the composite along the base loop.
    """
    k = len(f.factors)
    if not 1 <= i < k:
        raise IndexError(f"slot {i} out of range 1..{k - 1}")
    a, b = f.factors[i - 1], f.factors[i]
    if direction == 1:
        pair = (b, mat_mul(mat_mul(mat_inv(b), a), b))
    elif direction == 2:
        pair = (mat_mul(mat_mul(a, b), mat_inv(a)), a)
    else:
        raise ValueError("direction must be 1 or 2")
    return Factorization(f.factors[:i - 1] + pair + f.factors[i + 1:])


# ---------------------------------------------------------------------------
# conjugation-canonical hashing on eigenvector tuples
# ---------------------------------------------------------------------------

def _apply_inv(C: SL2Z, v: tuple[int, int]) -> tuple[int, int]:
    (a, b), (c, d) = C
    # C^{-1} v with det C = 1
    return _primitive((d * v[0] - b * v[1], -c * v[0] + a * v[1]))


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def _canonical_class(vectors: tuple[tuple[int, int], ...]):
    """Canonical representative of an eigenvector tuple modulo simultaneous
    SL(2,Z) conjugation: send v1 to (1,0), then reduce the first
    non-parallel vector with the residual unipotent stabilizer."""
    p, q = vectors[0]
    x, y = _ext_gcd(p, q)  # p x + q y = 1
    Cinv = ((x, y), (-q, p))

    def apply_all(M, vs):
        return tuple(_primitive((M[0][0] * v[0] + M[0][1] * v[1],
                                 M[1][0] * v[0] + M[1][1] * v[1])) for v in vs)

    vs = apply_all(Cinv, vectors)
    for v in vs:
        if v[1] != 0:
            a, b = v
            k = a // b
            vs = apply_all(((1, -k), (0, 1)), vs)
            break
    return vs


def _class_moves(vectors):
    """All Hurwitz moves on an eigenvector tuple, as (move, new tuple)."""
    out = []
    k = len(vectors)
    for i in range(1, k):
        vi, vj = vectors[i - 1], vectors[i]
        m1 = vectors[:i - 1] + (vj, _apply_inv(twist_of_vector(vj), vi)) + vectors[i + 1:]
        Mi = twist_of_vector(vi)
        vj2 = _primitive((Mi[0][0] * vj[0] + Mi[0][1] * vj[1],
                          Mi[1][0] * vj[0] + Mi[1][1] * vj[1]))
        m2 = vectors[:i - 1] + (vj2, vi) + vectors[i + 1:]
        out.append(((i, 1), m1))
        out.append(((i, 2), m2))
    return out


def _conjugator_to(src: Factorization, pattern: tuple[SL2Z, ...]):
    """C in SL(2,Z) with C^{-1} src C == pattern, or None.

    C A_i = T_i C is linear in the entries of C; the joint solution space of
    an irreducible tuple is one-dimensional, so solve exactly over Q via the
    first two independent constraints and check integrality and det 1."""
    from fractions import Fraction

    from .core import ExactMatrix, nullspace

    rows = []
    for M, T in zip(src.factors, pattern):
        (a, b), (c, d) = M
        (e, f), (g, h) = T
        # unknowns (C00, C01, C10, C11): C M - T C = 0
        rows += [
            (a - e, c, -f, 0),
            (b, d - e, 0, -f),
            (-g, 0, a - h, c),
            (0, -g, b, d - h),
        ]
    basis = nullspace(ExactMatrix([[Fraction(x) for x in r] for r in rows]))
    for vec in basis:
        den = 1
        for q in vec:
            den = den * q.denominator // gcd(den, q.denominator)
        ints = [int(q * den) for q in vec]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g == 0:
            continue
        ints = [v // g for v in ints]
        for sgn in (1, -1):
            C = ((sgn * ints[0], sgn * ints[1]), (sgn * ints[2], sgn * ints[3]))
            if mat_det(C) == 1 and all(
                    mat_mul(C, M) == mat_mul(T, C) for M, T in zip(src.factors, pattern)):
                return C
    return None


def normalize(f: Factorization, max_depth: int = 24):
    """Hurwitz moves carrying f to the canonical pattern up to simultaneous
    SL(2,Z) conjugation.

    Breadth-first search over factor tuples hashed by the conjugation-
    canonical form of their eigenvector tuples; returns (moves, normal)
    where replaying ``moves`` on f yields ``normal``, a global conjugate of
    (B, A, B, A, B, A).  Raises Exhausted at the depth bound.
    """
    if len(f.factors) != 6:
        raise ValueError("need six factors")
    vecs = f.vectors()
    if f.total_product() != NEG_IDENT:
        raise ValueError("composite along the base loop must be -Id")
    target = _canonical_class(canonical_factorization().vectors())
    start = _canonical_class(vecs)
    parents = {start: None}
    frontier = [(start, vecs)]
    depth = 0
    goal_state = None
    if start == target:
        goal_state = start
    while goal_state is None and depth < max_depth and frontier:
        depth += 1
        nxt = []
        for cls, raw in frontier:
            for move, raw2 in _class_moves(raw):
                cls2 = _canonical_class(raw2)
                if cls2 in parents:
                    continue
                parents[cls2] = (cls, move)
                nxt.append((cls2, raw2))
                if cls2 == target:
                    goal_state = cls2
                    break
            if goal_state:
                break
        frontier = nxt
    if goal_state is None:
        raise Exhausted(f"no normalization within depth {max_depth}")
    moves = []
    node = goal_state
    while parents[node] is not None:
        node, move = parents[node]
        moves.append(move)
    moves.reverse()
    normal = f
    for i, d in moves:
        normal = hurwitz_move(normal, i, d)
    if _conjugator_to(normal, canonical_factorization().factors) is None:
        raise Exhausted("class search reached target but replay failed")
    return moves, normal


def vanishing_cycle_match(f: Factorization, i: int, j: int,
                          through: bool = False) -> bool:
    """True iff the vanishing cycles at slots i and j (1-based) agree up to
    sign, so the two Lefschetz thimbles glue to a homology sphere.

    With ``through=True`` the cycle at i is first parallel-transported past
    the intervening factors (conjugation by factors[i..j-1]).
    """
    vecs = f.vectors()
    k = len(vecs)
    if not (1 <= i <= k and 1 <= j <= k):
        raise IndexError("slot out of range")
    if i == j:
        return True
    vi, vj = vecs[i - 1], vecs[j - 1]
    if through:
        lo, hi = min(i, j), max(i, j)
        P = IDENT
        for t in range(lo, hi - 1):
            P = mat_mul(P, f.factors[t])
        vi = _primitive((P[0][0] * vecs[lo - 1][0] + P[0][1] * vecs[lo - 1][1],
                         P[1][0] * vecs[lo - 1][0] + P[1][1] * vecs[lo - 1][1]))
        vj = vecs[hi - 1]
    return vi == vj
