"""Continuant polynomials P_n, their identities, and deformations P_n + lam.

P_n is the determinant of the tridiagonal matrix with y_1..y_n on the diagonal
and -1 on both off-diagonals; P_0 = 1.  Equivalently, the terms of P_n are
obtained from y_1*...*y_n by replacing disjoint pairs of consecutive variables
by -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Coeff, FieldSpec, QQ
from .poly import MultiPoly, PolyRing


def continuant(n: int, ring: PolyRing, slice_: Optional[Sequence[int]] = None) -> MultiPoly:
    """P_n in the given variable slice (defaults to the first n variables),
    built by the recursion P_n = y_1 * P_{n-1}(y_2..) - P_{n-2}(y_3..)."""
    if n < 0:
        raise ValueError("continuant order must be nonnegative")
    idx = list(slice_) if slice_ is not None else list(range(n))
    if len(idx) != n:
        raise ValueError("variable slice length must equal n")
    one = ring.const(1)
    if n == 0:
        return one
    prev2, prev = one, ring.var(idx[-1])  # P_0, P_1 of the tail
    for k in range(n - 2, -1, -1):
        prev2, prev = prev, ring.var(idx[k]) * prev - prev2
    return prev


def continuant_det_oracle(n: int, ring: PolyRing,
                          slice_: Optional[Sequence[int]] = None) -> MultiPoly:
    """Independent oracle: cofactor expansion of the tridiagonal determinant."""
    if n < 1:
        raise ValueError("determinant oracle needs n >= 1")
    idx = list(slice_) if slice_ is not None else list(range(n))
    neg_one = ring.const(-1)
    zero = ring.zero()
    mat = [[ring.var(idx[i]) if i == j
            else neg_one if abs(i - j) == 1 else zero
            for j in range(n)] for i in range(n)]

    def det(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> MultiPoly:
        if len(rows) == 1:
            return mat[rows[0]][cols[0]]
        total = ring.zero()
        r = rows[0]
        for t, c in enumerate(cols):
            entry = mat[r][c]
            if entry.is_zero():
                continue
            sub = det(rows[1:], cols[:t] + cols[t + 1:])
            term = entry * sub
            total = total + term if t % 2 == 0 else total - term
        return total

    return det(tuple(range(n)), tuple(range(n)))


def low_order_closed_form(n: int, ring: PolyRing) -> MultiPoly:
    """The order-<=2 part of P_n: four closed forms depending on n mod 4.

    Odd n: (+/-)(y_1 + y_3 + ...); even n: (+/-)(1 - sum of y_i y_j over odd i <
    even j), positive for n = 4k+1 / 4k+4 and negative for 4k+3 / 4k+2.
    """
    zero = ring.zero()
    if n == 0:
        return ring.const(1)
    if n % 2 == 1:
        s = zero
        for i in range(0, n, 2):
            s = s + ring.var(i)
        return s if n % 4 == 1 else -s
    s = ring.const(1)
    for i in range(0, n, 2):          # y at odd position (0-based even index)
        for j in range(i + 1, n, 2):  # y at even position (0-based odd index)
            s = s - ring.var(i) * ring.var(j)
    return s if n % 4 == 0 else -s


@dataclass
class IdentityReport:
    n: int
    symmetry: bool
    split_recursion: bool
    derivative: bool
    low_order: bool

    def all_ok(self) -> bool:
        return self.symmetry and self.split_recursion and self.derivative and self.low_order

    def to_json(self) -> dict:
        return {"n": self.n, "symmetry": self.symmetry,
                "split_recursion": self.split_recursion,
                "derivative": self.derivative, "low_order": self.low_order}


class IdentityFailure(AssertionError):
    pass


def continuant_identities(n: int, spec: FieldSpec = QQ, bound: int = 12) -> IdentityReport:
    """Verify the four identity families exactly; any failure is a hard error."""
    if n > bound:
        raise ValueError(f"identity check bound is {bound}")
    ring = PolyRing(spec, tuple(f"y{i+1}" for i in range(max(n, 1))))
    P = continuant(n, ring)

    reversed_P = continuant(n, ring, list(range(n - 1, -1, -1)))
    symmetry = (P == reversed_P)

    split = True
    for k in range(1, n):
        lhs = P
        rhs = (continuant(k, ring, range(k)) * continuant(n - k, ring, range(k, n))
               - continuant(k - 1, ring, range(k - 1))
               * continuant(n - k - 1, ring, range(k + 1, n)))
        if lhs != rhs:
            split = False
            break

    deriv = True
    for k in range(1, n + 1):
        lhs = P.partial_derivative(k - 1)
        rhs = (continuant(k - 1, ring, range(k - 1))
               * continuant(n - k, ring, range(k, n)))
        if lhs != rhs:
            deriv = False
            break

    low = (P.truncate_degree(2) == low_order_closed_form(n, ring))

    report = IdentityReport(n, symmetry, split, deriv, low)
    if not report.all_ok():
        raise IdentityFailure(f"continuant identity failure at n={n}: {report.to_json()}")
    return report


# -- deformations P_n + lam and their singularities ---------------------------


def a1_substitution(m: int, ring: PolyRing) -> List[Tuple[int, MultiPoly]]:
    """Unit-triangular pairing exhibiting P_2m + (-1)^(m+1) as a sum of m
    products: the odd variable y_{2k+1} pairs with
    t_{2k+2} = (-1)^k * P_{2(m-k)-1}(y_{2k+2}, ..., y_{2m}), whose linear part
    is (+/-)(y_{2k+2} + y_{2k+4} + ...), upper triangular in the even
    variables.  Returns (0-based index of y_{2k+2}, t-polynomial) entries."""
    subs = []
    for k in range(m):
        t = continuant(2 * (m - k) - 1, ring, range(2 * k + 1, 2 * m))
        if k % 2 == 1:
            t = -t
        subs.append((2 * k + 1, t))
    return subs


def a1_identity_holds(m: int, spec: FieldSpec = QQ) -> bool:
    """Exact replay: P_2m + (-1)^(m+1) == sum of y_{2k+1} * t_{2k+2}."""
    n = 2 * m
    ring = PolyRing(spec, tuple(f"y{i+1}" for i in range(n)))
    lam = spec.normalize(1 if (m + 1) % 2 == 0 else -1)
    lhs = continuant(n, ring) + ring.const(lam)
    rhs = ring.zero()
    for k, t in a1_substitution(m, ring):
        rhs = rhs + ring.var(k - 1) * t
    return lhs == rhs


@dataclass
class DeformationVerdict:
    n: int
    lam: Coeff
    characteristic: int
    singular: bool
    isolated_at_origin: bool
    a1_certified: bool
    resolved_by_origin_blowup: Optional[bool] = None

    def to_json(self) -> dict:
        return {"n": self.n, "lambda": str(self.lam),
                "char": self.characteristic, "singular": self.singular,
                "isolated_at_origin": self.isolated_at_origin,
                "a1_certified": self.a1_certified,
                "resolved_by_origin_blowup": self.resolved_by_origin_blowup}


def deformed_continuant_sing(n: int, lam, spec: FieldSpec = QQ,
                             run_blowup: bool = False,
                             budget: int = 200_000) -> DeformationVerdict:
    """Singular locus of V(P_n + lam) by the Jacobian criterion, with the A_1
    certificate at the origin in the singular even case."""
    from .groebner import Ideal, buchberger, ideal_membership, is_unit_ideal
    from .orders import DEGREVLEX

    lam = spec.normalize(lam)
    ring = PolyRing(spec, tuple(f"y{i+1}" for i in range(n)))
    Q = continuant(n, ring) + ring.const(lam)
    gens = [Q] + [Q.partial_derivative(i) for i in range(n)]
    sing = Ideal.of(gens, spec=spec, nvars=n, names=ring.names)
    smooth = is_unit_ideal(sing, budget)

    isolated = False
    certified = False
    resolved = None
    if not smooth:
        gb = buchberger(sing, DEGREVLEX, budget)
        isolated = all(ideal_membership(ring.var(i), gb) for i in range(n)) \
            and all(Q.evaluate([0] * n) == 0 for _ in (0,))
        if isolated and n % 2 == 0:
            certified = a1_identity_holds(n // 2, spec)
        if run_blowup and isolated:
            from .blowup import origin_blowup_smooths
            resolved = origin_blowup_smooths(Ideal.of([Q]), budget)
    return DeformationVerdict(n, lam, spec.characteristic, not smooth,
                              isolated, certified, resolved)
