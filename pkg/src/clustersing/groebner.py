"""Buchberger Groebner engine and ideal-theoretic decision procedures.

Deterministic throughout: pairs are processed in normal-strategy order
(smallest lcm first, ties by generator index), and reduced bases are sorted by
leading monomial.  Every computation runs under an explicit step budget;
exceeding it raises BudgetError rather than returning a partial answer.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .fields import FieldSpec
from .orders import DEGREVLEX, LEX, MonomialOrder, block_order
from .poly import Exponent, MultiPoly, PolyRing

DEFAULT_BUDGET = 200_000


class BudgetError(RuntimeError):
    """Raised when a Groebner computation exceeds its step budget."""

    def __init__(self, message: str, pairs_done: int = 0, basis_size: int = 0):
        super().__init__(message)
        self.pairs_done = pairs_done
        self.basis_size = basis_size


@dataclass(frozen=True)
class Ideal:
    spec: FieldSpec
    nvars: int
    generators: Tuple[MultiPoly, ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.spec != self.spec or g.nvars != self.nvars:
                raise ValueError("generator spec/nvars mismatch")
        if not self.names and gens:
            object.__setattr__(self, "names", gens[0].names)
        elif not self.names:
            object.__setattr__(self, "names", tuple(f"x{i+1}" for i in range(self.nvars)))

    @staticmethod
    def of(gens: Sequence[MultiPoly], spec=None, nvars=None, names=None) -> "Ideal":
        if gens:
            spec = spec or gens[0].spec
            nvars = nvars or gens[0].nvars
            names = names or gens[0].names
        return Ideal(spec, nvars, tuple(gens), tuple(names or ()))

    def ring(self) -> PolyRing:
        return PolyRing(self.spec, self.names)

    def to_json(self) -> dict:
        return {
            "field": {"char": self.spec.characteristic},
            "vars": list(self.names),
            "gens": [g.text() for g in self.generators],
        }

    @staticmethod
    def from_json(data: dict) -> "Ideal":
        spec = FieldSpec(int(data["field"]["char"]))
        ring = PolyRing(spec, tuple(data["vars"]))
        gens = tuple(ring.parse(s) for s in data["gens"])
        return Ideal(spec, ring.nvars, gens, ring.names)


@dataclass
class GroebnerBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: List[MultiPoly]

    def contains(self, f: MultiPoly) -> bool:
        return ideal_membership(f, self)

    def leading_exponents(self) -> List[Exponent]:
        key = self.order.key()
        return [g.leading(key)[0] for g in self.basis]


# -- reduction ---------------------------------------------------------------


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _HeapPoly:
    """Mutable polynomial with a lazy max-heap over its monomials."""

    __slots__ = ("spec", "terms", "heap", "key")

    def __init__(self, f: MultiPoly, key):
        self.spec = f.spec
        self.terms = dict(f.terms)
        self.key = key
        self.heap = [(_NegKey(key(e)), e) for e in self.terms]
        heapq.heapify(self.heap)

    def peek_max(self):
        while self.heap:
            _, e = self.heap[0]
            if e in self.terms:
                return e
            heapq.heappop(self.heap)
        return None

    def subtract_multiple(self, factor, shift: Exponent, g: MultiPoly):
        """self -= factor * x^shift * g"""
        sp = self.spec
        terms = self.terms
        heap = self.heap
        key = self.key
        for e2, c2 in g.terms.items():
            e3 = tuple(a + b for a, b in zip(shift, e2))
            old = terms.get(e3)
            if old is None:
                v = sp.neg(sp.mul(factor, c2))
                if v != 0:
                    terms[e3] = v
                    heapq.heappush(heap, (_NegKey(key(e3)), e3))
            else:
                v = sp.sub(old, sp.mul(factor, c2))
                if v == 0:
                    del terms[e3]
                else:
                    terms[e3] = v


class _NegKey:
    """Reverses comparison so heapq pops the largest monomial first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k

    def __eq__(self, other):
        return self.k == other.k


def _reduce_impl(f: MultiPoly, basis, order, leads, top_only: bool) -> MultiPoly:
    key = order.key()
    if leads is None:
        leads = [g.leading(key) for g in basis]
    sp = f.spec
    work = _HeapPoly(f, key)
    out: Dict[Exponent, object] = {}
    while True:
        e = work.peek_max()
        if e is None:
            break
        c = work.terms[e]
        reduced = False
        for g, (ge, gc) in zip(basis, leads):
            ok = True
            for a, b in zip(ge, e):
                if a > b:
                    ok = False
                    break
            if not ok:
                continue
            q = tuple(a - b for a, b in zip(e, ge))
            work.subtract_multiple(sp.div(c, gc), q, g)
            reduced = True
            break
        if not reduced:
            if top_only:
                for e2, c2 in work.terms.items():
                    out[e2] = c2
                break
            del work.terms[e]
            out[e] = c
    return MultiPoly(sp, f.nvars, out, f.names, _normalized=True)


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder,
                leads: Optional[Sequence[Tuple[Exponent, object]]] = None) -> MultiPoly:
    """Fully reduce f modulo the basis (all terms, not just the lead)."""
    return _reduce_impl(f, basis, order, leads, top_only=False)


def top_reduce(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder,
               leads=None) -> MultiPoly:
    """Reduce only until the leading term is irreducible (or zero)."""
    return _reduce_impl(f, basis, order, leads, top_only=True)


def _s_poly(f: MultiPoly, g: MultiPoly, key) -> MultiPoly:
    fe, fc = f.leading(key)
    ge, gc = g.leading(key)
    lcm = tuple(max(a, b) for a, b in zip(fe, ge))
    sp = f.spec
    mf = MultiPoly(sp, f.nvars, {tuple(a - b for a, b in zip(lcm, fe)): sp.inv(fc)},
                   f.names, _normalized=True)
    mg = MultiPoly(sp, f.nvars, {tuple(a - b for a, b in zip(lcm, ge)): sp.inv(gc)},
                   f.names, _normalized=True)
    return f * mf - g * mg


def buchberger(ideal: Ideal, order: MonomialOrder = DEGREVLEX,
               budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger with lcm/chain pair pruning."""
    if not ideal.generators:
        raise ValueError("empty generator list")
    key = order.key()
    sp = ideal.spec

    basis: List[MultiPoly] = []
    for g in ideal.generators:
        g = top_reduce(g, basis, order)
        if not g.is_zero():
            basis.append(g.monic(key))
        if g.is_constant() and not g.is_zero():
            return GroebnerBasis(ideal, order, [ideal.ring().const(1)])

    leads = [g.leading(key) for g in basis]
    heap: List[tuple] = []
    counter = itertools.count()

    def lcm_of(i: int, j: int) -> Exponent:
        return tuple(max(a, b) for a, b in zip(leads[i][0], leads[j][0]))

    def push_pair(i: int, j: int):
        lcm = lcm_of(i, j)
        # Buchberger's first criterion: coprime leading monomials.
        if all(a + b == m for a, b, m in zip(leads[i][0], leads[j][0], lcm)):
            return
        heapq.heappush(heap, (key(lcm), next(counter), i, j, lcm))

    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            push_pair(i, j)

    pairs_done = 0
    dropped: Set[Tuple[int, int]] = set()
    while heap:
        _, _, i, j, lcm = heapq.heappop(heap)
        if (i, j) in dropped:
            continue
        # Chain criterion: some k with lead(k) | lcm and both sub-pairs handled.
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(leads[k][0], lcm):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if lcm_of(*p1) != lcm and lcm_of(*p2) != lcm:
                    skip = True
                    break
        if skip:
            continue
        pairs_done += 1
        if pairs_done > budget:
            raise BudgetError(
                f"Groebner budget of {budget} pair reductions exceeded",
                pairs_done=pairs_done, basis_size=len(basis))
        s = _s_poly(basis[i], basis[j], key)
        s = top_reduce(s, basis, order, leads)
        if s.is_zero():
            continue
        s = s.monic(key)
        if s.is_constant():
            return GroebnerBasis(ideal, order, [ideal.ring().const(1)])
        basis.append(s)
        leads.append(s.leading(key))
        m = len(basis) - 1
        for t in range(m):
            push_pair(t, m)

    return GroebnerBasis(ideal, order, _reduce_basis(basis, order))


def _reduce_basis(basis: List[MultiPoly], order: MonomialOrder) -> List[MultiPoly]:
    key = order.key()
    # Minimal: ascending by lead, a divisor monomial always sorts earlier.
    basis = sorted(basis, key=lambda g: key(g.leading(key)[0]))
    minimal: List[MultiPoly] = []
    min_leads: List[Exponent] = []
    for g in basis:
        ge = g.leading(key)[0]
        if any(_divides(le, ge) for le in min_leads):
            continue
        minimal.append(g)
        min_leads.append(ge)
    # Reduced: tail-reduce each element modulo the others.
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            reduced.append(r.monic(key))
    reduced.sort(key=lambda g: key(g.leading(key)[0]), reverse=True)
    return reduced


def self_test(gb: GroebnerBasis) -> bool:
    """Definitional check: every S-polynomial reduces to zero."""
    key = gb.order.key()
    for i in range(len(gb.basis)):
        for j in range(i + 1, len(gb.basis)):
            s = _s_poly(gb.basis[i], gb.basis[j], key)
            if not normal_form(s, gb.basis, gb.order).is_zero():
                return False
    return True


# -- decision procedures -------------------------------------------------


def ideal_membership(f: MultiPoly, gb: GroebnerBasis) -> bool:
    if f.spec != gb.ideal.spec or f.nvars != gb.ideal.nvars:
        raise ValueError("spec/nvars mismatch")
    return normal_form(f, gb.basis, gb.order).is_zero()


def is_unit_ideal(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    if not ideal.generators:
        return False
    gb = buchberger(ideal, DEGREVLEX, budget)
    return len(gb.basis) == 1 and gb.basis[0].is_constant()


def eliminate(ideal: Ideal, drop: Iterable[int],
              budget: int = DEFAULT_BUDGET) -> Ideal:
    """Generators of the elimination ideal in the kept variables."""
    drop = sorted(set(drop))
    if len(drop) >= ideal.nvars:
        raise ValueError("cannot eliminate every variable")
    order = block_order(drop, ideal.nvars)
    gb = buchberger(ideal, order, budget)
    dropset = set(drop)
    kept = [g for g in gb.basis if not any(e[i] for e in g.terms for i in dropset)]
    return Ideal(ideal.spec, ideal.nvars, tuple(kept), ideal.names)


def _adjoin_var(ideal: Ideal, name: str) -> Tuple[Ideal, MultiPoly]:
    """Embed the ideal in a ring with one fresh variable appended."""
    names = ideal.names + (name,)
    n = ideal.nvars + 1
    gens = tuple(g.extend(n, names) for g in ideal.generators)
    t = MultiPoly.var(ideal.spec, n, n - 1, names)
    return Ideal(ideal.spec, n, gens, names), t


def radical_membership(f: MultiPoly, ideal: Ideal,
                       budget: int = DEFAULT_BUDGET) -> bool:
    """Rabinowitsch trick: f in rad(I) iff 1 in I + <t*f - 1>."""
    if f.is_zero():
        return True
    ext, t = _adjoin_var(ideal, "_rab")
    fe = f.extend(ext.nvars, ext.names)
    gens = ext.generators + (t * fe - ext.ring().const(1),)
    return is_unit_ideal(Ideal(ext.spec, ext.nvars, gens, ext.names), budget)


def saturation(ideal: Ideal, g: MultiPoly, budget: int = DEFAULT_BUDGET) -> Ideal:
    """(I : g^inf) computed by eliminating the Rabinowitsch variable."""
    if g.is_zero():
        raise ValueError("cannot saturate by zero")
    ext, t = _adjoin_var(ideal, "_sat")
    ge = g.extend(ext.nvars, ext.names)
    gens = ext.generators + (t * ge - ext.ring().const(1),)
    big = Ideal(ext.spec, ext.nvars, gens, ext.names)
    elim = eliminate(big, [ext.nvars - 1], budget)
    back = tuple(_drop_last_var(h, ideal.names) for h in elim.generators)
    if not back:
        back = (ideal.ring().zero(),)
    return Ideal(ideal.spec, ideal.nvars, tuple(b for b in back if not b.is_zero()),
                 ideal.names)


def _drop_last_var(f: MultiPoly, names) -> MultiPoly:
    t = {}
    for e, c in f.terms.items():
        if e[-1] != 0:
            raise ValueError("polynomial still involves the auxiliary variable")
        t[e[:-1]] = c
    return MultiPoly(f.spec, f.nvars - 1, t, names, _normalized=True)


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return Ideal(a.spec, a.nvars, a.generators + b.generators, a.names)


def ideal_intersection(a: Ideal, b: Ideal, budget: int = DEFAULT_BUDGET) -> Ideal:
    """I cap J; fast combinatorial path when both ideals are monomial."""
    if _is_monomial_ideal(a) and _is_monomial_ideal(b):
        return _monomial_intersection(a, b)
    ext_a, t = _adjoin_var(a, "_int")
    ring = ext_a.ring()
    one = ring.const(1)
    gens = tuple(t * g for g in ext_a.generators)
    gens += tuple((one - t) * g.extend(ext_a.nvars, ext_a.names) for g in b.generators)
    big = Ideal(a.spec, ext_a.nvars, gens, ext_a.names)
    elim = eliminate(big, [ext_a.nvars - 1], budget)
    back = tuple(_drop_last_var(h, a.names) for h in elim.generators)
    return Ideal(a.spec, a.nvars, back, a.names)


def _is_monomial_ideal(ideal: Ideal) -> bool:
    return all(len(g.terms) == 1 for g in ideal.generators)


def _monomial_intersection(a: Ideal, b: Ideal) -> Ideal:
    sp, n, names = a.spec, a.nvars, a.names
    lcms = set()
    for g in a.generators:
        (ea,) = g.terms
        for h in b.generators:
            (eb,) = h.terms
            lcms.add(tuple(max(x, y) for x, y in zip(ea, eb)))
    minimal = [e for e in lcms
               if not any(f != e and _divides(f, e) for f in lcms)]
    minimal.sort()
    gens = tuple(MultiPoly(sp, n, {e: 1}, names, _normalized=True) for e in minimal)
    return Ideal(sp, n, gens, names)


def ideal_dimension(ideal: Ideal, budget: int = DEFAULT_BUDGET):
    """Krull dimension of the quotient ring, or "empty" when 1 lies in the ideal.

    Computed as the largest cardinality of a variable subset S such that no
    leading monomial (degrevlex) is supported entirely inside S; equivalently
    nvars minus a minimum hitting set of the leading supports.
    """
    if not ideal.generators:
        return ideal.nvars
    gb = buchberger(ideal, DEGREVLEX, budget)
    if len(gb.basis) == 1 and gb.basis[0].is_constant():
        return "empty"
    supports = set()
    for e in gb.leading_exponents():
        supports.add(frozenset(i for i, x in enumerate(e) if x))
    # Minimalize: keep only inclusion-minimal supports.
    supports = [s for s in supports
                if not any(t != s and t <= s for t in supports)]
    if frozenset() in supports:
        return "empty"
    best = _min_hitting_set(sorted(supports, key=len), ideal.nvars)
    return ideal.nvars - best


def _min_hitting_set(supports, nvars: int) -> int:
    best = [nvars]

    def search(idx: int, chosen: set):
        if len(chosen) >= best[0]:
            return
        while idx < len(supports) and supports[idx] & chosen:
            idx += 1
        if idx == len(supports):
            best[0] = len(chosen)
            return
        for v in sorted(supports[idx]):
            chosen.add(v)
            search(idx + 1, chosen)
            chosen.remove(v)

    search(0, set())
    return best[0]


def minors(mat: Sequence[Sequence[MultiPoly]], size: int) -> List[MultiPoly]:
    """All size x size minors, by cofactor expansion with submatrix memoization."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if size > min(rows, cols):
        raise ValueError("minor size exceeds matrix dimensions")
    if size <= 0:
        raise ValueError("minor size must be positive")
    sample = mat[0][0]
    memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], MultiPoly] = {}

    def det(r: Tuple[int, ...], c: Tuple[int, ...]) -> MultiPoly:
        if len(r) == 1:
            return mat[r[0]][c[0]]
        got = memo.get((r, c))
        if got is not None:
            return got
        total = MultiPoly.zero(sample.spec, sample.nvars, sample.names)
        row = r[0]
        rest = r[1:]
        for idx, col in enumerate(c):
            entry = mat[row][col]
            if entry.is_zero():
                continue
            sub = det(rest, c[:idx] + c[idx + 1:])
            term = entry * sub
            total = total + term if idx % 2 == 0 else total - term
        memo[(r, c)] = total
        return total

    out = []
    for c in itertools.combinations(range(cols), size):
        for r in itertools.combinations(range(rows), size):
            out.append(det(r, c))
    return out


def minimalize_generators(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> Ideal:
    """Drop generators that lie in the ideal of the remaining ones."""
    gens = sorted(ideal.generators, key=lambda g: (len(g.terms), g.text()))
    keep: List[MultiPoly] = list(gens)
    changed = True
    while changed and len(keep) > 1:
        changed = False
        for i in range(len(keep) - 1, -1, -1):
            others = keep[:i] + keep[i + 1:]
            try:
                gb = buchberger(Ideal(ideal.spec, ideal.nvars, tuple(others),
                                      ideal.names), DEGREVLEX, budget)
            except BudgetError:
                continue
            if ideal_membership(keep[i], gb):
                keep.pop(i)
                changed = True
    return Ideal(ideal.spec, ideal.nvars, tuple(keep), ideal.names)
