"""Seeds, seed mutation, exchange-graph exploration, and lower-bound ideals.

Cluster variables are tracked as exact rational functions in the initial
cluster.  Reduction cancels monomial content and exact factor matches against
the denominator's stored factor list; no general multivariate gcd is used
(the Laurent phenomenon keeps denominators monomial in honest runs, and a
surviving non-monomial denominator is itself a reportable event).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .fields import QQ, FieldSpec
from .orders import DEGREVLEX
from .poly import MultiPoly, PolyRing
from .quiver import ExchangeMatrix, mutate_matrix


class RationalFunction:
    """num / prod(factors), reduced; the denominator is kept factored."""

    __slots__ = ("num", "factors")

    def __init__(self, num: MultiPoly, factors: Sequence[MultiPoly] = (),
                 reduce: bool = True):
        self.num = num
        self.factors = [f for f in factors if not f.is_constant() or f.constant_term() != 1]
        for f in self.factors:
            if f.is_zero():
                raise ZeroDivisionError("zero denominator factor")
        if reduce:
            self._reduce()

    # -- reduction -----------------------------------------------------

    def _reduce(self):
        num = self.num
        if num.is_zero():
            self.num = num
            self.factors = []
            return
        # Exact factor cancellation by trial division.
        kept: List[MultiPoly] = []
        for f in self.factors:
            q = num.exact_divide(f)
            if q is not None:
                num = q
            else:
                kept.append(f)
        # Monomial content cancellation between num and the denominator.
        den = _product(kept, num)
        mn = num.content_monomial()
        md = den.content_monomial()
        common = tuple(min(a, b) for a, b in zip(mn, md))
        if any(common):
            num = num.divide_monomial(common)
            kept = _divide_factors_by_monomial(kept, common, num)
        # Normalize the denominator's leading coefficient to 1.
        den = _product(kept, num)
        if not den.is_constant() or den.constant_term() != 1:
            key = DEGREVLEX.key()
            _, lc = den.leading(key)
            if lc != 1:
                inv = num.spec.inv(lc)
                num = num.scale(inv)
                kept = [den.scale(inv)]
            else:
                kept = [den] if not (den.is_constant() and den.constant_term() == 1) else []
        else:
            kept = []
        self.num = num
        self.factors = kept

    @property
    def den(self) -> MultiPoly:
        return _product(self.factors, self.num)

    # -- arithmetic ------------------------------------------------------

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.factors + other.factors)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        num = self.num * other.den + other.num * self.den
        return RationalFunction(num, self.factors + other.factors)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        num = self.num * other.den - other.num * self.den
        return RationalFunction(num, self.factors + other.factors)

    def divide(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.factors + [other.num])

    def pow(self, k: int) -> "RationalFunction":
        out = RationalFunction(MultiPoly.const(self.num.spec, self.num.nvars, 1,
                                               self.num.names))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash(self.text())

    def is_laurent(self) -> bool:
        """True when the reduced denominator is a monomial with coefficient 1."""
        den = self.den
        if len(den.terms) != 1:
            return False
        ((_, c),) = den.terms.items()
        return c == 1

    def text(self) -> str:
        den = self.den
        if den.is_constant() and den.constant_term() == 1:
            return self.num.text()
        num_s = self.num.text()
        if len(self.num.terms) > 1:
            num_s = f"({num_s})"
        den_s = den.text()
        if len(den.terms) > 1 or "*" in den_s or "^" in den_s:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self):
        return f"RationalFunction({self.text()!r})"


def _product(factors: Sequence[MultiPoly], sample: MultiPoly) -> MultiPoly:
    out = MultiPoly.const(sample.spec, sample.nvars, 1, sample.names)
    for f in factors:
        out = out * f
    return out


def _divide_factors_by_monomial(factors: List[MultiPoly], m, sample) -> List[MultiPoly]:
    """Divide the factor product by the monomial m, factor by factor."""
    left = list(m)
    out = []
    for f in factors:
        take = tuple(min(a, b) for a, b in zip(f.content_monomial(), left))
        if any(take):
            f = f.divide_monomial(take)
            left = [a - b for a, b in zip(left, take)]
        if not (f.is_constant() and f.constant_term() == 1):
            out.append(f)
    if any(left):
        raise ValueError("monomial content mismatch in factor list")
    return out


@dataclass(frozen=True)
class Seed:
    cluster: Tuple[RationalFunction, ...]
    matrix: ExchangeMatrix

    def rank(self) -> int:
        return self.matrix.n

    def texts(self) -> Tuple[str, ...]:
        return tuple(x.text() for x in self.cluster)

    def to_json(self) -> dict:
        return {"cluster": list(self.texts()), "matrix": self.matrix.to_json()}


def initial_seed(matrix: ExchangeMatrix, spec: FieldSpec = QQ,
                 names: Optional[Sequence[str]] = None) -> Seed:
    n = matrix.n
    ring = PolyRing(spec, names or tuple(f"x{i+1}" for i in range(n)))
    cluster = tuple(RationalFunction(ring.var(i)) for i in range(n))
    return Seed(cluster, matrix.with_symmetrizer() if matrix.symmetrizer is None
                else matrix)


def mutate_seed(s: Seed, k: int) -> Seed:
    """Exchange relation in the skew-symmetrizable form: the two products read
    off the signs of column k of the matrix, with exponents |b_jk|."""
    n = s.matrix.n
    if not 0 <= k < n:
        raise IndexError("mutation vertex out of range")
    sample = s.cluster[0].num
    one = RationalFunction(MultiPoly.const(sample.spec, sample.nvars, 1, sample.names))
    plus, minus = one, one
    for j in range(n):
        bjk = s.matrix.b[j][k]
        if bjk > 0:
            plus = plus * s.cluster[j].pow(bjk)
        elif bjk < 0:
            minus = minus * s.cluster[j].pow(-bjk)
    new_var = (plus + minus).divide(s.cluster[k])
    cluster = s.cluster[:k] + (new_var,) + s.cluster[k + 1:]
    return Seed(cluster, mutate_matrix(s.matrix, k))


# -- canonicalization and exploration ---------------------------------------


def canonical_seed_key(s: Seed) -> str:
    """Encoding invariant under simultaneous permutation of cluster entries and
    matrix indices.  Entries are sorted by canonical text; ties are broken by
    trying every permutation within tie classes and keeping the least encoding."""
    texts = s.texts()
    order = sorted(range(len(texts)), key=lambda i: texts[i])
    groups: List[List[int]] = []
    for i in order:
        if groups and texts[groups[-1][-1]] == texts[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    best: Optional[str] = None
    for perm in _tie_permutations(groups):
        enc = _encode(texts, s.matrix, perm)
        if best is None or enc < best:
            best = enc
    return best


def _tie_permutations(groups: List[List[int]]):
    import itertools
    pools = [list(itertools.permutations(g)) for g in groups]
    for combo in itertools.product(*pools):
        flat: List[int] = []
        for c in combo:
            flat.extend(c)
        yield flat


def _encode(texts, matrix: ExchangeMatrix, perm: List[int]) -> str:
    rows = []
    for i in perm:
        rows.append(",".join(str(matrix.b[i][j]) for j in perm))
    return "|".join(texts[i] for i in perm) + "#" + ";".join(rows)


@dataclass
class ExplorationReport:
    seeds: Set[str]
    cluster_variables: Set[str]
    complete: bool
    laurent_ok: bool

    def to_json(self) -> dict:
        return {"seed_count": len(self.seeds),
                "cluster_variable_count": len(self.cluster_variables),
                "cluster_variables": sorted(self.cluster_variables),
                "complete": self.complete,
                "laurent_ok": self.laurent_ok}


def explore_exchange_graph(s: Seed, max_seeds: int = 50_000) -> ExplorationReport:
    """BFS over mutations, identifying seeds up to simultaneous permutation."""
    from collections import deque

    start_key = canonical_seed_key(s)
    seen: Set[str] = {start_key}
    variables: Set[str] = set(s.texts())
    laurent_ok = all(x.is_laurent() for x in s.cluster)
    queue = deque([s])
    complete = True
    while queue:
        cur = queue.popleft()
        for k in range(cur.rank()):
            nxt = mutate_seed(cur, k)
            for x in nxt.cluster:
                variables.add(x.text())
                if not x.is_laurent():
                    laurent_ok = False
            key = canonical_seed_key(nxt)
            if key in seen:
                continue
            if len(seen) >= max_seeds:
                complete = False
                continue
            seen.add(key)
            queue.append(nxt)
    return ExplorationReport(seen, variables, complete, laurent_ok)


def check_laurent(s: Seed, sequence: Sequence[int]) -> Tuple[bool, Optional[str]]:
    """Apply the mutation sequence; report the first non-Laurent entry if any."""
    cur = s
    for k in sequence:
        cur = mutate_seed(cur, k)
        for i, x in enumerate(cur.cluster):
            if not x.is_laurent():
                return False, f"entry {i+1} after mutation {k+1}: {x.text()}"
    return True, None


# -- lower-bound presentation ------------------------------------------------


@dataclass(frozen=True)
class LowerBoundPresentation:
    nvars: int                    # 2n
    generators: Tuple[MultiPoly, ...]
    acyclic: bool
    names: Tuple[str, ...]

    def ring(self) -> PolyRing:
        return PolyRing(self.generators[0].spec, self.names)


def lower_bound_presentation(s_or_matrix, spec: FieldSpec = QQ) -> LowerBoundPresentation:
    """The n exchange-relation polynomials x_k y_k - (in product) - (out product)
    in K[x_1..x_n, y_1..y_n]; y_k stands for the one-step mutation x_k'."""
    matrix = s_or_matrix.matrix if isinstance(s_or_matrix, Seed) else s_or_matrix
    n = matrix.n
    names = tuple(f"x{i+1}" for i in range(n)) + tuple(f"y{i+1}" for i in range(n))
    ring = PolyRing(spec, names)
    xs = [ring.var(i) for i in range(n)]
    ys = [ring.var(n + i) for i in range(n)]
    gens = []
    for k in range(n):
        plus = ring.const(1)
        minus = ring.const(1)
        for j in range(n):
            bjk = matrix.b[j][k]
            if bjk > 0:
                plus = plus * xs[j] ** bjk
            elif bjk < 0:
                minus = minus * xs[j] ** (-bjk)
        gens.append(xs[k] * ys[k] - plus - minus)
    from .quiver import quiver_of_matrix
    acyclic = quiver_of_matrix(matrix).is_acyclic()
    return LowerBoundPresentation(2 * n, tuple(gens), acyclic, names)
