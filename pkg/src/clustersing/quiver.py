"""Quivers, skew-symmetrizable exchange matrices, mutation, and Dynkin data.

Vertices are 0-based internally; the CLI and JSON wire formats use 1-based
labels to match the usual figures.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph without loops or oriented 2-cycles."""

    n: int
    arrows: Tuple[Tuple[int, int, int], ...]  # (source, target, multiplicity)

    def __post_init__(self):
        seen = {}
        for i, j, m in self.arrows:
            if i == j:
                raise ValueError("loops are not allowed")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError("arrow endpoint out of range")
            if m <= 0:
                raise ValueError("arrow multiplicity must be positive")
            if (j, i) in seen:
                raise ValueError("oriented 2-cycles are not allowed")
            if (i, j) in seen:
                raise ValueError("duplicate arrow entry; use multiplicity")
            seen[(i, j)] = m
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))

    @staticmethod
    def from_pairs(n: int, pairs: Sequence[Tuple[int, int]]) -> "Quiver":
        mult: Dict[Tuple[int, int], int] = {}
        for i, j in pairs:
            mult[(i, j)] = mult.get((i, j), 0) + 1
        return Quiver(n, tuple((i, j, m) for (i, j), m in sorted(mult.items())))

    def multiplicity(self, i: int, j: int) -> int:
        for a, b, m in self.arrows:
            if (a, b) == (i, j):
                return m
        return 0

    def arrow_dict(self) -> Dict[Tuple[int, int], int]:
        return {(i, j): m for i, j, m in self.arrows}

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n
        adj = [[] for _ in range(self.n)]
        for i, j, _ in self.arrows:
            adj[i].append(j)
            indeg[j] += 1
        queue = deque(v for v in range(self.n) if indeg[v] == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for w in adj[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == self.n

    def underlying_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted((min(i, j), max(i, j)) for i, j, _ in self.arrows))

    def is_tree_orientation(self) -> bool:
        edges = self.underlying_edges()
        if len(set(edges)) != len(edges) or len(edges) != self.n - 1:
            return False
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def sinks(self) -> List[int]:
        out = set(i for i, _, _ in self.arrows)
        touched = set(i for i, _, _ in self.arrows) | set(j for _, j, _ in self.arrows)
        return [v for v in range(self.n) if v in touched and v not in out]

    def sources(self) -> List[int]:
        inc = set(j for _, j, _ in self.arrows)
        touched = set(i for i, _, _ in self.arrows) | set(j for _, j, _ in self.arrows)
        return [v for v in range(self.n) if v in touched and v not in inc]

    def to_json(self) -> dict:
        return {"n": self.n,
                "arrows": [[i + 1, j + 1, m] for i, j, m in self.arrows]}

    @staticmethod
    def from_json(data: dict) -> "Quiver":
        return Quiver(int(data["n"]),
                      tuple((int(i) - 1, int(j) - 1, int(m))
                            for i, j, m in data["arrows"]))


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable integer matrix with an optional symmetrizer."""

    n: int
    b: Tuple[Tuple[int, ...], ...]
    symmetrizer: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in row) for row in self.b)
        object.__setattr__(self, "b", b)
        if len(b) != self.n or any(len(r) != self.n for r in b):
            raise ValueError("matrix size mismatch")
        for i in range(self.n):
            if b[i][i] != 0:
                raise ValueError("diagonal must be zero")
            for j in range(self.n):
                if (b[i][j] > 0) != (b[j][i] < 0):
                    raise ValueError("sign pattern is not skew-symmetric")
        d = self.symmetrizer
        if d is not None:
            d = tuple(int(x) for x in d)
            object.__setattr__(self, "symmetrizer", d)
            if len(d) != self.n or any(x <= 0 for x in d):
                raise ValueError("symmetrizer must be positive")
            for i in range(self.n):
                for j in range(self.n):
                    if d[i] * b[i][j] != -d[j] * b[j][i]:
                        raise ValueError("D*B is not skew-symmetric")

    def is_skew_symmetric(self) -> bool:
        return all(self.b[i][j] == -self.b[j][i]
                   for i in range(self.n) for j in range(self.n))

    def with_symmetrizer(self) -> "ExchangeMatrix":
        if self.symmetrizer is not None:
            return self
        d = find_symmetrizer(self.b)
        if d is None:
            raise ValueError("matrix is not skew-symmetrizable")
        return ExchangeMatrix(self.n, self.b, d)

    def to_json(self) -> dict:
        out = {"n": self.n, "b": [list(r) for r in self.b]}
        if self.symmetrizer is not None:
            out["d"] = list(self.symmetrizer)
        return out

    @staticmethod
    def from_json(data: dict) -> "ExchangeMatrix":
        return ExchangeMatrix(int(data["n"]),
                              tuple(tuple(r) for r in data["b"]),
                              tuple(data["d"]) if data.get("d") else None)


@dataclass(frozen=True)
class CartanMatrix:
    n: int
    a: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.a)
        object.__setattr__(self, "a", a)
        for i in range(self.n):
            if a[i][i] != 2:
                raise ValueError("Cartan diagonal must be 2")
            for j in range(self.n):
                if i != j and a[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")

    def is_finite_type(self) -> bool:
        """All principal minors positive (exact integer determinants)."""
        for size in range(1, self.n + 1):
            for rows in itertools.combinations(range(self.n), size):
                if _int_det([[self.a[i][j] for j in rows] for i in rows]) <= 0:
                    return False
        return True


def _int_det(m: List[List[int]]) -> Fraction:
    n = len(m)
    mat = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            f = mat[r][col] * inv
            if f:
                for c in range(col, n):
                    mat[r][c] -= f * mat[col][c]
    return det


def find_symmetrizer(b: Sequence[Sequence[int]]) -> Optional[Tuple[int, ...]]:
    """Positive integer diagonal D with D*B skew-symmetric, by propagation."""
    n = len(b)
    d: List[Optional[Fraction]] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if b[i][j] == 0 and b[j][i] == 0:
                    continue
                if b[i][j] == 0 or b[j][i] == 0:
                    return None  # sign pattern violation
                ratio = Fraction(-b[j][i], b[i][j])
                val = d[i] * ratio
                if val <= 0:
                    return None
                if d[j] is None:
                    d[j] = val
                    queue.append(j)
                elif d[j] != val:
                    return None
    denom = 1
    for x in d:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    out = tuple(int(x * denom) for x in d)
    g = 0
    for x in out:
        g = _gcd(g, x)
    return tuple(x // g for x in out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- mutation ---------------------------------------------------------------


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at vertex k; the symmetrizer carries over unchanged."""
    if not 0 <= k < B.n:
        raise IndexError("mutation vertex out of range")
    b = B.b
    new = []
    for i in range(B.n):
        row = []
        for j in range(B.n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2)
        new.append(tuple(row))
    return ExchangeMatrix(B.n, tuple(new), B.symmetrizer)


def mutate_quiver(Q: Quiver, k: int) -> Quiver:
    """Quiver mutation: add composites through k, reverse at k, cancel 2-cycles."""
    if not 0 <= k < Q.n:
        raise IndexError("mutation vertex out of range")
    mult = Q.arrow_dict()
    # (1) composite arrows i -> j for every path i -> k -> j
    add: Dict[Tuple[int, int], int] = {}
    for (i, a), m1 in mult.items():
        if a != k:
            continue
        for (b, j), m2 in mult.items():
            if b == k:
                add[(i, j)] = add.get((i, j), 0) + m1 * m2
    # (2) reverse arrows incident to k
    reversed_mult: Dict[Tuple[int, int], int] = {}
    for (i, j), m in mult.items():
        if i == k or j == k:
            reversed_mult[(j, i)] = reversed_mult.get((j, i), 0) + m
        else:
            reversed_mult[(i, j)] = reversed_mult.get((i, j), 0) + m
    for (i, j), m in add.items():
        reversed_mult[(i, j)] = reversed_mult.get((i, j), 0) + m
    # (3) cancel oriented 2-cycles
    out: Dict[Tuple[int, int], int] = {}
    for (i, j), m in reversed_mult.items():
        if (j, i) in reversed_mult and i > j:
            continue
        back = reversed_mult.get((j, i), 0)
        net = m - back
        if net > 0:
            out[(i, j)] = net
        elif net < 0:
            out[(j, i)] = -net
    return Quiver(Q.n, tuple((i, j, m) for (i, j), m in sorted(out.items())))


def matrix_of_quiver(Q: Quiver) -> ExchangeMatrix:
    b = [[0] * Q.n for _ in range(Q.n)]
    for i, j, m in Q.arrows:
        b[i][j] = m
        b[j][i] = -m
    return ExchangeMatrix(Q.n, tuple(tuple(r) for r in b), (1,) * Q.n)


def quiver_of_matrix(B: ExchangeMatrix) -> Quiver:
    """For skew-symmetric B the quiver with b_ij arrows; otherwise the sign
    pattern Gamma(B) with single arrows."""
    skew = B.is_skew_symmetric()
    arrows = []
    for i in range(B.n):
        for j in range(B.n):
            if B.b[i][j] > 0:
                arrows.append((i, j, B.b[i][j] if skew else 1))
    return Quiver(B.n, tuple(arrows))


# -- Cartan counterpart and finite type -----------------------------------


def cartan_counterpart(B: ExchangeMatrix) -> CartanMatrix:
    a = tuple(tuple(2 if i == j else -abs(B.b[i][j]) for j in range(B.n))
              for i in range(B.n))
    return CartanMatrix(B.n, a)


@dataclass(frozen=True)
class FiniteTypeResult:
    status: str  # "finite" | "infinite" | "indeterminate"
    visited: int
    witness: Optional[ExchangeMatrix] = None

    def __bool__(self):
        if self.status == "indeterminate":
            raise ValueError("finite-type search was indeterminate (budget)")
        return self.status == "finite"


def is_finite_type(B: ExchangeMatrix, budget: int = 10_000) -> FiniteTypeResult:
    """BFS over the mutation class for a finite-type Cartan counterpart.

    A member with |b_ij * b_ji| > 3 certifies infinite type (its 2x2 principal
    Cartan minor is never positive anywhere in its class, by 2-finiteness); an
    exhausted class with no finite-type Cartan counterpart is also definitive.
    """
    start = B.b
    seen = {start}
    queue = deque([start])
    visited = 0
    while queue:
        cur = queue.popleft()
        visited += 1
        M = ExchangeMatrix(B.n, cur)
        for i in range(B.n):
            for j in range(i + 1, B.n):
                if abs(cur[i][j] * cur[j][i]) > 3:
                    return FiniteTypeResult("infinite", visited, M)
        if cartan_counterpart(M).is_finite_type():
            return FiniteTypeResult("finite", visited, M)
        if visited >= budget:
            return FiniteTypeResult("indeterminate", visited)
        for k in range(B.n):
            nxt = mutate_matrix(M, k).b
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return FiniteTypeResult("infinite", visited)


# -- the paper's seed constructors -----------------------------------------


DYNKIN_TYPES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "Star")

_RANK_RANGE = {"A": (1, None), "B": (2, None), "C": (3, None), "D": (4, None),
               "E6": (6, 6), "E7": (7, 7), "E8": (8, 8), "F4": (4, 4),
               "G2": (2, 2), "Star": (2, None)}


@dataclass(frozen=True)
class SeedSpec:
    type: str
    rank: int
    matrix: ExchangeMatrix
    quiver: Optional[Quiver]
    description: str


def dynkin_seed(type_: str, n: Optional[int] = None) -> SeedSpec:
    """The fixed orientation/matrix used throughout the analysis, per type."""
    if type_ not in DYNKIN_TYPES:
        raise ValueError(f"unknown type {type_!r}")
    lo, hi = _RANK_RANGE[type_]
    if n is None:
        if hi is None:
            raise ValueError(f"type {type_} needs a rank")
        n = hi
    if n < lo or (hi is not None and n > hi):
        raise ValueError(f"rank {n} out of range for type {type_}")

    if type_ == "A":
        q = Quiver.from_pairs(n, [(i, i + 1) for i in range(n - 1)])
        return SeedSpec(type_, n, matrix_of_quiver(q), q, "path 1->2->...->n")
    if type_ == "D":
        pairs = [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
        q = Quiver.from_pairs(n, pairs)
        return SeedSpec(type_, n, matrix_of_quiver(q), q,
                        "path to the branch vertex n-2, branches to n-1 and n")
    if type_ in ("E6", "E7", "E8"):
        r = int(type_[1])
        # path 1 -> 2 -> ... with the branch hanging off vertex r-3 (0-based r-4)
        pairs = []
        chain = [0, 1, 2] if r == 6 else [0, 1, 2, 3] if r == 7 else [0, 1, 2, 3, 4]
        for a, b in zip(chain, chain[1:]):
            pairs.append((a, b))
        branch_at = chain[-1]
        pairs.append((branch_at, branch_at + 1))        # short branch
        pairs.append((branch_at, branch_at + 2))        # continue the long arm
        pairs.append((branch_at + 2, branch_at + 3))
        q = Quiver.from_pairs(r, pairs)
        return SeedSpec(type_, r, matrix_of_quiver(q), q,
                        "oriented E-diagram with branch after the long arm")
    if type_ == "Star":
        pairs = [(i, n - 1) for i in range(n - 2)] + [(n - 1, n - 2)]
        q = Quiver.from_pairs(n, pairs)
        return SeedSpec(type_, n, matrix_of_quiver(q), q,
                        "star: leaves 1..n-2 point at the center n, center points at n-1")
    if type_ == "B":
        b = _tridiag(n)
        b[n - 1][n - 2] = -2
        d = tuple([2] * (n - 1) + [1])
        return SeedSpec(type_, n, ExchangeMatrix(n, tuple(map(tuple, b)), d), None,
                        "B_n exchange matrix with the -2 entry in the last row")
    if type_ == "C":
        b = _tridiag(n)
        b[n - 2][n - 1] = 2
        d = tuple([1] * (n - 1) + [2])
        return SeedSpec(type_, n, ExchangeMatrix(n, tuple(map(tuple, b)), d), None,
                        "C_n exchange matrix with the 2 entry above the -1")
    if type_ == "F4":
        b = [[0, 1, 0, 0], [-1, 0, 1, 0], [0, -2, 0, 1], [0, 0, -1, 0]]
        return SeedSpec(type_, 4, ExchangeMatrix(4, tuple(map(tuple, b)), (2, 2, 1, 1)),
                        None, "F_4 exchange matrix")
    if type_ == "G2":
        b = [[0, 1], [-3, 0]]
        return SeedSpec(type_, 2, ExchangeMatrix(2, tuple(map(tuple, b)), (3, 1)),
                        None, "G_2 exchange matrix")
    raise AssertionError


def _tridiag(n: int) -> List[List[int]]:
    b = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        b[i][i + 1] = 1
        b[i + 1][i] = -1
    return b


# -- isomorphism and sink/source connectivity ------------------------------


def quiver_isomorphic(a: Quiver, b: Quiver) -> Optional[Tuple[int, ...]]:
    """A vertex bijection carrying a onto b, or None.  Exhaustive with
    degree-sequence pruning; intended for n <= 10."""
    if a.n != b.n or len(a.arrows) != len(b.arrows):
        return None
    da = _degree_profile(a)
    db = _degree_profile(b)
    if sorted(da) != sorted(db):
        return None
    bd = b.arrow_dict()
    ad = a.arrow_dict()
    candidates = [[w for w in range(b.n) if db[w] == da[v]] for v in range(a.n)]

    perm = [-1] * a.n
    used = [False] * b.n

    def extend(v: int) -> bool:
        if v == a.n:
            return True
        for w in candidates[v]:
            if used[w]:
                continue
            ok = True
            for u in range(v):
                if ad.get((v, u), 0) != bd.get((w, perm[u]), 0) or \
                   ad.get((u, v), 0) != bd.get((perm[u], w), 0):
                    ok = False
                    break
            if ok:
                perm[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        return False

    return tuple(perm) if extend(0) else None


def _degree_profile(q: Quiver):
    prof = [(0, 0)] * q.n
    outd = [0] * q.n
    ind = [0] * q.n
    for i, j, m in q.arrows:
        outd[i] += m
        ind[j] += m
    return [(outd[v], ind[v]) for v in range(q.n)]


def sink_source_connect(tree_a: Quiver, tree_b: Quiver,
                        max_nodes: int = 100_000) -> List[int]:
    """A sequence of sink/source mutations carrying tree_a to a quiver
    isomorphic to tree_b.  Both inputs must orient the same underlying tree."""
    if not (tree_a.is_tree_orientation() and tree_b.is_tree_orientation()):
        raise ValueError("inputs must be orientations of trees")
    if tree_a.underlying_edges() != tree_b.underlying_edges():
        if quiver_isomorphic(_forget(tree_a), _forget(tree_b)) is None:
            raise ValueError("inputs do not share an underlying tree")
    if quiver_isomorphic(tree_a, tree_b) is not None:
        return []
    seen = {tree_a.arrows}
    queue = deque([(tree_a, [])])
    nodes = 0
    while queue:
        q, path = queue.popleft()
        nodes += 1
        if nodes > max_nodes:
            raise RuntimeError("sink/source search budget exceeded")
        for k in sorted(set(q.sinks()) | set(q.sources())):
            nxt = mutate_quiver(q, k)
            if nxt.arrows in seen:
                continue
            seen.add(nxt.arrows)
            np = path + [k]
            if quiver_isomorphic(nxt, tree_b) is not None:
                return np
            queue.append((nxt, np))
    raise RuntimeError("no sink/source path found (should not happen for trees)")


def _forget(q: Quiver) -> Quiver:
    """Symmetrize: replace each arrow by a canonical direction for tree tests."""
    return Quiver.from_pairs(q.n, [(min(i, j), max(i, j)) for i, j, _ in q.arrows])
