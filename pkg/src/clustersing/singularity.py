"""Singular-locus computation, predicted-locus comparison, local certificates
(A_1 / A_2 / cylinder forms), and the Theorem A / Theorem C verifiers.

Certificates are exact polynomial identities: after translating the point to
the origin and eliminating variables that occur linearly with a unit
coefficient, the local equation is decomposed as a sum of products s*t (plus
at most one square or cube term) whose factors have independent differentials.
Replaying the identity and checking the Jacobian rank certifies the local
normal form without passing to completions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .continuant import a1_substitution, continuant
from .fields import Coeff, FieldSpec, QQ
from .groebner import (BudgetError, DEFAULT_BUDGET, Ideal, buchberger,
                       ideal_dimension, ideal_intersection, ideal_membership,
                       is_unit_ideal, minors, radical_membership)
from .jacobian import jacobian_matrix, singular_ideal, smooth_check
from .orders import DEGREVLEX
from .poly import MultiPoly, PolyRing
from .presentations import Presentation, reduced_presentation, star_epsilon


# -- singular locus ------------------------------------------------------------


@dataclass
class SingularLocusReport:
    presentation: Presentation
    sing_ideal: Ideal
    verdict: str                    # "smooth" | "singular"
    dimension: object               # dim of the singular locus, or "empty"
    predicted: Optional["PredictedMatch"] = None

    @property
    def smooth(self) -> bool:
        return self.verdict == "smooth"

    def to_json(self) -> dict:
        out = {"presentation": self.presentation.to_json(),
               "verdict": self.verdict,
               "sing_dimension": self.dimension,
               "sing_ideal": self.sing_ideal.to_json()}
        if self.predicted is not None:
            out["predicted"] = self.predicted.to_json()
        return out


class NotCompleteIntersection(ValueError):
    pass


def singular_locus(p: Presentation, budget: int = DEFAULT_BUDGET,
                   check_ci: bool = True) -> SingularLocusReport:
    """Jacobian criterion for the complete intersection presentation: the
    singular ideal is the presentation plus its codim-sized Jacobian minors."""
    ideal = p.ideal()
    if check_ci:
        dim = ideal_dimension(ideal, budget)
        if dim != p.expected_dimension or p.nvars - dim != p.codimension:
            raise NotCompleteIntersection(
                f"{p.label()} is not a complete intersection of codim "
                f"{p.codimension} (dim={dim})")
    sing = singular_ideal(ideal, p.codimension)
    smooth = is_unit_ideal(sing, budget)
    sdim = "empty" if smooth else ideal_dimension(sing, budget)
    return SingularLocusReport(p, sing, "smooth" if smooth else "singular", sdim)


def brute_force_singular_points(p: Presentation) -> Set[Tuple[int, ...]]:
    """All F_p-rational points where the generators and all codim-sized
    Jacobian minors vanish, by exhaustive enumeration."""
    q = p.spec.characteristic
    if q == 0:
        raise ValueError("brute force requires a finite field")
    conditions = list(p.generators) + [
        m for m in minors(jacobian_matrix(p.generators), p.codimension)
        if not m.is_zero()]
    out = set()
    for pt in itertools.product(range(q), repeat=p.nvars):
        if all(g.evaluate(pt) == 0 for g in conditions):
            out.add(pt)
    return out


def rational_points(ideal: Ideal) -> Set[Tuple[int, ...]]:
    q = ideal.spec.characteristic
    if q == 0:
        raise ValueError("rational point enumeration requires a finite field")
    out = set()
    for pt in itertools.product(range(q), repeat=ideal.nvars):
        if all(g.evaluate(pt) == 0 for g in ideal.generators):
            out.add(pt)
    return out


# -- predicted-locus comparison ------------------------------------------------


@dataclass
class PredictedMatch:
    matched: bool
    direction_a: bool    # intersection of predicted inside rad(sing)
    direction_b: bool    # sing inside every component's radical
    detail: str = ""

    def to_json(self) -> dict:
        return {"matched": self.matched, "a": self.direction_a,
                "b": self.direction_b, "detail": self.detail}


def compare_predicted(sing: Ideal, predicted: Sequence[Ideal],
                      budget: int = DEFAULT_BUDGET) -> PredictedMatch:
    """rad(sing) = intersection of the predicted radical ideals, checked in
    both directions."""
    detail = []
    direction_b = True
    for idx, comp in enumerate(predicted):
        gb = buchberger(comp, DEGREVLEX, budget)
        for g in sing.generators:
            if ideal_membership(g, gb):
                continue
            if not radical_membership(g, comp, budget):
                direction_b = False
                detail.append(f"sing generator not in rad(component {idx+1})")
                break
        if not direction_b:
            break
    inter = predicted[0]
    for comp in predicted[1:]:
        inter = ideal_intersection(inter, comp, budget)
    direction_a = True
    for g in inter.generators:
        if not radical_membership(g, sing, budget):
            direction_a = False
            detail.append("intersection generator not in rad(sing)")
            break
    return PredictedMatch(direction_a and direction_b, direction_a, direction_b,
                          "; ".join(detail))


# -- local frames and certificates ----------------------------------------------


class CertificationFailure(RuntimeError):
    """Raised when a local certificate cannot be established.  Never a false
    positive: the residual polynomial is carried for diagnosis."""

    def __init__(self, message: str, residual: Optional[MultiPoly] = None):
        super().__init__(message)
        self.residual = residual


class LocalFrame:
    """Generators of a presentation localized at a point, supporting exact
    variable elimination (linear occurrence with unit coefficient)."""

    def __init__(self, gens: Sequence[MultiPoly], names: Sequence[str],
                 point: Sequence[Coeff]):
        self.spec = gens[0].spec
        self.names = tuple(names)
        self.gens = list(gens)
        self.point = [self.spec.normalize(c) for c in point]
        self.steps: List[dict] = []
        for g in self.gens:
            if g.evaluate(self.point) != 0:
                raise ValueError("point does not lie on the variety")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def ring(self) -> PolyRing:
        return PolyRing(self.spec, self.names)

    def translate(self):
        if all(c == 0 for c in self.point):
            return
        ring = self.ring()
        sub = {i: ring.var(i) + ring.const(c)
               for i, c in enumerate(self.point) if c != 0}
        self.gens = [g.substitute(sub) for g in self.gens]
        self.steps.append({"op": "translate",
                           "point": [self.spec.coeff_str(c) for c in self.point]})
        self.point = [0] * self.nvars

    def _coeff_in(self, f: MultiPoly, v: int) -> Tuple[MultiPoly, MultiPoly]:
        """f = A*v + B for deg_v(f) = 1; returns (A, B)."""
        a_terms, b_terms = {}, {}
        for e, c in f.terms.items():
            if e[v] == 1:
                e2 = list(e)
                e2[v] = 0
                a_terms[tuple(e2)] = c
            elif e[v] == 0:
                b_terms[e] = c
            else:
                raise ValueError("degree in variable exceeds 1")
        A = MultiPoly(self.spec, self.nvars, a_terms, self.names, _normalized=True)
        B = MultiPoly(self.spec, self.nvars, b_terms, self.names, _normalized=True)
        return A, B

    def eliminate(self, gen_index: int, var_index: int):
        """Drop generator g = A*v + B (A a unit at the point) and the variable
        v, pseudo-reducing the other generators by g.  Valid locally at the
        point since A is invertible there."""
        g = self.gens[gen_index]
        if g.degree_in(var_index) != 1:
            raise ValueError("generator is not linear in the variable")
        A, _ = self._coeff_in(g, var_index)
        if A.evaluate(self.point) == 0:
            raise ValueError("coefficient is not a unit at the point")
        new_gens = []
        for i, h in enumerate(self.gens):
            if i == gen_index:
                continue
            while h.degree_in(var_index) > 0:
                d = h.degree_in(var_index)
                c_terms = {}
                for e, c in h.terms.items():
                    if e[var_index] == d:
                        e2 = list(e)
                        e2[var_index] = 0
                        c_terms[tuple(e2)] = c
                C = MultiPoly(self.spec, self.nvars, c_terms, self.names,
                              _normalized=True)
                vpow = [0] * self.nvars
                vpow[var_index] = d - 1
                mono = MultiPoly(self.spec, self.nvars, {tuple(vpow): 1},
                                 self.names, _normalized=True)
                h = A * h - C * mono * g
            new_gens.append(h)
        keep = [i for i in range(self.nvars) if i != var_index]
        new_names = tuple(self.names[i] for i in keep)
        self.steps.append({"op": "eliminate", "generator": g.text(),
                           "variable": self.names[var_index]})
        self.gens = [_project(h, keep, new_names) for h in new_gens]
        self.point = [self.point[i] for i in keep]
        self.names = new_names

    def clone(self) -> "LocalFrame":
        other = object.__new__(LocalFrame)
        other.spec = self.spec
        other.names = self.names
        other.gens = list(self.gens)
        other.point = list(self.point)
        other.steps = list(self.steps)
        return other

    def elimination_options(self) -> List[Tuple[int, int]]:
        opts = []
        for gi, g in enumerate(self.gens):
            for v in range(self.nvars):
                if g.degree_in(v) != 1:
                    continue
                A, _ = self._coeff_in(g, v)
                if A.evaluate(self.point) != 0:
                    opts.append((gi, v))
        return opts

    def auto_eliminate(self, target_gens: int = 1):
        """Eliminate until target_gens generators remain, choosing at each step
        the first (generator, variable) pair that is linear with a unit
        coefficient at the point."""
        while len(self.gens) > target_gens:
            opts = self.elimination_options()
            if not opts:
                raise CertificationFailure(
                    "no variable occurs linearly with a unit coefficient; "
                    "cannot reduce to a hypersurface")
            self.eliminate(*opts[0])

    def hypersurface_frames(self, target_gens: int = 1, limit: int = 400):
        """All frames reachable by elimination choices, lazily, deduplicated."""
        seen = set()
        stack = [self]
        count = 0
        while stack:
            frame = stack.pop()
            if len(frame.gens) <= target_gens:
                sig = (frame.names, tuple(g.text() for g in frame.gens))
                if sig not in seen:
                    seen.add(sig)
                    yield frame
                continue
            for gi, v in reversed(frame.elimination_options()):
                count += 1
                if count > limit:
                    return
                child = frame.clone()
                child.eliminate(gi, v)
                stack.append(child)


def _project(f: MultiPoly, keep: List[int], names: Tuple[str, ...]) -> MultiPoly:
    t = {}
    for e, c in f.terms.items():
        t[tuple(e[i] for i in keep)] = c
    return MultiPoly(f.spec, len(keep), t, names)


@dataclass
class QuadricDecomposition:
    pairs: List[Tuple[MultiPoly, MultiPoly]]
    squares: List[Tuple[MultiPoly, MultiPoly]]  # (s, U): U*s^2 with U a unit
    rank: int
    nvars: int

    @property
    def isolated(self) -> bool:
        return self.rank == self.nvars

    @property
    def cylinder_dim(self) -> int:
        return self.nvars - self.rank

    def tag(self) -> str:
        if self.squares:
            return "A1: square plus pairs"
        return "A1: sum of pairs"

    def to_json(self) -> dict:
        return {"pairs": [[s.text(), t.text()] for s, t in self.pairs],
                "squares": [[s.text(), c.text()] for s, c in self.squares],
                "rank": self.rank, "ambient": self.nvars,
                "isolated": self.isolated, "tag": self.tag()}


def _linear_rank(polys: Sequence[MultiPoly], spec: FieldSpec, nvars: int) -> int:
    """Rank of the differentials at the origin."""
    rows = []
    for f in polys:
        row = [0] * nvars
        for e, c in f.terms.items():
            if sum(e) == 1:
                row[e.index(1)] = c
        rows.append(row)
    # Gaussian elimination over the field.
    mat = [list(r) for r in rows]
    r = 0
    for c in range(nvars):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = spec.inv(mat[r][c])
        mat[r] = [spec.mul(x, inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [spec.sub(x, spec.mul(f, y))
                          for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def decompose_quadric(G: MultiPoly, ring: PolyRing,
                      max_nodes: int = 20_000) -> Optional[QuadricDecomposition]:
    """Backtracking search for an exact decomposition G = sum s_i t_i + c s^2,
    with all factors vanishing at the origin and independent differentials."""
    spec = G.spec
    n = G.nvars
    failed: Set = set()
    nodes = [0]

    def options(R: MultiPoly):
        opts = []
        for v in range(n):
            if R.degree_in(v) == 1:
                a_terms = {}
                b_terms = {}
                for e, c in R.terms.items():
                    if e[v] == 1:
                        e2 = list(e)
                        e2[v] = 0
                        a_terms[tuple(e2)] = c
                    else:
                        b_terms[e] = c
                A = MultiPoly(spec, n, a_terms, R.names, _normalized=True)
                if A.constant_term() == 0 and not A.is_zero():
                    B = MultiPoly(spec, n, b_terms, R.names, _normalized=True)
                    opts.append(("pair", v, A, B))
        for v in range(n):
            if R.degree_in(v) == 2:
                u_terms, rest_terms, linear_in_v = {}, {}, False
                for e, c in R.terms.items():
                    if e[v] == 2:
                        e2 = list(e)
                        e2[v] = 0
                        u_terms[tuple(e2)] = c
                    elif e[v] == 1:
                        linear_in_v = True
                        break
                    else:
                        rest_terms[e] = c
                if linear_in_v:
                    continue
                U = MultiPoly(spec, n, u_terms, R.names, _normalized=True)
                if U.constant_term() == 0:
                    continue
                rest = MultiPoly(spec, n, rest_terms, R.names, _normalized=True)
                opts.append(("square", v, U, rest))
        return opts

    def search(R: MultiPoly, pairs, squares):
        if R.is_zero():
            factors = [p for pr in pairs for p in pr] + [s for s, _ in squares]
            rank = _linear_rank(factors, spec, n)
            if rank == 2 * len(pairs) + len(squares):
                return QuadricDecomposition(list(pairs), list(squares),
                                            rank, n)
            return None
        key = frozenset(R.terms.items())
        if key in failed:
            return None
        nodes[0] += 1
        if nodes[0] > max_nodes:
            return None
        opts = options(R)
        if not opts:
            # Structural dead end, independent of the accumulated factors.
            failed.add(key)
            return None
        for opt in opts:
            if opt[0] == "pair":
                _, v, A, B = opt
                got = search(B, pairs + [(ring.var(v), A)], squares)
            else:
                _, v, U, rest = opt
                got = search(rest, pairs, squares + [(ring.var(v), U)])
            if got is not None:
                return got
        return None

    return search(G, [], [])


@dataclass
class A1Certificate:
    label: str
    point: List[str]
    steps: List[dict]
    decomposition: QuadricDecomposition
    multiplicity_two: bool
    isolated: bool
    blowup_resolves: Optional[bool] = None

    def to_json(self) -> dict:
        return {"label": self.label, "point": self.point, "steps": self.steps,
                "decomposition": self.decomposition.to_json(),
                "multiplicity_two": self.multiplicity_two,
                "isolated": self.isolated,
                "blowup_resolves": self.blowup_resolves}


def _verify_decomposition(G: MultiPoly, dec: QuadricDecomposition,
                          ring: PolyRing) -> bool:
    total = ring.zero()
    for s, t in dec.pairs:
        total = total + s * t
    for s, u in dec.squares:
        total = total + u * s * s
    return total == G


def certify_a1(p: Presentation, point: Sequence[Coeff],
               expect_isolated: bool = True,
               verify_point_isolated: bool = True,
               run_blowup: bool = True,
               budget: int = DEFAULT_BUDGET) -> A1Certificate:
    """Certify an A_1 normal form at the point (isolated or cylinder)."""
    frame = LocalFrame(p.generators, p.names, point)
    if verify_point_isolated and expect_isolated:
        sing = singular_ideal(p.ideal(), p.codimension)
        ring = p.ring()
        for i, c in enumerate(frame.point):
            probe = ring.var(i) - ring.const(c)
            if not radical_membership(probe, sing, budget):
                raise CertificationFailure(
                    f"singular locus is not concentrated at the point "
                    f"(coordinate {p.names[i]})")
    frame.translate()
    last_failure = None
    dec = None
    chosen = None
    for cand in frame.hypersurface_frames(target_gens=1):
        G = cand.gens[0]
        ring = cand.ring()
        if G.constant_term() != 0:
            last_failure = CertificationFailure("point not on the local hypersurface")
            continue
        if not G.homogeneous_part(1).is_zero():
            last_failure = CertificationFailure(
                "point is a smooth point; nothing to certify")
            continue
        if G.truncate_degree(2).is_zero():
            last_failure = CertificationFailure(
                "quadratic truncation vanishes: multiplicity >= 3", residual=G)
            continue
        got = decompose_quadric(G, ring)
        if got is None:
            last_failure = CertificationFailure(
                "no exact pairing decomposition found", residual=G)
            continue
        if not _verify_decomposition(G, got, ring):
            raise CertificationFailure("decomposition replay failed", residual=G)
        if expect_isolated and not got.isolated:
            last_failure = CertificationFailure(
                f"decomposition covers rank {got.rank} < {got.nvars}: "
                f"not isolated", residual=G)
            continue
        dec = got
        chosen = cand
        break
    if dec is None:
        raise last_failure or CertificationFailure("no hypersurface frame found")
    frame = chosen
    blowup_ok = None
    if run_blowup:
        if p.codimension == 1:
            blowup_ok = _point_blowup_resolves(p.ideal(), point,
                                               p.expected_dimension, budget)
        else:
            # Blow up the origin of the certified local hypersurface model;
            # the exact-identity frame transports the verdict to the variety.
            model = Ideal.of([frame.gens[0]],
                             spec=p.spec, nvars=len(frame.names),
                             names=frame.names)
            blowup_ok = _point_blowup_resolves(model, [0] * len(frame.names),
                                               len(frame.names) - 1, budget)
    return A1Certificate(p.label(), [p.spec.coeff_str(p.spec.normalize(c))
                                     for c in point],
                         frame.steps, dec, True,
                         dec.isolated, blowup_ok)


def _point_blowup_resolves(ideal: Ideal, point: Sequence[Coeff],
                           expected_dim: int, budget: int) -> bool:
    from .blowup import run_resolution
    script = []
    if any(ideal.spec.normalize(c) != 0 for c in point):
        script.append({"op": "translate", "point": list(point)})
    script.append({"op": "blowup", "center": "origin"})
    trace = run_resolution("point-blowup", ideal, script, budget=budget,
                           expected_dim=expected_dim)
    return trace.resolved


def certify_a2(p: Presentation, point: Sequence[Coeff],
               budget: int = DEFAULT_BUDGET) -> dict:
    """Certify the A_2 normal form c*s^3 + t*u at an isolated singular point of
    a 3-variable hypersurface (exact identity + independent differentials)."""
    if p.codimension != 1 or p.nvars != 3:
        raise ValueError("A_2 certification implemented for surfaces in A^3")
    frame = LocalFrame(p.generators, p.names, point)
    frame.translate()
    G = frame.gens[0]
    ring = frame.ring()
    spec = p.spec
    # Find the cube direction: a variable v with G = c*v^3 + v-free remainder
    # after pairing off the rest.
    for v in range(3):
        cube = [0, 0, 0]
        cube[v] = 3
        c = G.terms.get(tuple(cube), 0)
        if c == 0:
            continue
        rest = G - MultiPoly(spec, 3, {tuple(cube): c}, frame.names,
                             _normalized=True)
        dec = decompose_quadric(rest, ring)
        if dec is None or dec.squares or len(dec.pairs) != 1:
            continue
        s, t = dec.pairs[0]
        rank = _linear_rank([ring.var(v), s, t], spec, 3)
        if rank == 3:
            ok = (G == MultiPoly(spec, 3, {tuple(cube): c}, frame.names,
                                 _normalized=True) + s * t)
            if ok:
                return {"certified": True, "cube_var": frame.names[v],
                        "cube_coeff": str(c), "pair": [s.text(), t.text()],
                        "steps": frame.steps}
    raise CertificationFailure("no A_2 normal form found", residual=G)


# -- identity replays for the named branch forms ------------------------------


def d_type_origin_replay(p: Presentation) -> bool:
    """At the D_n origin: h1 equals w1*u2 - u3*u4 exactly for
    w1 = u1(1 - u3u4) - u4 P_{n-3}, and h2 equals u3u4 - (P_{n-2} + 1)."""
    ring = p.ring()
    n = p.rank
    u1, u2, u3, u4 = (ring.var(i) for i in range(4))
    zslice = list(range(4, 4 + n - 2))
    p_n3 = continuant(n - 3, ring, zslice[: n - 3])
    w1 = u1 * (ring.const(1) - u3 * u4) - u4 * p_n3
    h1, h2 = p.generators
    lhs = w1 * u2 - u3 * u4
    p_n2 = continuant(n - 2, ring, zslice)
    return lhs == h1 and h2 == u3 * u4 - (p_n2 + ring.const(1))


def c_type_origin_replay(p: Presentation) -> bool:
    """char 2, odd n: h_n = f^2 + z_{n+1} * (u_n (1 + f) + f P_{n-2}) exactly,
    where f = P_{n-1} + 1 and u_n = z_n + P_{n-2}."""
    if p.spec.characteristic != 2:
        raise ValueError("char-2 replay only")
    ring = p.ring()
    n = p.rank
    one = ring.const(1)
    f = continuant(n - 1, ring, range(n - 1)) + one
    p_n2 = continuant(n - 2, ring, range(n - 2))
    u_n = ring.var(n - 1) + p_n2
    w = u_n * (one + f) + f * p_n2
    rhs = f * f + ring.var(n) * w
    return rhs == p.generators[0]


def c_sing_ideal(p: Presentation) -> Ideal:
    """V(u_n, z_{n+1}, f_{n-2}): the predicted singular locus over F_2."""
    ring = p.ring()
    n = p.rank
    f = continuant(n - 1, ring, range(n - 1)) + ring.const(1)
    u_n = ring.var(n - 1) + continuant(n - 2, ring, range(n - 2))
    return Ideal.of([u_n, ring.var(n), f], spec=p.spec, nvars=p.nvars,
                    names=p.names)


def star_toric_replay(p: Presentation, budget: int = DEFAULT_BUDGET) -> bool:
    """Inverting h_1's parenthesized unit factor turns the star ideal into the
    binomial toric ideal: ie*h1 reduces to z1 z2 + z_{2n-3} (ie z_{2n-2})
    modulo eps*ie = 1."""
    from .groebner import normal_form
    eps = star_epsilon(p)
    if eps.evaluate([0] * p.nvars) == 0:
        return False
    names = p.names + ("ie",)
    big = PolyRing(p.spec, names)
    nv = p.nvars + 1
    lift = lambda f: f.extend(nv, names)
    ie = big.var(nv - 1)
    rel = lift(eps) * ie - big.const(1)
    gb = buchberger(Ideal.of([rel], spec=p.spec, nvars=nv, names=names),
                    DEGREVLEX, budget)
    z = [big.var(i) for i in range(p.nvars)]
    n = p.rank
    claim = ie * lift(p.generators[0]) - (z[0] * z[1] + z[2 * n - 4] * ie * z[2 * n - 3])
    if not ideal_membership(claim, gb):
        return False
    # The remaining generators are already the binomials z1 z2 - z_{2k-1} z_{2k}.
    for k, g in enumerate(p.generators[1:], start=2):
        if g != p.ring().var(0) * p.ring().var(1) - p.ring().var(2 * k - 2) * p.ring().var(2 * k - 1):
            return False
    return True


# -- predicted loci per branch -------------------------------------------------


def origin_ideal(p: Presentation) -> Ideal:
    ring = p.ring()
    return Ideal.of([ring.var(i) for i in range(p.nvars)], spec=p.spec,
                    nvars=p.nvars, names=p.names)


def point_ideal(p: Presentation, point: Sequence[Coeff]) -> Ideal:
    ring = p.ring()
    gens = [ring.var(i) - ring.const(c) for i, c in enumerate(point)]
    return Ideal.of(gens, spec=p.spec, nvars=p.nvars, names=p.names)


def axis_ideal(p: Presentation, free: int) -> Ideal:
    ring = p.ring()
    gens = [ring.var(i) for i in range(p.nvars) if i != free]
    return Ideal.of(gens, spec=p.spec, nvars=p.nvars, names=p.names)


def d_y0_ideal(p: Presentation) -> Ideal:
    ring = p.ring()
    n = p.rank
    zslice = list(range(4, 4 + n - 2))
    p_n2 = continuant(n - 2, ring, zslice)
    gens = [ring.var(i) for i in range(4)] + [p_n2 + ring.const(1)]
    return Ideal.of(gens, spec=p.spec, nvars=p.nvars, names=p.names)


def d_predicted_components(p: Presentation) -> List[Ideal]:
    n, q = p.rank, p.spec.characteristic
    five = (q != 2 and n % 4 == 0) or (q == 2 and n % 2 == 0)
    if not five:
        return [d_y0_ideal(p)]
    if n == 4:
        # Y_0 = V(u., z1 z2) splits into the two z-axes; six axes total.
        return [axis_ideal(p, i) for i in range(6)]
    return [d_y0_ideal(p)] + [axis_ideal(p, i) for i in range(4)]


def e7_sing_ideal(p: Presentation) -> Ideal:
    ring = p.ring()
    # names: x1, x5, x7, y1..y7 -> indices 0,1,2, 3..9
    x1, x5, x7 = ring.var(0), ring.var(1), ring.var(2)
    y = [ring.var(3 + i) for i in range(7)]
    p3 = x7 * y[6] * y[5] - x7 - y[5]
    gens = [x1, x5] + y[:5] + [p3 + ring.const(1)]
    return Ideal.of(gens, spec=p.spec, nvars=p.nvars, names=p.names)


def star_components(p: Presentation) -> Dict[str, Ideal]:
    """The irreducible components: for each pair k < l of killed blocks and
    each choice of one variable from every remaining block."""
    n = p.rank
    ring = p.ring()
    comps: Dict[str, Ideal] = {}
    blocks = list(range(1, n))   # block m covers z_{2m-1}, z_{2m}
    for k, l in itertools.combinations(blocks, 2):
        rest = [m for m in blocks if m not in (k, l)]
        for choice in itertools.product((0, 1), repeat=len(rest)):
            gens = [ring.var(2 * k - 2), ring.var(2 * k - 1),
                    ring.var(2 * l - 2), ring.var(2 * l - 1)]
            tagbits = []
            for m, c in zip(rest, choice):
                gens.append(ring.var(2 * m - 2 + c))
                tagbits.append(f"z{2*m-1+c}")
            name = f"D[{k},{l}]" + ("|" + ",".join(tagbits) if tagbits else "")
            comps[name] = Ideal.of(gens, spec=p.spec, nvars=p.nvars,
                                   names=p.names)
    return comps


def node_certified(surface: MultiPoly, boundary: MultiPoly, point, names,
                   budget: int = DEFAULT_BUDGET) -> bool:
    """The boundary divisor cut on the smooth hypersurface V(surface) is a
    normal crossing at the point: in some local frame the boundary germ is
    (unit) * (monomial in coordinates), or such a monomial times a certified
    node (crossing of two smooth branches)."""
    try:
        frame = LocalFrame([surface, boundary], names, point)
    except ValueError:
        return False
    frame.translate()
    for cand in frame.hypersurface_frames(target_gens=1):
        G = cand.gens[0]
        if G.is_zero():
            continue
        m = G.content_monomial()
        U = G.divide_monomial(m)
        if U.constant_term() != 0:
            return True
        if U.homogeneous_part(1).is_zero() and sum(m) == 0:
            dec = decompose_quadric(U, cand.ring())
            if dec is not None and dec.isolated and _verify_decomposition(
                    U, dec, cand.ring()):
                return True
    return False


def generic_stratum_nc(surface: MultiPoly, boundary: MultiPoly,
                       fixed: Dict[int, Coeff], free: Sequence[int], names,
                       budget: int = DEFAULT_BUDGET) -> bool:
    """Normal-crossing germ of the boundary on the smooth surface at the
    symbolic generic point of the affine stratum {v = c (fixed), free vars
    arbitrary}: shift the free variables by fresh parameters, eliminate one
    local variable through the surface equation, and require the germ to be a
    unit times a monomial in the local variables (units are polynomials in the
    parameters that are not identically zero)."""
    spec = surface.spec
    n = surface.nvars
    params = tuple(f"t{i+1}" for i in range(len(free)))
    big_names = tuple(names) + params
    big = PolyRing(spec, big_names)
    nb = n + len(params)
    lift = lambda f: f.extend(nb, big_names)
    sub = {}
    for v, c in fixed.items():
        if spec.normalize(c) != 0:
            sub[v] = big.var(v) + big.const(c)
    for k, v in enumerate(free):
        sub[v] = big.var(v) + big.var(n + k)
    H = lift(surface).substitute(sub)
    B = lift(boundary).substitute(sub)
    local = list(range(n))

    def local_content(f: MultiPoly):
        m = f.content_monomial()
        return tuple(x if i in set(local) else 0 for i, x in enumerate(m))

    def param_unit(f: MultiPoly) -> bool:
        # the part of f constant in the local variables, as a parameter poly
        const = {e: c for e, c in f.terms.items() if not any(e[i] for i in local)}
        return bool(const)

    # Eliminate one local variable occurring linearly in H with a coefficient
    # that is a unit at the generic point.
    for v in local:
        if H.degree_in(v) != 1:
            continue
        a_terms, b_terms = {}, {}
        for e, c in H.terms.items():
            if e[v] == 1:
                e2 = list(e)
                e2[v] = 0
                a_terms[tuple(e2)] = c
            else:
                b_terms[e] = c
        A = MultiPoly(spec, nb, a_terms, big_names, _normalized=True)
        if not param_unit(A):
            continue
        G = B
        while G.degree_in(v) > 0:
            d = G.degree_in(v)
            c_terms = {}
            for e, c in G.terms.items():
                if e[v] == d:
                    e2 = list(e)
                    e2[v] = 0
                    c_terms[tuple(e2)] = c
            C = MultiPoly(spec, nb, c_terms, big_names, _normalized=True)
            vpow = [0] * nb
            vpow[v] = d - 1
            mono = MultiPoly(spec, nb, {tuple(vpow): 1}, big_names,
                             _normalized=True)
            G = A * G - C * mono * H
        if G.is_zero():
            continue
        m = G.content_monomial()
        m_local = tuple(x if i < n else 0 for i, x in enumerate(m))
        U = G.divide_monomial(m_local)
        if param_unit(U):
            return True
    return False
