"""Chart-wise blowups, strict transforms, and resolution-script drivers.

A blowup center is given by a generator list.  Pure-variable generators give
the classical charts (z_j -> z_i * z_j, ambient unchanged); a non-variable
generator g contributes a chart in which the variable generators are replaced
by g * (ratio variable), and appears in other charts through an added ratio
variable w with the relation g = (chart generator) * w.  Strict transforms are
saturations by the chart's exceptional factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import (BudgetError, DEFAULT_BUDGET, Ideal, buchberger,
                       ideal_membership, ideal_sum, is_unit_ideal,
                       minimalize_generators, radical_membership, saturation)
from .jacobian import jacobian_matrix, singular_ideal, smooth_check
from .orders import DEGREVLEX
from .groebner import minors as all_minors
from .poly import MultiPoly, PolyRing


def _as_variable(g: MultiPoly) -> Optional[int]:
    """Index i when g is exactly the variable x_i, else None."""
    if len(g.terms) != 1:
        return None
    ((e, c),) = g.terms.items()
    if c != 1 or sum(e) != 1:
        return None
    return e.index(1)


def _as_affine(g: MultiPoly):
    """(index, const) when g = x_i - c; else None."""
    zero = (0,) * g.nvars
    if len(g.terms) == 1:
        i = _as_variable(g)
        return (i, 0) if i is not None else None
    if len(g.terms) != 2 or zero not in g.terms:
        return None
    const = g.terms[zero]
    lin = [(e, c) for e, c in g.terms.items() if e != zero]
    (e, c) = lin[0]
    if c != 1 or sum(e) != 1:
        return None
    return e.index(1), g.spec.neg(const)


@dataclass
class BlowupChart:
    chart_id: str
    parent_id: str
    center_texts: Tuple[str, ...]
    chart_generator: str
    names: Tuple[str, ...]
    pre_ideal: Ideal                        # total transform, content-divided
    exceptional: Tuple[MultiPoly, ...]      # accumulated exceptional divisors
    tracked: Dict[str, Ideal] = field(default_factory=dict)
    smooth: Optional[bool] = None
    dimension: object = None
    expected_dim: Optional[int] = None      # dim of the strict transform
    budget: int = DEFAULT_BUDGET
    exceptional_factor: Optional[MultiPoly] = None
    _sat_ideal: Optional[Ideal] = None

    @property
    def ideal(self) -> Ideal:
        """The strict transform: the total transform saturated by the
        exceptional factor (materialized on first use)."""
        if self._sat_ideal is None:
            if self.exceptional_factor is None:
                self._sat_ideal = self.pre_ideal
            else:
                self._sat_ideal = saturation(self.pre_ideal,
                                             self.exceptional_factor,
                                             self.budget)
        return self._sat_ideal

    def to_json(self) -> dict:
        return {
            "id": self.chart_id,
            "parent": self.parent_id,
            "center": list(self.center_texts),
            "chart_generator": self.chart_generator,
            "vars": list(self.names),
            "ideal": [g.text() for g in self.ideal.generators],
            "exceptional": [e.text() for e in self.exceptional],
            "smooth": self.smooth,
            "dimension": self.dimension,
        }

    def smooth_fast(self, quick_budget: int = 30_000) -> Optional[bool]:
        """Sufficient smoothness tests on the unsaturated total transform (the
        strict transform lies inside it, so full Jacobian rank there certifies
        smoothness of the equidimensional strict transform).

        Tier 1 restricts the test to the exceptional locus: valid because
        every center in the resolution scripts is contained in the current
        singular locus (or the chart's parent was smooth), so off-exceptional
        points remain smooth; adding the accumulated exceptional factors to
        the singular ideal makes the Groebner run far cheaper.  Tier 2 is the
        unrestricted ambient test.  Returns None when inconclusive."""
        if self.expected_dim is None:
            return None
        c = self.pre_ideal.nvars - self.expected_dim
        if c <= 0 or c > len(self.pre_ideal.generators):
            return None
        try:
            sing = singular_ideal(self.pre_ideal, c)
        except BudgetError:
            return None
        exc = [e for e in self.exceptional if not e.is_constant()]
        if exc:
            prod = exc[0]
            for e in exc[1:]:
                prod = prod * e
            restricted = Ideal(sing.spec, sing.nvars,
                               sing.generators + (prod,), sing.names)
            try:
                if is_unit_ideal(restricted, quick_budget):
                    return True
            except BudgetError:
                pass
        try:
            if is_unit_ideal(sing, quick_budget):
                return True
        except BudgetError:
            return None
        return None


class CenterError(ValueError):
    pass


def check_center_in_variety(ideal: Ideal, center: Sequence[MultiPoly],
                            budget: int = DEFAULT_BUDGET) -> bool:
    """V(center) inside V(ideal): every ideal generator in rad(center ideal)."""
    cid = Ideal(ideal.spec, ideal.nvars, tuple(center), ideal.names)
    return all(radical_membership(g, cid, budget) for g in ideal.generators)


def blowup_charts(ideal: Ideal, center: Sequence[MultiPoly],
                  tracked: Optional[Dict[str, Ideal]] = None,
                  exceptional: Sequence[MultiPoly] = (),
                  parent_id: str = "root",
                  allow_ambient_center: bool = False,
                  budget: int = DEFAULT_BUDGET) -> List[BlowupChart]:
    """One chart per center generator, with strict transforms of the main
    ideal, the tracked subvarieties, and the accumulated exceptionals."""
    center = [c for c in center if not c.is_zero()]
    if not center:
        raise CenterError("empty blowup center")
    if not allow_ambient_center and not check_center_in_variety(ideal, center, budget):
        raise CenterError("center is not contained in the variety "
                          "(pass allow_ambient_center=True for ambient blowups)")
    tracked = tracked or {}
    charts = []
    for i, gen_i in enumerate(center):
        charts.append(_build_chart(ideal, center, i, tracked, exceptional,
                                   parent_id, budget))
    return charts


def _build_chart(ideal: Ideal, center: Sequence[MultiPoly], i: int,
                 tracked: Dict[str, Ideal], exceptional: Sequence[MultiPoly],
                 parent_id: str, budget: int) -> BlowupChart:
    spec = ideal.spec
    names = ideal.names
    n = ideal.nvars
    gen_i = center[i]
    affine = {j: _as_affine(g) for j, g in enumerate(center)}

    # The chart ring: old variables plus one ratio variable per non-affine
    # center generator other than the chart generator.
    ratio_slots = [j for j, g in enumerate(center)
                   if j != i and affine[j] is None]
    new_names = names + tuple(f"w{parent_id.count('.')}_{j+1}" for j in ratio_slots)
    big_n = n + len(ratio_slots)
    ring = PolyRing(spec, new_names)

    def lift(f: MultiPoly) -> MultiPoly:
        return f.extend(big_n, new_names)

    excf = lift(gen_i)
    if affine[i] is None:
        for j in range(len(center)):
            if j != i and affine[j] is not None                     and excf.degree_in(affine[j][0]) > 0:
                raise CenterError("non-affine center generator involves a "
                                  "coordinate generator of the same center")
    sub = {}
    for j in range(len(center)):
        if j == i or affine[j] is None:
            continue
        vj, cj = affine[j]
        repl = excf * ring.var(vj)
        if cj != 0:
            repl = repl + ring.const(cj)
        sub[vj] = repl

    def transform(f: MultiPoly) -> MultiPoly:
        return lift(f).substitute(sub)

    relations = []
    for slot, j in enumerate(ratio_slots):
        w = ring.var(n + slot)
        relations.append(transform(center[j]) - excf * w)

    def pre_transform(src: Ideal) -> Ideal:
        gens = [transform(g) for g in src.generators] + relations
        gens = [g for g in gens if not g.is_zero()]
        return _divide_content(Ideal(spec, big_n, tuple(gens), new_names), excf)

    def strict(src: Ideal) -> Ideal:
        pre = pre_transform(src)
        if not pre.generators:
            return pre
        return saturation(pre, excf, budget)

    pre_main = pre_transform(ideal)
    principal_fast = len(ideal.generators) == 1 and not ratio_slots
    chart = BlowupChart(f"{parent_id}.{i+1}", parent_id,
                        tuple(c.text() for c in center), gen_i.text(),
                        new_names, pre_main, (), {}, budget=budget,
                        exceptional_factor=excf)
    if principal_fast:
        # A principal total transform divided by the maximal exceptional power
        # is already saturated (the generator has no exceptional factor left).
        g0 = pre_main.generators[0] if pre_main.generators else None
        if g0 is not None and g0.exact_divide(excf) is None:
            chart._sat_ideal = pre_main
    new_tracked = {name: strict(sub_ideal) for name, sub_ideal in tracked.items()}
    new_exc = tuple(_strict_divisor(e, transform, excf, spec, big_n, new_names,
                                    budget)
                    for e in exceptional) + (excf,)
    new_exc = tuple(e for e in new_exc if not (e.is_constant() and not e.is_zero()))
    chart.tracked = new_tracked
    chart.exceptional = new_exc
    return chart


def _strict_divisor(e: MultiPoly, transform, excf: MultiPoly, spec, big_n,
                    new_names, budget) -> MultiPoly:
    """Strict transform of a principal divisor: divide out the exceptional."""
    t = transform(e)
    vi = _as_variable(excf)
    if vi is not None:
        k = t.content_monomial()[vi]
        if k:
            t = t.divide_monomial(tuple(k if idx == vi else 0
                                        for idx in range(big_n)))
        return t
    while True:
        q = t.exact_divide(excf)
        if q is None or q.is_zero():
            return t
        t = q


def _divide_content(ideal: Ideal, excf: MultiPoly) -> Ideal:
    """Divide every generator by the largest possible power of the
    exceptional factor (exact divisions only)."""
    vi = _as_variable(excf)
    out = []
    for g in ideal.generators:
        if vi is not None:
            k = g.content_monomial()[vi]
            if k:
                g = g.divide_monomial(tuple(k if idx == vi else 0
                                            for idx in range(ideal.nvars)))
        else:
            while True:
                q = g.exact_divide(excf)
                if q is None:
                    break
                g = q
        out.append(g)
    return Ideal(ideal.spec, ideal.nvars, tuple(out), ideal.names)


def _same_ideal(a: Ideal, b: Ideal, budget: int) -> bool:
    if not a.generators or not b.generators:
        return not a.generators and not b.generators
    gba = buchberger(a, DEGREVLEX, budget)
    gbb = buchberger(b, DEGREVLEX, budget)
    return (all(ideal_membership(g, gba) for g in b.generators)
            and all(ideal_membership(g, gbb) for g in a.generators))


def origin_blowup_smooths(ideal: Ideal, budget: int = DEFAULT_BUDGET,
                          expected_dim: Optional[int] = None) -> bool:
    """Blow up the origin once; True when every chart's strict transform is
    smooth."""
    ring = ideal.ring()
    center = [ring.var(i) for i in range(ideal.nvars)]
    for chart in blowup_charts(ideal, center, budget=budget):
        chart.expected_dim = expected_dim
        if not _leaf_smooth(chart, budget):
            return False
    return True


# -- resolution driver --------------------------------------------------------


@dataclass
class ResolutionTrace:
    label: str
    root_ideal: Ideal
    charts: List[BlowupChart]           # all charts ever created
    leaves: List[BlowupChart]           # final leaves
    stages: List[dict]                  # executed script with per-stage info
    resolved: bool
    hypersurface: bool

    def leaf_count(self) -> int:
        return len(self.leaves)

    def to_json(self) -> dict:
        return {"label": self.label,
                "resolved": self.resolved,
                "stages": self.stages,
                "leaf_count": len(self.leaves),
                "leaves": [c.to_json() for c in self.leaves]}

    def text_report(self) -> str:
        lines = [f"resolution of {self.label}: "
                 f"{'resolved' if self.resolved else 'NOT resolved'}"]
        for c in self.leaves:
            verdict = "smooth" if c.smooth else "SINGULAR"
            lines.append(f"  chart {c.chart_id}  center={list(self.stages and c.center_texts)}"
                         f"  exc={c.chart_generator}  {verdict}")
        return "\n".join(lines)


class ResolutionError(RuntimeError):
    pass


def _leaf_smooth(chart: BlowupChart, budget: int) -> bool:
    if chart.smooth is None:
        fast = chart.smooth_fast()
        if fast:
            chart.smooth = True
            chart.dimension = chart.expected_dim
        else:
            ok, dim = smooth_check(chart.ideal, budget)
            chart.smooth = ok
            chart.dimension = dim
    return chart.smooth


def leaf_smooth(chart: BlowupChart, budget: int = DEFAULT_BUDGET) -> bool:
    return _leaf_smooth(chart, budget)


def coordinate_center_of(sing: Ideal, budget: int) -> Optional[List[MultiPoly]]:
    """Radicalize a singular-locus ideal to a coordinate subspace when possible."""
    ring = sing.ring()
    vars_in = []
    for i in range(sing.nvars):
        if radical_membership(ring.var(i), sing, budget):
            vars_in.append(i)
    support = set(vars_in)
    for g in sing.generators:
        for e in g.terms:
            if not any(e[i] for i in support):
                return None
    return [ring.var(i) for i in vars_in]


def _point_center_of(ideal: Ideal, budget: int) -> Optional[List[MultiPoly]]:
    """Affine coordinates of a single rational point cutting out rad(ideal),
    found by exhaustive scan over small finite fields."""
    q = ideal.spec.characteristic
    if q == 0 or q ** ideal.nvars > 300_000:
        return None
    import itertools as _it
    pts = []
    for pt in _it.product(range(q), repeat=ideal.nvars):
        if all(g.evaluate(pt) == 0 for g in ideal.generators):
            pts.append(pt)
            if len(pts) > 1:
                return None
    if not pts:
        return None
    pt = pts[0]
    ring = ideal.ring()
    gens = [ring.var(i) - ring.const(c) for i, c in enumerate(pt)]
    if all(radical_membership(g, ideal, budget) for g in gens):
        return gens
    return None


def _radical_center(ideal_sum_: Ideal, budget: int) -> List[MultiPoly]:
    center = coordinate_center_of(ideal_sum_, budget)
    if center is not None:
        return center
    point = _point_center_of(ideal_sum_, budget)
    if point is not None:
        return point
    reduced = minimalize_generators(ideal_sum_, budget)
    return list(reduced.generators)


def run_resolution(label: str, ideal: Ideal, script: Sequence[dict],
                   tracked: Optional[Dict[str, Ideal]] = None,
                   budget: int = DEFAULT_BUDGET,
                   expected_dim: Optional[int] = None) -> ResolutionTrace:
    """Execute a resolution script; see the step vocabulary in the module docs.

    Steps:
      {"op": "translate", "point": [...]}
      {"op": "change_var", "index": i, "shift": MultiPoly}   # new x_i = x_i + shift
      {"op": "blowup", "center": "origin" | "sing" | "point", ...}
      {"op": "blowup", "center": "tracked", "names": [...]}
      {"op": "separate", "names": [...], "max_rounds": int}
    """
    tracked = dict(tracked or {})
    if expected_dim is None:
        from .groebner import ideal_dimension
        got = ideal_dimension(ideal, budget)
        expected_dim = None if got == "empty" else got
    root = BlowupChart("root", "", (), "", ideal.names, ideal, (), tracked,
                       expected_dim=expected_dim, budget=budget)
    charts = [root]
    leaves = [root]
    stages: List[dict] = []

    for step in script:
        op = step["op"]
        if op == "translate":
            point = step["point"]
            leaves = [_translate_chart(c, point) for c in leaves]
            charts = leaves[:]
            stages.append({"op": op, "point": [str(x) for x in point]})
            continue
        if op == "change_var":
            leaves = [_change_var_chart(c, step["index"], step["shift"])
                      for c in leaves]
            charts = leaves[:]
            stages.append({"op": op, "index": step["index"]})
            continue
        new_leaves: List[BlowupChart] = []
        stage_info = {"op": op, "center": step.get("center"), "children": 0}
        snc_stage = step.get("center") == "snc"
        carry = _tracked_needed(script, script.index(step) + 1)
        for leaf in leaves:
            if not snc_stage and _leaf_smooth(leaf, budget):
                new_leaves.append(leaf)
                continue
            produced = _apply_blowup_step(leaf, step, budget, carry)
            for c in produced:
                if c.expected_dim is None:
                    c.expected_dim = expected_dim
                c.budget = budget
            stage_info["children"] += len(produced)
            new_leaves.extend(produced)
        for c in new_leaves:
            if c not in charts:
                charts.append(c)
        leaves = new_leaves
        stages.append(stage_info)

    resolved = all(_leaf_smooth(c, budget) for c in leaves)
    return ResolutionTrace(label, ideal, charts, leaves, stages, resolved,
                           hypersurface=len(ideal.generators) == 1)


def _tracked_needed(script: Sequence[dict], from_idx: int) -> frozenset:
    """Names of tracked subvarieties still used by steps from from_idx on."""
    names = set()
    for step in list(script)[from_idx:]:
        if step.get("center") == "tracked" or step.get("op") == "separate":
            names.update(step.get("names", ()))
    return frozenset(names)


def _filter_tracked(tracked: Dict[str, Ideal], carry: frozenset) -> Dict[str, Ideal]:
    return {k: v for k, v in tracked.items() if k in carry}


def _apply_blowup_step(leaf: BlowupChart, step: dict, budget: int,
                       carry: frozenset = frozenset()) -> List[BlowupChart]:
    op = step["op"]
    ring = leaf.ideal.ring()
    if op == "blowup":
        kind = step["center"]
        if kind == "origin":
            center = [ring.var(i) for i in range(leaf.ideal.nvars)]
        elif kind == "sing":
            sing = _sing_ideal_of_leaf(leaf, budget)
            if is_unit_ideal(sing, budget):
                return [leaf]
            center = _radical_center(sing, budget)
            _require_regular_center(center, leaf, budget)
        elif kind == "tracked":
            return _blowup_tracked(leaf, step["names"], budget, carry)
        elif kind == "snc":
            return _blowup_snc_points(leaf, budget)
        else:
            raise ValueError(f"unknown center kind {kind!r}")
        out = blowup_charts(leaf.ideal, center,
                            _filter_tracked(leaf.tracked, carry),
                            leaf.exceptional, leaf.chart_id, budget=budget)
        for c in out:
            c.expected_dim = leaf.expected_dim
        return out
    if op == "separate":
        return _separate(leaf, step["names"], step.get("max_rounds", 8), budget,
                         carry)
    raise ValueError(f"unknown resolution op {op!r}")


def _snc_failures(leaf: BlowupChart, budget: int) -> List[Ideal]:
    """Singular ideals of the non-crossing subsets of (strict transform,
    exceptional divisors) in this chart."""
    items: List[MultiPoly] = list(leaf.ideal.generators)
    for e in leaf.exceptional:
        if not e.is_constant():
            items.append(e)
    out = []
    for r in range(1, len(items) + 1):
        for combo in itertools.combinations(items, r):
            sub = Ideal.of(list(combo), spec=leaf.ideal.spec,
                           nvars=leaf.ideal.nvars, names=leaf.names)
            sing = singular_ideal(sub, r)
            if not is_unit_ideal(sing, budget):
                out.append(sing)
    return out


def _blowup_snc_points(leaf: BlowupChart, budget: int) -> List[BlowupChart]:
    """Blow up the loci where the strict transform and the exceptional
    divisors fail to have normal crossings (sequentially; they must be
    pairwise disjoint)."""
    failures = _snc_failures(leaf, budget)
    if not failures:
        return [leaf]
    centers = []
    for sing in failures:
        center = _radical_center(sing, budget)
        key = tuple(sorted(c.text() for c in center))
        if key not in [k for k, _ in centers]:
            centers.append((key, center))
    frontier = [leaf]
    for _, center in centers:
        next_frontier = []
        for chart in frontier:
            cid = Ideal(chart.ideal.spec, chart.ideal.nvars,
                        tuple(_embed_center(center, chart)), chart.names)
            if is_unit_ideal(cid, budget):
                next_frontier.append(chart)
                continue
            _require_regular_center(list(cid.generators), chart, budget)
            children = blowup_charts(chart.ideal, list(cid.generators),
                                     chart.tracked, chart.exceptional,
                                     chart.chart_id,
                                     allow_ambient_center=True, budget=budget)
            for c in children:
                c.expected_dim = chart.expected_dim
                c.smooth = None
            next_frontier.extend(children)
        frontier = next_frontier
    return frontier


def _embed_center(center: Sequence[MultiPoly], chart: BlowupChart):
    """Lift center generators into the chart's (possibly larger) ring."""
    out = []
    for c in center:
        if c.nvars == chart.ideal.nvars:
            out.append(c)
        else:
            out.append(c.extend(chart.ideal.nvars, chart.names))
    return out


def _sing_ideal_of_leaf(leaf: BlowupChart, budget: int) -> Ideal:
    from .groebner import ideal_dimension
    work = leaf.ideal
    dim = ideal_dimension(work, budget)
    if dim == "empty":
        return Ideal(work.spec, work.nvars, (work.ring().const(1),), work.names)
    codim = work.nvars - dim
    if len(work.generators) > codim:
        work = minimalize_generators(work, budget)
    return singular_ideal(work, work.nvars - dim)


def _require_regular_center(center: Sequence[MultiPoly], leaf: BlowupChart,
                            budget: int):
    cid = Ideal(leaf.ideal.spec, leaf.ideal.nvars, tuple(center),
                leaf.ideal.names)
    ok, _ = smooth_check(cid, budget)
    if not ok:
        raise ResolutionError(
            f"center {[c.text() for c in center]} is not regular in chart "
            f"{leaf.chart_id}")


def _blowup_tracked(leaf: BlowupChart, names: Sequence[str], budget: int,
                    carry: frozenset = frozenset()) -> List[BlowupChart]:
    """Blow up the named tracked subvarieties (must be pairwise disjoint in
    this chart); components are blown up sequentially."""
    active = [(nm, leaf.tracked[nm]) for nm in names
              if nm in leaf.tracked and leaf.tracked[nm].generators
              and not is_unit_ideal(leaf.tracked[nm], budget)]
    for (n1, i1), (n2, i2) in itertools.combinations(active, 2):
        if not is_unit_ideal(ideal_sum(i1, i2), budget):
            raise ResolutionError(
                f"tracked centers {n1} and {n2} intersect in chart "
                f"{leaf.chart_id}; separate them first")
    frontier = [leaf]
    for idx, (nm, _) in enumerate(active):
        rest = frozenset(n for n, _ in active[idx + 1:]) | carry
        next_frontier = []
        for chart in frontier:
            comp = chart.tracked.get(nm)
            if comp is None or not comp.generators or is_unit_ideal(comp, budget):
                next_frontier.append(chart)
                continue
            if _leaf_smooth(chart, budget):
                next_frontier.append(chart)
                continue
            center = _radical_center(comp, budget)
            _require_regular_center(center, chart, budget)
            children = blowup_charts(chart.ideal, center,
                                     _filter_tracked(chart.tracked, rest),
                                     chart.exceptional, chart.chart_id,
                                     budget=budget)
            for c in children:
                c.expected_dim = chart.expected_dim
            next_frontier.extend(children)
        frontier = next_frontier
    return frontier


def _separate(leaf: BlowupChart, names: Sequence[str], max_rounds: int,
              budget: int, carry: frozenset = frozenset()) -> List[BlowupChart]:
    """Blow up common loci of intersecting tracked components until they are
    pairwise disjoint in every descendant chart."""
    frontier = [leaf]
    for _ in range(max_rounds):
        next_frontier: List[BlowupChart] = []
        progress = False
        for chart in frontier:
            active = [(nm, chart.tracked[nm]) for nm in names
                      if nm in chart.tracked and chart.tracked[nm].generators
                      and not is_unit_ideal(chart.tracked[nm], budget)]
            groups = _meeting_groups(active, budget)
            if not groups:
                next_frontier.append(chart)
                continue
            progress = True
            total = groups[0][0][1]
            for nm, ideal_ in groups[0]:
                total = ideal_sum(total, ideal_)
            center = _radical_center(total, budget)
            _require_regular_center(center, chart, budget)
            children = blowup_charts(chart.ideal, center, chart.tracked,
                                     chart.exceptional, chart.chart_id,
                                     budget=budget)
            for c in children:
                c.expected_dim = chart.expected_dim
            next_frontier.extend(children)
        frontier = next_frontier
        if not progress:
            return frontier
    # Verify disjointness after the final round.
    for chart in frontier:
        active = [(nm, chart.tracked[nm]) for nm in names
                  if nm in chart.tracked and chart.tracked[nm].generators
                  and not is_unit_ideal(chart.tracked[nm], budget)]
        if _meeting_groups(active, budget):
            raise ResolutionError("separation did not terminate within budget")
    return frontier


def _meeting_groups(active, budget: int):
    """Connected groups (size >= 2) of pairwise-intersecting tracked ideals."""
    n = len(active)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    meets = False
    for a, b in itertools.combinations(range(n), 2):
        if not is_unit_ideal(ideal_sum(active[a][1], active[b][1]), budget):
            meets = True
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    if not meets:
        return []
    groups: Dict[int, list] = {}
    for idx in range(n):
        groups.setdefault(find(idx), []).append(active[idx])
    return [g for g in groups.values() if len(g) >= 2]


def _translate_chart(chart: BlowupChart, point: Sequence) -> BlowupChart:
    ideal = chart.ideal
    ring = ideal.ring()
    sub = {}
    for i, c in enumerate(point):
        c = ideal.spec.normalize(c)
        if c != 0:
            sub[i] = ring.var(i) + ring.const(c)

    def tr(src: Ideal) -> Ideal:
        return Ideal(src.spec, src.nvars,
                     tuple(g.substitute(sub) for g in src.generators), src.names)

    return BlowupChart(chart.chart_id, chart.parent_id, chart.center_texts,
                       chart.chart_generator, chart.names, tr(ideal),
                       tuple(e.substitute(sub) for e in chart.exceptional),
                       {k: tr(v) for k, v in chart.tracked.items()},
                       expected_dim=chart.expected_dim, budget=chart.budget)


def _change_var_chart(chart: BlowupChart, index: int,
                      shift: MultiPoly) -> BlowupChart:
    """Global triangular change: the new coordinate x_i equals old x_i + shift,
    so occurrences of x_i are replaced by x_i - shift."""
    if shift.nvars != chart.ideal.nvars:
        raise ValueError("shift must live in the chart ring")
    if shift.degree_in(index) > 0:
        raise ValueError("shift may not involve the changed variable")
    ring = chart.ideal.ring()
    sub = {index: ring.var(index) - shift}

    def tr(src: Ideal) -> Ideal:
        return Ideal(src.spec, src.nvars,
                     tuple(g.substitute(sub) for g in src.generators), src.names)

    return BlowupChart(chart.chart_id, chart.parent_id, chart.center_texts,
                       chart.chart_generator, chart.names, tr(chart.ideal),
                       tuple(e.substitute(sub) for e in chart.exceptional),
                       {k: tr(v) for k, v in chart.tracked.items()},
                       expected_dim=chart.expected_dim, budget=chart.budget)


# -- simple normal crossings --------------------------------------------------


def snc_check_hypersurface(trace: ResolutionTrace,
                           budget: int = DEFAULT_BUDGET,
                           mode: str = "ambient") -> bool:
    """Simple normal crossings of the strict transform with the accumulated
    exceptional divisors, in every leaf chart.

    mode "ambient": every subset of (strict transform, exceptionals) cuts a
    smooth subvariety of codimension = subset size (full combined Jacobian
    rank).  mode "boundary": the exceptional boundary restricted to the smooth
    strict transform is a normal-crossings arrangement; every rational
    singular point of the restricted divisor must be an ordinary node
    (certified by the local A_1 decomposition).  The ambient reading can be
    destroyed by tangencies that point blowups cannot separate; the boundary
    reading is the on-the-resolution statement."""
    if not trace.hypersurface:
        raise ValueError("SNC check is implemented for hypersurface traces only")
    for leaf in trace.leaves:
        gens = leaf.ideal.generators
        if len(gens) > 1:
            reduced = minimalize_generators(leaf.ideal, budget)
            gens = reduced.generators
        if len(gens) > 1:
            raise ValueError("leaf strict transform is not principal")
        items = list(gens)
        for e in leaf.exceptional:
            if not e.is_constant():
                items.append(e)
        if mode == "ambient":
            if not _snc_ambient_leaf(leaf, items, budget):
                return False
        elif mode == "boundary":
            if not _snc_boundary_leaf(leaf, gens, items[len(gens):], budget):
                return False
        else:
            raise ValueError(f"unknown SNC mode {mode!r}")
    return True


def _snc_ambient_leaf(leaf, items, budget: int) -> bool:
    strict = set(id(g) for g in leaf.ideal.generators)
    for r in range(1, len(items) + 1):
        for combo in itertools.combinations(items, r):
            if r == 1 and id(combo[0]) in strict:
                # smoothness of the strict transform itself: already decided
                # by the leaf check (with its exceptional-restricted tier)
                if not _leaf_smooth(leaf, budget):
                    return False
                continue
            sub = Ideal.of(list(combo), spec=leaf.ideal.spec,
                           nvars=leaf.ideal.nvars, names=leaf.names)
            sing = singular_ideal(sub, r)
            if not is_unit_ideal(sing, budget):
                return False
    return True


def _snc_boundary_leaf(leaf, gens, exceptionals, budget: int) -> bool:
    """Certify the boundary divisor on the smooth strict transform at every
    rational point of its singular locus, and at the symbolic generic point of
    each positive-dimensional affine-coordinate stratum."""
    from .singularity import generic_stratum_nc, node_certified
    spec = leaf.ideal.spec
    if spec.characteristic == 0:
        raise ValueError("boundary SNC mode needs a finite field for the "
                         "rational point scan")
    ok, _ = smooth_check(leaf.ideal, budget)
    if not ok:
        return False
    if not gens or not exceptionals:
        return True
    h = gens[0]
    prod = exceptionals[0]
    for e in exceptionals[1:]:
        prod = prod * e
    boundary = Ideal.of([h, prod], spec=spec, nvars=leaf.ideal.nvars,
                        names=leaf.names)
    sing = singular_ideal(boundary, 2)
    if is_unit_ideal(sing, budget):
        return True
    q = spec.characteristic
    if q ** leaf.ideal.nvars > 300_000:
        return False
    rational = []
    for pt in itertools.product(range(q), repeat=leaf.ideal.nvars):
        if all(g.evaluate(pt) == 0 for g in sing.generators):
            rational.append(pt)
            if not node_certified(h, prod, pt, leaf.names, budget):
                return False
    from .groebner import ideal_dimension
    d = ideal_dimension(sing, budget)
    if d in (0, "empty"):
        return True
    # Positive-dimensional: certify the generic point of each affine
    # coordinate stratum through the rational points found.
    strata = _affine_strata(sing, rational, budget)
    if strata is None:
        return False
    for fixed, free in strata:
        if not generic_stratum_nc(h, prod, fixed, free, leaf.names, budget):
            return False
    return True


def _affine_strata(sing: Ideal, rational_points, budget: int):
    """Affine coordinate subspaces covering the positive-dimensional part of
    the singular locus: probe (var - c) in rad(sing) per variable."""
    ring = sing.ring()
    q = sing.spec.characteristic
    fixed = {}
    free = []
    for v in range(sing.nvars):
        consts = {pt[v] for pt in rational_points} if rational_points             else set(range(q))
        hit = None
        for c in sorted(consts):
            if radical_membership(ring.var(v) - ring.const(c), sing, budget):
                hit = c
                break
        if hit is None:
            free.append(v)
        else:
            fixed[v] = hit
    # The stratum must cover the singular locus: every generator of sing
    # vanishes identically on it.
    sub = {v: ring.const(c) for v, c in fixed.items()}
    for g in sing.generators:
        if not g.substitute(sub).is_zero():
            return None
    return [(fixed, free)]
