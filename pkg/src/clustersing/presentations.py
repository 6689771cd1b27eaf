"""Reduced presentations for every finite Dynkin type and the star quiver,
plus the elimination audit connecting them to the raw lower-bound ideals.

Variable naming mirrors the source analysis (u_i, z_i, x_i, y_i) so reports
can be read against it line by line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .continuant import continuant
from .fields import FieldSpec, QQ
from .groebner import (BudgetError, DEFAULT_BUDGET, Ideal, buchberger,
                       eliminate, ideal_dimension, ideal_membership)
from .orders import DEGREVLEX, block_order
from .poly import MultiPoly, PolyRing
from .quiver import dynkin_seed
from .seeds import lower_bound_presentation

CODIM = {"A": 1, "B": 2, "C": 1, "D": 2, "E6": 3, "E7": 3, "E8": 3,
         "F4": 1, "G2": 1}


@dataclass
class Presentation:
    type: str
    rank: int
    spec: FieldSpec
    names: Tuple[str, ...]
    generators: Tuple[MultiPoly, ...]
    expected_dimension: int
    source: str  # which presentation lemma the generators transcribe

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def codimension(self) -> int:
        return len(self.generators)

    def ring(self) -> PolyRing:
        return PolyRing(self.spec, self.names)

    def ideal(self) -> Ideal:
        return Ideal(self.spec, self.nvars, self.generators, self.names)

    def label(self) -> str:
        return f"{self.type}{self.rank}" if self.type in ("A", "B", "C", "D", "Star") \
            else self.type

    def to_json(self) -> dict:
        return {"type": self.type, "rank": self.rank,
                "field": {"char": self.spec.characteristic},
                "vars": list(self.names),
                "gens": [g.text() for g in self.generators],
                "expected_dimension": self.expected_dimension,
                "source": self.source}


def reduced_presentation(type_: str, rank: int, spec: FieldSpec = QQ) -> Presentation:
    """Exact transcription of the reduced presentation for the given type."""
    if type_ == "A":
        if rank < 1:
            raise ValueError("A_n needs n >= 1")
        names = tuple(f"z{i+1}" for i in range(rank + 1))
        ring = PolyRing(spec, names)
        f = continuant(rank + 1, ring) - ring.const(1)
        return Presentation(type_, rank, spec, names, (f,), rank,
                            "hypersurface P_{n+1} - 1")
    if type_ == "D":
        if rank < 4:
            raise ValueError("D_n needs n >= 4")
        n = rank
        names = tuple(f"u{i}" for i in range(1, 5)) + \
            tuple(f"z{i+1}" for i in range(n - 2))
        ring = PolyRing(spec, names)
        u1, u2, u3, u4 = (ring.var(i) for i in range(4))
        zslice = list(range(4, 4 + n - 2))
        p_n3 = continuant(n - 3, ring, zslice[: n - 3])
        p_n2 = continuant(n - 2, ring, zslice)
        h1 = u1 * u2 - u3 * u4 - u1 * u2 * u3 * u4 - u2 * u4 * p_n3
        h2 = u3 * u4 - p_n2 - ring.const(1)
        return Presentation(type_, rank, spec, names, (h1, h2), n,
                            "codim-2 model with h1, h2 in u_i and continuants")
    if type_ == "B":
        if rank < 2:
            raise ValueError("B_n needs n >= 2")
        n = rank
        names = tuple(f"z{i+1}" for i in range(n - 1)) + ("u1", "u2", "u3")
        ring = PolyRing(spec, names)
        u1, u2, u3 = (ring.var(n - 1 + i) for i in range(3))
        p_n2 = continuant(n - 2, ring, range(n - 2))
        p_n1 = continuant(n - 1, ring, range(n - 1))
        g = (u1 * u2 - ring.const(1)) * u3 - u1 * u1 - p_n2
        h = u1 * u2 - ring.const(1) - p_n1
        return Presentation(type_, rank, spec, names, (g, h), n,
                            "codim-2 model with g_n, h_n")
    if type_ == "C":
        if rank < 3:
            raise ValueError("C_n needs n >= 3")
        n = rank
        names = tuple(f"z{i+1}" for i in range(n + 1))
        ring = PolyRing(spec, names)
        p_n = continuant(n, ring, range(n))
        p_n1 = continuant(n - 1, ring, range(n - 1))
        h = p_n * ring.var(n) - p_n1 * p_n1 - ring.const(1)
        return Presentation(type_, rank, spec, names, (h,), n,
                            "hypersurface P_n * z_{n+1} - P_{n-1}^2 - 1")
    if type_ in ("E6", "E7", "E8"):
        r = int(type_[1])
        if rank != r:
            raise ValueError(f"{type_} has fixed rank {r}")
        # Variables x1, x_{r-2}, x_r, y_1..y_r; the three relations pair the
        # long arm's continuant with P_2 of the branch and end vertices.
        a = r - 2  # branch chain vertex
        names = ("x1", f"x{a}", f"x{r}") + tuple(f"y{i+1}" for i in range(r))
        ring = PolyRing(spec, names)
        x1, xa, xr = ring.var(0), ring.var(1), ring.var(2)
        y = [ring.var(3 + i) for i in range(r)]
        # P_k(x1, y1, ..., y_{k-1}) along the chain 1..r-4
        chain = lambda k: continuant(k, ring, [0] + list(range(3, 3 + k - 1)))
        p2a = xa * y[a - 1] - ring.const(1)      # P_2(x_{r-2}, y_{r-2})
        p2r = xr * y[r - 1] - ring.const(1)      # P_2(x_r, y_r)
        # P_3(x_r, y_r, y_{r-1}) = x_r y_r y_{r-1} - x_r - y_{r-1}
        p3 = xr * y[r - 1] * y[r - 2] - xr - y[r - 2]
        h1 = chain(r - 3) - p2a
        h2 = p2a * y[r - 4] - xa * p2r - chain(r - 4)
        h3 = p3 - p2a
        return Presentation(type_, r, spec, names, (h1, h2, h3), r,
                            "codim-3 model pairing arm continuants")
    if type_ == "F4":
        if rank != 4:
            raise ValueError("F4 has fixed rank 4")
        names = ("x", "y", "z", "w", "t")
        ring = PolyRing(spec, names)
        x, y, z, w, t = ring.gens()
        g = (x * y * z * w * t - x * x * y * t * t - x * y * z - y * z * w
             + 2 * x * y * t - x * w * t + x - y + w - ring.const(1))
        return Presentation(type_, 4, spec, names, (g,), 4,
                            "regular quintic hypersurface")
    if type_ == "G2":
        if rank != 2:
            raise ValueError("G2 has fixed rank 2")
        names = ("x", "y", "z")
        ring = PolyRing(spec, names)
        x, y, z = ring.gens()
        g = z ** 3 - x * y * z + y + ring.const(1)
        return Presentation(type_, 2, spec, names, (g,), 2,
                            "cubic hypersurface z^3 - xyz + y + 1")
    if type_ == "Star":
        if rank < 4:
            raise ValueError("Star presentation used for n >= 4")
        n = rank
        names = tuple(f"z{i+1}" for i in range(2 * n - 2))
        ring = PolyRing(spec, names)
        z = ring.gens()
        odd_product = ring.const(1)
        for ell in range(1, n):
            odd_product = odd_product * z[2 * ell - 2]
        eps = ring.const(1) - z[2 * n - 4] * z[2 * n - 3] + odd_product
        h1 = z[0] * z[1] * eps + z[2 * n - 4] * z[2 * n - 3]
        gens = [h1]
        for k in range(2, n - 1):
            gens.append(z[0] * z[1] - z[2 * k - 2] * z[2 * k - 1])
        return Presentation(type_, n, spec, names, tuple(gens), n,
                            "star presentation h_1, ..., h_{n-2}")
    raise ValueError(f"unknown presentation type {type_!r}")


def star_epsilon(p: Presentation) -> MultiPoly:
    """The parenthesized factor of h_1 (a unit at the origin)."""
    if p.type != "Star":
        raise ValueError("star presentations only")
    ring = p.ring()
    z = ring.gens()
    n = p.rank
    odd_product = ring.const(1)
    for ell in range(1, n):
        odd_product = odd_product * z[2 * ell - 2]
    return ring.const(1) - z[2 * n - 4] * z[2 * n - 3] + odd_product


def verify_dimension(p: Presentation, budget: int = DEFAULT_BUDGET) -> bool:
    return ideal_dimension(p.ideal(), budget) == p.expected_dimension


# -- elimination audit --------------------------------------------------------


@dataclass
class EliminationVerdict:
    type: str
    rank: int
    characteristic: int
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"type": self.type, "rank": self.rank,
                "char": self.characteristic, "ok": self.ok, "detail": self.detail}


def _raw_ideal(type_: str, rank: int, spec: FieldSpec) -> Tuple[Ideal, Tuple[str, ...]]:
    lb = lower_bound_presentation(dynkin_seed(type_, rank).matrix, spec)
    return Ideal.of(list(lb.generators), spec=spec, nvars=lb.nvars,
                    names=lb.names), lb.names


def eliminate_check(type_: str, rank: int, spec: FieldSpec,
                    budget: int = DEFAULT_BUDGET) -> EliminationVerdict:
    """Re-derive the reduced presentation from the raw lower-bound ideal by
    variable elimination and compare the two ideals by mutual membership."""
    n = rank
    try:
        raw, names = _raw_ideal(type_, rank, spec)
        target = reduced_presentation(type_, rank, spec)
        ring = PolyRing(spec, names)
        x = [ring.var(i) for i in range(n)]
        y = [ring.var(n + i) for i in range(n)]

        if type_ == "A":
            drop = list(range(1, n))                       # x_2..x_n
            keep_map = [0] + [n + i for i in range(n)]     # z = (x1, y1..yn)
        elif type_ == "C":
            drop = list(range(1, n))
            keep_map = [0] + [n + i for i in range(n)]
        elif type_ == "G2":
            drop = [0]                                     # x_1
            keep_map = [n + 1, n, 1]                       # (x,y,z) = (y2, y1, x2)
        elif type_ == "B":
            drop = list(range(1, n - 1))                   # x_2..x_{n-1}
            # z = (x1, y1..y_{n-2}), u = (x_n, y_n, y_{n-1})
            keep_map = [0] + [n + i for i in range(n - 2)] + [n - 1, 2 * n - 1, 2 * n - 2]
        elif type_ == "D":
            # Adjoin u_1 := x_n - y_{n-2} y_{n-1}, then eliminate
            # x_2..x_{n-2}, x_n, y_{n-2}.
            big_names = names + ("u1",)
            big = PolyRing(spec, big_names)
            gens = [g.extend(2 * n + 1, big_names) for g in raw.generators]
            u1 = big.var(2 * n)
            xb = [big.var(i) for i in range(n)]
            yb = [big.var(n + i) for i in range(n)]
            gens.append(u1 - (xb[n - 1] - yb[n - 3] * yb[n - 2]))
            raw = Ideal.of(gens, spec=spec, nvars=2 * n + 1, names=big_names)
            drop = list(range(1, n - 2)) + [n - 1, n + n - 3]
            # target vars (u1,u2,u3,u4,z_1..z_{n-2}) =
            #   (u1, y_n, x_{n-1}, y_{n-1}, x_1, y_1..y_{n-3})
            keep_map = [2 * n, 2 * n - 1, n - 2, n + n - 2, 0] + \
                [n + i for i in range(n - 3)]
        elif type_ == "Star":
            # Adjoin w := y_n + x_1...x_{n-2}; eliminate x_{n-1}, x_n, y_n.
            big_names = names + ("w",)
            big = PolyRing(spec, big_names)
            gens = [g.extend(2 * n + 1, big_names) for g in raw.generators]
            w = big.var(2 * n)
            xb = [big.var(i) for i in range(n)]
            yb = [big.var(n + i) for i in range(n)]
            prod = big.const(1)
            for i in range(n - 2):
                prod = prod * xb[i]
            gens.append(w - (yb[n - 1] + prod))
            raw = Ideal.of(gens, spec=spec, nvars=2 * n + 1, names=big_names)
            drop = [n - 2, n - 1, 2 * n - 1]
            keep_map = []
            for k in range(n - 2):
                keep_map += [k, n + k]
            keep_map += [n + n - 2, 2 * n]
        else:
            return EliminationVerdict(type_, rank, spec.characteristic, False,
                                      f"elimination audit not scripted for {type_}")

        elim = eliminate(raw, drop, budget)
        # Rename the kept variables into the target presentation's ring.
        perm = {src: dst for dst, src in enumerate(keep_map)}
        mapped = []
        for g in elim.generators:
            t = {}
            for e, c in g.terms.items():
                e2 = [0] * target.nvars
                for i, val in enumerate(e):
                    if val:
                        if i not in perm:
                            raise AssertionError(
                                "eliminated variable survived elimination")
                        e2[perm[i]] = val
                t[tuple(e2)] = c
            mapped.append(MultiPoly(spec, target.nvars, t, target.names))
        got = Ideal.of(mapped, spec=spec, nvars=target.nvars, names=target.names)
        want = target.ideal()
        gb_got = buchberger(got, DEGREVLEX, budget)
        gb_want = buchberger(want, DEGREVLEX, budget)
        ok = (all(ideal_membership(g, gb_got) for g in want.generators)
              and all(ideal_membership(g, gb_want) for g in got.generators))
        return EliminationVerdict(type_, rank, spec.characteristic, ok,
                                  "ideals match" if ok else "ideal mismatch")
    except BudgetError as exc:
        return EliminationVerdict(type_, rank, spec.characteristic, False,
                                  f"budget exhausted: {exc}")
