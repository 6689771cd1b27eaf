"""Sparse exact multivariate polynomials over Q or F_p.

A polynomial is a dict mapping exponent tuples (one nonnegative int per
variable) to nonzero raw coefficients.  The zero polynomial has an empty term
dict.  All operations are pure; polynomials are treated as immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .fields import Coeff, FieldElem, FieldSpec

Exponent = Tuple[int, ...]

# Exponents are machine words at desk scale; guard against runaway degrees.
EXPONENT_LIMIT = 2**31


class ExponentOverflow(ArithmeticError):
    pass


def _default_names(nvars: int) -> Tuple[str, ...]:
    return tuple(f"x{i+1}" for i in range(nvars))


class MultiPoly:
    __slots__ = ("spec", "nvars", "terms", "names")

    def __init__(self, spec: FieldSpec, nvars: int, terms: Mapping[Exponent, Coeff],
                 names: Optional[Sequence[str]] = None, _normalized: bool = False):
        self.spec = spec
        self.nvars = nvars
        self.names = tuple(names) if names is not None else _default_names(nvars)
        if len(self.names) != nvars:
            raise ValueError("names length must equal nvars")
        if _normalized:
            self.terms = dict(terms)
        else:
            t: Dict[Exponent, Coeff] = {}
            for e, c in terms.items():
                c = spec.normalize(c)
                if c != 0:
                    if len(e) != nvars:
                        raise ValueError("exponent length mismatch")
                    t[tuple(e)] = c
            self.terms = t

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(spec: FieldSpec, nvars: int, names=None) -> "MultiPoly":
        return MultiPoly(spec, nvars, {}, names, _normalized=True)

    @staticmethod
    def const(spec: FieldSpec, nvars: int, c, names=None) -> "MultiPoly":
        c = spec.normalize(c)
        if c == 0:
            return MultiPoly.zero(spec, nvars, names)
        return MultiPoly(spec, nvars, {(0,) * nvars: c}, names, _normalized=True)

    @staticmethod
    def var(spec: FieldSpec, nvars: int, i: int, names=None) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return MultiPoly(spec, nvars, {tuple(e): 1}, names, _normalized=True)

    def _make(self, terms: Dict[Exponent, Coeff]) -> "MultiPoly":
        return MultiPoly(self.spec, self.nvars, terms, self.names, _normalized=True)

    def _check(self, other: "MultiPoly"):
        if self.spec != other.spec or self.nvars != other.nvars:
            raise ValueError("polynomial spec/nvars mismatch")

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        sp = self.spec
        t = dict(self.terms)
        for e, c in other.terms.items():
            if e in t:
                s = sp.add(t[e], c)
                if s == 0:
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = c
        return self._make(t)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        sp = self.spec
        t = dict(self.terms)
        for e, c in other.terms.items():
            if e in t:
                s = sp.sub(t[e], c)
                if s == 0:
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = sp.neg(c)
        return self._make(t)

    def __neg__(self) -> "MultiPoly":
        sp = self.spec
        return self._make({e: sp.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        sp = self.spec
        p = sp.characteristic
        t: Dict[Exponent, Coeff] = {}
        lim = EXPONENT_LIMIT
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in t:
                    c = t[e] + c
                if p:
                    c %= p
                if c == 0:
                    t.pop(e, None)
                else:
                    t[e] = c
        if p == 0:
            for e, c in t.items():
                if isinstance(c, Fraction) and c.denominator == 1:
                    t[e] = c.numerator
        for e in t:
            if any(x >= lim for x in e):
                raise ExponentOverflow("exponent exceeds 2^31")
        return self._make(t)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        sp = self.spec
        c = sp.normalize(c)
        if c == 0:
            return MultiPoly.zero(sp, self.nvars, self.names)
        return self._make({e: sp.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.spec, self.nvars, 1, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.spec == other.spec
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.spec, self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables(self) -> Tuple[int, ...]:
        """Indices of variables actually occurring."""
        seen = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    seen.add(i)
        return tuple(sorted(seen))

    # -- calculus and substitution ----------------------------------------

    def partial_derivative(self, i: int) -> "MultiPoly":
        """Formal partial derivative; in char p, p-th powers annihilate."""
        if not 0 <= i < self.nvars:
            raise IndexError("variable index out of range")
        sp = self.spec
        t: Dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            c2 = sp.mul(c, sp.normalize(k))
            if c2 == 0:
                continue
            e2 = list(e)
            e2[i] = k - 1
            e2 = tuple(e2)
            prev = t.get(e2)
            if prev is None:
                t[e2] = c2
            else:
                s = sp.add(prev, c2)
                if s == 0:
                    del t[e2]
                else:
                    t[e2] = s
        return self._make(t)

    def substitute(self, assignments: Mapping[int, "MultiPoly"]) -> "MultiPoly":
        """Simultaneous substitution of polynomials for variables."""
        for g in assignments.values():
            self._check(g)
        sp = self.spec
        result = MultiPoly.zero(sp, self.nvars, self.names)
        # Cache powers of each substituted polynomial.
        powers: Dict[int, Dict[int, MultiPoly]] = {i: {} for i in assignments}

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = assignments[i] ** k
            return cache[k]

        for e, c in self.terms.items():
            base = [0] * self.nvars
            factors = []
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if i in assignments:
                    factors.append(power(i, k))
                else:
                    base[i] = k
            term = MultiPoly(sp, self.nvars, {tuple(base): c}, self.names,
                             _normalized=True)
            for f in factors:
                term = term * f
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> Coeff:
        """Evaluate at a point given as a sequence of raw coefficients."""
        sp = self.spec
        total = sp.normalize(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = sp.mul(v, sp.normalize(point[i]) ** k)
            total = sp.add(total, sp.normalize(v))
        return total

    def truncate_degree(self, d: int) -> "MultiPoly":
        """Sum of the terms of total degree <= d."""
        return self._make({e: c for e, c in self.terms.items() if sum(e) <= d})

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return self._make({e: c for e, c in self.terms.items() if sum(e) == d})

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def change_spec(self, spec: FieldSpec) -> "MultiPoly":
        """Reinterpret coefficients in another field (Z-coefficients reduce mod p)."""
        return MultiPoly(spec, self.nvars, self.terms, self.names)

    def rename(self, names: Sequence[str]) -> "MultiPoly":
        return MultiPoly(self.spec, self.nvars, self.terms, names, _normalized=True)

    def extend(self, new_nvars: int, names=None, shift: int = 0) -> "MultiPoly":
        """Embed into a larger ring; old variable i becomes variable i+shift."""
        if new_nvars < self.nvars + shift:
            raise ValueError("target ring too small")
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * new_nvars
            for i, x in enumerate(e):
                e2[i + shift] = x
            t[tuple(e2)] = c
        return MultiPoly(self.spec, new_nvars, t, names, _normalized=True)

    def permute_vars(self, perm: Sequence[int], names=None) -> "MultiPoly":
        """Variable i of self becomes variable perm[i] of the result."""
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * self.nvars
            for i, x in enumerate(e):
                e2[perm[i]] = x
            t[tuple(e2)] = c
        return MultiPoly(self.spec, self.nvars, t, names or self.names,
                         _normalized=True)

    # -- leading data and exact division ----------------------------------

    def leading(self, key) -> Tuple[Exponent, Coeff]:
        """Leading (exponent, coeff) under an order key function."""
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, key) -> "MultiPoly":
        if not self.terms:
            return self
        _, c = self.leading(key)
        if c == 1:
            return self
        return self.scale(self.spec.inv(c))

    def exact_divide(self, g: "MultiPoly") -> Optional["MultiPoly"]:
        """Return self/g if g divides exactly, else None."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        sp = self.spec
        key = lambda e: e  # any fixed admissible comparison works here
        ge, gc = g.leading(key)
        rem = dict(self.terms)
        quot: Dict[Exponent, Coeff] = {}
        while rem:
            e = max(rem, key=key)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, ge))
            if any(x < 0 for x in qe):
                return None
            qc = sp.div(c, gc)
            quot[qe] = qc
            # rem -= (qc * x^qe) * g
            for e2, c2 in g.terms.items():
                e3 = tuple(a + b for a, b in zip(qe, e2))
                v = sp.sub(rem.get(e3, 0), sp.mul(qc, c2))
                if v == 0:
                    rem.pop(e3, None)
                else:
                    rem[e3] = v
        return self._make(quot)

    def content_monomial(self) -> Exponent:
        """Componentwise min of exponents: the largest monomial dividing self."""
        if not self.terms:
            return (0,) * self.nvars
        its = iter(self.terms)
        m = list(next(its))
        for e in its:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def divide_monomial(self, m: Exponent) -> "MultiPoly":
        t = {}
        for e, c in self.terms.items():
            e2 = tuple(a - b for a, b in zip(e, m))
            if any(x < 0 for x in e2):
                raise ValueError("monomial does not divide")
            t[e2] = c
        return self._make(t)

    # -- rendering and serialization ---------------------------------------

    def _term_str(self, e: Exponent, c: Coeff) -> str:
        parts = []
        for i, k in enumerate(e):
            if k == 1:
                parts.append(self.names[i])
            elif k > 1:
                parts.append(f"{self.names[i]}^{k}")
        if not parts:
            return self.spec.coeff_str(c)
        body = "*".join(parts)
        if c == 1:
            return body
        if c == -1 and not self.spec.characteristic:
            return "-" + body
        return f"{self.spec.coeff_str(c)}*{body}"

    def text(self, key=None) -> str:
        """Canonical rendering, terms sorted descending by the given order key."""
        if not self.terms:
            return "0"
        if key is None:
            key = _grevlex_key
        pieces = []
        for e in sorted(self.terms, key=key, reverse=True):
            s = self._term_str(e, self.terms[e])
            if pieces:
                if s.startswith("-"):
                    pieces.append(" - " + s[1:])
                else:
                    pieces.append(" + " + s)
            else:
                pieces.append(s)
        return "".join(pieces)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"MultiPoly({self.text()!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.names),
            "terms": [
                {"exp": list(e), "coeff": self.spec.coeff_str(c)}
                for e, c in sorted(self.terms.items(), key=lambda it: _grevlex_key(it[0]), reverse=True)
            ],
        }

    @staticmethod
    def from_json(spec: FieldSpec, data: dict) -> "MultiPoly":
        names = tuple(data["vars"])
        terms = {tuple(t["exp"]): spec.coeff_from_str(str(t["coeff"]))
                 for t in data["terms"]}
        return MultiPoly(spec, len(names), terms, names)

    def coeff_elem(self, e: Exponent) -> FieldElem:
        return FieldElem(self.spec, self.terms.get(tuple(e), 0))


def _grevlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """Lightweight helper bundling a field, variable names, and constructors."""

    def __init__(self, spec: FieldSpec, names: Sequence[str]):
        self.spec = spec
        self.names = tuple(names)
        self.nvars = len(self.names)

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.spec, self.nvars, self.names)

    def const(self, c) -> MultiPoly:
        return MultiPoly.const(self.spec, self.nvars, c, self.names)

    def var(self, i_or_name) -> MultiPoly:
        i = i_or_name if isinstance(i_or_name, int) else self.names.index(i_or_name)
        return MultiPoly.var(self.spec, self.nvars, i, self.names)

    def gens(self) -> Tuple[MultiPoly, ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def parse(self, text: str) -> MultiPoly:
        return parse_poly(text, self)

    def extend(self, extra: Sequence[str]) -> "PolyRing":
        return PolyRing(self.spec, self.names + tuple(extra))


# -- polynomial text parsing (for JSON payloads and the CLI) ----------------

class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.toks = self._tokenize(text)
        self.pos = 0
        self.ring = ring

    @staticmethod
    def _tokenize(text: str):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*/^()":
                toks.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("int", int(text[i:j])))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                    j += 1
                toks.append(("name", text[i:j]))
                i = j
            else:
                raise ValueError(f"unexpected character {ch!r} in polynomial")
        return toks

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def parse_expr(self) -> MultiPoly:
        t = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.next()
            u = self.parse_term()
            t = t + u if op == "+" else t - u
        return t

    def parse_term(self) -> MultiPoly:
        t = self.parse_factor()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.next()
                t = t * self.parse_factor()
            elif nxt == "/":
                self.next()
                d = self.parse_factor()
                if not d.is_constant():
                    raise ValueError("only constant denominators allowed")
                t = t.scale(self.ring.spec.inv(d.constant_term()))
            elif isinstance(nxt, tuple) or nxt == "(":
                # implicit multiplication: "2x", "x y", "x(y+1)"
                t = t * self.parse_factor()
            else:
                return t

    def parse_factor(self) -> MultiPoly:
        tok = self.next()
        if tok == "(":
            e = self.parse_expr()
            if self.next() != ")":
                raise ValueError("unbalanced parenthesis")
            base = e
        elif tok == "-":
            return -self.parse_factor()
        elif tok == "+":
            return self.parse_factor()
        elif isinstance(tok, tuple) and tok[0] == "int":
            base = self.ring.const(tok[1])
        elif isinstance(tok, tuple) and tok[0] == "name":
            if tok[1] not in self.ring.names:
                raise ValueError(f"unknown variable {tok[1]!r}")
            base = self.ring.var(tok[1])
        else:
            raise ValueError(f"unexpected token {tok!r}")
        if self.peek() == "^":
            self.next()
            p = self.next()
            if not (isinstance(p, tuple) and p[0] == "int"):
                raise ValueError("exponent must be an integer")
            base = base ** p[1]
        return base


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    p = _Parser(text, ring)
    result = p.parse_expr()
    if p.peek() is not None:
        raise ValueError(f"trailing tokens in polynomial: {text!r}")
    return result
