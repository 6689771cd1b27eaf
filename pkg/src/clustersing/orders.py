"""Monomial orders: lex, degrevlex, and block elimination orders.

An order exposes a key function on exponent tuples; larger key means larger
monomial.  The block order compares the eliminated block first (degrevlex
within each block), which makes the eliminated variables "much larger" than
the kept ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]


def _grevlex(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "lex" | "degrevlex" | "block"
    block: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None  # (eliminated, kept)

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and self.block is None:
            raise ValueError("block order requires a block partition")

    def key(self) -> Callable[[Exponent], object]:
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "degrevlex":
            base = _grevlex
        else:
            elim, kept = self.block
            elim = tuple(elim)
            kept = tuple(kept)

            def base(e: Exponent):
                return (_grevlex(tuple(e[i] for i in elim)),
                        _grevlex(tuple(e[i] for i in kept)))

        memo: dict = {}

        def cached(e: Exponent):
            k = memo.get(e)
            if k is None:
                k = memo[e] = base(e)
            return k

        return cached


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def block_order(eliminated: Sequence[int], nvars: int) -> MonomialOrder:
    """Order eliminating the given variables (they compare largest)."""
    elim = tuple(eliminated)
    kept = tuple(i for i in range(nvars) if i not in set(elim))
    return MonomialOrder("block", (elim, kept))
