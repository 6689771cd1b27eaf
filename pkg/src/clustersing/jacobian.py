"""Jacobian-criterion smoothness kernel shared by the singular-locus and
blowup modules.

For equidimensional V(I) of codimension c in its ambient chart, the singular
ideal is I plus the c x c minors of the Jacobian of the generators; V(I) is
smooth iff that ideal is the unit ideal.  Integer coefficients everywhere make
the Zariski p-basis terms vanish, so this is valid in every characteristic.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .groebner import (BudgetError, DEFAULT_BUDGET, Ideal, ideal_dimension,
                       is_unit_ideal, minimalize_generators, minors)
from .poly import MultiPoly


def jacobian_matrix(gens: Sequence[MultiPoly]) -> List[List[MultiPoly]]:
    return [[g.partial_derivative(j) for j in range(g.nvars)] for g in gens]


def singular_ideal(ideal: Ideal, codim: int) -> Ideal:
    """Ideal + codim-sized minors of the Jacobian of its generators."""
    jac = jacobian_matrix(ideal.generators)
    mins = [m for m in minors(jac, codim) if not m.is_zero()]
    return Ideal(ideal.spec, ideal.nvars, ideal.generators + tuple(mins),
                 ideal.names)


def smooth_check(ideal: Ideal, budget: int = DEFAULT_BUDGET,
                 minimalize: bool = True) -> Tuple[bool, object]:
    """(smooth, dimension).  An empty variety is vacuously smooth."""
    if not ideal.generators:
        return True, ideal.nvars
    dim = ideal_dimension(ideal, budget)
    if dim == "empty":
        return True, "empty"
    codim = ideal.nvars - dim
    work = ideal
    if minimalize and len(ideal.generators) > codim:
        work = minimalize_generators(ideal, budget)
    if len(work.generators) < codim:
        raise ValueError("generator count below codimension; input not an ideal "
                         "of the stated variety")
    sing = singular_ideal(work, codim)
    return is_unit_ideal(sing, budget), dim
