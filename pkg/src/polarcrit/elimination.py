"""Exact variable elimination for graph-like generators.

A generator of the form c*x_j + h with c a nonzero constant and h free of
x_j pins x_j = -h/c; substituting it away maps the quotient ring
isomorphically onto a quotient in one fewer variable, so dimensions, degrees
and quotient counts are preserved exactly.  Repeating this often collapses
structured varieties (graphs, rank-one loci with a pivot entry) onto a free
chart, where rank conditions on the ambient Jacobian turn into small minor
systems of the chart differential.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ring import MultiPoly, Ring

__all__ = ["Elimination", "eliminate_linear"]


@dataclass
class Elimination:
    """Result of the substitution pass.

    ``coordinate_map`` expresses every original variable over the reduced
    ring; ``residual`` holds the substituted generators that did not vanish.
    When ``residual`` is empty the original zero set is exactly the graph of
    the coordinate map over an affine chart.
    """

    original_ring: Ring
    reduced_ring: Ring
    coordinate_map: list  # MultiPoly over reduced_ring, one per original variable
    residual: list

    @property
    def is_complete_graph(self) -> bool:
        return not self.residual

    @property
    def eliminated_count(self) -> int:
        return self.original_ring.nvars - self.reduced_ring.nvars

    def substitute(self, poly: MultiPoly) -> MultiPoly:
        if poly.ring != self.original_ring:
            raise ValueError("polynomial lives in a different ring")
        assignments = dict(zip(self.original_ring.variables, self.coordinate_map))
        return poly.substitute(assignments)


def _find_pivot(gens: Sequence[MultiPoly]):
    """(gen index, var index, coefficient) for a variable that appears in one
    generator only as a bare linear term; deterministic choice."""
    ring = gens[0].ring
    n = ring.nvars
    best = None
    for gi, g in enumerate(gens):
        counts = [0] * n
        linear_mon = [None] * n
        for mon in g.terms:
            for j, e in enumerate(mon):
                if e:
                    counts[j] += 1
                    if e == 1 and sum(mon) == 1:
                        linear_mon[j] = mon
        for j in range(n):
            if counts[j] == 1 and linear_mon[j] is not None:
                key = (len(g.terms), gi, j)
                if best is None or key < best[0]:
                    best = (key, gi, j, g.terms[linear_mon[j]])
    if best is None:
        return None
    _, gi, j, coeff = best
    return gi, j, coeff


def eliminate_linear(generators: Sequence[MultiPoly]) -> Elimination:
    """Substitute away every variable pinned by a bare linear term."""
    if not generators:
        raise ValueError("empty generator list")
    ring = generators[0].ring
    field = ring.field
    current = [g for g in generators if not g.is_zero()]
    current_ring = ring
    steps: list[tuple[str, MultiPoly]] = []  # (eliminated name, expression over next ring)
    while current:
        pivot = _find_pivot(current)
        if pivot is None:
            break
        gi, j, coeff = pivot
        g = current[gi]
        names = current_ring.variables
        next_ring = Ring(names[:j] + names[j + 1 :], field)
        inv = field.inv(coeff)
        # x_j = -(g - coeff*x_j)/coeff, expressed over the smaller ring
        expr_terms = {}
        for mon, c in g.terms.items():
            if mon[j] == 1 and sum(mon) == 1:
                continue
            expr_terms[mon[:j] + mon[j + 1 :]] = field.neg(field.mul(c, inv))
        expr = MultiPoly(next_ring, expr_terms)
        assignments = {}
        for t, name in enumerate(names):
            if t == j:
                assignments[name] = expr
            else:
                pos = t if t < j else t - 1
                assignments[name] = next_ring.variable(pos)
        new_current = []
        for k, h in enumerate(current):
            if k == gi:
                continue
            image = h.substitute(assignments)
            if not image.is_zero():
                new_current.append(image)
        steps.append((names[j], expr))
        current = new_current
        current_ring = next_ring
    # compose the recorded expressions down to the final ring
    final_ring = current_ring
    mapping: dict[str, MultiPoly] = {name: final_ring.variable(i) for i, name in enumerate(final_ring.variables)}
    for name, expr in reversed(steps):
        assignments = {v: mapping[v] for v in expr.ring.variables}
        mapping[name] = expr.substitute(assignments) if expr.ring.variables else final_ring.constant(expr.constant_value())
        # constants: a zero-variable expression cannot be substituted
    coordinate_map = [mapping[name] for name in ring.variables]
    return Elimination(ring, final_ring, coordinate_map, current)
