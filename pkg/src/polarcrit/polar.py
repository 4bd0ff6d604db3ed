"""Ideals of polar varieties and critical loci.

The critical locus of an objective g on a variety V = Z(f_1..f_p) of
dimension d is cut out by f and the (n-d+1)-minors of the Jacobian of
(f, g); appending rows of constant direction vectors and growing the minor
size by the number of rows yields the higher polar constructions.  The
module also provides the graph extension used to push an objective into a
coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import DegenerateInputError, SolveFailError
from .matrices import PolyMatrix, jacobian, minors, row_of_constants, stack
from .rand import draw_nonzero_ints, rng_for
from .ring import CoefficientField, MultiPoly, Ring

__all__ = [
    "VarietySpec",
    "DirectionSequence",
    "random_directions",
    "critical_ideal",
    "classical_polar_ideal",
    "extend_system",
]

DIRECTION_BOUND = 997


@dataclass
class VarietySpec:
    """Generators of a variety with its asserted dimension.

    Smoothness and equidimensionality are the caller's responsibility (the
    pipeline spot-checks smoothness at computed points and warns).
    """

    generators: list
    dim: int
    smooth_asserted: bool = True

    def __post_init__(self):
        if not self.generators:
            raise ValueError("empty generator list")
        ring = self.generators[0].ring
        for g in self.generators:
            if g.ring != ring:
                raise ValueError("generators live in different rings")
        if not 0 <= self.dim <= ring.nvars:
            raise ValueError("dimension out of range")

    @property
    def ring(self) -> Ring:
        return self.generators[0].ring

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def codim(self) -> int:
        return self.nvars - self.dim


@dataclass
class DirectionSequence:
    """Rows of constant direction vectors, with the seed they came from."""

    rows: list
    seed: int | None = None

    def __len__(self):
        return len(self.rows)

    @classmethod
    def empty(cls, seed: int | None = None) -> "DirectionSequence":
        return cls([], seed)


def random_directions(seed: int, count: int, nvars: int, field: CoefficientField) -> DirectionSequence:
    """Seeded rows with entries in {-997..997}\\{0}, resampled (up to 32
    draws) until they are linearly independent by exact rank."""
    if count > nvars:
        raise ValueError("cannot draw more independent rows than variables")
    if count == 0:
        return DirectionSequence.empty(seed)
    for attempt in range(32):
        rng = rng_for(seed, f"directions-{attempt}")
        rows = [[field.from_int(v) for v in draw_nonzero_ints(rng, nvars, DIRECTION_BOUND)] for _ in range(count)]
        if linalg.rank(field, rows) == count:
            return DirectionSequence(rows, seed)
    raise SolveFailError("no independent direction rows in 32 draws")


def _stacked_matrix(v: VarietySpec, objective: MultiPoly | None, directions: Sequence[Sequence]) -> PolyMatrix:
    ring = v.ring
    blocks = [jacobian(v.generators)]
    if objective is not None:
        blocks.append(jacobian([objective]))
    for row in directions:
        if len(row) != ring.nvars:
            raise DegenerateInputError("direction row length does not match the ring")
        blocks.append(row_of_constants(ring, row))
    return stack(blocks)


def critical_ideal(v: VarietySpec, objective: MultiPoly, a: DirectionSequence, level: int) -> list[MultiPoly]:
    """Generators f plus all (n-d+level+1)-minors of the Jacobian of
    (f, objective) stacked over the first ``level`` direction rows."""
    if objective.ring != v.ring:
        raise ValueError("objective lives in a different ring")
    if not 0 <= level <= v.dim:
        raise ValueError(f"level {level} out of range 0..{v.dim}")
    if len(a) < level:
        raise DegenerateInputError("not enough direction rows for the requested level")
    size = v.codim + level + 1
    mat = _stacked_matrix(v, objective, a.rows[:level])
    if size > min(mat.rows, mat.cols):
        raise DegenerateInputError(
            f"minor size {size} exceeds the {mat.rows}x{mat.cols} matrix; "
            "the rank condition is vacuous at this level"
        )
    return list(v.generators) + minors(mat, size)


def classical_polar_ideal(v: VarietySpec, a: DirectionSequence, level: int) -> list[MultiPoly]:
    """Generators f plus all (n-d+level)-minors of the Jacobian of f stacked
    over the first ``level`` direction rows; its zero set is the critical
    locus on V of projecting onto those directions."""
    if not 1 <= level <= v.dim:
        raise ValueError(f"level {level} out of range 1..{v.dim}")
    if len(a) < level:
        raise DegenerateInputError("not enough direction rows for the requested level")
    size = v.codim + level
    mat = _stacked_matrix(v, None, a.rows[:level])
    if size > min(mat.rows, mat.cols):
        raise DegenerateInputError(f"minor size {size} exceeds the {mat.rows}x{mat.cols} matrix")
    return list(v.generators) + minors(mat, size)


def extend_system(v: VarietySpec, objective: MultiPoly, a: DirectionSequence | None = None):
    """Graph extension: the variety {(x, g(x))} in one more variable, plus
    the direction matrix whose first row selects the new coordinate and
    whose remaining rows are the given directions padded with a zero.

    Projecting the critical locus of the new-coordinate projection on the
    graph back onto the original variables recovers the critical locus of
    the objective on V.
    """
    if objective.ring != v.ring:
        raise ValueError("objective lives in a different ring")
    ring = v.ring
    field = ring.field
    new_ring = ring.extend("w")
    n = ring.nvars
    lift = {name: new_ring.variable(i) for i, name in enumerate(ring.variables)}
    new_gens = [g.substitute(lift) for g in v.generators]
    new_gens.append(objective.substitute(lift) - new_ring.variable(n))
    extended = VarietySpec(new_gens, v.dim, v.smooth_asserted)
    rows = [[field.zero()] * n + [field.one()]]
    if a is not None:
        for row in a.rows:
            rows.append(list(row) + [field.zero()])
    return extended, DirectionSequence(rows, a.seed if a is not None else None)


# ---------------------------------------------------------------------------
# Reduced rank systems (internal).
#
# The full minor sets above are the defining surface.  Two internal
# presentations of the same loci keep larger Groebner runs tractable:
#
# * constant direction rows can be removed exactly: with T invertible and
#   A*T = [0|I], the stacked rank condition becomes a rank condition on
#   J*T restricted to the first n-level columns, and the two minor ideals
#   are literally equal (Laplace expansion both ways);
# * when the generators collapse under ``eliminate_linear`` (the variety is
#   a graph), rank conditions on the ambient stacked Jacobian become rank
#   conditions on the chart differential, an equality of point sets on the
#   (everywhere smooth) graph; chart results are re-certified against the
#   full matrix at the computed points.
# ---------------------------------------------------------------------------


@dataclass
class RankSystem:
    """A generating set for a rank-condition locus, with the data needed to
    certify computed points against the uncompressed matrix."""

    generators: list
    full_matrix: PolyMatrix  # rank must be < rank_bound at solution points
    rank_bound: int
    exact_ideal: bool  # generators provably generate the full minor ideal


def _complement_transform(field: CoefficientField, rows: Sequence[Sequence], n: int):
    """Columns of an invertible T with A*T = [0 | I]; the first n-i columns
    span ker A.  None when the rows are dependent."""
    i = len(rows)
    kernel = linalg.kernel_basis(field, [list(r) for r in rows])
    if len(kernel) != n - i:
        return None
    square = [list(r) for r in rows] + [list(k) for k in kernel]
    rhs_cols = []
    for j in range(i):
        col = [field.one() if t == j else field.zero() for t in range(i)] + [field.zero()] * (n - i)
        rhs_cols.append(col)
    sols = linalg.solve_many(field, square, rhs_cols)
    if sols is None:
        return None
    cols = [list(k) for k in kernel] + [list(s) for s in sols]
    t_matrix = [[cols[j][t] for j in range(n)] for t in range(n)]
    if linalg.inverse(field, t_matrix) is None:
        return None
    return cols


def polar_system_reduced(v: VarietySpec, a: DirectionSequence, level: int) -> RankSystem:
    """Generators of the ideal of ``classical_polar_ideal`` with the constant
    rows transformed away; the ideal is identical, the minors fewer and of
    size codim instead of codim+level."""
    if not 1 <= level <= v.dim:
        raise ValueError(f"level {level} out of range 1..{v.dim}")
    ring = v.ring
    field = ring.field
    n = ring.nvars
    c = v.codim
    full = _stacked_matrix(v, None, a.rows[:level])
    cols = _complement_transform(field, a.rows[:level], n)
    if cols is None:
        raise DegenerateInputError("direction rows are not independent")
    projected = jacobian(v.generators).right_multiply(cols[: n - level])
    gens = list(v.generators) + minors(projected, c)
    return RankSystem(gens, full, c + level, True)


def chart_rank_system(
    v: VarietySpec,
    elim,
    objective: MultiPoly | None,
    a: DirectionSequence | None,
    level: int,
) -> RankSystem:
    """Rank system in chart coordinates for a complete-graph elimination.

    On the graph x = phi(u) the ambient Jacobian of the generators has rank
    exactly codim with kernel the chart tangent, so the stacked rank
    condition is equivalent to a rank condition on the chart rows (gradient
    of the composed objective; directions pulled back through phi).  The
    returned full matrix is the ambient stacked one, for point
    certification, and the rank bound is the ambient one.
    """
    if not elim.is_complete_graph:
        raise ValueError("chart systems need a complete-graph elimination")
    m = elim.reduced_ring.nvars
    rows = []
    if objective is not None:
        composed = elim.substitute(objective)
        rows.append([composed.partial_derivative(j) for j in range(m)])
    a_rows = a.rows[:level] if a is not None else []
    for row in a_rows:
        form = elim.reduced_ring.zero()
        for t in range(v.nvars):
            form = form + elim.coordinate_map[t].scalar_mul(row[t])
        rows.append([form.partial_derivative(j) for j in range(m)])
    if not rows:
        raise ValueError("chart rank system needs an objective or a direction row")
    size = len(rows)
    if size > m:
        raise DegenerateInputError(f"rank condition on {size} chart rows in {m} chart variables is vacuous")
    mat = PolyMatrix.from_rows(rows)
    full = _stacked_matrix(v, objective, a_rows)
    return RankSystem(minors(mat, size), full, v.codim + size, False)
