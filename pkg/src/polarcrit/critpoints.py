"""End-to-end critical point computation.

Two routes compute a rational parametrization of the critical locus of an
objective g on a smooth equidimensional variety V:

* the direct route solves the rank-condition ideal (generators plus minors
  of the stacked Jacobian) in the original variables;
* the fiber route extends a lifting fiber of V by the graph coordinate
  w = g(x), resolves the critical locus of the new-coordinate projection on
  the graph, and projects back down.

Both end in the same normalized parametrization, which is how the routes
cross-check each other.  When the generators collapse under linear
elimination onto a free chart, large direct instances run in chart
coordinates instead of expanding thousands of minors; such runs are
accepted only after the lifted points certify the ambient rank condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from math import comb

from .bounds import PolarDegrees, critical_point_bound, delta_of_variety
from .elimination import Elimination, eliminate_linear
from .errors import (
    NotFiniteError,
    NotRadicalError,
    NotSeparatingError,
    SolveFailError,
)
from .geores import (
    LiftingFiber,
    RationalParametrization,
    _candidate_forms,
    change_primitive_element,
    extend_fiber,
    find_primitive_element,
    matrix_rank_at_points,
    parametrize_from_coords,
    poly_on_points,
    solve_zero_dim,
)
from .groebner import buchberger, quotient_dimension
from .matrices import jacobian, minors
from .polar import (
    DirectionSequence,
    VarietySpec,
    chart_rank_system,
    classical_polar_ideal,
    critical_ideal,
    random_directions,
)
from .rand import derive_seed, rng_for
from .ring import MultiPoly, Ring
from .unipoly import UniPoly

__all__ = [
    "CritResult",
    "HypothesisReport",
    "polar_resolution",
    "critical_points_from_fiber",
    "critical_points_direct",
    "check_hypotheses",
    "verify_bound",
    "BoundReport",
]

# above this many stacked minors the direct route prefers chart coordinates
LITERAL_MINOR_LIMIT = 150


@dataclass
class HypothesisReport:
    finite: bool
    radical: bool | None = None
    smooth_sampled: bool | None = None
    notes: list = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.finite) and bool(self.radical) and self.smooth_sampled is not False


@dataclass
class CritResult:
    """Outcome of a critical-point run: the parametrization (when the ideal
    is radical), the point count, an optional degree bound, and the
    hypothesis report."""

    ring: Ring
    count: int
    parametrization: RationalParametrization | None
    route: str
    bound: int | None = None
    hypotheses: HypothesisReport | None = None
    notes: list = dataclass_field(default_factory=list)


def _jacobian_rank_at_par(generators, par: RationalParametrization) -> tuple[int, int]:
    return matrix_rank_at_points(jacobian(generators), par.plain_coordinates(), par.q)


def _full_minor_count(v: VarietySpec) -> int:
    size = v.codim + 1
    return comb(len(v.generators) + 1, size) * comb(v.nvars, size)


def _empty_result(ring: Ring, route: str, notes=None) -> CritResult:
    hyp = HypothesisReport(finite=True, radical=True, smooth_sampled=True)
    return CritResult(ring, 0, None, route, hypotheses=hyp, notes=notes or [])


def _direct_via_chart(
    v: VarietySpec, elim: Elimination, objective: MultiPoly, seed: int
) -> CritResult | None:
    """Direct route in chart coordinates; None asks for the literal route."""
    system = chart_rank_system(v, elim, objective, None, 0)
    gb = buchberger(system.generators)
    qd = quotient_dimension(gb)
    if qd is None:
        raise NotFiniteError("critical locus is not finite")
    notes = ["solved in chart coordinates after linear elimination"]
    if qd == 0:
        return _empty_result(v.ring, "direct", notes)
    try:
        lam = find_primitive_element(gb, seed=derive_seed(seed, "chart-primitive"))
        par_u = solve_zero_dim(gb, lam)
    except NotRadicalError:
        return None
    chart_coords = par_u.plain_coordinates()
    ambient = [poly_on_points(cm, chart_coords, par_u.q) for cm in elim.coordinate_map]
    _, hi = matrix_rank_at_points(system.full_matrix, ambient, par_u.q)
    if hi >= system.rank_bound:
        return None
    par = parametrize_from_coords(
        v.ring, ambient, par_u.q, _candidate_forms(v.ring, derive_seed(seed, "chart-lift"))
    )
    hyp = HypothesisReport(finite=True, radical=True)
    lo, hi = _jacobian_rank_at_par(v.generators, par)
    hyp.smooth_sampled = lo == v.codim and hi == v.codim
    if not hyp.smooth_sampled:
        notes.append(f"Jacobian rank at computed points ranges {lo}..{hi}, expected {v.codim}")
    return CritResult(v.ring, par.count, par, "direct", hypotheses=hyp, notes=notes)


def critical_points_direct(
    v: VarietySpec,
    objective: MultiPoly,
    seed: int = 0,
    use_chart: bool | None = None,
    with_bound: PolarDegrees | None = None,
) -> CritResult:
    """Solve the critical locus of the objective on V from the rank-condition
    ideal in the original variables.

    Raises NotFiniteError when the locus is positive-dimensional.  A
    non-radical critical ideal downgrades the result to a count-only answer
    with a warning note.  ``use_chart`` forces or forbids the chart
    presentation; the default uses it only when the generators eliminate to
    a complete graph and the literal minor system would be large.
    """
    if objective.ring != v.ring:
        raise ValueError("objective lives in a different ring")
    notes: list[str] = []
    result = None
    if use_chart is not False:
        elim = eliminate_linear(v.generators)
        chart_ready = elim.is_complete_graph and elim.eliminated_count > 0
        wanted = use_chart if use_chart is not None else _full_minor_count(v) > LITERAL_MINOR_LIMIT
        if chart_ready and wanted:
            result = _direct_via_chart(v, elim, objective, seed)
            if result is None:
                notes.append("chart run could not be certified; recomputed with the full minor set")
    if result is not None:
        if with_bound is not None:
            result.bound = critical_point_bound(with_bound, max(objective.total_degree(), 1), 0)
        return result

    gb = buchberger(critical_ideal(v, objective, DirectionSequence.empty(), 0))
    qd = quotient_dimension(gb)
    if qd is None:
        raise NotFiniteError("critical locus is not finite")
    hyp = HypothesisReport(finite=True)
    if qd == 0:
        return _empty_result(v.ring, "direct", notes)
    par = None
    try:
        lam = find_primitive_element(gb, seed=derive_seed(seed, "primitive"))
        par = solve_zero_dim(gb, lam)
        hyp.radical = True
    except NotRadicalError:
        hyp.radical = False
        notes.append("critical ideal is not radical; returning the count with multiplicity")
    if par is not None:
        lo, hi = _jacobian_rank_at_par(v.generators, par)
        hyp.smooth_sampled = lo == v.codim and hi == v.codim
        if not hyp.smooth_sampled:
            notes.append(f"Jacobian rank at computed points ranges {lo}..{hi}, expected {v.codim}")
    bound = None
    if with_bound is not None:
        bound = critical_point_bound(with_bound, max(objective.total_degree(), 1), 0)
    count = par.count if par is not None else qd
    return CritResult(v.ring, count, par, "direct", bound=bound, hypotheses=hyp, notes=notes)


def polar_resolution(dim: int, fiber: LiftingFiber, directions: DirectionSequence, seed: int = 0) -> RationalParametrization:
    """Geometric resolution of the zero-dimensional critical locus, on the
    variety of the fiber's lifting system, of projecting onto the first
    direction row.

    The remaining rows are accepted (they parametrize the intermediate polar
    loci of the incremental solver this replaces) but only the first row
    defines the target.  Raises SolveFailError when the target is not finite
    or not radical.
    """
    if not directions.rows:
        raise ValueError("need at least one direction row")
    vs = VarietySpec(fiber.lifting_system, dim)
    gens = classical_polar_ideal(vs, DirectionSequence([directions.rows[0]]), 1)
    gb = buchberger(gens)
    qd = quotient_dimension(gb)
    if qd is None:
        raise SolveFailError("polar target is not zero-dimensional")
    if qd == 0:
        ring = vs.ring
        return RationalParametrization(
            ring, [ring.field.zero()] * ring.nvars, UniPoly.one(ring.field), [UniPoly.zero(ring.field)] * ring.nvars
        )
    try:
        lam = find_primitive_element(gb, seed=seed)
        return solve_zero_dim(gb, lam)
    except (NotRadicalError, NotSeparatingError) as exc:
        raise SolveFailError(f"polar target not solvable: {exc}") from exc


def _separating_in_first_n(par: RationalParametrization, n: int, seed: int):
    """A separating form for the encoded points supported on the first n
    coordinates (so it survives the projection that drops the rest)."""
    from .geores import minimal_polynomial_of_values

    field = par.ring.field
    candidates = []
    for i in range(n):
        candidates.append([field.one() if j == i else field.zero() for j in range(n)])
    rng = rng_for(seed, "projected-primitive")
    for _ in range(64 - n):
        raw = [rng.randint(-50, 50) for _ in range(n)]
        if all(x == 0 for x in raw):
            raw[rng.randrange(n)] = 1
        candidates.append([field.from_int(x) for x in raw])
    coords = par.plain_coordinates()[:n]
    for cand in candidates:
        ell = UniPoly.zero(field)
        for c, ri in zip(cand, coords):
            ell = ell + ri.scalar_mul(c)
        if minimal_polynomial_of_values(ell % par.q, par.q).is_squarefree():
            return cand
    raise NotSeparatingError("no separating form found among the first-coordinate candidates")


def critical_points_from_fiber(
    fiber: LiftingFiber,
    objective: MultiPoly,
    directions: DirectionSequence | None = None,
    u_crit: list | None = None,
    seed: int = 0,
    with_bound: PolarDegrees | None = None,
) -> CritResult:
    """Critical points of the objective on the fibered variety, through the
    graph extension.

    Steps: extend the fiber by w = g(x); form the direction matrix whose
    first row selects w; resolve that zero-dimensional polar locus; move to
    the requested primitive element; drop the graph coordinate.  One
    automatic reseed of the internal random choices happens before a failure
    is surfaced.
    """
    ring = fiber.ring
    field = ring.field
    n, d = ring.nvars, fiber.dim
    degree = objective.total_degree()
    if degree < 2:
        raise ValueError("fiber route requires an objective of degree at least 2; use polar_resolution directly")
    if directions is None:
        directions = random_directions(derive_seed(seed, "fiber-route-directions"), d, n, field)
    if len(directions.rows) != d:
        raise ValueError(f"need {d} direction rows")
    extended = extend_fiber(fiber, objective)
    aprime_rows = [[field.zero()] * n + [field.one()]]
    for row in directions.rows:
        aprime_rows.append(list(row) + [field.zero()])
    aprime = DirectionSequence(aprime_rows, directions.seed)
    par = None
    failure: Exception | None = None
    for attempt in range(2):
        try:
            par = polar_resolution(d, extended, aprime, seed=derive_seed(seed, f"polar-resolution-{attempt}"))
            break
        except SolveFailError as exc:
            failure = exc
    if par is None:
        raise SolveFailError(f"fiber route failed after reseed: {failure}")
    if par.count == 0:
        return _empty_result(ring, "fiber")
    if u_crit is None:
        u_crit = _separating_in_first_n(par, n, derive_seed(seed, "u-crit"))
    lifted_u = list(u_crit) + [field.zero()]
    par2 = change_primitive_element(par, lifted_u)
    projected = RationalParametrization(ring, list(u_crit), par2.q, par2.v[:n])
    projected.assert_normalized()
    hyp = HypothesisReport(finite=True, radical=True)
    lo, hi = _jacobian_rank_at_par(fiber.lifting_system, par2)
    hyp.smooth_sampled = lo == n - d and hi == n - d
    bound = None
    if with_bound is not None:
        bound = critical_point_bound(with_bound, degree, 0)
    return CritResult(ring, projected.count, projected, "fiber", bound=bound, hypotheses=hyp)


def check_hypotheses(v: VarietySpec, objective: MultiPoly, seed: int = 0) -> HypothesisReport:
    """Finiteness of the critical locus, radicality of its ideal, and a
    smoothness spot-check of V at the computed critical points."""
    try:
        result = critical_points_direct(v, objective, seed=seed)
    except NotFiniteError:
        return HypothesisReport(finite=False, notes=["critical locus is not finite"])
    report = result.hypotheses or HypothesisReport(finite=True)
    if result.count == 0:
        report.notes.append("critical locus is empty")
        return report
    if report.radical is False and report.smooth_sampled is None:
        # no points to sample; a critical point is singular exactly when all
        # codim-minors of the Jacobian vanish there, so test emptiness of the
        # augmented system (affordable at literal sizes only)
        if _full_minor_count(v) <= LITERAL_MINOR_LIMIT:
            gens = critical_ideal(v, objective, DirectionSequence.empty(), 0)
            aug = gens + minors(jacobian(v.generators), v.codim)
            report.smooth_sampled = quotient_dimension(buchberger(aug)) == 0
            if not report.smooth_sampled:
                report.notes.append("some critical point is a singular point of the variety")
        else:
            report.notes.append("smoothness sampling skipped (no parametrization available)")
    return report


@dataclass
class BoundReport:
    delta: PolarDegrees
    objective_degree: int
    bound: int
    count: int
    sound: bool
    tight: bool


def verify_bound(v: VarietySpec, objective: MultiPoly, seed: int = 0) -> BoundReport:
    """Compute the polar degrees, the degree bound, and the actual count on
    one instance, and report soundness (count <= bound) and tightness."""
    delta = delta_of_variety(v, seed=seed)
    degree = max(objective.total_degree(), 1)
    bound = critical_point_bound(delta, degree, 0)
    prime = v.ring.field.modulus
    if prime is None:
        from .ring import DEFAULT_PRIME, reduce_poly_mod

        vv = VarietySpec([reduce_poly_mod(g, DEFAULT_PRIME) for g in v.generators], v.dim, v.smooth_asserted)
        obj = reduce_poly_mod(objective, DEFAULT_PRIME)
    else:
        vv, obj = v, objective
    result = critical_points_direct(vv, obj, seed=seed)
    return BoundReport(delta, degree, bound, result.count, result.count <= bound, result.count == bound)
