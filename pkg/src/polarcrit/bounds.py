"""Bidegree calculus and degree bounds for critical loci.

A subvariety of P^n x P^n carries a bivariate class polynomial in T and U,
truncated modulo <T^{n+1}, U^{n+1}>; generically transverse intersections
multiply these classes.  Combining the class of the conormal variety of V
(whose coefficients are the polar degrees delta_1..delta_{d+1}) with the
class of the span-condition locus of an objective of degree D, and reading
off one coefficient, yields the closed-form bound

    delta_{i+1}            when D = 1,
    sum_{j=i..d} delta_{j+1} (D-1)^(j-i)   otherwise,

on the degree of the level-i critical locus.  The module also computes the
polar degrees of a concrete variety by cutting polar loci down to dimension
zero and counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .elimination import eliminate_linear
from .errors import (
    DegenerateInputError,
    InstabilityError,
    NotRadicalError,
    NotSeparatingError,
    SolveFailError,
)
from .geores import (
    find_primitive_element,
    matrix_rank_at_points,
    poly_on_points,
    solve_zero_dim,
)
from .groebner import buchberger, quotient_dimension
from .polar import (
    VarietySpec,
    chart_rank_system,
    classical_polar_ideal,
    polar_system_reduced,
    random_directions,
)
from .rand import derive_seed, draw_nonzero_ints, rng_for
from .ring import DEFAULT_PRIME, MultiPoly, Ring, reduce_poly_mod

__all__ = [
    "Bidegree",
    "PolarDegrees",
    "conormal_bidegree",
    "span_locus_bidegree",
    "bidegree_product",
    "projection_degree",
    "critical_point_bound",
    "regular_sequence_bound",
    "delta_of_variety",
]


class Bidegree:
    """A class polynomial sum c_{a,b} T^a U^b with 0 <= a,b <= n; products
    silently drop terms beyond the truncation."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict[tuple[int, int], int] | None = None):
        if n < 0:
            raise ValueError("ambient dimension must be nonnegative")
        self.n = n
        self.coeffs: dict[tuple[int, int], int] = {}
        for (a, b), c in (coeffs or {}).items():
            if c == 0:
                continue
            if c < 0:
                raise ValueError("bidegree coefficients must be nonnegative")
            if a > n or b > n:
                raise ValueError(f"exponent ({a},{b}) outside the {n}-truncation")
            self.coeffs[(a, b)] = c

    def coefficient(self, a: int, b: int) -> int:
        return self.coeffs.get((a, b), 0)

    def is_homogeneous(self) -> int | None:
        """The common total degree of the terms, or None if mixed/empty."""
        degrees = {a + b for a, b in self.coeffs}
        return degrees.pop() if len(degrees) == 1 else None

    def __mul__(self, other: "Bidegree") -> "Bidegree":
        if self.n != other.n:
            raise ValueError("truncation levels differ")
        out: dict[tuple[int, int], int] = {}
        n = self.n
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                a, b = a1 + a2, b1 + b2
                if a > n or b > n:
                    continue
                out[(a, b)] = out.get((a, b), 0) + c1 * c2
        return Bidegree(n, out)

    def __eq__(self, other):
        if not isinstance(other, Bidegree):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "Bidegree(0)"
        parts = []
        for (a, b) in sorted(self.coeffs, reverse=True):
            c = self.coeffs[(a, b)]
            body = []
            if c != 1 or (a == 0 and b == 0):
                body.append(str(c))
            if a:
                body.append(f"T^{a}" if a > 1 else "T")
            if b:
                body.append(f"U^{b}" if b > 1 else "U")
            parts.append("*".join(body))
        return "Bidegree(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class PolarDegrees:
    """delta_1..delta_{d+1}; the last entry is the degree of the variety."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("empty polar-degree vector")
        if any(v < 0 for v in self.values):
            raise ValueError("polar degrees are nonnegative")
        if self.values[-1] < 1:
            raise ValueError("the variety degree delta_{d+1} must be positive")

    @property
    def dim(self) -> int:
        return len(self.values) - 1

    def delta(self, i: int) -> int:
        """delta_i with the 1-based indexing delta_1..delta_{d+1}."""
        return self.values[i - 1]

    def __iter__(self):
        return iter(self.values)


def conormal_bidegree(delta: PolarDegrees, n: int) -> Bidegree:
    """Class of the conormal variety: sum_k delta_{k+1} T^(n-k) U^(k+1)."""
    d = delta.dim
    if d >= n:
        raise ValueError("variety dimension must be below the ambient dimension")
    return Bidegree(n, {(n - k, k + 1): delta.delta(k + 1) for k in range(d + 1) if delta.delta(k + 1)})


def span_locus_bidegree(n: int, i: int, objective_degree: int) -> Bidegree:
    """Class of the locus where the second factor's point lies in the span of
    i constant directions and a degree-D gradient:
    sum_{k=0..n-i} (D-1)^k T^k U^(n-k-i)."""
    if not 0 <= i <= n:
        raise ValueError("direction count out of range")
    if objective_degree < 1:
        raise ValueError("objective degree must be at least 1")
    dm1 = objective_degree - 1
    out = {}
    for k in range(n - i + 1):
        c = dm1**k
        if c:
            out[(k, n - k - i)] = c
    return Bidegree(n, out)


def bidegree_product(x: Bidegree, y: Bidegree) -> Bidegree:
    return x * y


def projection_degree(x: Bidegree, n: int, i: int) -> int:
    """Degree of the first-factor projection of a level-i intersection: the
    coefficient of T^(n-i) U^n."""
    if x.n != n:
        raise ValueError("truncation level mismatch")
    if not 0 <= i <= n:
        raise ValueError("level out of range")
    return x.coefficient(n - i, n)


def critical_point_bound(delta: PolarDegrees, objective_degree: int, level: int) -> int:
    """Upper bound for the degree of the level-i critical locus in terms of
    the polar degrees and the objective degree."""
    if objective_degree < 1:
        raise ValueError("objective degree must be at least 1")
    if not 0 <= level <= delta.dim:
        raise ValueError("level out of range")
    if objective_degree == 1:
        return delta.delta(level + 1)
    dm1 = objective_degree - 1
    return sum(delta.delta(j + 1) * dm1 ** (j - level) for j in range(level, delta.dim + 1))


def regular_sequence_bound(degrees: Sequence[int], objective_degree: int, n: int, d: int) -> int:
    """The classical dense bound for a critical system cut out by a regular
    sequence with the given degrees: prod(degrees) times the complete
    homogeneous sum of degree d in (deg_j - 1, D - 1)."""
    if any(e < 1 for e in degrees):
        raise ValueError("generator degrees must be positive")
    if objective_degree < 1:
        raise ValueError("objective degree must be at least 1")
    if d < 0 or n < 1:
        raise ValueError("bad dimensions")
    values = [e - 1 for e in degrees] + [objective_degree - 1]
    # complete homogeneous symmetric sum h_d(values) by one-slot DP
    h = [1] + [0] * d
    for val in values:
        if val == 0:
            continue  # a zero value only contributes exponent 0
        nxt = h[:]
        for m in range(1, d + 1):
            acc = 0
            power = 1
            for t in range(1, m + 1):
                power *= val
                acc += power * h[m - t]
            nxt[m] += acc
        h = nxt
    total = h[d]
    prod = 1
    for e in degrees:
        prod *= e
    return prod * total


# ---------------------------------------------------------------------------
# Polar degrees of a concrete variety.
# ---------------------------------------------------------------------------

# above this many minors, the literal stacked-minor system is replaced by an
# exact reduced presentation (and, for complete graphs, the chart system)
LITERAL_MINOR_LIMIT = 150


def _random_affine_forms(ring: Ring, seed: int, count: int) -> list[MultiPoly]:
    field = ring.field
    out = []
    rng = rng_for(seed, "affine-cuts")
    for _ in range(count):
        vals = draw_nonzero_ints(rng, ring.nvars + 1, 997)
        terms = {}
        for i in range(ring.nvars):
            mon = tuple(1 if j == i else 0 for j in range(ring.nvars))
            terms[mon] = field.from_int(vals[i])
        terms[(0,) * ring.nvars] = field.from_int(vals[-1])
        out.append(MultiPoly(ring, terms))
    return out


def _chart_polar_count(v: VarietySpec, elim, a, cuts, level: int, seed: int) -> int | None:
    """Polar count through the chart presentation, accepted only when the
    computed points certify the ambient rank condition.  None asks the
    caller to fall back to an exact presentation."""
    try:
        system = chart_rank_system(v, elim, None, a, level)
    except DegenerateInputError:
        return None
    gens = system.generators + [elim.substitute(cf) for cf in cuts]
    gb = buchberger(gens)
    qd = quotient_dimension(gb)
    if qd is None:
        return None
    if qd == 0:
        return 0
    try:
        lam = find_primitive_element(gb, seed=derive_seed(seed, "chart-primitive"))
        par = solve_zero_dim(gb, lam)
    except (NotRadicalError, NotSeparatingError):
        return None
    chart_coords = par.plain_coordinates()
    ambient = [poly_on_points(cm, chart_coords, par.q) for cm in elim.coordinate_map]
    _, hi = matrix_rank_at_points(system.full_matrix, ambient, par.q)
    return qd if hi < system.rank_bound else None


def _polar_degree_once(v: VarietySpec, level: int, seed: int, elim=None) -> int:
    """delta_level by one randomized run: polar system at the level, cut by
    level-1 affine forms, counted in dimension zero."""
    p = len(v.generators)
    size = v.codim + level
    literal_minors = comb(p + level, size) * comb(v.nvars, size)
    for trial in range(8):
        sub = derive_seed(seed, f"polar-{level}-trial-{trial}")
        a = random_directions(derive_seed(sub, "a"), level, v.nvars, v.ring.field)
        cuts = _random_affine_forms(v.ring, derive_seed(sub, "cuts"), level - 1)
        if literal_minors > LITERAL_MINOR_LIMIT and elim is not None and elim.is_complete_graph:
            count = _chart_polar_count(v, elim, a, cuts, level, sub)
            if count is not None:
                return count
        if literal_minors > LITERAL_MINOR_LIMIT:
            gens = polar_system_reduced(v, a, level).generators + cuts
        else:
            gens = classical_polar_ideal(v, a, level) + cuts
        gb = buchberger(gens)
        qd = quotient_dimension(gb)
        if qd is not None:
            return qd
    raise SolveFailError(f"no zero-dimensional polar cut at level {level} after 8 draws")


def _variety_degree_once(v: VarietySpec, seed: int, elim=None) -> int:
    for trial in range(8):
        cuts = _random_affine_forms(v.ring, derive_seed(seed, f"degree-{trial}"), v.dim)
        if elim is not None and elim.eliminated_count:
            gens = list(elim.residual) + [elim.substitute(cf) for cf in cuts]
        else:
            gens = list(v.generators) + cuts
        gb = buchberger(gens)
        qd = quotient_dimension(gb)
        if qd is not None and qd > 0:
            return qd
    raise SolveFailError("no zero-dimensional degree cut after 8 draws")


def delta_of_variety(v: VarietySpec, seed: int = 0, prime: int | None = None) -> PolarDegrees:
    """Polar degrees (delta_1, ..., delta_{d+1}) of a smooth equidimensional
    variety, each value computed twice from independent seeds.

    Rational input is reduced modulo ``prime`` (default near 2^31) first; a
    disagreement between the two runs raises InstabilityError.  Large minor
    systems are replaced by exactly equivalent reduced presentations; chart
    presentations are additionally certified point-by-point against the
    ambient rank condition.
    """
    ring = v.ring
    if ring.field.modulus is None:
        p = prime if prime is not None else DEFAULT_PRIME
        gens = [reduce_poly_mod(g, p) for g in v.generators]
        v = VarietySpec(gens, v.dim, v.smooth_asserted)
    elif prime is not None and ring.field.modulus != prime:
        raise ValueError("generators already live in a different prime field")
    elim = eliminate_linear(v.generators)
    if not elim.eliminated_count:
        elim = None
    values = []
    for level in range(1, v.dim + 1):
        first = _polar_degree_once(v, level, derive_seed(seed, f"delta-{level}-a"), elim)
        second = _polar_degree_once(v, level, derive_seed(seed, f"delta-{level}-b"), elim)
        if first != second:
            raise InstabilityError(f"delta_{level} runs disagree: {first} vs {second}")
        values.append(first)
    deg_a = _variety_degree_once(v, derive_seed(seed, "degree-a"), elim)
    deg_b = _variety_degree_once(v, derive_seed(seed, "degree-b"), elim)
    if deg_a != deg_b:
        raise InstabilityError(f"degree runs disagree: {deg_a} vs {deg_b}")
    values.append(deg_a)
    return PolarDegrees(tuple(values))
