"""Geometric resolutions of finite algebraic sets.

A finite set cut out by a zero-dimensional radical ideal is encoded by a
separating linear form lambda, its (squarefree, monic) minimal polynomial q,
and coordinate numerators v_i with X_i = v_i / q'(tau) at each root tau of
q.  This normalization makes lambda(v_1, ..., v_n) = T*q'(T) mod q, which is
asserted after every construction.

Lifting fibers package a zero-dimensional affine slice of a positive-
dimensional variety together with the system and frame needed to work with
it: (H, M, z, u, Q, v) with Y = M^-1 X, the slice at Y_1..Y_d = z, and a
plain (unscaled) parametrization Y_{d+j} = v_j(T) at the roots of Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Sequence

from . import linalg
from .errors import (
    EmptyVarietyError,
    NotFiniteError,
    NotRadicalError,
    NotSeparatingError,
    SolveFailError,
)
from .groebner import (
    GroebnerBasis,
    buchberger,
    charpoly_of_form,
    quotient_basis,
    quotient_dimension,
)
from .rand import draw_nonzero_ints, rng_for
from .ring import GREVLEX, MultiPoly, Ring
from .unipoly import UniPoly

__all__ = [
    "RationalParametrization",
    "solve_zero_dim",
    "find_primitive_element",
    "check_radical",
    "change_primitive_element",
    "LiftingFiber",
    "build_lifting_fiber",
    "extend_fiber",
    "validate_fiber",
]


def _linear_form(ring: Ring, coeffs: Sequence) -> MultiPoly:
    terms = {}
    for i, c in enumerate(coeffs):
        if not ring.field.eq_zero(c):
            mon = tuple(1 if j == i else 0 for j in range(ring.nvars))
            terms[mon] = c
    return MultiPoly(ring, terms)


@dataclass
class RationalParametrization:
    """(lambda, q, v_1..v_n): the points are X_i = v_i/q'(tau) at roots tau
    of q, and lambda takes the value tau at the corresponding point."""

    ring: Ring
    lam: list  # coefficients of the separating form, one per variable
    q: UniPoly
    v: list  # UniPoly per variable

    @property
    def count(self) -> int:
        return self.q.degree()

    def lam_poly(self) -> MultiPoly:
        return _linear_form(self.ring, self.lam)

    def assert_normalized(self) -> None:
        fld = self.ring.field
        qq, dq = self.q, self.q.derivative()
        if not qq.gcd(dq).is_one() and qq.degree() > 0:
            raise AssertionError("q is not squarefree")
        acc = UniPoly.zero(fld)
        for c, vi in zip(self.lam, self.v):
            acc = acc + vi.scalar_mul(c)
        want = (UniPoly.t(fld) * dq) % qq
        if (acc % qq) != want:
            raise AssertionError("lambda(v) != T*q' mod q")
        for vi in self.v:
            if vi.degree() >= max(qq.degree(), 1):
                raise AssertionError("deg v_i >= deg q")

    def plain_coordinates(self) -> list[UniPoly]:
        """Unscaled coordinate functions r_i with X_i = r_i(tau); requires
        q squarefree (q' invertible mod q)."""
        if self.q.degree() == 0:
            return [UniPoly.zero(self.ring.field) for _ in self.v]
        inv_dq = self.q.derivative().inverse_mod(self.q)
        return [vi.mul_mod(inv_dq, self.q) for vi in self.v]

    def coordinates_of_form(self, coeffs: Sequence) -> UniPoly:
        """The univariate function tau -> sum c_i X_i(tau), reduced mod q."""
        acc = UniPoly.zero(self.ring.field)
        for c, ri in zip(coeffs, self.plain_coordinates()):
            acc = acc + ri.scalar_mul(c)
        return acc % self.q

    def membership_defect(self, poly: MultiPoly) -> UniPoly:
        """Denominator-cleared residue q'(T)^deg(poly) * poly(v/q') mod q;
        zero iff poly vanishes on every encoded point."""
        fld = self.ring.field
        qq = self.q
        if qq.degree() == 0:
            return UniPoly.zero(fld)
        dq = qq.derivative()
        deg = max(poly.total_degree(), 0)
        # per-variable powers of v_i mod q, filled on demand
        pow_cache: list[dict[int, UniPoly]] = [dict() for _ in self.v]
        dq_pows: dict[int, UniPoly] = {0: UniPoly.one(fld) % qq}

        def v_power(i: int, e: int) -> UniPoly:
            cache = pow_cache[i]
            if e not in cache:
                if not cache:
                    cache[1] = self.v[i] % qq
                top = max(cache)
                acc = cache[top]
                for k in range(top + 1, e + 1):
                    acc = acc.mul_mod(self.v[i], qq)
                    cache[k] = acc
            return cache[e]

        def dq_power(e: int) -> UniPoly:
            if e not in dq_pows:
                top = max(dq_pows)
                acc = dq_pows[top]
                for k in range(top + 1, e + 1):
                    acc = acc.mul_mod(dq, qq)
                    dq_pows[k] = acc
            return dq_pows[e]

        total = UniPoly.zero(fld)
        for mon, coef in poly.terms.items():
            term = UniPoly.constant(fld, coef)
            tdeg = sum(mon)
            for i, e in enumerate(mon):
                if e:
                    term = term.mul_mod(v_power(i, e), qq)
            term = term.mul_mod(dq_power(deg - tdeg), qq)
            total = (total + term) % qq
        return total

    def validate(self, generators: Sequence[MultiPoly]) -> list[str]:
        """List of violated invariants (empty means the parametrization is a
        valid encoding of common zeros of the generators)."""
        issues = []
        if self.q.degree() > 0 and not self.q.is_squarefree():
            issues.append("q is not squarefree")
        if not self.q.is_zero() and self.q.leading() != self.ring.field.one():
            issues.append("q is not monic")
        for i, vi in enumerate(self.v):
            if vi.degree() >= max(self.q.degree(), 1):
                issues.append(f"deg v_{i + 1} >= deg q")
        fld = self.ring.field
        acc = UniPoly.zero(fld)
        for c, vi in zip(self.lam, self.v):
            acc = acc + vi.scalar_mul(c)
        if (acc % self.q) != (UniPoly.t(fld) * self.q.derivative()) % self.q:
            issues.append("lambda(v) != T*q' mod q")
        if not issues:
            for k, g in enumerate(generators):
                if not self.membership_defect(g).is_zero():
                    issues.append(f"generator {k + 1} does not vanish on the encoded points")
        return issues


# ---------------------------------------------------------------------------
# Solving a zero-dimensional ideal into a parametrization.
# ---------------------------------------------------------------------------


def _coords_in_quotient(gb: GroebnerBasis, poly: MultiPoly, index: dict) -> list:
    field = gb.ring.field
    nf = gb.normal_form(poly)
    col = [field.zero()] * len(index)
    for m, c in nf.terms.items():
        col[index[m]] = c
    return col


def solve_zero_dim(gb: GroebnerBasis, lam: Sequence) -> RationalParametrization:
    """Parametrize the zero set of a zero-dimensional radical ideal by the
    separating linear form with the given coefficients.

    Raises NotFiniteError / NotSeparatingError / NotRadicalError.
    """
    ring = gb.ring
    field = ring.field
    qb = quotient_basis(gb)
    if qb is None:
        raise NotFiniteError("ideal is not zero-dimensional")
    size = len(qb)
    if size == 0:
        return RationalParametrization(ring, list(lam), UniPoly.one(field), [UniPoly.zero(field)] * ring.nvars)
    lam_poly = _linear_form(ring, lam)
    cp = charpoly_of_form(gb, lam_poly)
    if not cp.is_squarefree():
        if check_radical(gb):
            raise NotSeparatingError("linear form does not separate the points")
        raise NotRadicalError("ideal is not radical")
    q = cp.monic()
    # coordinates: X_i = w_i(lambda) in the quotient; solve with the
    # lambda-power basis, then scale by q' for the stored numerators
    index = {m: k for k, m in enumerate(qb)}
    from .groebner import multiplication_matrix

    mult = multiplication_matrix(gb, lam_poly)
    power = [field.zero()] * size
    power[index[(0,) * ring.nvars]] = field.one()
    powers = [power]
    for _ in range(size - 1):
        powers.append(linalg.mat_vec(field, mult, powers[-1]))
    pmat = [[powers[j][i] for j in range(size)] for i in range(size)]
    rhs = [_coords_in_quotient(gb, ring.variable(i), index) for i in range(ring.nvars)]
    sols = linalg.solve_many(field, pmat, rhs)
    if sols is None:
        # should not happen once cp is squarefree of full degree
        raise NotSeparatingError("powers of the form do not span the quotient")
    dq = q.derivative()
    v = [(UniPoly(field, w) * dq) % q for w in sols]
    par = RationalParametrization(ring, list(lam), q, v)
    par.assert_normalized()
    return par


def _candidate_forms(ring: Ring, seed: int, budget: int = 64):
    """Coordinate forms first, then seeded random small forms."""
    n = ring.nvars
    field = ring.field
    for i in range(min(n, budget)):
        yield [field.one() if j == i else field.zero() for j in range(n)]
    rng = rng_for(seed, "primitive-element")
    for _ in range(budget - n):
        raw = [rng.randint(-50, 50) for _ in range(n)]
        if all(v == 0 for v in raw):
            raw[rng.randrange(n)] = 1
        yield [field.from_int(v) for v in raw]


def find_primitive_element(gb: GroebnerBasis, seed: int = 0) -> list:
    """A separating linear form: squarefree characteristic polynomial of
    full quotient degree.  Exhausting the budget signals a non-radical
    ideal (or a pathological field)."""
    if quotient_dimension(gb) is None:
        raise NotFiniteError("ideal is not zero-dimensional")
    for coeffs in _candidate_forms(gb.ring, seed):
        cp = charpoly_of_form(gb, _linear_form(gb.ring, coeffs))
        if cp.is_squarefree():
            return coeffs
    raise NotRadicalError("no separating form found in 64 attempts")


def check_radical(gb: GroebnerBasis) -> bool:
    """Zero-dimensional radicality test: some candidate form has a squarefree
    minimal polynomial of degree equal to the quotient dimension."""
    if quotient_dimension(gb) is None:
        raise NotFiniteError("ideal is not zero-dimensional")
    try:
        find_primitive_element(gb, seed=0)
        return True
    except NotRadicalError:
        return False


def minimal_polynomial_of_values(ell: UniPoly, q: UniPoly) -> UniPoly:
    """Characteristic polynomial of multiplication by ell in F[T]/(q): the
    monic polynomial whose roots are the values ell(tau) over roots tau of
    q, with multiplicity."""
    field = ell.field
    n = q.degree()
    basis_pows = [UniPoly.one(field)]
    for _ in range(1, n):
        basis_pows.append(basis_pows[-1].shift(1) % q)
    cols = []
    for k in range(n):
        col_poly = ell.mul_mod(basis_pows[k], q)
        cols.append([col_poly.coeff(i) for i in range(n)])
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    return linalg.charpoly(field, mat).monic()


def parametrize_from_coords(
    ring: Ring, coords: Sequence[UniPoly], q: UniPoly, candidates
) -> RationalParametrization:
    """Build a normalized parametrization of the points tau -> coords(tau)
    (q squarefree) using the first candidate form that separates them.

    The candidate's value function ell(T) must have a squarefree minimal
    polynomial of full degree; coordinates are then rewritten in the
    ell-power basis and scaled by the derivative of the new minimal
    polynomial.
    """
    field = ring.field
    n = q.degree()
    if n == 0:
        lam = next(iter(candidates))
        return RationalParametrization(ring, list(lam), UniPoly.one(field), [UniPoly.zero(field)] * ring.nvars)
    last = None
    for cand in candidates:
        ell = UniPoly.zero(field)
        for c, ri in zip(cand, coords):
            ell = ell + ri.scalar_mul(c)
        ell = ell % q
        q_new = minimal_polynomial_of_values(ell, q)
        if not q_new.is_squarefree():
            last = cand
            continue
        ell_pows = [UniPoly.one(field) % q]
        for _ in range(n - 1):
            ell_pows.append(ell_pows[-1].mul_mod(ell, q))
        pmat = [[ell_pows[j].coeff(i) for j in range(n)] for i in range(n)]
        rhs = [[(ri % q).coeff(i) for i in range(n)] for ri in coords]
        sols = linalg.solve_many(field, pmat, rhs)
        if sols is None:
            last = cand
            continue
        dq_new = q_new.derivative()
        if ring.nvars == len(coords):
            v_new = [(UniPoly(field, w) * dq_new) % q_new for w in sols]
            out = RationalParametrization(ring, list(cand), q_new, v_new)
            out.assert_normalized()
            return out
        raise ValueError("coordinate count does not match the ring")
    raise NotSeparatingError(f"no candidate form separates the points (last tried {last})")


def change_primitive_element(par: RationalParametrization, new_lam: Sequence) -> RationalParametrization:
    """Re-express the same point set with a new separating form.

    Works entirely in F[T]/(q): the new form's values are ell(T) = new_lam
    applied to the plain coordinates, its minimal polynomial comes from the
    multiplication-by-ell matrix, and coordinates are rewritten in the
    ell-power basis.
    """
    return parametrize_from_coords(par.ring, par.plain_coordinates(), par.q, [list(new_lam)])


# ---------------------------------------------------------------------------
# Evaluation of polynomials and matrices at parametrized points.
# ---------------------------------------------------------------------------


def poly_on_points(poly: MultiPoly, coords: Sequence[UniPoly], q: UniPoly) -> UniPoly:
    """poly evaluated at the points tau -> coords(tau), as a function of the
    parameter mod q."""
    field = poly.ring.field
    pow_cache: list[dict[int, UniPoly]] = [dict() for _ in coords]

    def coord_power(i: int, e: int) -> UniPoly:
        cache = pow_cache[i]
        if e not in cache:
            if not cache:
                cache[1] = coords[i] % q
            top = max(cache)
            acc = cache[top]
            for k in range(top + 1, e + 1):
                acc = acc.mul_mod(coords[i], q)
                cache[k] = acc
        return cache[e]

    total = UniPoly.zero(field)
    for mon, coef in poly.terms.items():
        term = UniPoly.constant(field, coef)
        for i, e in enumerate(mon):
            if e:
                term = term.mul_mod(coord_power(i, e), q)
        total = (total + term) % q
    return total


def matrix_rank_at_points(matrix, coords: Sequence[UniPoly], q: UniPoly) -> tuple[int, int]:
    """(min, max) rank of a polynomial matrix over the points tau ->
    coords(tau), ranging over the residue factors of q."""
    rows = []
    for i in range(matrix.rows):
        rows.append([poly_on_points(matrix.at(i, j), coords, q) for j in range(matrix.cols)])
    return linalg.rank_range_mod(rows, q)


# ---------------------------------------------------------------------------
# Lifting fibers.
# ---------------------------------------------------------------------------


@dataclass
class LiftingFiber:
    """(H, M, z, u, Q, v): a zero-dimensional slice of a d-equidimensional
    variety in Noether-positioned coordinates Y = M^-1 X."""

    ring: Ring
    dim: int
    lifting_system: list  # n - d polynomials vanishing on the variety
    frame: list  # n x n invertible matrix M (rows of field elements)
    lifting_point: list  # z, d field elements
    primitive: list  # u, coefficients of a linear form in X
    q: UniPoly  # minimal polynomial of u on the fiber points
    v: list  # n - d UniPoly: Y_{d+j} = v_j(T)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def x_coordinates(self) -> list[UniPoly]:
        """X_j(T) = (M * (z || v(T)))_j for the fiber points."""
        field = self.ring.field
        n, d = self.nvars, self.dim
        y: list[UniPoly] = [UniPoly.constant(field, z) for z in self.lifting_point]
        y += [vi % self.q for vi in self.v]
        out = []
        for i in range(n):
            acc = UniPoly.zero(field)
            for j in range(n):
                acc = acc + y[j].scalar_mul(self.frame[i][j])
            out.append(acc % self.q)
        return out

    def evaluate_poly(self, poly: MultiPoly) -> UniPoly:
        """poly at the fiber points, as a function of T mod q."""
        xs = self.x_coordinates()
        field = self.ring.field
        pow_cache: list[dict[int, UniPoly]] = [dict() for _ in xs]

        def x_power(i: int, e: int) -> UniPoly:
            cache = pow_cache[i]
            if e not in cache:
                if not cache:
                    cache[1] = xs[i]
                top = max(cache)
                acc = cache[top]
                for k in range(top + 1, e + 1):
                    acc = acc.mul_mod(xs[i], self.q)
                    cache[k] = acc
            return cache[e]

        total = UniPoly.zero(field)
        for mon, coef in poly.terms.items():
            term = UniPoly.constant(field, coef)
            for i, e in enumerate(mon):
                if e:
                    term = term.mul_mod(x_power(i, e), self.q)
            total = (total + term) % self.q
        return total


@dataclass
class FiberCheck:
    name: str
    ok: bool
    detail: str = ""


def validate_fiber(fiber: LiftingFiber) -> list[FiberCheck]:
    """All structural checks; every entry must be ok for a valid fiber."""
    field = fiber.ring.field
    checks = []
    n, d = fiber.nvars, fiber.dim
    checks.append(FiberCheck("shape", len(fiber.lifting_system) == n - d and len(fiber.lifting_point) == d and len(fiber.v) == n - d, "lifting system has n-d entries, point has d"))
    inv = linalg.inverse(field, fiber.frame) if len(fiber.frame) == n else None
    checks.append(FiberCheck("frame_invertible", inv is not None))
    checks.append(FiberCheck("q_squarefree", fiber.q.degree() >= 1 and fiber.q.is_squarefree()))
    degs_ok = all(vi.degree() < fiber.q.degree() for vi in fiber.v)
    checks.append(FiberCheck("v_degrees", degs_ok, "deg v_j < deg q"))
    if inv is not None and fiber.q.degree() >= 1:
        residues_ok = True
        worst = ""
        for k, h in enumerate(fiber.lifting_system):
            if not fiber.evaluate_poly(h).is_zero():
                residues_ok = False
                worst = f"lifting polynomial {k + 1} has nonzero residue"
                break
        checks.append(FiberCheck("system_vanishes", residues_ok, worst))
        uval = UniPoly.zero(field)
        xs = fiber.x_coordinates()
        for c, xi in zip(fiber.primitive, xs):
            uval = uval + xi.scalar_mul(c)
        checks.append(FiberCheck("primitive_is_parameter", (uval % fiber.q) == (UniPoly.t(field) % fiber.q), "u(X(T)) = T mod q"))
    return checks


def _substituted_fiber_system(generators: Sequence[MultiPoly], frame, z, d: int) -> tuple[Ring, list[MultiPoly]]:
    """Generators composed with X = M*Y and Y_1..Y_d frozen at z, as
    polynomials in the remaining n-d variables."""
    ring = generators[0].ring
    field = ring.field
    n = ring.nvars
    sub_ring = Ring(tuple(f"s{k + 1}" for k in range(n - d)), field)
    images = {}
    for j, name in enumerate(ring.variables):
        terms = {}
        const = field.zero()
        for k in range(n):
            c = frame[j][k]
            if field.eq_zero(c):
                continue
            if k < d:
                const = field.add(const, field.mul(c, z[k]))
            else:
                mon = tuple(1 if t == k - d else 0 for t in range(n - d))
                terms[mon] = c
        if not field.eq_zero(const):
            terms[(0,) * (n - d)] = const
        images[name] = MultiPoly(sub_ring, terms)
    return sub_ring, [g.substitute(images) for g in generators]


def build_lifting_fiber(generators: Sequence[MultiPoly], dim: int, seed: int = 0, attempts: int = 8) -> LiftingFiber:
    """Probabilistic fiber construction: draw a frame M and a lifting point z,
    slice, and solve the resulting zero-dimensional system.

    A slice that is not zero-dimensional means the coordinates were not in
    Noether position; the frame is redrawn up to ``attempts`` times.
    """
    ring = generators[0].ring
    field = ring.field
    n, d = ring.nvars, dim
    if not 0 <= d < n:
        raise ValueError("dimension out of range")
    last_error = "no attempt made"
    for trial in range(attempts):
        rng = rng_for(seed, f"fiber-frame-{trial}")
        frame = [[field.from_int(v) for v in draw_nonzero_ints(rng, n, 20)] for _ in range(n)]
        if linalg.inverse(field, frame) is None:
            last_error = "frame not invertible"
            continue
        z = [field.from_int(v) for v in draw_nonzero_ints(rng, d, 20)]
        sub_ring, sliced = _substituted_fiber_system(generators, frame, z, d)
        gb = buchberger(sliced)
        qd = quotient_dimension(gb)
        if qd is None:
            last_error = "slice is not zero-dimensional"
            continue
        if qd == 0:
            raise EmptyVarietyError("fiber is empty")
        try:
            lam = find_primitive_element(gb, seed=rng.randrange(2**30))
            par = solve_zero_dim(gb, lam)
        except (NotRadicalError, NotSeparatingError) as exc:
            last_error = f"slice not solvable: {exc}"
            continue
        v = par.plain_coordinates()
        # lift u back to the X frame: u(X) = (0^d || lam) . M^-1 X
        inv = linalg.inverse(field, frame)
        w = [field.zero()] * d + list(lam)
        u = [field.zero()] * n
        for j in range(n):
            acc = field.zero()
            for i in range(n):
                acc = field.add(acc, field.mul(w[i], inv[i][j]))
            u[j] = acc
        lifting_system = _choose_lifting_system(generators, dim, seed, trial, frame, z, par)
        fiber = LiftingFiber(ring, d, lifting_system, frame, z, u, par.q, v)
        bad = [c for c in validate_fiber(fiber) if not c.ok]
        if bad:
            last_error = f"validation failed: {bad[0].name}"
            continue
        return fiber
    raise SolveFailError(f"could not build a lifting fiber in {attempts} attempts ({last_error})")


def _choose_lifting_system(generators, dim, seed, trial, frame, z, par) -> list[MultiPoly]:
    """The generators themselves when they already form n-d equations;
    otherwise n-d random combinations, spot-checked for full Jacobian rank
    at the fiber points."""
    ring = generators[0].ring
    field = ring.field
    n, d = ring.nvars, dim
    need = n - d
    if len(generators) == need:
        return list(generators)
    from .matrices import jacobian

    for combo_trial in range(8):
        rng = rng_for(seed, f"lifting-combos-{trial}-{combo_trial}")
        combos = []
        for _ in range(need):
            weights = draw_nonzero_ints(rng, len(generators), 20)
            acc = ring.zero()
            for wgt, g in zip(weights, generators):
                acc = acc + g.scalar_mul(field.from_int(wgt))
            combos.append(acc)
        probe = LiftingFiber(ring, d, combos, frame, z, [field.zero()] * n, par.q, par.plain_coordinates())
        jac = jacobian(combos)
        rows = [[probe.evaluate_poly(jac.at(i, j)) for j in range(n)] for i in range(len(combos))]
        lo, _ = linalg.rank_range_mod(rows, par.q)
        if lo == need:
            return combos
    raise SolveFailError("could not find a regular lifting system of combinations")


def extend_fiber(fiber: LiftingFiber, objective: MultiPoly) -> LiftingFiber:
    """Fiber of the graph variety {(x, g(x))}: one extra coordinate carrying
    the objective value, same lifting point and primitive form."""
    if objective.ring != fiber.ring:
        raise ValueError("objective lives in a different ring")
    ring = fiber.ring
    field = ring.field
    new_ring = ring.extend("w")
    n = ring.nvars
    lift = {name: new_ring.variable(i) for i, name in enumerate(ring.variables)}
    new_system = [g.substitute(lift) for g in fiber.lifting_system]
    g_lifted = objective.substitute(lift)
    new_system.append(g_lifted - new_ring.variable(n))
    frame = [[*row, field.zero()] for row in fiber.frame]
    frame.append([field.zero()] * n + [field.one()])
    extra = fiber.evaluate_poly(objective)
    return LiftingFiber(
        new_ring,
        fiber.dim,
        new_system,
        frame,
        list(fiber.lifting_point),
        list(fiber.primitive) + [field.zero()],
        fiber.q,
        list(fiber.v) + [extra],
    )


# ---------------------------------------------------------------------------
# Serialization: named fields, ascending coefficient arrays, rationals as
# "num/den" strings.  Round trips are bit-exact.
# ---------------------------------------------------------------------------


def _field_to_json(field) -> object:
    return "rationals" if field.modulus is None else {"prime": field.modulus}


def _field_from_json(obj):
    from .ring import QQ, CoefficientField

    if obj == "rationals":
        return QQ
    return CoefficientField(obj["prime"])


def _coeff_to_str(field, c) -> str:
    if field.modulus is not None:
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def _coeff_from_str(field, s: str):
    from fractions import Fraction

    if field.modulus is not None:
        return int(s) % field.modulus
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def _unipoly_to_json(u: UniPoly) -> list[str]:
    return [_coeff_to_str(u.field, c) for c in u.c]


def _unipoly_from_json(field, coeffs) -> UniPoly:
    return UniPoly(field, [_coeff_from_str(field, s) for s in coeffs])


def parametrization_to_json(par: RationalParametrization) -> dict:
    field = par.ring.field
    return {
        "kind": "rational_parametrization",
        "field": _field_to_json(field),
        "variables": list(par.ring.variables),
        "lambda": [_coeff_to_str(field, c) for c in par.lam],
        "q": _unipoly_to_json(par.q),
        "v": {name: _unipoly_to_json(vi) for name, vi in zip(par.ring.variables, par.v)},
    }


def parametrization_from_json(doc: dict) -> RationalParametrization:
    field = _field_from_json(doc["field"])
    ring = Ring(tuple(doc["variables"]), field)
    lam = [_coeff_from_str(field, s) for s in doc["lambda"]]
    q = _unipoly_from_json(field, doc["q"])
    v = [_unipoly_from_json(field, doc["v"][name]) for name in ring.variables]
    return RationalParametrization(ring, lam, q, v)


def fiber_to_json(fiber: LiftingFiber) -> dict:
    field = fiber.ring.field
    return {
        "kind": "lifting_fiber",
        "field": _field_to_json(field),
        "variables": list(fiber.ring.variables),
        "dim": fiber.dim,
        "lifting_system": [g.format() for g in fiber.lifting_system],
        "frame": [[_coeff_to_str(field, c) for c in row] for row in fiber.frame],
        "lifting_point": [_coeff_to_str(field, c) for c in fiber.lifting_point],
        "primitive": [_coeff_to_str(field, c) for c in fiber.primitive],
        "q": _unipoly_to_json(fiber.q),
        "v": [_unipoly_to_json(vi) for vi in fiber.v],
    }


def fiber_from_json(doc: dict) -> LiftingFiber:
    from .parsing import parse_poly

    field = _field_from_json(doc["field"])
    ring = Ring(tuple(doc["variables"]), field)
    return LiftingFiber(
        ring,
        doc["dim"],
        [parse_poly(text, ring) for text in doc["lifting_system"]],
        [[_coeff_from_str(field, c) for c in row] for row in doc["frame"]],
        [_coeff_from_str(field, c) for c in doc["lifting_point"]],
        [_coeff_from_str(field, c) for c in doc["primitive"]],
        _unipoly_from_json(field, doc["q"]),
        [_unipoly_from_json(field, vi) for vi in doc["v"]],
    )
