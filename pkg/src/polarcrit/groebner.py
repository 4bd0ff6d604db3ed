"""Buchberger engine: reduced Groebner bases and the zero-dimensional oracle.

Pair selection is the degree-ordered normal strategy; useless pairs are
pruned with the Gebauer-Moeller criteria.  Normal forms use a lazy max-heap
over the working polynomial so each tail monomial is touched once.  All
choices (input ordering, pair order, reducer choice) are deterministic, so a
fixed input always yields the identical reduced basis.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dataclass_field
from typing import Sequence

from .linalg import charpoly as _charpoly
from .ring import (
    GREVLEX,
    MonomialOrder,
    MultiPoly,
    Ring,
    monomial_divides,
    monomial_lcm,
)
from .unipoly import UniPoly

__all__ = [
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "quotient_basis",
    "quotient_dimension",
    "affine_dimension",
    "multiplication_matrix",
    "charpoly_of_form",
    "NotZeroDimensionalError",
]


class NotZeroDimensionalError(ValueError):
    """The ideal is not zero-dimensional where a finite quotient is required."""


# -- raw-dict kernels ---------------------------------------------------------
#
# Inside the engine a polynomial is a dict {exponent tuple: coefficient} and
# a reducer is (lm, deg(lm), tail_items) with the polynomial monic.  The
# prime-field path inlines modular arithmetic; the rational path uses
# Fraction operators.


def _monic_dict(terms: dict, lm, field) -> dict:
    lc = terms[lm]
    if lc == field.one():
        return terms
    p = field.modulus
    if p is not None:
        inv = pow(lc, -1, p)
        return {m: c * inv % p for m, c in terms.items()}
    inv = field.inv(lc)
    return {m: c * inv for m, c in terms.items()}


def _make_reducer(terms: dict, lm):
    return (lm, sum(lm), [(m, c) for m, c in terms.items() if m != lm])


def _normal_form_dict(terms: dict, reducers: list, order: MonomialOrder, field) -> dict:
    """Fully reduce a raw dict against monic reducers [(lm, deg, tail)]."""
    work = dict(terms)
    if not work or not reducers:
        return work
    p = field.modulus
    heap_key = order.heap_key
    heap = [(heap_key(m), m) for m in work]
    heapq.heapify(heap)
    result: dict = {}
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        _, mon = pop(heap)
        c = work.get(mon)
        if not c:
            continue
        mon_deg = sum(mon)
        hit = None
        for lm, lm_deg, tail in reducers:
            if lm_deg > mon_deg:
                continue
            ok = True
            for a, b in zip(lm, mon):
                if a > b:
                    ok = False
                    break
            if ok:
                hit = (lm, tail)
                break
        if hit is None:
            result[mon] = c
            del work[mon]
            continue
        lm, tail = hit
        shift = tuple(x - y for x, y in zip(mon, lm))
        del work[mon]
        if p is not None:
            for m2, c2 in tail:
                nm = tuple(x + y for x, y in zip(m2, shift))
                v = (work.get(nm, 0) - c * c2) % p
                if v:
                    if nm not in work:
                        push(heap, (heap_key(nm), nm))
                    work[nm] = v
                elif nm in work:
                    del work[nm]
        else:
            for m2, c2 in tail:
                nm = tuple(x + y for x, y in zip(m2, shift))
                v = work.get(nm, 0) - c * c2
                if v:
                    if nm not in work:
                        push(heap, (heap_key(nm), nm))
                    work[nm] = v
                elif nm in work:
                    del work[nm]
    return result


def _spoly_dict(f_lm, f_terms, g_lm, g_terms, field) -> dict:
    """S-polynomial of two monic raw polynomials."""
    lcm = monomial_lcm(f_lm, g_lm)
    su = tuple(a - b for a, b in zip(lcm, f_lm))
    sv = tuple(a - b for a, b in zip(lcm, g_lm))
    p = field.modulus
    out: dict = {}
    for m, c in f_terms.items():
        out[tuple(x + y for x, y in zip(m, su))] = c
    if p is not None:
        for m, c in g_terms.items():
            nm = tuple(x + y for x, y in zip(m, sv))
            v = (out.get(nm, 0) - c) % p
            if v:
                out[nm] = v
            elif nm in out:
                del out[nm]
    else:
        for m, c in g_terms.items():
            nm = tuple(x + y for x, y in zip(m, sv))
            v = out.get(nm, 0) - c
            if v:
                out[nm] = v
            elif nm in out:
                del out[nm]
    return out


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis; generators are monic, tail-reduced, and
    sorted by increasing leading monomial."""

    ring: Ring
    order: MonomialOrder
    generators: list[MultiPoly]
    _qbasis: list | None = dataclass_field(default=None, repr=False, compare=False)
    _var_matrices: list | None = dataclass_field(default=None, repr=False, compare=False)
    _reducer_cache: list | None = dataclass_field(default=None, repr=False, compare=False)

    @property
    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit_ideal(self) -> bool:
        gens = self.generators
        return len(gens) == 1 and not gens[0].is_zero() and gens[0].is_constant()

    def _reducers(self):
        if self._reducer_cache is None:
            self._reducer_cache = [
                _make_reducer(g.terms, g.leading_monomial(self.order)) for g in self.generators
            ]
        return self._reducer_cache

    def normal_form(self, poly: MultiPoly) -> MultiPoly:
        if poly.ring != self.ring:
            raise ValueError("polynomial lives in a different ring")
        nf = _normal_form_dict(poly.terms, self._reducers(), self.order, self.ring.field)
        return MultiPoly(self.ring, nf)

    def contains(self, poly: MultiPoly) -> bool:
        return self.normal_form(poly).is_zero()


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if not gens:
        raise ValueError("empty generator list")
    ring = gens[0].ring
    field = ring.field
    key = order.key
    one_mon = (0,) * ring.nvars

    seen: set = set()
    inputs: list[dict] = []
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
        if g.is_zero():
            continue
        lm = max(g.terms, key=key)
        terms = _monic_dict(dict(g.terms), lm, field)
        fingerprint = frozenset(terms.items())
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        inputs.append(terms)
    if not inputs:
        raise ValueError("all generators are zero")

    # entries grow only; `active` indexes the current basis
    entries: list[tuple] = []  # (lm, terms, reducer)
    active: list[int] = []
    active_reducers: list = []
    pairs: list[tuple] = []

    def rebuild_reducers():
        nonlocal active_reducers
        ordered = sorted(active, key=lambda g: key(entries[g][0]))
        active_reducers = [entries[g][2] for g in ordered]

    def add_generator(terms: dict, lm) -> None:
        nonlocal pairs, active
        h = len(entries)
        entries.append((lm, terms, _make_reducer(terms, lm)))
        lcms = {g: monomial_lcm(entries[g][0], lm) for g in active}
        cand = sorted(active, key=lambda g: (key(lcms[g]), g))
        kept: list[int] = []
        for g in cand:
            lg = lcms[g]
            drop = False
            for g2 in kept:
                if monomial_divides(lcms[g2], lg):
                    drop = True
                    break
            if not drop:
                kept.append(g)
        new_pairs = []
        for g in kept:
            glm = entries[g][0]
            if all(a == 0 or b == 0 for a, b in zip(glm, lm)):
                continue  # product criterion
            l = lcms[g]
            new_pairs.append((sum(l), key(l), g, h))
        survivors = []
        for item in pairs:
            _, _, i, j = item
            lij = monomial_lcm(entries[i][0], entries[j][0])
            if (
                monomial_divides(lm, lij)
                and monomial_lcm(entries[i][0], lm) != lij
                and monomial_lcm(entries[j][0], lm) != lij
            ):
                continue
            survivors.append(item)
        survivors.extend(new_pairs)
        heapq.heapify(survivors)
        pairs = survivors
        active = [g for g in active if not monomial_divides(lm, entries[g][0])]
        active.append(h)
        rebuild_reducers()

    # interreduce inputs first: redundant generators die cheaply here
    inputs.sort(key=lambda t: key(max(t, key=key)))
    for terms in inputs:
        nf = _normal_form_dict(terms, active_reducers, order, field)
        if not nf:
            continue
        lm = max(nf, key=key)
        if lm == one_mon:
            return GroebnerBasis(ring, order, [ring.one()])
        add_generator(_monic_dict(nf, lm, field), lm)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        s = _spoly_dict(entries[i][0], entries[i][1], entries[j][0], entries[j][1], field)
        if not s:
            continue
        nf = _normal_form_dict(s, active_reducers, order, field)
        if not nf:
            continue
        lm = max(nf, key=key)
        if lm == one_mon:
            return GroebnerBasis(ring, order, [ring.one()])
        add_generator(_monic_dict(nf, lm, field), lm)

    # final interreduction to the unique reduced basis
    final_terms = [entries[g][1] for g in active]
    changed = True
    while changed:
        changed = False
        final_terms.sort(key=lambda t: key(max(t, key=key)))
        for idx in range(len(final_terms)):
            others = []
            for k, t in enumerate(final_terms):
                if k == idx:
                    continue
                lm = max(t, key=key)
                others.append(_make_reducer(t, lm))
            nf = _normal_form_dict(final_terms[idx], others, order, field)
            if nf != final_terms[idx]:
                changed = True
                if nf:
                    lm = max(nf, key=key)
                    final_terms[idx] = _monic_dict(nf, lm, field)
                else:
                    del final_terms[idx]
                break
    final_terms.sort(key=lambda t: key(max(t, key=key)))
    return GroebnerBasis(ring, order, [MultiPoly(ring, t) for t in final_terms])


def normal_form(poly: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.normal_form(poly)


def _pure_power_bounds(gb: GroebnerBasis) -> list[int] | None:
    """Per-variable staircase bounds from pure-power leading monomials;
    None when some variable has none (infinite quotient)."""
    n = gb.ring.nvars
    bounds: list[int | None] = [None] * n
    for lm in gb.leading_monomials:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
        elif not support:
            return [0] * n  # unit ideal
    if any(b is None for b in bounds):
        return None
    return bounds  # type: ignore[return-value]


def quotient_basis(gb: GroebnerBasis) -> list[tuple[int, ...]] | None:
    """Standard monomials sorted ascending; None when infinite."""
    if gb._qbasis is not None:
        return gb._qbasis
    bounds = _pure_power_bounds(gb)
    if bounds is None:
        return None
    n = gb.ring.nvars
    lms = gb.leading_monomials
    # group leading monomials by the last variable they involve, so the DFS
    # can prune as soon as a prefix is divisible
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for lm in lms:
        last = max(i for i, e in enumerate(lm) if e)
        by_last[last].append(lm)
    out: list[tuple[int, ...]] = []
    prefix = [0] * n

    def rec(i: int):
        if i == n:
            out.append(tuple(prefix))
            return
        for e in range(bounds[i]):
            prefix[i] = e
            blocked = False
            for lm in by_last[i]:
                ok = True
                for t in range(i + 1):
                    if lm[t] > prefix[t]:
                        ok = False
                        break
                if ok:
                    blocked = True
                    break
            if not blocked:
                rec(i + 1)
        prefix[i] = 0

    rec(0)
    out.sort(key=gb.order.key)
    gb._qbasis = out
    return out


def quotient_dimension(gb: GroebnerBasis) -> int | None:
    """Number of standard monomials; None means the quotient is infinite."""
    qb = quotient_basis(gb)
    return None if qb is None else len(qb)


def affine_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the leading-term ideal: the largest number of
    variables supporting no leading monomial.  -1 for the unit ideal."""
    if gb.is_unit_ideal():
        return -1
    n = gb.ring.nvars
    lm_supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in gb.leading_monomials]
    best = 0
    for mask in range(1 << n):
        subset = frozenset(i for i in range(n) if mask >> i & 1)
        if len(subset) <= best:
            continue
        if all(not s <= subset for s in lm_supports):
            best = len(subset)
    return best


def _variable_matrices(gb: GroebnerBasis):
    """Column-major multiplication-by-variable matrices over the quotient
    basis, cached on the basis object."""
    if gb._var_matrices is not None:
        return gb._var_matrices
    qb = quotient_basis(gb)
    if qb is None:
        raise NotZeroDimensionalError("quotient is infinite-dimensional")
    index = {m: k for k, m in enumerate(qb)}
    field = gb.ring.field
    reducers = gb._reducers()
    mats = []
    for i in range(gb.ring.nvars):
        cols = []
        for mon in qb:
            shifted = mon[:i] + (mon[i] + 1,) + mon[i + 1 :]
            col = [field.zero()] * len(qb)
            if shifted in index:
                col[index[shifted]] = field.one()
            else:
                nf = _normal_form_dict({shifted: field.one()}, reducers, gb.order, field)
                for m, c in nf.items():
                    col[index[m]] = c
            cols.append(col)
        mats.append(cols)
    gb._var_matrices = mats
    return mats


def multiplication_matrix(gb: GroebnerBasis, form: MultiPoly):
    """Row-major matrix of multiplication by an affine-linear form in the
    standard-monomial basis of a zero-dimensional quotient."""
    if form.total_degree() > 1:
        raise ValueError("multiplication matrices are exposed for linear forms only")
    qb = quotient_basis(gb)
    if qb is None:
        raise NotZeroDimensionalError("quotient is infinite-dimensional")
    field = gb.ring.field
    size = len(qb)
    mats = _variable_matrices(gb)
    zero_mon = (0,) * gb.ring.nvars
    rows = [[field.zero()] * size for _ in range(size)]
    const = form.terms.get(zero_mon)
    if const is not None:
        for k in range(size):
            rows[k][k] = const
    for mon, coef in form.terms.items():
        if mon == zero_mon:
            continue
        i = next(k for k, e in enumerate(mon) if e)
        cols = mats[i]
        for j in range(size):
            for k, v in enumerate(cols[j]):
                if not field.eq_zero(v):
                    rows[k][j] = field.add(rows[k][j], field.mul(coef, v))
    return rows


def charpoly_of_form(gb: GroebnerBasis, form: MultiPoly) -> UniPoly:
    """Characteristic polynomial of the multiplication map by a linear form."""
    return _charpoly(gb.ring.field, multiplication_matrix(gb, form))
