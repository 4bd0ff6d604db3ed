"""Exact coefficient fields and sparse multivariate polynomials.

Coefficients are either `fractions.Fraction` (the rationals) or plain ints
in ``[0, p)`` for a prime field GF(p).  There is no floating point anywhere;
every operation is exact.  Values are immutable after construction, so they
can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "CoefficientField",
    "QQ",
    "DEFAULT_PRIME",
    "Ring",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "MultiPoly",
    "RingMismatchError",
    "CoefficientError",
]

# Largest prime below 2**31; products of two residues fit comfortably in
# 64-bit intermediates.
DEFAULT_PRIME = 2147483647

# A few spare primes of the same size, used when a computation is replayed
# modulo a second prime as a consistency guard.
SPARE_PRIMES = (2147483629, 2147483587, 2147483579, 2147483563)


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class CoefficientError(ValueError):
    """A literal has no image in the coefficient field."""


def _is_probable_prime(n: int) -> bool:
    # Deterministic Miller-Rabin for n < 3.3 * 10**24.
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CoefficientField:
    """The rationals (``modulus is None``) or GF(modulus) for a word-size prime."""

    modulus: int | None = None

    def __post_init__(self):
        p = self.modulus
        if p is not None:
            if not (2 <= p < 2**32):
                raise ValueError(f"prime field modulus {p} out of supported range")
            if not _is_probable_prime(p):
                raise ValueError(f"modulus {p} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    # -- element construction -------------------------------------------------

    def zero(self):
        return 0 if self.modulus is not None else Fraction(0)

    def one(self):
        return 1 if self.modulus is not None else Fraction(1)

    def from_int(self, k: int):
        p = self.modulus
        return k % p if p is not None else Fraction(k)

    def from_fraction(self, fr: Fraction):
        p = self.modulus
        if p is None:
            return Fraction(fr)
        num, den = fr.numerator % p, fr.denominator % p
        if den == 0:
            raise CoefficientError(f"denominator {fr.denominator} vanishes mod {p}")
        return num * pow(den, -1, p) % p

    def ratio(self, num: int, den: int):
        if den == 0:
            raise CoefficientError("zero denominator")
        p = self.modulus
        if p is None:
            return Fraction(num, den)
        d = den % p
        if d == 0:
            raise CoefficientError(f"denominator {den} vanishes mod {p}")
        return num % p * pow(d, -1, p) % p

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        p = self.modulus
        return (a + b) % p if p is not None else a + b

    def sub(self, a, b):
        p = self.modulus
        return (a - b) % p if p is not None else a - b

    def mul(self, a, b):
        p = self.modulus
        return a * b % p if p is not None else a * b

    def neg(self, a):
        p = self.modulus
        return -a % p if p is not None else -a

    def inv(self, a):
        p = self.modulus
        if p is not None:
            if a % p == 0:
                raise ZeroDivisionError("inverse of zero in prime field")
            return pow(a, -1, p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq_zero(self, a) -> bool:
        p = self.modulus
        return (a % p == 0) if p is not None else a == 0

    def format(self, a) -> str:
        if self.modulus is not None:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __repr__(self):
        return "QQ" if self.modulus is None else f"GF({self.modulus})"


QQ = CoefficientField(None)


# ---------------------------------------------------------------------------
# Monomial orders.  Monomials are exponent tuples of fixed length.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A term order; ``kind`` is 'grevlex' or 'lex', with an optional variable
    permutation applied before comparison."""

    kind: str = "grevlex"
    permutation: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    def key(self, mon: tuple[int, ...]):
        """Sort key: key(a) > key(b) iff a > b in this order."""
        if self.permutation is not None:
            mon = tuple(mon[j] for j in self.permutation)
        if self.kind == "grevlex":
            return (sum(mon), tuple(-e for e in reversed(mon)))
        return mon

    def heap_key(self, mon: tuple[int, ...]):
        """Negated key for min-heaps: smallest heap_key = largest monomial."""
        if self.permutation is not None:
            mon = tuple(mon[j] for j in self.permutation)
        if self.kind == "grevlex":
            return (-sum(mon), tuple(reversed(mon)))
        return tuple(-e for e in mon)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomial_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True when a | b, i.e. every exponent of a is <= that of b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_div(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(num, den))


def monomial_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Rings and polynomials.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """A polynomial ring context: ordered variable names over a field."""

    variables: tuple[str, ...]
    field: CoefficientField = QQ

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.constant(self.field.one())

    def constant(self, c) -> "MultiPoly":
        if self.field.eq_zero(c):
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * self.nvars: c})

    def variable(self, i: int) -> "MultiPoly":
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return MultiPoly(self, {mon: self.field.one()})

    def gens(self) -> list["MultiPoly"]:
        return [self.variable(i) for i in range(self.nvars)]

    def from_int(self, k: int) -> "MultiPoly":
        return self.constant(self.field.from_int(k))

    def extend(self, name: str) -> "Ring":
        """A ring with one more variable appended (name uniquified if needed)."""
        candidate = name
        k = 1
        while candidate in self.variables:
            candidate = f"{name}{k}"
            k += 1
        return Ring(self.variables + (candidate,), self.field)

    def __repr__(self):
        return f"Ring({','.join(self.variables)}; {self.field!r})"


class MultiPoly:
    """A sparse polynomial: map from exponent tuples to nonzero coefficients.

    Instances are treated as immutable; all operations return new values.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        self.terms = dict(terms)

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        zero_mon = (0,) * self.ring.nvars
        return self.terms.get(zero_mon, self.ring.field.zero())

    def total_degree(self) -> int:
        """Max total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def support_variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i)
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _check(self, other: "MultiPoly"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        p = self.ring.field.modulus
        out = dict(self.terms)
        if p is not None:
            for m, c in other.terms.items():
                v = (out.get(m, 0) + c) % p
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        else:
            for m, c in other.terms.items():
                v = out.get(m, 0) + c
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return MultiPoly(self.ring, out)

    def __neg__(self) -> "MultiPoly":
        p = self.ring.field.modulus
        if p is not None:
            return MultiPoly(self.ring, {m: p - c for m, c in self.terms.items()})
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        p = self.ring.field.modulus
        out: dict = {}
        if p is not None:
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    v = (out.get(m, 0) + c1 * c2) % p
                    if v:
                        out[m] = v
                    elif m in out:
                        del out[m]
        else:
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    v = out.get(m, 0) + c1 * c2
                    if v:
                        out[m] = v
                    elif m in out:
                        del out[m]
        return MultiPoly(self.ring, out)

    def scalar_mul(self, c) -> "MultiPoly":
        fld = self.ring.field
        if fld.eq_zero(c):
            return self.ring.zero()
        p = fld.modulus
        if p is not None:
            return MultiPoly(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return MultiPoly(self.ring, {m: v * c for m, v in self.terms.items()})

    def monic(self, order: MonomialOrder = GREVLEX) -> "MultiPoly":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        return self.scalar_mul(self.ring.field.inv(lc))

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            if base_needed:
                base = base * base
            e >>= 1
        return result

    # -- calculus / evaluation ---------------------------------------------------

    def partial_derivative(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        fld = self.ring.field
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            nm = m[:i] + (e - 1,) + m[i + 1 :]
            v = fld.add(out.get(nm, fld.zero()), fld.mul(c, fld.from_int(e)))
            if not fld.eq_zero(v):
                out[nm] = v
            elif nm in out:
                del out[nm]
        return MultiPoly(self.ring, out)

    def evaluate(self, point: Sequence):
        """Exact value at a point given as field elements, one per variable."""
        if len(point) != self.ring.nvars:
            raise ValueError("point length does not match variable count")
        fld = self.ring.field
        # cache powers per variable
        powers: list[dict[int, object]] = [{0: fld.one()} for _ in point]
        total = fld.zero()
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    base = point[i]
                    acc = cache[max(cache)]
                    for k in range(max(cache) + 1, e + 1):
                        acc = fld.mul(acc, base)
                        cache[k] = acc
                term = fld.mul(term, cache[e])
            total = fld.add(total, term)
        return total

    def substitute(self, assignments: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Compose with polynomials; every variable must be assigned, and all
        images must live in one common ring."""
        names = self.ring.variables
        try:
            images = [assignments[name] for name in names]
        except KeyError as exc:
            raise RingMismatchError(f"no assignment for variable {exc}") from None
        target = images[0].ring
        for img in images:
            if img.ring != target:
                raise RingMismatchError("assignment images live in different rings")
        if target.field != self.ring.field:
            raise RingMismatchError("source and target fields differ")
        pow_cache: list[dict[int, MultiPoly]] = [{0: target.one()} for _ in images]

        def power(i: int, e: int) -> MultiPoly:
            cache = pow_cache[i]
            if e not in cache:
                top = max(cache)
                acc = cache[top]
                for k in range(top + 1, e + 1):
                    acc = acc * images[i]
                    cache[k] = acc
            return cache[e]

        total = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    # -- presentation ------------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def format(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        fld = self.ring.field
        names = self.ring.variables
        chunks: list[str] = []
        for mon, coef in self.sorted_terms(order):
            factors = []
            for name, e in zip(names, mon):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if fld.modulus is None and coef < 0:
                sign, mag = "-", -coef
            else:
                sign, mag = "+", coef
            mag_str = fld.format(mag)
            if factors and mag_str == "1":
                body = "*".join(factors)
            elif factors:
                body = mag_str + "*" + "*".join(factors)
            else:
                body = mag_str
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def jac_row(poly: MultiPoly) -> list[MultiPoly]:
    """All partial derivatives of one polynomial, as a gradient row."""
    return [poly.partial_derivative(i) for i in range(poly.ring.nvars)]


def poly_from_pairs(ring: Ring, pairs: Iterable[tuple[tuple[int, ...], object]]) -> MultiPoly:
    fld = ring.field
    out: dict = {}
    for m, c in pairs:
        v = fld.add(out.get(m, fld.zero()), c)
        if fld.eq_zero(v):
            out.pop(m, None)
        else:
            out[m] = v
    return MultiPoly(ring, out)


def reduce_poly_mod(poly: MultiPoly, prime: int) -> MultiPoly:
    """Image of a rational polynomial in GF(prime)[same variables]."""
    target_field = CoefficientField(prime)
    target = Ring(poly.ring.variables, target_field)
    if poly.ring.field.modulus is not None:
        if poly.ring.field.modulus != prime:
            raise ValueError("polynomial already lives in a different prime field")
        return MultiPoly(target, dict(poly.terms))
    out: dict = {}
    for m, c in poly.terms.items():
        v = target_field.from_fraction(c)
        if v:
            out[m] = v
    return MultiPoly(target, out)
