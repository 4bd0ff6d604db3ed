"""Dense univariate polynomials over an exact field.

Used for the parameter variable of rational parametrizations and lifting
fibers: minimal polynomials, coordinate numerators, gcds, squarefree parts,
resultants.  Coefficients are stored ascending by degree with no trailing
zeros; ``deg(0) == -1``.
"""

from __future__ import annotations

from typing import Sequence

from .ring import CoefficientField, QQ

__all__ = ["UniPoly"]


class UniPoly:
    __slots__ = ("field", "c")

    def __init__(self, field: CoefficientField, coeffs: Sequence):
        self.field = field
        c = list(coeffs)
        while c and field.eq_zero(c[-1]):
            c.pop()
        self.c = c

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, field: CoefficientField) -> "UniPoly":
        return cls(field, [])

    @classmethod
    def one(cls, field: CoefficientField) -> "UniPoly":
        return cls(field, [field.one()])

    @classmethod
    def t(cls, field: CoefficientField) -> "UniPoly":
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def constant(cls, field: CoefficientField, value) -> "UniPoly":
        return cls(field, [value])

    @classmethod
    def from_ints(cls, field: CoefficientField, ints: Sequence[int]) -> "UniPoly":
        return cls(field, [field.from_int(k) for k in ints])

    # -- queries ----------------------------------------------------------------

    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == self.field.one()

    def leading(self):
        if not self.c:
            raise ValueError("zero polynomial")
        return self.c[-1]

    def coeff(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else self.field.zero()

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.c == other.c

    def __hash__(self):
        return hash((self.field, tuple(self.c)))

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        fld = self.field
        n = max(len(self.c), len(other.c))
        out = [fld.zero()] * n
        for i, v in enumerate(self.c):
            out[i] = v
        for i, v in enumerate(other.c):
            out[i] = fld.add(out[i], v)
        return UniPoly(fld, out)

    def __neg__(self) -> "UniPoly":
        fld = self.field
        return UniPoly(fld, [fld.neg(v) for v in self.c])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        fld = self.field
        if not self.c or not other.c:
            return UniPoly.zero(fld)
        p = fld.modulus
        out = [0 if p is not None else fld.zero()] * (len(self.c) + len(other.c) - 1)
        if p is not None:
            for i, a in enumerate(self.c):
                if a == 0:
                    continue
                for j, b in enumerate(other.c):
                    out[i + j] = (out[i + j] + a * b) % p
        else:
            for i, a in enumerate(self.c):
                if a == 0:
                    continue
                for j, b in enumerate(other.c):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(fld, out)

    def scalar_mul(self, k) -> "UniPoly":
        fld = self.field
        return UniPoly(fld, [fld.mul(v, k) for v in self.c])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by T**k."""
        if not self.c:
            return self
        return UniPoly(self.field, [self.field.zero()] * k + self.c)

    def monic(self) -> "UniPoly":
        if not self.c:
            return self
        lead = self.c[-1]
        if lead == self.field.one():
            return self
        return self.scalar_mul(self.field.inv(lead))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        fld = self.field
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.c)
        div = other.c
        dd = len(div) - 1
        inv_lead = fld.inv(div[-1])
        if len(rem) - 1 < dd:
            return UniPoly.zero(fld), UniPoly(fld, rem)
        quot = [fld.zero()] * (len(rem) - dd)
        p = fld.modulus
        for i in range(len(rem) - 1, dd - 1, -1):
            coef = rem[i]
            if fld.eq_zero(coef):
                continue
            factor = fld.mul(coef, inv_lead)
            quot[i - dd] = factor
            if p is not None:
                for j in range(dd + 1):
                    rem[i - dd + j] = (rem[i - dd + j] - factor * div[j]) % p
            else:
                for j in range(dd + 1):
                    rem[i - dd + j] = rem[i - dd + j] - factor * div[j]
        return UniPoly(fld, quot), UniPoly(fld, rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def mul_mod(self, other: "UniPoly", mod: "UniPoly") -> "UniPoly":
        return (self * other) % mod

    def pow_mod(self, e: int, mod: "UniPoly") -> "UniPoly":
        result = UniPoly.one(self.field) % mod
        base = self % mod
        while e:
            if e & 1:
                result = result.mul_mod(base, mod)
            e >>= 1
            if e:
                base = base.mul_mod(base, mod)
        return result

    # -- structure ----------------------------------------------------------------

    def derivative(self) -> "UniPoly":
        fld = self.field
        return UniPoly(fld, [fld.mul(v, fld.from_int(i)) for i, v in enumerate(self.c)][1:])

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly", "UniPoly"]:
        """(g, s, t) with g = s*self + t*other and g monic (or zero)."""
        fld = self.field
        r0, r1 = self, other
        s0, s1 = UniPoly.one(fld), UniPoly.zero(fld)
        t0, t1 = UniPoly.zero(fld), UniPoly.one(fld)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        k = fld.inv(r0.leading())
        return r0.scalar_mul(k), s0.scalar_mul(k), t0.scalar_mul(k)

    def inverse_mod(self, mod: "UniPoly") -> "UniPoly":
        g, s, _ = self.xgcd(mod)
        if g.degree() != 0:
            raise ZeroDivisionError("element is a zero divisor modulo the given polynomial")
        return s % mod

    def squarefree_part(self) -> "UniPoly":
        """The product of the distinct irreducible factors, monic."""
        if self.is_zero():
            return self
        if self.degree() == 0:
            return UniPoly.one(self.field)
        g = self.gcd(self.derivative())
        if g.degree() == 0:
            return self.monic()
        return (self // g).monic()

    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        return self.gcd(self.derivative()).degree() == 0

    def evaluate(self, x):
        fld = self.field
        acc = fld.zero()
        for v in reversed(self.c):
            acc = fld.add(fld.mul(acc, x), v)
        return acc

    def compose_mod(self, inner: "UniPoly", mod: "UniPoly") -> "UniPoly":
        """self(inner) reduced mod a given polynomial, by Horner."""
        fld = self.field
        acc = UniPoly.zero(fld)
        for v in reversed(self.c):
            acc = acc.mul_mod(inner, mod) + UniPoly.constant(fld, v)
        return acc % mod

    def resultant(self, other: "UniPoly"):
        """res(self, other) over the field, by the Euclidean remainder sequence."""
        fld = self.field
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return fld.zero()
        res = fld.one()
        while True:
            if b.degree() == 0:
                # res(a, const) = const ** deg(a)
                acc = fld.one()
                for _ in range(a.degree()):
                    acc = fld.mul(acc, b.c[0])
                return fld.mul(res, acc)
            r = a % b
            if r.is_zero():
                return fld.zero()
            # res(a,b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * res(b, r)
            sign = fld.one() if (a.degree() * b.degree()) % 2 == 0 else fld.neg(fld.one())
            lead_pow = fld.one()
            for _ in range(a.degree() - r.degree()):
                lead_pow = fld.mul(lead_pow, b.leading())
            res = fld.mul(res, fld.mul(sign, lead_pow))
            a, b = b, r

    @classmethod
    def interpolate(cls, field: CoefficientField, points: Sequence[tuple]) -> "UniPoly":
        """Lagrange interpolation through distinct sample points."""
        total = cls.zero(field)
        xs = [x for x, _ in points]
        for i, (xi, yi) in enumerate(points):
            num = cls.one(field)
            denom = field.one()
            for j, xj in enumerate(xs):
                if i == j:
                    continue
                num = num * cls(field, [field.neg(xj), field.one()])
                denom = field.mul(denom, field.sub(xi, xj))
            total = total + num.scalar_mul(field.div(yi, denom))
        return total

    def format(self, var: str = "T") -> str:
        if not self.c:
            return "0"
        fld = self.field
        out = ""
        for i in range(len(self.c) - 1, -1, -1):
            v = self.c[i]
            if fld.eq_zero(v):
                continue
            if fld.modulus is None and v < 0:
                sign, mag = "-", -v
            else:
                sign, mag = "+", v
            mag_str = fld.format(mag)
            if i == 0:
                body = mag_str
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag_str == "1" else f"{mag_str}*{mono}"
            if not out:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"UniPoly({self.format()})"
