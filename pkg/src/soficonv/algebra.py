"""Exact arithmetic in a fixed real number field Q(beta).

Elements are dense rational coefficient vectors reduced modulo the monic
minimal polynomial of beta; no floating point enters any decision path
(floats appear only in display helpers).  Sign determination combines a
symbolic zero test with bisection refinement of a rational isolating
interval for beta.  The interval is cached on the descriptor and only ever
narrows, so repeated comparisons against the same base amortize and the
descriptor stays safe to share.

Degree-1 polynomials are accepted so that integer bases run through the
same code path as genuine algebraic ones; for them the root is rational
and no refinement is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError

__all__ = ["FieldDescriptor", "FieldElement", "as_fraction"]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and strings ("3/2", "1.5") to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, constant-first coefficient lists

def _poly_trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_eval(cs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _poly_divmod(a, b):
    """Quotient and remainder of a by b over Q; b must be nonzero."""
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    if len(a) <= db:
        return [], _poly_trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        f = a[i] / lead
        if f:
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return _poly_trim(q), _poly_trim(a[:db])


def _poly_mod_inverse(a, m):
    """Inverse of a modulo m over Q via the extended Euclidean algorithm.

    Requires gcd(a, m) to be a nonzero constant, which holds whenever m is
    irreducible and a is nonzero modulo m.
    """
    old_r, r = list(m), _poly_trim(a)
    old_t, t = [], [Fraction(1)]
    while r:
        q, rem = _poly_divmod(old_r, r)
        old_r, r = r, rem
        qt = _poly_mul(q, t)
        new_t = [x - y for x, y in
                 zip(old_t + [Fraction(0)] * max(0, len(qt) - len(old_t)),
                     qt + [Fraction(0)] * max(0, len(old_t) - len(qt)))]
        old_t, t = t, _poly_trim(new_t)
    if len(old_r) != 1:
        raise DomainError(
            "element has no inverse; minimal polynomial is not irreducible",
            code="BAD_DESCRIPTOR")
    g = old_r[0]
    return [c / g for c in old_t]


# ---------------------------------------------------------------------------


class FieldDescriptor:
    """A base field Q(beta): integer minimal polynomial plus root interval.

    ``minpoly`` is constant-first, [c0, c1, ..., 1] standing for
    c0 + c1*x + ... + x^n, and must be monic of degree >= 1.  ``interval``
    is a rational pair (lo, hi) with 1 < lo, minpoly(lo)*minpoly(hi) < 0,
    and exactly one root between them.  Irreducibility over Q is a caller
    contract and is not checked here.
    """

    __slots__ = ("minpoly", "interval", "_lo", "_hi", "_sign_at_lo")

    def __init__(self, minpoly: Sequence, interval):
        coeffs = []
        for c in minpoly:
            f = as_fraction(c)
            if f.denominator != 1:
                raise DomainError("minimal polynomial coefficients must be integers",
                                  code="BAD_DESCRIPTOR")
            coeffs.append(int(f))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise DomainError("minimal polynomial must have degree >= 1",
                              code="BAD_DESCRIPTOR")
        if coeffs[-1] != 1:
            raise DomainError("minimal polynomial must be monic",
                              code="BAD_DESCRIPTOR")
        lo, hi = as_fraction(interval[0]), as_fraction(interval[1])
        if not lo > 1:
            raise DomainError("the base must exceed 1: need interval lo > 1",
                              code="BAD_DESCRIPTOR")
        if lo >= hi:
            raise DomainError("empty isolating interval", code="BAD_DESCRIPTOR")
        v_lo = _poly_eval(coeffs, lo)
        v_hi = _poly_eval(coeffs, hi)
        if v_lo == 0 or v_hi == 0 or (v_lo > 0) == (v_hi > 0):
            raise DomainError("minpoly must change sign across the isolating interval",
                              code="BAD_DESCRIPTOR")
        self.minpoly = tuple(coeffs)
        self.interval = (lo, hi)
        self._sign_at_lo = 1 if v_lo > 0 else -1
        if len(coeffs) == 2:
            # rational root of monic x + c0; comparisons never need bisection
            root = -Fraction(coeffs[0])
            self._lo = self._hi = root
        else:
            self._lo = lo
            self._hi = hi

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def key(self):
        return (self.minpoly, self.interval)

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldDescriptor(minpoly={list(self.minpoly)}, interval={self.interval})"

    # -- element constructors ------------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        return FieldElement(self, coeffs)

    def zero(self) -> "FieldElement":
        return FieldElement(self, [])

    def one(self) -> "FieldElement":
        return FieldElement(self, [1])

    def from_rational(self, q) -> "FieldElement":
        return FieldElement(self, [as_fraction(q)])

    def beta(self) -> "FieldElement":
        if self.degree == 1:
            return self.from_rational(-Fraction(self.minpoly[0]))
        return FieldElement(self, [0, 1])

    # -- root isolation ------------------------------------------------------

    def refined_interval(self):
        """Current (possibly narrowed) isolating interval."""
        return (self._lo, self._hi)

    def _refine_once(self):
        lo, hi = self._lo, self._hi
        if lo == hi:
            return
        mid = (lo + hi) / 2
        v = _poly_eval(self.minpoly, mid)
        if v == 0:
            raise DomainError("rational root hit during refinement; "
                              "minimal polynomial is reducible",
                              code="BAD_DESCRIPTOR")
        if (v > 0) == (self._sign_at_lo > 0):
            self._lo = mid
        else:
            self._hi = mid

    def _range_of(self, cs):
        """Rational bounds on c(beta) from the current interval (lo > 0)."""
        lo, hi = self._lo, self._hi
        lo_v = hi_v = Fraction(0)
        plo = phi = Fraction(1)
        for c in cs:
            if c > 0:
                lo_v += c * plo
                hi_v += c * phi
            elif c < 0:
                lo_v += c * phi
                hi_v += c * plo
            plo *= lo
            phi *= hi
        return lo_v, hi_v

    def root_float(self, digits: int = 15) -> float:
        eps = Fraction(1, 10 ** (digits + 2))
        while self._hi - self._lo >= eps:
            self._refine_once()
        return float((self._lo + self._hi) / 2)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"minpoly": [int(c) for c in self.minpoly],
                "interval": [str(self.interval[0]), str(self.interval[1])]}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldDescriptor":
        return cls(obj["minpoly"], (obj["interval"][0], obj["interval"][1]))


class FieldElement:
    """An element of Q(beta) in the power basis 1, beta, ..., beta^(deg-1).

    Values are immutable; all arithmetic is exact and reduced modulo the
    descriptor's minimal polynomial.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs):
        cs = [as_fraction(c) for c in coeffs]
        if len(cs) > field.degree:
            raise ValueError("coefficient vector longer than field degree")
        cs += [Fraction(0)] * (field.degree - len(cs))
        self.field = field
        self.coeffs = tuple(cs)

    # -- plumbing ------------------------------------------------------------

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field.key != self.field.key:
                raise DomainError("elements belong to different fields",
                                  code="DESCRIPTOR_MISMATCH")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*b^{i}")
        return "<" + (" + ".join(terms) if terms else "0") + ">"

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.key == other.field.key and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.field.from_rational(other).coeffs
        return NotImplemented

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _poly_mul(list(self.coeffs), list(o.coeffs))
        _, rem = _poly_divmod(prod, list(self.field.minpoly))
        return FieldElement(self.field, rem)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DomainError("division by zero", code="DIVISION_BY_ZERO")
        inv = _poly_mod_inverse(list(self.coeffs), list(self.field.minpoly))
        return FieldElement(self.field, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- exact ordering --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def sign(self) -> int:
        """Exact sign of the real embedding; decided symbolically when the
        element is rational, otherwise by interval refinement.  Terminates
        for every element of an irreducible field."""
        cs = _poly_trim(self.coeffs)
        if not cs:
            return 0
        if len(cs) == 1:
            return 1 if cs[0] > 0 else -1
        field = self.field
        while True:
            lo_v, hi_v = field._range_of(cs)
            if lo_v > 0:
                return 1
            if hi_v < 0:
                return -1
            field._refine_once()

    def compare(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare with {other!r}")
        return (self - o).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- views ---------------------------------------------------------------

    def as_integer(self) -> Optional[int]:
        """The element as a Python int when it is one, else None."""
        cs = _poly_trim(self.coeffs)
        if not cs:
            return 0
        if len(cs) == 1 and cs[0].denominator == 1:
            return int(cs[0])
        return None

    def as_rational(self) -> Optional[Fraction]:
        cs = _poly_trim(self.coeffs)
        if not cs:
            return Fraction(0)
        if len(cs) == 1:
            return cs[0]
        return None

    def to_float(self, digits: int = 15) -> float:
        """Floating approximation for display; never used in decisions."""
        cs = _poly_trim(self.coeffs)
        if not cs:
            return 0.0
        if len(cs) == 1:
            return float(cs[0])
        eps = Fraction(1, 10 ** (digits + 2))
        field = self.field
        while True:
            lo_v, hi_v = field._range_of(cs)
            if hi_v - lo_v < eps:
                return float((lo_v + hi_v) / 2)
            field._refine_once()
