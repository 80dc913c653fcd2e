"""Truncated formal power series over exact coefficient rings, dense integer
polynomials in z, and the explicit product factorisations built from them.

A series value always carries its truncation order; arithmetic truncates to
the smallest order involved and equality only ever compares the common
prefix, so a result can never silently claim more precision than it has.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .sequences import WeightPolynomial, render_coeffs, stern, twisted


class Ring(Enum):
    INTEGER = "integer"
    RATIONAL = "rational"
    POLY_W = "integer-polynomial-in-w"


class DivisionError(ArithmeticError):
    """Exact series division impossible in the requested ring."""


class InternalCheckError(RuntimeError):
    """Two supposedly equivalent computation routes disagreed."""


def _zero(ring: Ring):
    if ring is Ring.INTEGER:
        return 0
    if ring is Ring.RATIONAL:
        return Fraction(0)
    return WeightPolynomial((0,))


def _one(ring: Ring):
    if ring is Ring.INTEGER:
        return 1
    if ring is Ring.RATIONAL:
        return Fraction(1)
    return WeightPolynomial((1,))


def _coerce(ring: Ring, x):
    if ring is Ring.INTEGER:
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise TypeError(f"{x!r} is not an integer-ring element")
    if ring is Ring.RATIONAL:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"{x!r} is not a rational-ring element")
    if isinstance(x, WeightPolynomial):
        return x
    if isinstance(x, int):
        return WeightPolynomial((x,))
    raise TypeError(f"{x!r} is not a w-polynomial-ring element")


def _is_unit(ring: Ring, x) -> bool:
    if ring is Ring.INTEGER:
        return x in (1, -1)
    if ring is Ring.RATIONAL:
        return x != 0
    return isinstance(x, WeightPolynomial) and x.degree == 0 and x.coeffs[0] in (1, -1)


def _unit_div(ring: Ring, a, unit):
    if ring is Ring.RATIONAL:
        return a / unit
    if ring is Ring.INTEGER:
        return a * unit  # unit is +-1
    return a * unit.coeffs[0]


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients 0..order of a formal power series; coefficients beyond
    `order` are unknown and never invented."""

    coeffs: tuple
    ring: Ring = Ring.INTEGER

    @classmethod
    def from_coeffs(cls, coeffs, ring: Ring = Ring.INTEGER, order: int | None = None):
        cs = [_coerce(ring, c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be a natural number")
            if order < len(cs) - 1:
                cs = cs[: order + 1]
            else:
                cs.extend(_zero(ring) for _ in range(order + 1 - len(cs)))
        if not cs:
            raise ValueError("a series carries at least its constant coefficient")
        return cls(tuple(cs), ring)

    @classmethod
    def zero(cls, order: int, ring: Ring = Ring.INTEGER):
        return cls.from_coeffs([], ring, order)

    @classmethod
    def one(cls, order: int, ring: Ring = Ring.INTEGER):
        return cls.from_coeffs([_one(ring)], ring, order)

    @classmethod
    def constant(cls, value, order: int, ring: Ring = Ring.INTEGER):
        return cls.from_coeffs([value], ring, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int):
        if n < 0 or n > self.order:
            raise ValueError(f"coefficient {n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def valuation(self) -> int | None:
        """Index of the lowest nonzero stored coefficient, None if all zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise a truncation order")
        return TruncatedSeries(self.coeffs[: order + 1], self.ring)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by z^k; all shifted coefficients stay known, so the
        order grows by k."""
        if k < 0:
            raise ValueError("shift exponent must be a natural number")
        zero = _zero(self.ring)
        return TruncatedSeries((zero,) * k + self.coeffs, self.ring)

    def to_ring(self, ring: Ring) -> "TruncatedSeries":
        if ring is self.ring:
            return self
        return TruncatedSeries.from_coeffs(self.coeffs, ring)

    def _binop_check(self, other) -> int:
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries operand")
        if other.ring is not self.ring:
            raise TypeError(
                f"ring mismatch: {self.ring.value} vs {other.ring.value}"
            )
        return min(self.order, other.order)

    def __add__(self, other):
        n = self._binop_check(other)
        return TruncatedSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), self.ring
        )

    def __sub__(self, other):
        n = self._binop_check(other)
        return TruncatedSeries(
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)), self.ring
        )

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.ring)

    def scale(self, c) -> "TruncatedSeries":
        c = _coerce(self.ring, c)
        return TruncatedSeries(tuple(c * x for x in self.coeffs), self.ring)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        n = self._binop_check(other)
        a = self.coeffs
        b = other.coeffs
        # iterate the operand with fewer nonzero coefficients on the outside
        if sum(1 for c in a[: n + 1] if c) > sum(1 for c in b[: n + 1] if c):
            a, b = b, a
        out = [_zero(self.ring)] * (n + 1)
        for i in range(n + 1):
            ci = a[i]
            if not ci:
                continue
            for j in range(n + 1 - i):
                cj = b[j]
                if cj:
                    out[i + j] += ci * cj
        return TruncatedSeries(tuple(out), self.ring)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.ring is not self.ring:
            return False
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        return render_coeffs(self.coeffs, "z")

    def to_json_coeffs(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a - b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def div_exact(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """Exact quotient q with q*den = num up to order min(orders) - val(den).

    The lowest nonzero denominator coefficient must be a unit of the ring;
    over the integers that means +-1, and a quotient needing non-integer
    coefficients is an error rather than a silent ring switch.
    """
    if num.ring is not den.ring:
        raise TypeError(f"ring mismatch: {num.ring.value} vs {den.ring.value}")
    ring = num.ring
    v = den.valuation()
    if v is None:
        raise DivisionError("division by the zero series")
    if any(num.coeffs[i] for i in range(min(v, num.order + 1))):
        raise DivisionError("numerator valuation is below denominator valuation")
    lead = den.coeffs[v]
    if not _is_unit(ring, lead):
        raise DivisionError(
            f"denominator leading coefficient {lead!r} is not a unit of the {ring.value} ring"
        )
    n_out = min(num.order, den.order) - v
    if n_out < 0:
        raise DivisionError("operand orders are too small for the quotient")
    m = num.coeffs[v:]
    d = den.coeffs[v:]
    den_terms = [(j, d[j]) for j in range(1, n_out + 1) if d[j]]
    q = []
    for n in range(n_out + 1):
        acc = m[n]
        for j, dj in den_terms:
            if j > n:
                break
            acc = acc - q[n - j] * dj
        q.append(_unit_div(ring, acc, lead))
    return TruncatedSeries(tuple(q), ring)


def substitute_power(a: TruncatedSeries, k: int, order: int | None = None) -> TruncatedSeries:
    """a(z^k).  Coefficient k*i holds a's coefficient i, everything else is
    zero; the result is known through k*order(a) + k - 1."""
    if k < 2:
        raise ValueError("substitution exponent must be at least 2")
    known = a.order * k + k - 1
    if order is None:
        order = a.order
    if order > known:
        raise ValueError(f"a(z^{k}) is only determined to order {known}")
    zero = _zero(a.ring)
    out = [zero] * (order + 1)
    for i, c in enumerate(a.coeffs):
        if i * k > order:
            break
        out[i * k] = c
    return TruncatedSeries(tuple(out), a.ring)


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the order drops by one."""
    if a.order < 1:
        raise ValueError("derivative needs order at least 1")
    return TruncatedSeries(
        tuple(i * a.coeffs[i] for i in range(1, a.order + 1)), a.ring
    )


def log_derivative(a: TruncatedSeries, strip_valuation: bool = False) -> TruncatedSeries:
    """a'/a, requiring a unit constant coefficient.

    With strip_valuation, a = z^v * u is accepted and the result is u'/u;
    the caller accounts for the missing v/z term itself.
    """
    u = a
    if strip_valuation:
        v = a.valuation()
        if v is None:
            raise DivisionError("logarithmic derivative of the zero series")
        if v:
            u = TruncatedSeries(a.coeffs[v:], a.ring)
    if not _is_unit(u.ring, u.coeffs[0]):
        raise DivisionError(
            f"constant coefficient {u.coeffs[0]!r} is not a unit of the {u.ring.value} ring"
        )
    return div_exact(derivative(u), u)


def section(a: TruncatedSeries, r: int, k: int) -> TruncatedSeries:
    """Coefficient subsequence n -> a(r + n*k)."""
    if k < 2:
        raise ValueError("section base must be at least 2")
    if not 0 <= r < k:
        raise ValueError(f"section index must satisfy 0 <= r < {k}")
    if a.order < r:
        raise ValueError("order too small for this section")
    n_out = (a.order - r) // k
    return TruncatedSeries(tuple(a.coeffs[r + i * k] for i in range(n_out + 1)), a.ring)


# ---------------------------------------------------------------------------
# Dense integer polynomials in z.
# ---------------------------------------------------------------------------


def _trim_poly(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if not c:
        c = [0]
    return tuple(c)


@dataclass(frozen=True)
class DensePolynomial:
    """Dense integer polynomial in z; trailing coefficient nonzero unless
    the polynomial is zero."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim_poly(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> int:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @staticmethod
    def _lift(other) -> "DensePolynomial | None":
        if isinstance(other, DensePolynomial):
            return other
        if isinstance(other, int):
            return DensePolynomial((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DensePolynomial(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return DensePolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if sum(1 for c in a if c) > sum(1 for c in b if c):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for i, ci in enumerate(a):
            if ci:
                for j, cj in enumerate(b):
                    if cj:
                        out[i + j] += ci * cj
        return DensePolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("polynomial powers need a natural exponent")
        result = DensePolynomial((1,))
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("z-poly", self.coeffs))

    def derivative(self) -> "DensePolynomial":
        if self.degree == 0:
            return DensePolynomial((0,))
        return DensePolynomial(tuple(i * self.coeffs[i] for i in range(1, self.degree + 1)))

    def substitute_power(self, k: int) -> "DensePolynomial":
        """z -> z^k."""
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        out = [0] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return DensePolynomial(tuple(out))

    def shift(self, k: int) -> "DensePolynomial":
        """Multiply by z^k."""
        if k < 0:
            raise ValueError("shift exponent must be a natural number")
        return DensePolynomial((0,) * k + self.coeffs)

    def to_series(self, order: int, ring: Ring = Ring.INTEGER) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(self.coeffs, ring, order)

    def __str__(self) -> str:
        return render_coeffs(self.coeffs, "z")


def infinite_product(poly: DensePolynomial, k: int, order: int,
                     ring: Ring = Ring.INTEGER) -> TruncatedSeries:
    """Product of poly(z^{k^m}) over all m with k^m <= order, truncated at
    `order`; later factors are 1 modulo z^{order+1}."""
    if k < 2:
        raise ValueError("product base must be at least 2")
    if poly.constant_term != 1:
        raise ValueError("infinite products need a polynomial with P(0) = 1")
    acc = TruncatedSeries.one(order, ring)
    step = 1
    while step <= order:
        factor = poly.substitute_power(step).to_series(order, ring)
        acc = acc * factor
        step *= k
    return acc


def stern_series(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([stern(n) for n in range(order + 1)])


def twisted_series(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([twisted(n) for n in range(order + 1)])


def carlitz_series(order: int) -> TruncatedSeries:
    """z times the base-2 infinite product of 1 + z + z^2; coefficient n is
    the Stern value s(n)."""
    if order == 0:
        return TruncatedSeries.zero(0)
    prod = infinite_product(DensePolynomial((1, 1, 1)), 2, order - 1)
    return prod.shift(1)


def _plus_trinomial(i: int) -> DensePolynomial:
    """1 + z^{2^i} + z^{2^{i+1}}."""
    out = [0] * (2 ** (i + 1) + 1)
    out[0] = 1
    out[2**i] = 1
    out[2 ** (i + 1)] = 1
    return DensePolynomial(tuple(out))


def _minus_trinomial(i: int) -> DensePolynomial:
    """1 - z^{2^i} + z^{2^{i+1}}."""
    out = [0] * (2 ** (i + 1) + 1)
    out[0] = 1
    out[2**i] = -1
    out[2 ** (i + 1)] = 1
    return DensePolynomial(tuple(out))


def psi_from_twisted(e: int) -> DensePolynomial:
    """The sign-corrected window of twisted values over [3*2^e, 6*2^e],
    read as a polynomial."""
    if e < 0:
        raise ValueError("e must be a natural number")
    m = 3 << e
    sign = -1 if e % 2 else 1
    return DensePolynomial(tuple(sign * twisted(m + i) for i in range(m + 1)))


def psi_factored_plain(e: int) -> DensePolynomial:
    """z(1+z^{2^e}) times the product of 1+z^{2^i}+z^{2^{i+1}} for i < e."""
    if e < 0:
        raise ValueError("e must be a natural number")
    binom = [0] * (2**e + 1)
    binom[0] = 1
    binom[2**e] = 1
    acc = DensePolynomial(tuple(binom)).shift(1)
    for i in range(e):
        acc = acc * _plus_trinomial(i)
    return acc


def psi_factored_signed(e: int) -> DensePolynomial:
    """z(1+z^{2^e})(1+z+z^2)^e times the product over i <= e-2 of
    (1-z^{2^i}+z^{2^{i+1}})^{e-1-i}."""
    if e < 0:
        raise ValueError("e must be a natural number")
    binom = [0] * (2**e + 1)
    binom[0] = 1
    binom[2**e] = 1
    acc = DensePolynomial(tuple(binom)).shift(1)
    acc = acc * DensePolynomial((1, 1, 1)) ** e
    for i in range(e - 1):
        acc = acc * _minus_trinomial(i) ** (e - 1 - i)
    return acc


def psi(e: int) -> DensePolynomial:
    """The palindromic window polynomial, computed three independent ways;
    disagreement is a hard error."""
    a = psi_from_twisted(e)
    b = psi_factored_plain(e)
    c = psi_factored_signed(e)
    if not (a == b == c):
        raise InternalCheckError(f"the three routes to psi({e}) disagree")
    return a


def twisted_series_expansion(order: int) -> TruncatedSeries:
    """Closed expansion of the twisted series: z - z^2 plus the alternating
    sum of shifted partial products.  Must match twisted_series."""
    out = [0] * (order + 1)
    if order >= 1:
        out[1] += 1
    if order >= 2:
        out[2] -= 1
    e = 0
    while 3 * 2**e + 1 <= order:
        shift = 3 * 2**e + 1
        room = order - shift
        binom = [0] * (2**e + 1)
        binom[0] = 1
        binom[2**e] = 1
        acc = DensePolynomial(tuple(binom)).to_series(room)
        for i in range(e):
            acc = acc * _plus_trinomial(i).to_series(room)
        sign = -1 if e % 2 else 1
        for i, c in enumerate(acc.coeffs):
            if c:
                out[shift + i] += sign * c
        e += 1
    return TruncatedSeries(tuple(out))
