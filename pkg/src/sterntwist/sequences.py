"""Exact arithmetic for the Stern diatomic sequence, its sign-twisted
companion, and the weighted subsequence-counting polynomials refining both.

Everything here works on plain Python integers (arbitrary precision) or on
integer-coefficient polynomials in the weight variable w; nothing rounds.
Each headline quantity is computable by at least two independent routes so
the routes can be played against each other in tests.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum

from .config import DEFAULTS


class Kind(Enum):
    STERN = "stern"
    TWISTED = "twisted"


class InputTooLargeError(ValueError):
    """Enumeration guard tripped: the input has too many binary digits."""


@dataclass
class SequenceCache:
    """Memoised values of one of the two diatomic recursions.

    stern:    value(0)=0, value(1)=1, value(2n)=value(n),
              value(2n+1)=value(n)+value(n+1) for n >= 1.
    twisted:  the same recursion with both right-hand sides negated.

    A lookup folds the binary digits of n over the pair
    (value(m), value(m+1)), so it never recurses; every binary prefix of n
    is cached on the way down.  Cache writes are idempotent, which keeps
    concurrent use under CPython benign; workers wanting full isolation
    simply construct their own cache.
    """

    kind: Kind
    values: dict[int, int] = field(default_factory=dict)

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("sequence index must be a natural number")
        got = self.values.get(n)
        if got is not None:
            return got
        store = self.values
        store[0] = 0
        if n == 0:
            return 0
        sign = 1 if self.kind is Kind.STERN else -1
        a, b = 1, sign  # (value(1), value(2)); the recursion starts at m=1
        store[1] = 1
        m = 1
        for shift in range(n.bit_length() - 2, -1, -1):
            if (n >> shift) & 1:
                a, b = sign * (a + b), sign * b
                m = 2 * m + 1
            else:
                a, b = sign * a, sign * (a + b)
                m = 2 * m
            store[m] = a
        return a


_STERN = SequenceCache(Kind.STERN)
_TWISTED = SequenceCache(Kind.TWISTED)


def stern(n: int) -> int:
    """Stern diatomic value s(n)."""
    return _STERN.value(n)


def twisted(n: int) -> int:
    """Sign-twisted diatomic value t(n)."""
    return _TWISTED.value(n)


@dataclass(frozen=True)
class BinaryWord:
    """Binary digits of a natural number, most significant first.

    No leading zero is ever stored except for the word of 0 itself.
    """

    bits: tuple[int, ...]

    @classmethod
    def of(cls, n: int) -> "BinaryWord":
        if n < 0:
            raise ValueError("binary words encode natural numbers")
        if n == 0:
            return cls((0,))
        return cls(tuple((n >> k) & 1 for k in range(n.bit_length() - 1, -1, -1)))

    def to_int(self) -> int:
        v = 0
        for b in self.bits:
            v = 2 * v + b
        return v

    def __len__(self) -> int:
        return len(self.bits)


def count_admissible(n: int) -> int:
    """Number of subsequences of the binary digits of n of the form
    1, 101, 10101, ...

    Two-state dynamic program over the digits, most significant first:
    `ending_one` counts subsequences whose extracted word currently ends in
    1 (each of those is a complete match), `ending_ten` those ending in 10
    and awaiting a closing 1.  Position sets are distinct by construction,
    so the counts add without overcounting.
    """
    ending_one = 0
    ending_ten = 0
    for bit in BinaryWord.of(n).bits:
        if bit:
            ending_one += ending_ten + 1
        else:
            ending_ten += ending_one
    return ending_one


def _check_guard(n: int, guard_bits: int) -> None:
    if n.bit_length() > guard_bits:
        raise InputTooLargeError(
            f"n has {n.bit_length()} binary digits; enumeration is capped at {guard_bits}"
        )


def _digit_positions(n: int) -> tuple[list[int], list[int]]:
    """Ascending bit positions of the 1-digits and of the 0-digits of n."""
    word = BinaryWord.of(n).bits
    top = len(word) - 1
    ones = [top - i for i, b in enumerate(word) if b == 1]
    zeros = [top - i for i, b in enumerate(word) if b == 0]
    ones.reverse()
    zeros.reverse()
    return ones, zeros


def enumerate_admissible(
    n: int, guard_bits: int = DEFAULTS.enumeration_guard_bits
) -> list[tuple[int, ...]]:
    """Every set of binary digit positions of n whose extracted word lies in
    1(01)*.  Each set is a tuple of bit positions, most significant first.

    The search grows alternating chains directly: a qualifying set reads
    1,0,1,...,1 downward, so a partial chain is only ever extended through a
    position carrying the next required digit.  Every qualifying set has
    all its prefixes of this shape, hence the walk is exhaustive.
    """
    _check_guard(n, guard_bits)
    ones, zeros = _digit_positions(n)
    results: list[tuple[int, ...]] = []

    def grow_with_zero(chain: tuple[int, ...], last: int) -> None:
        for i in range(bisect_left(zeros, last)):
            z = zeros[i]
            longer = chain + (z,)
            for j in range(bisect_left(ones, z)):
                closed = longer + (ones[j],)
                results.append(closed)
                grow_with_zero(closed, ones[j])

    for p in ones:
        results.append((p,))
        grow_with_zero((p,), p)
    results.sort(key=lambda c: (len(c), tuple(-q for q in c)))
    return results


# ---------------------------------------------------------------------------
# Weighted counting: polynomials in the weight variable w.
# ---------------------------------------------------------------------------


def _trimmed(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if not c:
        c = [0]
    return tuple(c)


@dataclass(frozen=True)
class WeightPolynomial:
    """Integer polynomial in w; coeffs[k] is the coefficient of w^k."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trimmed(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @staticmethod
    def _lift(other) -> "WeightPolynomial | None":
        if isinstance(other, WeightPolynomial):
            return other
        if isinstance(other, int):
            return WeightPolynomial((other,))
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
        return WeightPolynomial(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return WeightPolynomial(tuple(-c for c in self.coeffs))

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
        out = [0] * (len(a) + len(b) - 1)
        for i, ci in enumerate(a):
            if ci:
                for j, cj in enumerate(b):
                    if cj:
                        out[i + j] += ci * cj
        return WeightPolynomial(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("w-poly", self.coeffs))

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return render_coeffs(self.coeffs, "w")


ZERO_W = WeightPolynomial((0,))
ONE_W = WeightPolynomial((1,))
W = WeightPolynomial((0, 1))


def render_coeffs(coeffs, var: str) -> str:
    """Canonical text form `c0 + c1*<var> + c2*<var>^2 + ...` listing every
    stored coefficient, zeros included; coefficients print verbatim."""
    parts = []
    for k, c in enumerate(coeffs):
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append(f"{c}*{var}")
        else:
            parts.append(f"{c}*{var}^{k}")
    return " + ".join(parts) if parts else "0"


_W_STERN: dict[int, WeightPolynomial] = {}
_W_EVEN: dict[int, WeightPolynomial] = {}
_W_ALT: dict[int, WeightPolynomial] = {}


def weighted_stern(n: int) -> WeightPolynomial:
    """S(n): subsequences of the binary digits of n of the form 1(01)^k
    counted with weight w^k, via the mutual recursion with S_e."""
    got = _W_STERN.get(n)
    if got is not None:
        return got
    if n == 0:
        r = ZERO_W
    elif n == 1:
        r = ONE_W
    elif n % 2 == 0:
        r = weighted_stern(n // 2)
    else:
        m = n // 2
        r = weighted_stern(m) + weighted_even(m)
    _W_STERN[n] = r
    return r


def weighted_even(n: int) -> WeightPolynomial:
    """S_e(n): subsequences of the form (10)^k with weight w^k; the empty
    subsequence is the k=0 case and always contributes 1."""
    got = _W_EVEN.get(n)
    if got is not None:
        return got
    if n <= 1:
        r = ONE_W
    elif n % 2 == 0:
        m = n // 2
        r = W * weighted_stern(m) + weighted_even(m)
    else:
        r = weighted_even(n // 2)
    _W_EVEN[n] = r
    return r


def weighted_stern_alt(n: int) -> WeightPolynomial:
    """S(n) again, through the recursion that splits odd arguments mod 4;
    the 4m-1 branch decomposes m as 2^a(2q+1).  Must agree with
    weighted_stern everywhere."""
    got = _W_ALT.get(n)
    if got is not None:
        return got
    if n == 0:
        r = ZERO_W
    elif n == 1:
        r = ONE_W
    elif n % 2 == 0:
        r = weighted_stern_alt(n // 2)
    elif n % 4 == 1:
        m = (n - 1) // 4
        r = W * weighted_stern_alt(2 * m) + weighted_stern_alt(2 * m + 1)
    else:
        m = (n + 1) // 4
        a = v2(m)
        q = (m >> a) // 2
        r = (
            weighted_stern_alt(2 * m - 1)
            + weighted_stern_alt(2 * q + 1)
            + (W - 1) * weighted_stern_alt(2 * q)
        )
    _W_ALT[n] = r
    return r


def weighted_count_direct(
    n: int, guard_bits: int = DEFAULTS.enumeration_guard_bits
) -> tuple[WeightPolynomial, WeightPolynomial]:
    """(S(n), S_e(n)) by walking every qualifying subsequence explicitly.

    The walk visits each 1(01)^k chain once (weight w^k, tallied into S)
    and each (10)^k chain once (tallied into S_e); the empty subsequence
    seeds S_e at weight w^0.
    """
    _check_guard(n, guard_bits)
    ones, zeros = _digit_positions(n)
    s_counts: dict[int, int] = {}
    se_counts: dict[int, int] = {0: 1}
    stack = [(p, 0) for p in ones]  # (position of trailing 1, completed 01-pairs)
    while stack:
        pos, k = stack.pop()
        s_counts[k] = s_counts.get(k, 0) + 1
        for i in range(bisect_left(zeros, pos)):
            z = zeros[i]
            se_counts[k + 1] = se_counts.get(k + 1, 0) + 1
            for j in range(bisect_left(ones, z)):
                stack.append((ones[j], k + 1))

    def poly(counts: dict[int, int]) -> WeightPolynomial:
        if not counts:
            return ZERO_W
        top = max(counts)
        return WeightPolynomial(tuple(counts.get(i, 0) for i in range(top + 1)))

    return poly(s_counts), poly(se_counts)


def v2(n: int) -> int:
    """Exponent of the highest power of 2 dividing n (n >= 1)."""
    if n < 1:
        raise ValueError("2-adic valuation is undefined for n < 1")
    return (n & -n).bit_length() - 1


def mod2(n: int) -> int:
    """Common parity of stern(n) and twisted(n): 0 iff 3 divides n."""
    return 0 if n % 3 == 0 else 1
