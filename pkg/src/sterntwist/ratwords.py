"""Linear representations of rational series over digit alphabets, plus the
two counting transforms: one turns a recogniser into a subsequence counter,
the other into a contiguous-factor counter.

A representation is (row vector, one matrix per letter, column vector); the
value of a word is the row-matrix-...-column product.  Entries live in an
exact ring (integers, or integer polynomials in the weight variable w).
"""
from __future__ import annotations

from dataclasses import dataclass

from .sequences import W, WeightPolynomial
from .series import Ring, _coerce, _zero


def _row_times_matrix(row, matrix, zero):
    cols = len(matrix[0])
    out = []
    for j in range(cols):
        acc = zero
        for i, ri in enumerate(row):
            if ri:
                mij = matrix[i][j]
                if mij:
                    acc = acc + ri * mij
        out.append(acc)
    return out


def _dot(row, col, zero):
    acc = zero
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def _entry_json(x):
    if isinstance(x, WeightPolynomial):
        return [str(c) for c in x.coeffs]
    return str(x)


@dataclass(frozen=True)
class LinearRepresentation:
    """(init, trans, final) over an exact ring; trans[letter] is a square
    matrix and the value of a word is init . trans(d_1) ... trans(d_m) . final."""

    init: tuple
    trans: tuple
    final: tuple
    ring: Ring = Ring.INTEGER

    @classmethod
    def of(cls, init, trans, final, ring: Ring = Ring.INTEGER) -> "LinearRepresentation":
        init = tuple(_coerce(ring, x) for x in init)
        trans = tuple(
            tuple(tuple(_coerce(ring, x) for x in row) for row in matrix)
            for matrix in trans
        )
        final = tuple(_coerce(ring, x) for x in final)
        return cls(init, trans, final, ring)

    def __post_init__(self):
        if self.ring is Ring.RATIONAL:
            raise TypeError("representations live over the integer or w-polynomial ring")
        m = len(self.init)
        if len(self.final) != m:
            raise ValueError("init and final vectors must have equal length")
        if not self.trans:
            raise ValueError("need at least one letter")
        for matrix in self.trans:
            if len(matrix) != m or any(len(row) != m for row in matrix):
                raise ValueError("transition matrices must be square of the state count")

    @property
    def states(self) -> int:
        return len(self.init)

    @property
    def alphabet_size(self) -> int:
        return len(self.trans)

    def evaluate(self, word) -> object:
        zero = _zero(self.ring)
        row = self.init
        for digit in word:
            if not 0 <= digit < self.alphabet_size:
                raise ValueError(
                    f"digit {digit} is outside the alphabet of size {self.alphabet_size}"
                )
            row = _row_times_matrix(row, self.trans[digit], zero)
        return _dot(row, self.final, zero)

    def to_json_dict(self) -> dict:
        return {
            "states": self.states,
            "alphabet": self.alphabet_size,
            "ring": self.ring.value,
            "init": [_entry_json(x) for x in self.init],
            "trans": [
                [[_entry_json(x) for x in row] for row in matrix] for matrix in self.trans
            ],
            "final": [_entry_json(x) for x in self.final],
        }


def evaluate_word(rep: LinearRepresentation, word) -> object:
    """Value of `rep` on an explicit digit word (most significant first)."""
    return rep.evaluate(word)


def subsequence_transform(rep: LinearRepresentation) -> LinearRepresentation:
    """Counter over subsequences: every letter matrix gains the identity, so
    a path either feeds the letter through the original matrices or skips
    it, and the value of a word becomes the sum of rep's values over all of
    the word's subsequences."""
    one = _coerce(rep.ring, 1)
    m = rep.states
    new_trans = []
    for matrix in rep.trans:
        new_trans.append(
            tuple(
                tuple(
                    matrix[i][j] + one if i == j else matrix[i][j] for j in range(m)
                )
                for i in range(m)
            )
        )
    return LinearRepresentation(rep.init, tuple(new_trans), rep.final, rep.ring)


def representation_product(left: LinearRepresentation,
                           right: LinearRepresentation) -> LinearRepresentation:
    """Representation of the word-wise product: the value on w is the sum of
    left(u) * right(v) over all splittings w = uv.

    Block structure: a path spends a prefix in `left`'s states, then jumps
    (paying left's final weight and right's entry weight) into `right`'s.
    """
    if left.ring is not right.ring:
        raise TypeError("ring mismatch between representations")
    if left.alphabet_size != right.alphabet_size:
        raise ValueError("alphabet size mismatch between representations")
    ring = left.ring
    zero = _zero(ring)
    m, n = left.states, right.states
    new_trans = []
    for letter in range(left.alphabet_size):
        tl = left.trans[letter]
        tr = right.trans[letter]
        jump = _row_times_matrix(right.init, tr, zero)
        rows = []
        for i in range(m):
            rows.append(tuple(tl[i]) + tuple(left.final[i] * jump[j] for j in range(n)))
        for i in range(n):
            rows.append((zero,) * m + tuple(tr[i]))
        new_trans.append(tuple(rows))
    eps_right = _dot(right.init, right.final, zero)
    new_init = tuple(left.init) + (zero,) * n
    new_final = tuple(f * eps_right for f in left.final) + tuple(right.final)
    return LinearRepresentation(new_init, tuple(new_trans), new_final, ring)


def all_words_representation(k: int, ring: Ring = Ring.INTEGER) -> LinearRepresentation:
    """One state, value 1 on every word over a k-letter alphabet."""
    if k < 1:
        raise ValueError("alphabet needs at least one letter")
    one = _coerce(ring, 1)
    return LinearRepresentation((one,), tuple(((one,),) for _ in range(k)), (one,), ring)


def subfactor_transform(rep: LinearRepresentation) -> LinearRepresentation:
    """Counter over contiguous factors: the value of a word becomes the sum
    of rep's values over all factors, built as the three-phase
    before/inside/after product with absorbing outer phases."""
    everything = all_words_representation(rep.alphabet_size, rep.ring)
    return representation_product(everything, representation_product(rep, everything))


def digits_of(n: int, base: int) -> tuple[int, ...]:
    """Base-`base` digits of n, most significant first; 0 encodes as (0,)."""
    if base < 2:
        raise ValueError("base must be at least 2")
    if n < 0:
        raise ValueError("expansions encode natural numbers")
    if n == 0:
        return (0,)
    out = []
    while n:
        n, d = divmod(n, base)
        out.append(d)
    out.reverse()
    return tuple(out)


def count_in_expansion(rep: LinearRepresentation, n: int, base: int = 2) -> object:
    """Evaluate `rep` on the base-`base` expansion of n (no leading zeros;
    n = 0 is the single-digit word 0)."""
    return rep.evaluate(digits_of(n, base))


def admissible_representation(weighted: bool = True) -> LinearRepresentation:
    """Three-state recogniser of the pattern family 1, 101, 10101, ...

    States: seeking the opening 1 / just matched a 1 / extended by a 0 and
    awaiting the closing 1.  In the weighted version the transition closing
    each 01 extension carries the weight w, so the word 1(01)^k evaluates
    to w^k; unweighted, every complete pattern evaluates to 1.
    """
    ring = Ring.POLY_W if weighted else Ring.INTEGER
    close = W if weighted else 1
    m_one = ((0, 1, 0), (0, 0, 0), (0, close, 0))
    m_zero = ((0, 0, 0), (0, 0, 1), (0, 0, 0))
    return LinearRepresentation.of((1, 0, 0), (m_zero, m_one), (0, 1, 0), ring)


def word_indicator(word, k: int, ring: Ring = Ring.INTEGER) -> LinearRepresentation:
    """Representation valued 1 exactly on the given digit word, 0 elsewhere."""
    word = tuple(word)
    if any(not 0 <= d < k for d in word):
        raise ValueError("word digits must fit the alphabet")
    m = len(word) + 1
    trans = []
    for letter in range(k):
        matrix = [[0] * m for _ in range(m)]
        for i, d in enumerate(word):
            if d == letter:
                matrix[i][i + 1] = 1
        trans.append(tuple(tuple(row) for row in matrix))
    init = (1,) + (0,) * (m - 1)
    final = (0,) * (m - 1) + (1,)
    return LinearRepresentation.of(init, tuple(trans), final, ring)
