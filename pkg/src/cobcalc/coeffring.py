"""Exact scalar and graded-polynomial arithmetic for series coefficients.

The scalar field is the rationals with unbounded integer parts, exposed as
``Rational`` (an alias of :class:`fractions.Fraction`, which keeps every
value in lowest terms with a positive denominator).  :class:`CoeffPoly` is
a sparse polynomial in generators cp1, cp2, ... over that field; the
generator cpn carries weight n, so weights add under multiplication.
There is no cp0 generator: the empty monomial is the constant 1.

All values are immutable and all operations are pure functions, so
independent computations may run concurrently without synchronization.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterator, Mapping, Union

Rational = Fraction

#: A monomial is a tuple of (generator index, exponent) pairs, sorted by
#: generator index, with indices >= 1 and exponents >= 1.  () is 1.
Monomial = tuple[tuple[int, int], ...]

ONE_MONO: Monomial = ()

ScalarLike = Union[int, Fraction]


class MissingGenerator(ValueError):
    """A specialization omitted a generator that occurs in the polynomial."""


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for g, e in b:
        exps[g] = exps.get(g, 0) + e
    return tuple(sorted(exps.items()))


def mono_weight(m: Monomial) -> int:
    return sum(g * e for g, e in m)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for g, e in m:
        parts.append(f"cp{g}" if e == 1 else f"cp{g}^{e}")
    return "*".join(parts)


def _mono_validate(m: Monomial) -> Monomial:
    m = tuple(sorted((int(g), int(e)) for g, e in m if e))
    for g, e in m:
        if g < 1:
            raise ValueError(f"generator index must be >= 1, got cp{g}")
        if e < 0:
            raise ValueError(f"negative exponent on cp{g}")
    return m


class CoeffPoly:
    """Sparse polynomial in cp1, cp2, ... with exact rational coefficients.

    Internally all coefficients share one positive denominator and the
    integer numerators have no common factor with it, so ring operations
    run on plain integers and normalize once per result.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: dict[Monomial, int], den: int):
        # Assumes normalized input; use the classmethod constructors.
        self._num = num
        self._den = den

    @staticmethod
    def _make(num: dict[Monomial, int], den: int) -> "CoeffPoly":
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = {m: c for m, c in num.items() if c}
        if not num:
            return _ZERO
        if den < 0:
            den = -den
            num = {m: -c for m, c in num.items()}
        g = den
        for c in num.values():
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            den //= g
            num = {m: c // g for m, c in num.items()}
        return CoeffPoly(num, den)

    @classmethod
    def zero(cls) -> "CoeffPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "CoeffPoly":
        return _ONE

    @classmethod
    def const(cls, value: ScalarLike) -> "CoeffPoly":
        q = Fraction(value)
        if not q:
            return _ZERO
        return cls._make({ONE_MONO: q.numerator}, q.denominator)

    @classmethod
    def gen(cls, n: int) -> "CoeffPoly":
        """The generator cpn (weight n); n must be >= 1."""
        if n < 1:
            raise ValueError("generator index must be >= 1 (cp0 is the constant 1)")
        return CoeffPoly({((n, 1),): 1}, 1)

    @classmethod
    def from_terms(cls, terms: Mapping[Monomial, ScalarLike]) -> "CoeffPoly":
        fracs = {_mono_validate(m): Fraction(c) for m, c in terms.items()}
        den = 1
        for q in fracs.values():
            den = den * q.denominator // gcd(den, q.denominator)
        num: dict[Monomial, int] = {}
        for m, q in fracs.items():
            num[m] = num.get(m, 0) + q.numerator * (den // q.denominator)
        return cls._make(num, den)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def is_constant(self) -> bool:
        return not self._num or set(self._num) == {ONE_MONO}

    def constant_value(self) -> Fraction:
        """Coefficient of the empty monomial."""
        return Fraction(self._num.get(ONE_MONO, 0), self._den)

    def is_integral(self) -> bool:
        return self._den == 1

    def as_int(self) -> int:
        """The value of a constant integer polynomial."""
        if not self.is_constant() or self._den != 1:
            raise ValueError(f"not a constant integer: {self}")
        return self._num.get(ONE_MONO, 0)

    def coefficient(self, mono: Monomial) -> Fraction:
        return Fraction(self._num.get(_mono_validate(mono), 0), self._den)

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        den = self._den
        for m, c in self._num.items():
            yield m, Fraction(c, den)

    def max_generator(self) -> int:
        top = 0
        for m in self._num:
            for g, _ in m:
                if g > top:
                    top = g
        return top

    def weights(self) -> set[int]:
        return {mono_weight(m) for m in self._num}

    def is_homogeneous(self, weight: int | None = None) -> bool:
        """True if every monomial has the same weight (the zero polynomial
        is homogeneous of any weight)."""
        ws = self.weights()
        if not ws:
            return True
        if weight is None:
            return len(ws) == 1
        return ws == {weight}

    def weight(self) -> int | None:
        """The homogeneous weight, or None for zero / inhomogeneous."""
        ws = self.weights()
        if len(ws) == 1:
            return next(iter(ws))
        return None

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        da, db = self._den, other._den
        if da == db:
            num = dict(self._num)
            for m, c in other._num.items():
                num[m] = num.get(m, 0) + c
            return self._make(num, da)
        g = gcd(da, db)
        la, lb = db // g, da // g
        num = {m: c * la for m, c in self._num.items()}
        for m, c in other._num.items():
            num[m] = num.get(m, 0) + c * lb
        return self._make(num, da * la)

    def __sub__(self, other: "CoeffPoly") -> "CoeffPoly":
        return self + (-other)

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly({m: -c for m, c in self._num.items()}, self._den)

    def __mul__(self, other: "CoeffPoly") -> "CoeffPoly":
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        if not self._num or not other._num:
            return _ZERO
        num: dict[Monomial, int] = {}
        bitems = list(other._num.items())
        for ma, ca in self._num.items():
            for mb, cb in bitems:
                m = mono_mul(ma, mb)
                num[m] = num.get(m, 0) + ca * cb
        return self._make(num, self._den * other._den)

    def __pow__(self, n: int) -> "CoeffPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = _ONE
        for _ in range(n):
            result = result * self
        return result

    def scale(self, value: ScalarLike) -> "CoeffPoly":
        q = Fraction(value)
        if not q:
            return _ZERO
        num = {m: c * q.numerator for m, c in self._num.items()}
        return self._make(num, self._den * q.denominator)

    def specialize(self, assignment: Mapping[int, ScalarLike]) -> Fraction:
        """Evaluate under cpn -> assignment[n]; a ring homomorphism to Q."""
        values = {g: Fraction(v) for g, v in assignment.items()}
        total = Fraction(0)
        for m, c in self._num.items():
            term = Fraction(c)
            for g, e in m:
                if g not in values:
                    raise MissingGenerator(f"no value assigned to cp{g}")
                term *= values[g] ** e
            total += term
        return total / self._den

    # -- comparison / rendering --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        return hash((self._den, frozenset(self._num.items())))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms sorted by weight, then by the dense exponent vector."""
        width = self.max_generator()

        def dense(m: Monomial) -> tuple[int, ...]:
            exps = dict(m)
            return tuple(exps.get(g, 0) for g in range(1, width + 1))

        items = sorted(self._num.items(), key=lambda mc: (mono_weight(mc[0]), dense(mc[0])))
        return [(m, Fraction(c, self._den)) for m, c in items]

    def __str__(self) -> str:
        if not self._num:
            return "0"
        chunks: list[str] = []
        for m, q in self.sorted_terms():
            mag = abs(q)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = mono_str(m)
            else:
                body = f"{mag}*{mono_str(m)}"
            if not chunks:
                chunks.append(f"-{body}" if q < 0 else body)
            else:
                chunks.append(f"- {body}" if q < 0 else f"+ {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"CoeffPoly({self})"


_ZERO = CoeffPoly({}, 1)
_ONE = CoeffPoly({ONE_MONO: 1}, 1)


def as_coeff(value: Union["CoeffPoly", ScalarLike]) -> CoeffPoly:
    """Coerce an int/Fraction scalar (or pass a CoeffPoly through)."""
    if isinstance(value, CoeffPoly):
        return value
    return CoeffPoly.const(value)
