"""Truncated multivariate power series over the graded coefficient ring.

A :class:`TruncatedSeries` stores the terms of total degree <= ``order``
of a power series in named weight-1 variables; terms above the order are
unknown, not zero, and every operation tracks how far its result can be
trusted.  Ring operations return ``min`` of the operand orders; exact
monomial shifts raise the order by the shift degree; composition sharpens
the bound using the lowest degree of the substituted values.

Division by a variable difference (u - v) is exact polynomial division
with a hard error on a nonzero remainder: the series this package divides
are divisible by construction, so a remainder signals a false identity.

Series reversion runs Newton iteration; :func:`lagrange_reversion` is an
independent implementation kept as a cross-check oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .coeffring import CoeffPoly, ScalarLike, as_coeff

ExpVec = tuple[int, ...]

_BIG = 10**9  # stands in for "exact to all orders" in order arithmetic


class VariableMismatch(ValueError):
    """Operands live over different variable universes."""


class OrderExceeded(ValueError):
    """A coefficient or truncation beyond the trusted order was requested."""


class NonzeroConstantTerm(ValueError):
    """A substituted value has a constant term, so truncation would lie."""


class NonUnitLeadingTerm(ValueError):
    """Reversion/reciprocal needs a unit where none is available."""


class NonzeroRemainder(ValueError):
    """Exact division left a remainder; the claimed divisibility is false."""


class TruncatedSeries:
    __slots__ = ("variables", "order", "terms")

    def __init__(self, variables: tuple[str, ...], order: int,
                 terms: dict[ExpVec, CoeffPoly]):
        # Assumes clean input; use the classmethod constructors.
        self.variables = variables
        self.order = order
        self.terms = terms

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str], order: int) -> "TruncatedSeries":
        return cls(tuple(variables), order, {})

    @classmethod
    def constant(cls, value: Union[CoeffPoly, ScalarLike],
                 variables: Iterable[str], order: int) -> "TruncatedSeries":
        variables = tuple(variables)
        c = as_coeff(value)
        if c.is_zero():
            return cls(variables, order, {})
        return cls(variables, order, {(0,) * len(variables): c})

    @classmethod
    def one(cls, variables: Iterable[str], order: int) -> "TruncatedSeries":
        return cls.constant(1, variables, order)

    @classmethod
    def variable(cls, name: str, variables: Iterable[str], order: int) -> "TruncatedSeries":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatch(f"{name!r} not among {variables}")
        if order < 1:
            raise OrderExceeded(f"order {order} cannot hold a degree-1 term")
        ev = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, order, {ev: CoeffPoly.one()})

    @classmethod
    def from_terms(cls, terms: Mapping[ExpVec, Union[CoeffPoly, ScalarLike]],
                   variables: Iterable[str], order: int) -> "TruncatedSeries":
        variables = tuple(variables)
        clean: dict[ExpVec, CoeffPoly] = {}
        for ev, val in terms.items():
            ev = tuple(int(e) for e in ev)
            if len(ev) != len(variables):
                raise VariableMismatch(f"exponent vector {ev} does not fit {variables}")
            if any(e < 0 for e in ev):
                raise ValueError(f"negative exponent in {ev}")
            if sum(ev) > order:
                raise OrderExceeded(f"term of degree {sum(ev)} above order {order}")
            c = as_coeff(val)
            if not c.is_zero():
                clean[ev] = clean[ev] + c if ev in clean else c
                if clean[ev].is_zero():
                    del clean[ev]
        return cls(variables, order, clean)

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, expvec: ExpVec) -> CoeffPoly:
        expvec = tuple(expvec)
        if len(expvec) != len(self.variables):
            raise VariableMismatch(f"exponent vector {expvec} does not fit {self.variables}")
        if sum(expvec) > self.order:
            raise OrderExceeded(
                f"degree {sum(expvec)} beyond order {self.order}: unknown, not zero")
        return self.terms.get(expvec, CoeffPoly.zero())

    def constant_term(self) -> CoeffPoly:
        return self.terms.get((0,) * len(self.variables), CoeffPoly.zero())

    def lowest_term(self) -> tuple[int, ExpVec, CoeffPoly] | None:
        """(degree, exponent vector, coefficient) of the lowest nonzero term."""
        if not self.terms:
            return None
        ev = min(self.terms, key=lambda e: (sum(e), e))
        return sum(ev), ev, self.terms[ev]

    def lowest_degree(self) -> int:
        """Degree of the lowest stored term; _BIG when no terms are stored."""
        if not self.terms:
            return _BIG
        return min(sum(ev) for ev in self.terms)

    def total_degree(self) -> int:
        return max((sum(ev) for ev in self.terms), default=0)

    def homogeneous_part(self, degree: int) -> "TruncatedSeries":
        part = {ev: c for ev, c in self.terms.items() if sum(ev) == degree}
        return TruncatedSeries(self.variables, self.order, part)

    def is_graded(self, total_weight: int) -> bool:
        """Degree-d coefficients are homogeneous of weight d - total_weight.

        With cpn of weight n and the variables of weight 1, a series of
        declared total weight t stores, at degree d, coefficients that are
        homogeneous of weight d - t (t = 1 for f, ubar, [u]_2; t = 0 for
        a, alpha, delta, d, Phi).
        """
        return all(c.is_homogeneous(sum(ev) - total_weight)
                   for ev, c in self.terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.variables == other.variables and self.order == other.order
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.variables, self.order, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return series_str(self)

    def __repr__(self) -> str:
        return f"TruncatedSeries[{','.join(self.variables)}; O({self.order})]({self})"

    # -- ring structure ----------------------------------------------------

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(
                f"variable universes differ: {self.variables} vs {other.variables}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        order = min(self.order, other.order)
        terms = {ev: c for ev, c in self.terms.items() if sum(ev) <= order}
        for ev, c in other.terms.items():
            if sum(ev) > order:
                continue
            s = terms.get(ev)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(ev, None)
            else:
                terms[ev] = s
        return TruncatedSeries(self.variables, order, terms)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, self.order,
                               {ev: -c for ev, c in self.terms.items()})

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check_compatible(other)
            order = min(self.order, other.order)
            terms: dict[ExpVec, CoeffPoly] = {}
            bitems = [(ev, sum(ev), c) for ev, c in other.terms.items()]
            for ea, ca in self.terms.items():
                da = sum(ea)
                if da > order:
                    continue
                for eb, db, cb in bitems:
                    if da + db > order:
                        continue
                    ev = tuple(x + y for x, y in zip(ea, eb))
                    prod = ca * cb
                    s = terms.get(ev)
                    s = prod if s is None else s + prod
                    if s.is_zero():
                        terms.pop(ev, None)
                    else:
                        terms[ev] = s
            return TruncatedSeries(self.variables, order, terms)
        return self.scale(other)

    def __rmul__(self, other) -> "TruncatedSeries":
        return self.scale(other)

    def scale(self, value: Union[CoeffPoly, ScalarLike]) -> "TruncatedSeries":
        c = as_coeff(value)
        if c.is_zero():
            return TruncatedSeries(self.variables, self.order, {})
        terms = {}
        for ev, t in self.terms.items():
            prod = t * c
            if not prod.is_zero():
                terms[ev] = prod
        return TruncatedSeries(self.variables, self.order, terms)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise ValueError("negative power of a series")
        result = TruncatedSeries.one(self.variables, self.order)
        for _ in range(n):
            result = result * self
        return result

    def times_monomial(self, expvec: ExpVec,
                       value: Union[CoeffPoly, ScalarLike] = 1) -> "TruncatedSeries":
        """Multiply by an exact monomial; the trusted order rises by its degree."""
        expvec = tuple(expvec)
        if len(expvec) != len(self.variables):
            raise VariableMismatch(f"{expvec} does not fit {self.variables}")
        shift = sum(expvec)
        c = as_coeff(value)
        if c.is_zero():
            return TruncatedSeries(self.variables, self.order + shift, {})
        terms = {}
        for ev, t in self.terms.items():
            prod = t * c
            if not prod.is_zero():
                terms[tuple(x + y for x, y in zip(ev, expvec))] = prod
        return TruncatedSeries(self.variables, self.order + shift, terms)

    # -- order management ----------------------------------------------------

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderExceeded(
                f"cannot extend order {self.order} to {order}: tail is unknown")
        if order < 0:
            raise OrderExceeded("negative order")
        terms = {ev: c for ev, c in self.terms.items() if sum(ev) <= order}
        return TruncatedSeries(self.variables, order, terms)

    def _assume_order(self, order: int) -> "TruncatedSeries":
        # Internal escape for spots where the conservative min-rule
        # under-reports a bound that is provably valid (see reversion).
        if order < self.order:
            return self.truncate(order)
        return TruncatedSeries(self.variables, order, dict(self.terms))

    # -- variable plumbing --------------------------------------------------

    def rename(self, mapping: Mapping[str, str]) -> "TruncatedSeries":
        new_vars = tuple(mapping.get(v, v) for v in self.variables)
        if len(set(new_vars)) != len(new_vars):
            raise VariableMismatch(f"renaming collides: {new_vars}")
        return TruncatedSeries(new_vars, self.order, dict(self.terms))

    def extend(self, variables: Iterable[str]) -> "TruncatedSeries":
        """Re-embed into a larger variable universe."""
        variables = tuple(variables)
        positions = []
        for v in self.variables:
            if v not in variables:
                raise VariableMismatch(f"{v!r} missing from {variables}")
            positions.append(variables.index(v))
        width = len(variables)
        terms = {}
        for ev, c in self.terms.items():
            new_ev = [0] * width
            for pos, e in zip(positions, ev):
                new_ev[pos] = e
            terms[tuple(new_ev)] = c
        return TruncatedSeries(variables, self.order, terms)

    def restrict(self, variables: Iterable[str]) -> "TruncatedSeries":
        """Drop variables that occur with exponent zero everywhere."""
        variables = tuple(variables)
        keep = []
        for i, v in enumerate(self.variables):
            if v in variables:
                keep.append(i)
            else:
                if any(ev[i] for ev in self.terms):
                    raise VariableMismatch(f"{v!r} occurs and cannot be dropped")
        index_of = {v: i for i, v in enumerate(self.variables)}
        order_map = [index_of[v] for v in variables]
        terms = {tuple(ev[i] for i in order_map): c for ev, c in self.terms.items()}
        return TruncatedSeries(variables, self.order, terms)

    # -- calculus -------------------------------------------------------------

    def partial_derivative(self, var: str) -> "TruncatedSeries":
        i = self.variables.index(var)
        terms: dict[ExpVec, CoeffPoly] = {}
        for ev, c in self.terms.items():
            e = ev[i]
            if not e:
                continue
            new_ev = ev[:i] + (e - 1,) + ev[i + 1:]
            d = c.scale(e)
            s = terms.get(new_ev)
            terms[new_ev] = d if s is None else s + d
        return TruncatedSeries(self.variables, max(self.order - 1, 0), terms)

    # -- composition ------------------------------------------------------------

    def evaluate(self, values: Mapping[str, "TruncatedSeries"]) -> "TruncatedSeries":
        """Substitute a series for every variable at once (capture-free).

        All values must share one variable universe and order, and must
        have zero constant term so the discarded tail of ``self`` cannot
        contaminate stored degrees.  The result order sharpens with the
        lowest degree among the substituted values.
        """
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise VariableMismatch(f"no value given for {missing}")
        vals = [values[v] for v in self.variables]
        target_vars = vals[0].variables
        target_order = min(v.order for v in vals)
        for v in vals:
            if v.variables != target_vars:
                raise VariableMismatch("substituted values disagree on variables")
            if not v.constant_term().is_zero():
                raise NonzeroConstantTerm(
                    "substituted value has a nonzero constant term")
        lmin = min((v.lowest_degree() for v in vals), default=_BIG)
        result_order = min(target_order, (self.order + 1) * lmin - 1)

        work_order = result_order
        lows = [min(v.lowest_degree(), work_order + 1) for v in vals]
        powers: list[list[TruncatedSeries]] = [
            [TruncatedSeries.one(target_vars, work_order)] for _ in vals]
        acc: dict[ExpVec, CoeffPoly] = {}
        for ev, c in self.terms.items():
            if sum(e * low for e, low in zip(ev, lows)) > work_order:
                continue
            prod = TruncatedSeries.one(target_vars, work_order)
            for idx, e in enumerate(ev):
                if not e:
                    continue
                pw = powers[idx]
                while len(pw) <= e:
                    pw.append(pw[-1] * vals[idx])
                prod = prod * pw[e]
            for pev, pc in prod.terms.items():
                t = pc * c
                if t.is_zero():
                    continue
                s = acc.get(pev)
                s = t if s is None else s + t
                if s.is_zero():
                    acc.pop(pev, None)
                else:
                    acc[pev] = s
        acc = {ev: c for ev, c in acc.items() if sum(ev) <= result_order}
        return TruncatedSeries(target_vars, result_order, acc)

    def substitute(self, var: str, value: "TruncatedSeries") -> "TruncatedSeries":
        """Replace one variable; the others map to themselves in the
        value's universe."""
        if var not in self.variables:
            raise VariableMismatch(f"{var!r} not among {self.variables}")
        values: dict[str, TruncatedSeries] = {var: value}
        for v in self.variables:
            if v == var:
                continue
            values[v] = TruncatedSeries.variable(v, value.variables, value.order)
        return self.evaluate(values)

    # -- division ------------------------------------------------------------------

    def divided_by_variable(self, var: str) -> "TruncatedSeries":
        """Exact division by one variable; errors if any term lacks it."""
        i = self.variables.index(var)
        terms = {}
        for ev, c in self.terms.items():
            if ev[i] == 0:
                raise NonzeroRemainder(
                    f"term {ev} has no factor {var}; not divisible")
            terms[ev[:i] + (ev[i] - 1,) + ev[i + 1:]] = c
        return TruncatedSeries(self.variables, max(self.order - 1, 0), terms)

    def divided_difference(self, var_a: str, var_b: str) -> "TruncatedSeries":
        """Exact quotient by (var_a - var_b), with a remainder check.

        The remainder of synthetic division is self with var_a set to
        var_b; it must vanish identically or the division is refused.
        """
        ia = self.variables.index(var_a)
        ib = self.variables.index(var_b)
        if ia == ib:
            raise VariableMismatch("divided difference needs two distinct variables")
        # View self as a polynomial in var_a; coefficients keep full width
        # with the var_a slot zeroed.
        by_deg: dict[int, dict[ExpVec, CoeffPoly]] = {}
        for ev, c in self.terms.items():
            k = ev[ia]
            stripped = ev[:ia] + (0,) + ev[ia + 1:]
            by_deg.setdefault(k, {})[stripped] = c
        top = max(by_deg, default=0)

        def shift_b(terms: dict[ExpVec, CoeffPoly]) -> dict[ExpVec, CoeffPoly]:
            return {ev[:ib] + (ev[ib] + 1,) + ev[ib + 1:]: c for ev, c in terms.items()}

        def add_into(dst: dict[ExpVec, CoeffPoly], src: dict[ExpVec, CoeffPoly]) -> None:
            for ev, c in src.items():
                s = dst.get(ev)
                s = c if s is None else s + c
                if s.is_zero():
                    dst.pop(ev, None)
                else:
                    dst[ev] = s

        quotient: dict[ExpVec, CoeffPoly] = {}
        carry: dict[ExpVec, CoeffPoly] = {}
        for k in range(top, 0, -1):
            add_into(carry, by_deg.get(k, {}))
            for ev, c in carry.items():
                qev = ev[:ia] + (k - 1,) + ev[ia + 1:]
                s = quotient.get(qev)
                s = c if s is None else s + c
                if s.is_zero():
                    quotient.pop(qev, None)
                else:
                    quotient[qev] = s
            carry = shift_b(carry)
        remainder = dict(carry)
        add_into(remainder, by_deg.get(0, {}))
        if remainder:
            ev = min(remainder, key=lambda e: (sum(e), e))
            raise NonzeroRemainder(
                f"division by ({var_a} - {var_b}) leaves remainder term "
                f"{remainder[ev]} at {ev}: the claimed identity is false")
        q = TruncatedSeries(self.variables, max(self.order - 1, 0), quotient)
        # Re-verify the factorization on every call; cheap at desk orders.
        va = TruncatedSeries.variable(var_a, self.variables, self.order)
        vb = TruncatedSeries.variable(var_b, self.variables, self.order)
        assert (q._assume_order(self.order) * (va - vb) - self).is_zero(), \
            "divided_difference postcondition failed"
        return q

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0 = self.constant_term()
        if not c0.is_constant() or c0.is_zero():
            raise NonUnitLeadingTerm(
                f"constant term {c0} is not an invertible scalar")
        c0val = c0.constant_value()
        rest = (self - TruncatedSeries.constant(c0, self.variables, self.order)).scale(
            Fraction(1) / c0val)
        # 1 / (c0 (1 + r)) = (1/c0) * sum (-r)^k, r has no constant term.
        result = TruncatedSeries.one(self.variables, self.order)
        power = TruncatedSeries.one(self.variables, self.order)
        for _ in range(self.order):
            power = power * (-rest)
            if power.is_zero():
                break
            result = result + power
        return result.scale(Fraction(1) / c0val)

    # -- reversion --------------------------------------------------------------------

    def _reversion_checks(self) -> tuple[str, Fraction]:
        if len(self.variables) != 1:
            raise VariableMismatch("reversion needs a one-variable series")
        x = self.variables[0]
        if not self.constant_term().is_zero():
            raise NonUnitLeadingTerm("reversion needs a zero constant term")
        c1 = self.coefficient((1,)) if self.order >= 1 else CoeffPoly.zero()
        if not c1.is_constant() or c1.is_zero():
            raise NonUnitLeadingTerm(
                f"linear coefficient {c1} is not an invertible scalar")
        return x, c1.constant_value()

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse by Newton iteration (order doubles per step)."""
        x, c1 = self._reversion_checks()
        n = self.order
        ident = TruncatedSeries.variable(x, self.variables, n)
        t = ident.scale(Fraction(1) / c1)
        sprime = self.partial_derivative(x)
        for _ in range(max(n.bit_length() + 2, 4)):
            err = self.evaluate({x: t}) - ident
            if err.is_zero():
                break
            # err starts at degree >= 2, so degrees <= n of the product never
            # touch the reciprocal coefficients beyond its stored order n - 1;
            # bumping its claimed order keeps the top correction term.
            recip = sprime.evaluate({x: t}).reciprocal()._assume_order(n)
            t = t - err * recip
        else:
            raise ArithmeticError("Newton reversion did not converge")
        assert self.evaluate({x: t})._assume_order(n) == ident
        return t


def lagrange_reversion(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse via the Lagrange inversion formula.

    Independent of the Newton route: the n-th coefficient of the inverse
    is (1/n) times the (n-1)-st coefficient of (x / s(x))^n.
    """
    x, _ = s._reversion_checks()
    n = s.order
    psi = s.divided_by_variable(x)            # order n - 1
    phi = psi.reciprocal()                    # (x / s(x)), order n - 1
    coeffs: dict[ExpVec, CoeffPoly] = {}
    power = TruncatedSeries.one(s.variables, phi.order)
    for k in range(1, n + 1):
        power = power * phi
        if k - 1 <= power.order:
            c = power.terms.get((k - 1,), CoeffPoly.zero()).scale(Fraction(1, k))
            if not c.is_zero():
                coeffs[(k,)] = c
    return TruncatedSeries(s.variables, n, coeffs)


def series_str(s: TruncatedSeries) -> str:
    """Canonical text rendering, terms by (total degree, exponent vector)."""
    if not s.terms:
        return "0"
    parts = []
    for ev in sorted(s.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = s.terms[ev]
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}")
            for v, e in zip(s.variables, ev) if e)
        body = str(c)
        wrapped = f"({body})" if (" " in body) else body
        if not mono:
            parts.append(wrapped)
        elif wrapped == "1":
            parts.append(mono)
        elif wrapped == "-1":
            parts.append(f"-{mono}")
        else:
            parts.append(f"{wrapped}*{mono}")
    return " + ".join(parts)


def series_equal_as_polynomials(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    """Equality of stored terms, ignoring the order bookkeeping."""
    return a.variables == b.variables and a.terms == b.terms
