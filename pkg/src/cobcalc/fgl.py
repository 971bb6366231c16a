"""Formal group laws built from their logarithms.

A law is the bundle (log g, two-variable law f, formal inverse ubar) at a
fixed truncation order.  The universal law here is normalized by the
logarithm g(u) = sum cp_n u^(n+1)/(n+1) with cp0 = 1, so g'(u) is the
series 1 + cp1 u + cp2 u^2 + ...; every coefficient sign downstream is
whatever reversion of that logarithm yields.  The additive and
multiplicative specializations are built both from closed form and from
their logarithms, and the two constructions are asserted equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffring import CoeffPoly
from .pseries import TruncatedSeries
from .report import IdentityResult, check_zero

U, V, W = "u", "v", "w"
UV = (U, V)
UVW = (U, V, W)


class LawError(ValueError):
    """A law selector or construction input is invalid."""


def miscenko_log(order: int) -> TruncatedSeries:
    """g(u) = u + cp1 u^2/2 + cp2 u^3/3 + ... truncated at the order."""
    if order < 1:
        raise LawError("order must be >= 1")
    terms: dict[tuple[int, ...], CoeffPoly] = {(1,): CoeffPoly.one()}
    for n in range(1, order):
        terms[(n + 1,)] = CoeffPoly.gen(n).scale(Fraction(1, n + 1))
    return TruncatedSeries.from_terms(terms, (U,), order)


def universal_cp_series(order: int) -> TruncatedSeries:
    """g'(u) = 1 + cp1 u + cp2 u^2 + ... in closed form."""
    terms: dict[tuple[int, ...], CoeffPoly] = {(0,): CoeffPoly.one()}
    for n in range(1, order + 1):
        terms[(n,)] = CoeffPoly.gen(n)
    return TruncatedSeries.from_terms(terms, (U,), order)


def additive_log(order: int) -> TruncatedSeries:
    return TruncatedSeries.variable(U, (U,), order)


def multiplicative_log(beta: Fraction, order: int) -> TruncatedSeries:
    """log(1 + beta*u)/beta = sum (-beta)^(n-1) u^n / n."""
    terms = {}
    sign = Fraction(1)
    for n in range(1, order + 1):
        terms[(n,)] = CoeffPoly.const(sign / n)
        sign *= -beta
    return TruncatedSeries.from_terms(terms, (U,), order)


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    tag: str
    order: int
    f: TruncatedSeries                  # in (u, v)
    inverse: TruncatedSeries            # ubar(u), one variable
    phi: TruncatedSeries                # ubar = u * phi(u)
    log: TruncatedSeries | None = None  # None for hand-corrupted laws

    def __repr__(self) -> str:
        return f"FormalGroupLaw({self.tag}, order={self.order})"

    def truncate(self, order: int) -> "FormalGroupLaw":
        return FormalGroupLaw(
            self.tag, order,
            self.f.truncate(order),
            self.inverse.truncate(order),
            self.phi.truncate(min(order, self.phi.order)),
            None if self.log is None else self.log.truncate(order),
        )


def _solve_inverse(f: TruncatedSeries, order: int) -> TruncatedSeries:
    """Solve f(u, ubar(u)) = 0 degree by degree; always solvable since
    f = u + v + higher."""
    u1 = TruncatedSeries.variable(U, (U,), order)
    ubar = -u1
    while True:
        residue = f.evaluate({U: u1, V: ubar})
        low = residue.lowest_term()
        if low is None:
            return ubar
        degree, ev, coeff = low
        if degree > order:
            return ubar
        ubar = ubar - TruncatedSeries.from_terms({ev: coeff}, (U,), order)


def from_log(log: TruncatedSeries, order: int | None = None,
             tag: str = "custom") -> FormalGroupLaw:
    """Construct f(u, v) as the reversion of the log applied to g(u) + g(v)."""
    if order is None:
        order = log.order
    log = log.truncate(order)
    x = log.variables[0]
    ginv = log.reversion()
    gu = log.rename({x: U}).extend(UV)
    gv = log.rename({x: V}).extend(UV)
    f = ginv.evaluate({x: gu + gv})
    inverse = _solve_inverse(f, order)
    phi = inverse.divided_by_variable(U)
    law = FormalGroupLaw(tag, order, f, inverse, phi, log)
    assert f.evaluate({U: TruncatedSeries.variable(U, (U,), order),
                       V: TruncatedSeries.zero((U,), order)}).terms == \
        {(1,): CoeffPoly.one()}, "constructed law is not unital"
    return law


def from_f(f: TruncatedSeries, order: int, tag: str = "custom",
           log: TruncatedSeries | None = None) -> FormalGroupLaw:
    """Bundle an explicit f; used for closed forms and mutation tests."""
    f = f.truncate(order)
    inverse = _solve_inverse(f, order)
    phi = inverse.divided_by_variable(U)
    return FormalGroupLaw(tag, order, f, inverse, phi, log)


def miscenko_law(order: int) -> FormalGroupLaw:
    return from_log(miscenko_log(order), order, tag="miscenko")


def additive_law(order: int) -> FormalGroupLaw:
    f = TruncatedSeries.from_terms({(1, 0): 1, (0, 1): 1}, UV, order)
    law = from_f(f, order, tag="additive", log=additive_log(order))
    assert from_log(additive_log(order), order).f == law.f
    return law


def multiplicative_law(beta, order: int) -> FormalGroupLaw:
    beta = Fraction(beta)
    if beta == 0:
        raise LawError("multiplicative law needs beta != 0; use the additive law")
    f = TruncatedSeries.from_terms({(1, 0): 1, (0, 1): 1, (1, 1): beta}, UV, order)
    law = from_f(f, order, tag=f"mult:{beta}", log=multiplicative_log(beta, order))
    # Cross-validate reversion: the log route must reproduce the closed form.
    assert from_log(multiplicative_log(beta, order), order).f == law.f
    return law


def parse_law(selector: str, order: int) -> FormalGroupLaw:
    """Law selector used by the CLI: miscenko | additive | mult:BETA."""
    selector = selector.strip().lower()
    if selector == "miscenko":
        return miscenko_law(order)
    if selector == "additive":
        return additive_law(order)
    if selector.startswith(("mult:", "multiplicative:")):
        raw = selector.split(":", 1)[1]
        try:
            beta = Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise LawError(f"bad multiplicative parameter {raw!r}") from exc
        return multiplicative_law(beta, order)
    raise LawError(
        f"unknown law {selector!r} (expected miscenko | additive | mult:BETA)")


# -- derived series ----------------------------------------------------------


def cp_series(law: FormalGroupLaw) -> TruncatedSeries:
    """g'(u); for the universal law this is 1 + cp1 u + cp2 u^2 + ..."""
    if law.log is None:
        raise LawError(f"law {law.tag!r} has no logarithm")
    return law.log.partial_derivative(U)


def n_series(law: FormalGroupLaw, n: int) -> TruncatedSeries:
    """[u]_n by iterated substitution: [u]_1 = u, [u]_(k+1) = f(u, [u]_k)."""
    if n < 1:
        raise LawError("n-series needs n >= 1")
    u1 = TruncatedSeries.variable(U, (U,), law.order)
    ser = u1
    for _ in range(n - 1):
        ser = law.f.evaluate({U: u1, V: ser})
    return ser


def n_series_via_log(law: FormalGroupLaw, n: int) -> TruncatedSeries:
    """[u]_n = g^{-1}(n g(u)); equal to the substitution route over Q."""
    if law.log is None:
        raise LawError(f"law {law.tag!r} has no logarithm")
    x = law.log.variables[0]
    return law.log.reversion().evaluate({x: law.log.scale(n)})


def a_series(law: FormalGroupLaw) -> TruncatedSeries:
    """a(u) = [u]_2 / u = 2 + sum alpha_ij u^(i+j-1)."""
    return n_series(law, 2).divided_by_variable(U)


def alpha_table(law: FormalGroupLaw) -> dict[tuple[int, int], CoeffPoly]:
    """All stored alpha_ij = coefficient of u^i v^j in f, i, j >= 1."""
    table = {}
    for (i, j), c in law.f.terms.items():
        if i >= 1 and j >= 1:
            table[(i, j)] = c
    return table


def alpha_series(law: FormalGroupLaw) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """alpha(u) = df/du at u = 0, plus its even/odd split
    alpha(u) = alpha0(u^2) + u*alpha1(u^2)."""
    dfdu = law.f.partial_derivative(U)
    alpha = dfdu.evaluate({
        U: TruncatedSeries.zero((V,), dfdu.order),
        V: TruncatedSeries.variable(V, (V,), dfdu.order),
    }).rename({V: U})
    m = alpha.order
    even: dict[tuple[int, ...], CoeffPoly] = {}
    odd: dict[tuple[int, ...], CoeffPoly] = {}
    for (e,), c in alpha.terms.items():
        if e % 2 == 0:
            even[(e // 2,)] = c
        else:
            odd[((e - 1) // 2,)] = c
    alpha0 = TruncatedSeries(
        alpha.variables, m // 2,
        {ev: c for ev, c in even.items() if ev[0] <= m // 2})
    alpha1 = TruncatedSeries(
        alpha.variables, (m - 1) // 2,
        {ev: c for ev, c in odd.items() if ev[0] <= (m - 1) // 2})
    return alpha, alpha0, alpha1


# -- axiom verification --------------------------------------------------------


def verify_axioms(law: FormalGroupLaw) -> list[IdentityResult]:
    """Unitality, commutativity, associativity, inverse, all at the
    working order; failures come back as report rows."""
    n = law.order
    f = law.f
    results = []

    u1 = TruncatedSeries.variable(U, (U,), n)
    zero1 = TruncatedSeries.zero((U,), n)
    right_unit = f.evaluate({U: u1, V: zero1}) - u1
    results.append(check_zero("unitality_right", law.tag, right_unit))
    left_unit = f.evaluate({U: zero1, V: u1}) - u1
    results.append(check_zero("unitality_left", law.tag, left_unit))

    swapped = f.rename({U: V, V: U}).extend(UV)
    results.append(check_zero("commutativity", law.tag, f - swapped))

    u3 = TruncatedSeries.variable(U, UVW, n)
    v3 = TruncatedSeries.variable(V, UVW, n)
    w3 = TruncatedSeries.variable(W, UVW, n)
    f_uv = f.evaluate({U: u3, V: v3})
    f_vw = f.evaluate({U: v3, V: w3})
    lhs = f.evaluate({U: f_uv, V: w3})
    rhs = f.evaluate({U: u3, V: f_vw})
    results.append(check_zero("associativity", law.tag, lhs - rhs))

    inv = f.evaluate({U: u1, V: law.inverse})
    results.append(check_zero("inverse", law.tag, inv))
    return results


def mutate_alpha(law: FormalGroupLaw, i: int, j: int, delta=1) -> FormalGroupLaw:
    """Bump alpha_ij by delta, re-solving the inverse; the logarithm is
    kept so identity checks against g' see the corruption."""
    bump = TruncatedSeries.from_terms({(i, j): CoeffPoly.const(delta)}, UV, law.order)
    return from_f(law.f + bump, law.order, tag=f"{law.tag}+e{i}{j}", log=law.log)
