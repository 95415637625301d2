"""Truncated univariate power series on top of MultiPoly."""
from ..errors import OddOrder, ZeroInput
from .poly import MultiPoly


def _check_univariate(u: MultiPoly) -> None:
    if u.nvars != 1:
        raise ValueError(f"expected a univariate series, got variables {list(u.variables)}")


def coefficients(u: MultiPoly, n: int) -> list:
    """Dense coefficient list ``[u_0, ..., u_n]``."""
    _check_univariate(u)
    return [u.coefficient((k,)) for k in range(n + 1)]


def integrate(u: MultiPoly) -> MultiPoly:
    """Antiderivative vanishing at 0."""
    _check_univariate(u)
    dom = u.field.domain
    terms = {(k + 1,): c / dom.convert(k + 1) for (k,), c in u.terms().items()}
    return MultiPoly.from_terms(terms, u.variables, u.field)


def series_sqrt(u: MultiPoly, n: int) -> MultiPoly:
    """Return psi with psi**2 == u modulo t**(n+1), truncated at degree n.

    The leading coefficient's square root is adjoined to the scalar field
    when it is not a square there.
    """
    _check_univariate(u)
    if u.is_zero:
        raise ZeroInput("square root of the zero series")
    u = u.truncate(n) if u.degree > n else u
    if u.is_zero:
        raise ZeroInput(f"series vanishes modulo degree {n + 1}")
    order = u.order
    if order % 2:
        raise OddOrder(f"series of odd order {order} has no square root")
    m0 = order // 2
    alpha = u.coefficient((order,))
    field, root = u.field.sqrt(alpha)
    dom = field.domain
    u = u.with_field(field)
    alpha = dom.convert(u.coefficient((order,)))

    # w = u / (alpha t^order) = 1 + ...; s = sqrt(w) by the term recurrence
    length = n - m0 + 1
    w = [u.coefficient((order + k,)) / alpha for k in range(length)]
    s = [dom.one]
    two = dom.convert(2)
    for k in range(1, length):
        acc = w[k]
        for i in range(1, k):
            acc -= s[i] * s[k - i]
        s.append(acc / two)
    terms = {(m0 + k,): root * c for k, c in enumerate(s) if c}
    return MultiPoly.from_terms(terms, u.variables, field)
