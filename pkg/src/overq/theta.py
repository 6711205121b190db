"""Named q-series: theta function phi(q), Euler products, overpartition counts.

phi(q) = 1 + 2q + 2q^4 + 2q^9 + ... has coefficient 2 at every positive square.
(q;q)_inf and (-q;q)_inf are the products of (1 - q^k) resp. (1 + q^k) over
k >= 1.  The overpartition generating function is 1/phi(-q), equivalently
(-q;q)_inf / (q;q)_inf; both constructions are always computed and compared,
turning that identity into an integrity check that runs on every call.

p4n3_product_form builds 8 * (q^2;q^2) * (q^4;q^4)^6 / (q;q)^8, which expands
to sum_{n>=0} pbar(4n+3) q^n, where pbar counts overpartitions.
"""

from __future__ import annotations

import numpy as np

from .series import EXACT, RingSpec, TruncatedSeries


class RouteMismatchError(RuntimeError):
    """Independent computation routes disagreed; indicates an arithmetic bug."""


def phi(order: int, ring: RingSpec = EXACT) -> TruncatedSeries:
    """Theta series: constant term 1, coefficient 2 at each positive square."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    cs = [0] * (order + 1)
    cs[0] = 1
    j = 1
    while j * j <= order:
        cs[j * j] = 2
        j += 1
    return TruncatedSeries.make(ring, cs)


def euler_product(
    order: int, ring: RingSpec = EXACT, *, negated_argument: bool = False
) -> TruncatedSeries:
    """Product of (1 - q^k), or (1 + q^k) with negated_argument, for k = 1..order.

    Assembled by in-place multiplication with the sparse binomials, ascending k;
    each step is a shifted add/subtract, O(order^2 / 2) ring operations total.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    n = order
    m = ring.modulus
    if m is not None and m < 2**62:
        arr = np.zeros(n + 1, dtype=np.int64)
        arr[0] = 1 % m
        if negated_argument:
            for k in range(1, n + 1):
                arr[k:] = (arr[k:] + arr[: n + 1 - k]) % m
        else:
            for k in range(1, n + 1):
                arr[k:] = (arr[k:] - arr[: n + 1 - k]) % m
        return TruncatedSeries(ring, n, tuple(arr.tolist()))
    c = [0] * (n + 1)
    c[0] = 1
    if negated_argument:
        for k in range(1, n + 1):
            c[k:] = [x + y for x, y in zip(c[k:], c[: n + 1 - k])]
    else:
        for k in range(1, n + 1):
            c[k:] = [x - y for x, y in zip(c[k:], c[: n + 1 - k])]
    if m is not None:
        c = [x % m for x in c]
    return TruncatedSeries(ring, n, tuple(c))


def overpartition_gf(order: int, ring: RingSpec = EXACT) -> TruncatedSeries:
    """Generating function of overpartition counts, coefficient n = pbar(n).

    Computed by two independent routes, 1/phi(-q) and
    (-q;q)_inf * (q;q)_inf^-1, which must agree coefficient for coefficient;
    a mismatch aborts the run rather than returning questionable numbers.
    """
    via_theta = phi(order, ring).alternate_signs().inverse()
    via_products = euler_product(order, ring, negated_argument=True) * euler_product(
        order, ring
    ).inverse()
    if via_theta != via_products:
        raise RouteMismatchError(
            "overpartition series routes disagree (theta inverse vs product quotient)"
        )
    return via_theta


def p4n3_product_form(order: int) -> TruncatedSeries:
    """8 * (q^2;q^2) * (q^4;q^4)^6 / (q;q)^8 over exact integers.

    Term n equals the overpartition count of 4n+3.  Modular variants should be
    taken by reduce_mod of this one canonical construction.
    """
    e1 = euler_product(order)
    rhs = e1.substitute_power(2) * e1.substitute_power(4) ** 6 * e1.inverse() ** 8
    return rhs.scale(8)


# CLI-facing series names; hs43-rhs is the product form above.
SERIES_NAMES = ("phi", "euler", "neg-euler", "overpartition", "hs43-rhs")


def build_named_series(name: str, order: int, ring: RingSpec = EXACT) -> TruncatedSeries:
    """Construct one of the named series for CLI use.

    hs43-rhs is constructed over exact integers and reduced afterwards when a
    modular ring is requested; every other name builds in the target ring.
    """
    if name == "phi":
        return phi(order, ring)
    if name == "euler":
        return euler_product(order, ring)
    if name == "neg-euler":
        return euler_product(order, ring, negated_argument=True)
    if name == "overpartition":
        return overpartition_gf(order, ring)
    if name == "hs43-rhs":
        rhs = p4n3_product_form(order)
        return rhs.reduce_mod(ring.modulus) if ring.is_modular else rhs
    raise ValueError(f"unknown series {name!r}; expected one of {SERIES_NAMES}")
