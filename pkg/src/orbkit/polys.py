"""Eigenvalues of exact matrices over Q(sqrt(d)), via sympy factorisation."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy as sp

from .scalars import Field, NumberFieldElement


def to_sympy(x: NumberFieldElement):
    return sp.Rational(x.a.numerator, x.a.denominator) + \
        sp.Rational(x.b.numerator, x.b.denominator) * sp.sqrt(x.d)


def from_sympy(expr, F: Field) -> NumberFieldElement:
    expr = sp.nsimplify(sp.radsimp(sp.expand(expr)))
    if F.d == 1:
        if not expr.is_Rational:
            raise ValueError(f"{expr} is not rational")
        return F(Fraction(int(expr.p), int(expr.q)))
    r = sp.sqrt(F.d)
    b = sp.expand(expr).coeff(r)
    a = sp.expand(expr - b * r)
    if not (a.is_Rational and b.is_Rational):
        raise ValueError(f"{expr} does not lie in Q(sqrt({F.d}))")
    return F(Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)))


def eigenvalues_in_field(M: np.ndarray, F: Field):
    """Return ``(roots, split)``: the distinct eigenvalues lying in ``F`` and
    whether the characteristic polynomial splits into linear factors over ``F``."""
    n = M.shape[0]
    x = sp.Symbol("x")
    S = sp.Matrix(n, n, lambda i, j: to_sympy(F(M[i, j])))
    p = S.charpoly(x).as_expr()
    ext = sp.sqrt(F.d) if F.d != 1 else None
    _, factors = sp.factor_list(p, x, extension=ext) if ext is not None else sp.factor_list(p, x)
    roots = []
    split = True
    for fac, _mult in factors:
        poly = sp.Poly(fac, x)
        if poly.degree() == 1:
            c1, c0 = poly.all_coeffs()
            roots.append(from_sympy(-c0 / c1, F))
        elif poly.degree() > 1:
            split = False
    return roots, split
