"""Sparse bivariate Laurent polynomials with complex coefficients.

A polynomial is a finite map from integer exponent pairs to nonzero complex
coefficients.  Evaluation lives on the torus (both coordinates nonzero);
restriction to a fiber produces an ordinary univariate polynomial together
with the monomial shift that was divided out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateFiberError, TorusDomainError

Exponent = tuple[int, int]


@dataclass(frozen=True)
class UnivariatePoly:
    """Dense univariate polynomial c_0 + c_1 w + ... + c_d w^d.

    ``shift`` records the monomial power divided out of a Laurent fiber, so
    the original fiber function is w**shift * p(w).  The leading coefficient
    is nonzero by construction.
    """

    coeffs: tuple[complex, ...]
    shift: int = 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, w: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc


@dataclass(frozen=True)
class RealPair:
    """Real and imaginary parts of f(x + iy) as real polynomials.

    Term keys are exponent tuples (p1, p2, q1, q2) for x1^p1 x2^p2 y1^q1 y2^q2.
    """

    re_terms: dict
    im_terms: dict

    def evaluate(self, x1: float, x2: float, y1: float, y2: float) -> tuple[float, float]:
        def ev(terms):
            return sum(c * x1**p1 * x2**p2 * y1**q1 * y2**q2
                       for (p1, p2, q1, q2), c in terms.items())

        return ev(self.re_terms), ev(self.im_terms)


class LaurentPolynomial:
    """Finite sum of terms coef * z1**a1 * z2**a2 with nonzero coefficients."""

    __slots__ = ("_items",)

    def __init__(self, terms):
        cleaned: dict[Exponent, complex] = {}
        for exp, coef in dict(terms).items():
            e = (int(exp[0]), int(exp[1]))
            c = complex(coef)
            if c != 0:
                cleaned[e] = cleaned.get(e, 0j) + c
        cleaned = {e: c for e, c in cleaned.items() if c != 0}
        if not cleaned:
            raise ValueError("a Laurent polynomial needs at least one nonzero term")
        object.__setattr__(self, "_items", tuple(sorted(cleaned.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    @property
    def terms(self) -> dict[Exponent, complex]:
        return dict(self._items)

    @property
    def support(self) -> tuple[Exponent, ...]:
        return tuple(e for e, _ in self._items)

    def coefficient(self, exp: Exponent) -> complex:
        return dict(self._items).get((int(exp[0]), int(exp[1])), 0j)

    def magnitude(self) -> float:
        """Sum of coefficient magnitudes; a natural scale for tolerances."""
        return sum(abs(c) for _, c in self._items)

    def scaled(self, factor: complex) -> "LaurentPolynomial":
        if factor == 0:
            raise ValueError("scaling by zero")
        return LaurentPolynomial({e: c * factor for e, c in self._items})

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        bits = []
        for (a1, a2), c in self._items:
            bits.append(f"({c:g})*z1^{a1}*z2^{a2}")
        return " + ".join(bits)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, z1: complex, z2: complex) -> complex:
        if z1 == 0 or z2 == 0:
            raise TorusDomainError("torus only: both coordinates must be nonzero")
        return sum(c * z1**a1 * z2**a2 for (a1, a2), c in self._items)

    def fiber_restrict(self, free_axis: int, fixed_value: complex) -> UnivariatePoly:
        """Restrict to the fiber where the non-free variable equals fixed_value.

        The result p satisfies f = w**shift * p(w) along the fiber, with the
        shift chosen so that p has a nonzero constant term as a formal sum.
        Exact cancellation of every coefficient raises DegenerateFiberError.
        """
        if free_axis not in (1, 2):
            raise ValueError("free_axis must be 1 or 2")
        if fixed_value == 0:
            raise TorusDomainError("torus only: fixed_value must be nonzero")
        acc: dict[int, complex] = {}
        for (a1, a2), c in self._items:
            k_free, k_fix = (a1, a2) if free_axis == 1 else (a2, a1)
            acc[k_free] = acc.get(k_free, 0j) + c * fixed_value**k_fix
        nonzero = [k for k, v in acc.items() if v != 0]
        if not nonzero:
            raise DegenerateFiberError(
                "fiber polynomial is identically zero; the fixed value lies on a "
                "coordinate-aligned component of the zero set")
        lo, hi = min(nonzero), max(nonzero)
        coeffs = tuple(acc.get(k, 0j) for k in range(lo, hi + 1))
        return UnivariatePoly(coeffs=coeffs, shift=lo)

    # -- support geometry ---------------------------------------------------

    def exponent_minimum(self) -> Exponent:
        return (min(a1 for (a1, _) in self.support),
                min(a2 for (_, a2) in self.support))

    def cleared(self) -> tuple["LaurentPolynomial", Exponent]:
        """Multiply by the componentwise-minimal monomial inverse.

        Returns the cleared polynomial (nonnegative exponents) and the shift
        that was removed.  Amoebas are invariant under this operation.
        """
        m1, m2 = self.exponent_minimum()
        if m1 == 0 and m2 == 0:
            return self, (0, 0)
        shifted = {(a1 - m1, a2 - m2): c for (a1, a2), c in self._items}
        return LaurentPolynomial(shifted), (m1, m2)

    def total_degree(self) -> int:
        """Total degree after clearing denominators by the minimal monomial."""
        m1, m2 = self.exponent_minimum()
        return max((a1 - m1) + (a2 - m2) for (a1, a2) in self.support)

    # -- realification ------------------------------------------------------

    def realify(self) -> RealPair:
        """Split f(x + iy) into real and imaginary part polynomials.

        Requires nonnegative exponents; call cleared() first for Laurent
        supports.
        """
        if any(a1 < 0 or a2 < 0 for (a1, a2) in self.support):
            raise ValueError(
                "negative exponents present; clear denominators first (see cleared())")
        re_terms: dict = {}
        im_terms: dict = {}
        for (a1, a2), c in self._items:
            e1 = _binomial_expansion(a1)
            e2 = _binomial_expansion(a2)
            for (p1, q1), c1 in e1.items():
                for (p2, q2), c2 in e2.items():
                    coef = c * c1 * c2
                    key = (p1, p2, q1, q2)
                    if coef.real != 0:
                        re_terms[key] = re_terms.get(key, 0.0) + coef.real
                    if coef.imag != 0:
                        im_terms[key] = im_terms.get(key, 0.0) + coef.imag
        re_terms = {k: v for k, v in re_terms.items() if v != 0}
        im_terms = {k: v for k, v in im_terms.items() if v != 0}
        return RealPair(re_terms=re_terms, im_terms=im_terms)

    # -- serialization ------------------------------------------------------

    def to_obj(self) -> dict:
        return {"terms": [{"exp": [a1, a2], "coef": [c.real, c.imag]}
                          for (a1, a2), c in self._items]}

    @classmethod
    def from_obj(cls, obj: dict) -> "LaurentPolynomial":
        try:
            terms = {}
            for t in obj["terms"]:
                a1, a2 = t["exp"]
                re, im = t["coef"]
                e = (int(a1), int(a2))
                terms[e] = terms.get(e, 0j) + complex(float(re), float(im))
            return cls(terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial object: {exc}") from exc


def _binomial_expansion(a: int) -> dict[tuple[int, int], complex]:
    """(x + iy)**a expanded as {(p, q): coefficient} with p + q = a."""
    out = {}
    for q in range(a + 1):
        out[(a - q, q)] = math.comb(a, q) * 1j**q
    return out
