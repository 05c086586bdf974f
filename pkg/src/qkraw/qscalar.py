"""
Exact Laurent polynomials in q and the q-series primitives built on them.

The same functions (``q_pochhammer``, ``q_binomial``, ...) accept either a
formal base (a :class:`LaurentScalar`, e.g. ``Q`` or ``Q**-2``) and return
exact results, or a plain float/complex base and return numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number, Rational

__all__ = [
    "LaurentScalar",
    "Q",
    "QPow",
    "q_pochhammer",
    "q_binomial",
    "q_multinomial",
    "phi21_terminating",
    "INF_TRUNCATION",
]

# infinite products stop once |a q^k| drops below this
INF_TRUNCATION = 1e-18


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"LaurentScalar coefficients must be rational, got {type(c).__name__}")


class LaurentScalar:
    """A Laurent polynomial sum_k c_k q^k with rational coefficients.

    Instances are immutable and always canonical (no zero coefficients), so
    equality is structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, clean):
        obj = cls.__new__(cls)
        obj._terms = clean
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentScalar":
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, other):
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return cls.const(other)
        if isinstance(other, bool):
            return cls.const(int(other))
        return NotImplemented

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = LaurentScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = LaurentScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = LaurentScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = LaurentScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentScalar._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers are only defined for monomials")
            (e, c), = self._terms.items()
            return LaurentScalar._raw({e * k: c**k})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        other = LaurentScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.divexact(other)

    def __rtruediv__(self, other):
        other = LaurentScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.divexact(self)

    def divexact(self, other: "LaurentScalar") -> "LaurentScalar":
        """Exact quotient; raises ArithmeticError if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        rem = dict(self._terms)
        dlead = other.max_exp()
        dlow = other.min_exp()
        dc = other._terms[dlead]
        quot = {}
        while rem:
            top = max(rem)
            if top - dlead < min(rem) - dlow:
                raise ArithmeticError(f"{other!r} does not divide {self!r}")
            e = top - dlead
            c = rem[top] / dc
            quot[e] = c
            for de, dcoef in other._terms.items():
                k = e + de
                v = rem.get(k, 0) - c * dcoef
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentScalar._raw(quot)

    def subs_power(self, k: int) -> "LaurentScalar":
        """Substitute q -> q^k."""
        if k == 0:
            return LaurentScalar.const(sum(self._terms.values(), Fraction(0)))
        return LaurentScalar._raw({e * k: c for e, c in self._terms.items()})

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = LaurentScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation -------------------------------------------------------

    def evaluate(self, q0):
        """Evaluate at q = q0.

        Rational q0 (int or Fraction) gives an exact Fraction; floats and
        complex numbers give a float/complex.
        """
        if isinstance(q0, (int, Fraction)) and not isinstance(q0, bool):
            q0 = Fraction(q0)
            if q0 == 0 and any(e < 0 for e in self._terms):
                raise ZeroDivisionError("negative power of q at q = 0")
            return sum((c * q0**e for e, c in self._terms.items()), Fraction(0))
        return sum(float(c) * q0**e for e, c in self._terms.items()) if self._terms else 0.0

    __call__ = evaluate

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {str(e): f"{c.numerator}/{c.denominator}" for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentScalar":
        return cls({int(e): Fraction(v) for e, v in data.items()})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}"
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


ZERO = LaurentScalar()
ONE = LaurentScalar.const(1)
Q = LaurentScalar.monomial(1)


@dataclass(frozen=True)
class QPow:
    """The parameter q^exp, kept symbolic so that factors 1 - q^0 vanish exactly."""

    exp: int

    def value(self, q):
        return q**self.exp


def _is_formal(x) -> bool:
    return isinstance(x, LaurentScalar)


def _factor(a, q, k):
    # 1 - a q^k
    if isinstance(a, QPow):
        e = a.exp + k
        if e == 0:
            return 0 if not _is_formal(q) else ZERO
        return 1 - q**e
    return 1 - a * q**k


def q_pochhammer(a, q, n):
    """(a; q)_n = prod_{k<n} (1 - a q^k).

    ``a`` may be a :class:`QPow` (exact power of the base), a LaurentScalar,
    or a number. ``n`` may be ``math.inf`` for a numeric base with |q| < 1.
    """
    if n == math.inf:
        if _is_formal(q) or _is_formal(a):
            raise ValueError("infinite q-Pochhammer symbols are numeric-only")
        if abs(q) >= 1:
            raise ValueError(f"infinite product needs |q| < 1, got {q}")
        a_num = a.value(q) if isinstance(a, QPow) else a
        result = 1.0
        term = a_num
        while abs(term) >= INF_TRUNCATION:
            result *= 1 - term
            term *= q
        return result
    if n < 0 or int(n) != n:
        raise ValueError(f"q-Pochhammer length must be a nonnegative integer, got {n}")
    result = ONE if (_is_formal(q) or _is_formal(a)) else 1
    for k in range(int(n)):
        result = result * _factor(a, q, k)
    return result


def _qq(q, n):
    return q_pochhammer(QPow(1), q, n)


def q_binomial(n: int, k: int, q):
    """Gaussian binomial coefficient; exact when ``q`` is formal.

    Zero for k outside [0, n]. A numeric ``q`` equal to 1 falls back to the
    classical binomial.
    """
    if k < 0 or k > n:
        return ZERO if _is_formal(q) else 0
    if _is_formal(q):
        return _qq(q, n).divexact(_qq(q, k) * _qq(q, n - k))
    if q == 1:
        return math.comb(n, k)
    return _qq(q, n) / (_qq(q, k) * _qq(q, n - k))


def q_multinomial(N: int, m, q):
    """(q;q)_N / prod_i (q;q)_{m_i} with sum(m) == N."""
    m = tuple(m)
    if any(x < 0 for x in m) or sum(m) != N:
        raise ValueError(f"multinomial marginals {m} do not sum to {N}")
    if _is_formal(q):
        den = ONE
        for x in m:
            den = den * _qq(q, x)
        return _qq(q, N).divexact(den)
    if q == 1:
        out = math.factorial(N)
        for x in m:
            out //= math.factorial(x)
        return out
    den = 1
    for x in m:
        den *= _qq(q, x)
    return _qq(q, N) / den


def phi21_terminating(alpha_exp: int, beta_exp, gamma_exp, q, z):
    """Terminating 2phi1(q^alpha, b; q^gamma; q, z) with alpha_exp = -n <= 0.

    ``beta_exp`` and ``gamma_exp`` are integer exponents of q, or ``None`` for
    a zero parameter (then (0;q)_j = 1). The sum stops early when the
    numerator vanishes; a vanishing denominator before that raises.
    """
    if alpha_exp > 0:
        raise ValueError("series does not terminate: alpha_exp must be <= 0")
    n = -alpha_exp
    formal = _is_formal(q) or _is_formal(z)
    one = ONE if formal else 1
    total = one
    term = one
    a = QPow(alpha_exp)
    b = QPow(beta_exp) if beta_exp is not None else None
    c = QPow(gamma_exp) if gamma_exp is not None else None
    for j in range(n):
        num = _factor(a, q, j)
        if b is not None:
            num = num * _factor(b, q, j)
        if num == 0:
            break
        den = _factor(QPow(1), q, j)
        if c is not None:
            den = den * _factor(c, q, j)
        if den == 0:
            raise ZeroDivisionError(
                f"lower parameter q^{gamma_exp} makes the series singular at j = {j + 1}"
            )
        if formal:
            term = (term * num * z).divexact(den) if isinstance(den, LaurentScalar) else term * num * z / den
        else:
            term = term * num * z / den
        total = total + term
    return total
