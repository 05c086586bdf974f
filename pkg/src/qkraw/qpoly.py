"""
Quantum q-Krawtchouk polynomials (univariate and Tratnik bivariate), Wall
polynomials, and the shift-operator scalars they produce.

Parameters that are powers of the base may be passed as :class:`QPow` so
that Pochhammer factors 1 - q^0 vanish exactly instead of to rounding.
Square roots are principal-branch complex; functions whose value is known
to be real check the imaginary residue and return a float.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .qscalar import QPow, phi21_terminating, q_binomial, q_multinomial, q_pochhammer

__all__ = [
    "QPow",
    "ImaginaryResidueError",
    "IMAG_TOL",
    "kraw1",
    "kraw1_weight",
    "kraw1_norm",
    "kraw2_tratnik",
    "kraw2_weight",
    "kraw2_norm",
    "wall_pbar",
    "uni_shift_scalar",
    "kraw1_orthonormal",
    "kraw2_orthonormal",
    "bi_shift_scalar",
    "coeff_C",
    "wall_identity_stated",
    "wall_identity_corrected",
    "wall_identity_admissible",
]

IMAG_TOL = 1e-10


class ImaginaryResidueError(ArithmeticError):
    """A quantity that must be real came out with a sizeable imaginary part."""


def _real(z, what="value"):
    z = complex(z)
    if abs(z.imag) > IMAG_TOL * max(1.0, abs(z)):
        raise ImaginaryResidueError(f"{what} has imaginary part {z.imag:.3e} (value {z})")
    return z.real


def _times_power(p, k, q):
    # p * q^k
    if isinstance(p, QPow):
        return QPow(p.exp + k)
    return p * q**k


def _power(p, k, q):
    # p^k
    if isinstance(p, QPow):
        return q ** (p.exp * k)
    return p**k


def _inv_square(p):
    if isinstance(p, QPow):
        e = -2 * p.exp
        return QPow(int(e) if e == int(e) else e)
    return p**-2


def _value(p, q):
    return p.value(q) if isinstance(p, QPow) else p


def kraw1(n: int, x: int, p, N: int, q):
    """k_n(x; p, N, q) = (-1)^n (q^-N; q)_n q^{n(n-1)/2} 2phi1(q^-n, q^-x; q^-N; q, p q^{n+1})."""
    if not 0 <= n <= N:
        raise ValueError(f"degree n = {n} outside [0, {N}]")
    pre = (-1) ** n * q_pochhammer(QPow(-N), q, n) * q ** (n * (n - 1) / 2)
    z = _value(_times_power(p, n + 1, q), q)
    return pre * phi21_terminating(-n, -x, -N, q, z)


def kraw1_weight(x: int, p, N: int, q) -> complex:
    """w_x(p), whose square is the orthogonality weight of kraw1."""
    if not 0 <= x <= N:
        raise ValueError(f"x = {x} outside [0, {N}]")
    inner = (
        (-1) ** (N - x)
        * q ** (x * (x - 1) / 2)
        * q_binomial(N, x, q)
        * q_pochhammer(_times_power(p, 1, q), q, N - x)
        / q_pochhammer(QPow(1), q, N)
        * _power(p, -N, q)
        * q ** (-N * (N + 1) / 2)
    )
    return cmath.sqrt(inner)


def kraw1_norm(n: int, p, N: int, q) -> complex:
    """Θ_n(p), the normalization that makes w_x Θ_n k_n orthonormal."""
    if not 0 <= n <= N:
        raise ValueError(f"n = {n} outside [0, {N}]")
    inner = (
        (-1) ** n
        * q ** (n * (n + 1) / 2 - N * n)
        * q_binomial(N, n, q)
        * q_pochhammer(QPow(1), q, N)
        / q_pochhammer(_times_power(p, 1, q), q, n)
    )
    return q ** (-n * (n - 1) / 2) / q_pochhammer(QPow(-N), q, n) * cmath.sqrt(inner)


def kraw2_tratnik(n: int, m: int, x: int, y: int, u, v, N: int, q):
    """K_{n,m}(x, y; u, v, N, q) = k_n(x; v^-2, x+y, q) k_m(x+y-n; u^-2, N-n, q).

    ``u`` and ``v`` are numbers or QPow (exponent in the base ``q``; may be
    a Fraction, e.g. QPow(Fraction(u + 1, 2)) for q^{u+1} in base q^2).
    """
    if x < 0 or y < 0 or x + y > N or n + m > N:
        raise ValueError(f"(n, m) = ({n}, {m}), (x, y) = ({x}, {y}) outside the simplex of size {N}")
    return kraw1(n, x, _inv_square(v), x + y, q) * kraw1(m, x + y - n, _inv_square(u), N - n, q)


def _qpow2(e):
    # (q^2)-base power given an exponent of q
    return QPow(Fraction(e, 2)) if e % 2 else QPow(e // 2)


def kraw2_weight(n1: int, n2: int, u: int, v: int, N: int, q: float) -> complex:
    """W^{(N)}_{n1,n2}(u, v); its square weights kraw2 at base q^2."""
    if min(n1, n2) < 0 or n1 + n2 > N:
        raise ValueError(f"({n1}, {n2}) outside the simplex of size {N}")
    Q2 = q * q
    inner = (
        (-1) ** (N - n1)
        * q ** (2 * v * (n1 + n2))
        * q ** (n1 * (n1 - 1))
        * q_multinomial(N, (n1, n2, N - n1 - n2), Q2)
        * q_pochhammer(QPow(-v), Q2, n2)
        * q_pochhammer(QPow(-u), Q2, N - n1 - n2)
        * q ** (2 * N * (u + 1))
        * q ** (-N * (N + 1))
    )
    return cmath.sqrt(inner)


def kraw2_norm(m1: int, m2: int, u: int, v: int, N: int, q: float) -> complex:
    """N^{(N)}_{m1,m2}(u, v)."""
    if min(m1, m2) < 0 or m1 + m2 > N:
        raise ValueError(f"({m1}, {m2}) outside the simplex of size {N}")
    Q2 = q * q
    expo = 2 * N * (m1 + m2) + 4 * m1 + 2 * m2 - 2 * m1 * m2 - m1 * (m1 - 1) - m2 * (m2 - 1)
    inner = (
        (-1) ** (m1 + m2)
        * q_multinomial(N, (m1, m2, N - m1 - m2), Q2)
        * q**expo
        / (q_pochhammer(QPow(-u), Q2, m2) * q_pochhammer(QPow(-v), Q2, m1))
    )
    pre = (
        q ** (-m1 * (m1 - 1) - m2 * (m2 - 1))
        * q ** (-m1 * (u + 1))
        * q_pochhammer(QPow(1), Q2, N - m1 - m2)
        / q_pochhammer(QPow(1), Q2, N)
    )
    return pre * cmath.sqrt(inner)


def wall_pbar(v: int, w: int, s: int, q: float) -> float:
    """Weighted, normalized Wall polynomial p̄_v(q^{2w}; q^{2s}; q^2).

    Orthonormal in w for fixed s.
    """
    if not 0 < q < 1:
        raise ValueError(f"Wall polynomials need 0 < q < 1, got {q}")
    if min(v, w, s) < 0:
        raise ValueError(f"negative index in wall_pbar(v={v}, w={w}, s={s})")
    Q2 = q * q
    radicand = (
        q ** (2 * (w - v) * (s + 1))
        * q_pochhammer(QPow(s + 1), Q2, math.inf)
        * q_pochhammer(QPow(s + 1), Q2, v)
        / (q_pochhammer(QPow(1), Q2, v) * q_pochhammer(QPow(1), Q2, w))
    )
    series = phi21_terminating(-v, None, s + 1, Q2, Q2 ** (w + 1))
    return (-1) ** (v + w) * math.sqrt(radicand) * series


def uni_shift_scalar(m: int, n: int, T: int, k: int, q: float) -> float:
    """Scalar of π_i(t) acting on |k>, for the elementary representations.

    Equals (-1)^{n-m} w_n(p) Θ_m(p) k_m(q^{-2n}; p, T, q^2) with
    p = q^{-2(K+1)} and K = k + T - n; the lattice size is T. When the
    target state k + T - m - n is negative the operator annihilates |k>.
    """
    if not (0 <= m <= T and 0 <= n <= T):
        raise ValueError(f"(m, n) = ({m}, {n}) outside [0, {T}]")
    if k < 0:
        raise ValueError(f"state index k = {k} is negative")
    if k + T - m - n < 0:
        return 0.0
    K = k + T - n
    Q2 = q * q
    p = QPow(-(K + 1))
    val = (
        (-1) ** (n - m)
        * kraw1_weight(n, p, T, Q2)
        * kraw1_norm(m, p, T, Q2)
        * kraw1(m, n, p, T, Q2)
    )
    return _real(val, "uni_shift_scalar")


def kraw1_orthonormal(n: int, x: int, p, N: int, q) -> complex:
    """w_x(p) Θ_n(p) k_n(q^{-x}; p, N, q); orthonormal in n and in x."""
    return kraw1_weight(x, p, N, q) * kraw1_norm(n, p, N, q) * kraw1(n, x, p, N, q)


def kraw2_orthonormal(m, n, N: int, u: int, v: int, q: float) -> complex:
    """(-1)^{m1-n2} W_{n}(u,v) N_{m}(u,v) K_{m}(n; q^{u+1}, q^{v+1}, N, q^2).

    Orthonormal over the simplex in n for fixed m and in m for fixed n
    (the dual relation). Zero when m1 > n1 + n2.
    """
    m1, m2 = _pair(m)
    n1, n2 = _pair(n)
    if min(m1, m2, n1, n2) < 0 or m1 + m2 > N or n1 + n2 > N:
        raise ValueError(f"m = {m}, n = {n} outside the simplex of size {N}")
    return _tratnik_scalar(m1, m2, n1, n2, N, u, v, q)


def _pair(x):
    x = tuple(x)
    if len(x) not in (2, 3):
        raise ValueError(f"expected a pair, got {x}")
    return x[0], x[1]


def _tratnik_scalar(m1, m2, n1, n2, N, U, V, q):
    # (-1)^{m1-n2} W_{n1,n2}(U,V) N_{m1,m2}(U,V) K_{m1,m2}(n1,n2; q^{U+1}, q^{V+1}, N, q^2)
    if m1 > n1 + n2:
        return 0.0
    Q2 = q * q
    K = kraw2_tratnik(m1, m2, n1, n2, _qpow2(U + 1), _qpow2(V + 1), N, Q2)
    return (-1) ** (m1 - n2) * kraw2_weight(n1, n2, U, V, N, q) * kraw2_norm(m1, m2, U, V, N, q) * K


def bi_shift_scalar(m, n, N: int, u: int, v: int, q: float) -> float:
    """Scalar of π_21(t_{m,n}) acting on |u, v>.

    Evaluated at U = u + N - n1 - n2, V = v + n2 through the Tratnik
    weight, normalization and polynomial. Zero when m1 > n1 + n2 or the
    target state leaves the lattice.
    """
    m1, m2 = _pair(m)
    n1, n2 = _pair(n)
    if min(m1, m2, n1, n2) < 0 or m1 + m2 > N or n1 + n2 > N:
        raise ValueError(f"m = {m}, n = {n} outside the simplex of size {N}")
    if u < 0 or v < 0:
        raise ValueError(f"state ({u}, {v}) is negative")
    if u - m2 + N - n1 - n2 < 0 or v + n2 - m1 < 0:
        return 0.0
    val = _tratnik_scalar(m1, m2, n1, n2, N, u + N - n1 - n2, v + n2, q)
    return _real(val, "bi_shift_scalar")


def coeff_C(m, n, j: int, N: int, u: int, v: int, t: int, w: int, q: float) -> float:
    """C^{(N)}_{m,n,j}(u, v, t) of the Wall-product identity in its stated form.

    Depends on the Wall variable ``w`` through W_{n1,n2}(u, w) and
    (q^{-2w}; q^2)_{m1}. Lattice size of w_{n1} and Θ_j is n1 + n2.
    """
    m1, _ = _pair(m)
    n1, n2 = _pair(n)
    L = n1 + n2
    if not 0 <= j <= min(N, L):
        raise ValueError(f"j = {j} outside [0, {min(N, L)}]")
    Q2 = q * q
    p = QPow(-(t + 1))
    ratio = q_pochhammer(QPow(-w), Q2, m1) / q_pochhammer(QPow(j - v), Q2, m1)
    val = (
        (-1) ** (m1 - n1)
        * kraw1_weight(n1, p, L, Q2)
        * kraw1_norm(j, p, L, Q2)
        * kraw2_weight(j, L - j, u, v - j, N, q)
        / kraw2_weight(n1, n2, u, w, N, q)
        * cmath.sqrt(ratio)
    )
    return _real(val, "coeff_C")


def _wall_or_zero(v, w, s, q):
    # absent lattice states contribute nothing
    if v < 0 or w < 0:
        return 0.0
    return wall_pbar(v, w, s, q)


def _K_or_zero(m1, m2, x, y, U1, V1, N, q):
    # K_{m1,m2}(x, y; q^{U1}, q^{V1}, N, q^2)
    if x < 0 or y < 0 or m1 > x + y:
        return 0.0
    return kraw2_tratnik(m1, m2, x, y, _qpow2(U1), _qpow2(V1), N, q * q)


def wall_identity_admissible(m, n, u, v, t, w) -> bool:
    """Parameter points where every factor of the identity is finite."""
    if len(m) != 3 or len(n) != 3 or sum(m) != sum(n):
        raise ValueError("m and n must be triples of equal total")
    m1, _ = _pair(m)
    n1, n2 = _pair(n)
    N = sum(m)
    return u >= N and w >= N and t >= N and v >= n1 + n2 + m1


def wall_identity_stated(m, n, u: int, v: int, t: int, w: int, q: float):
    """Both sides of the Wall x bivariate-Krawtchouk product identity in its stated form.

    ``m`` and ``n`` are triples with |m| = |n| = N. Returns (lhs, rhs).
    This form does not hold in general; see ``wall_identity_corrected``.
    """
    m1, m2 = _pair(m)
    n1, n2 = _pair(n)
    N = sum(m)
    L = n1 + n2
    Q2 = q * q
    lhs = _wall_or_zero(v - L, w - n2, abs(t + n1 - v), q) * _K_or_zero(m1, m2, n1, n2, u + 1, w + 1, N, q)
    rhs = 0.0
    for j in range(0, min(N, L) + 1):
        rhs += (
            coeff_C(m, n, j, N, u, v, t, w, q)
            * _wall_or_zero(v - j - m1, w - n2 - m1, abs(t + m1 - v), q)
            * kraw1(j, n1, QPow(-(t + 1)), L, Q2)
            * _K_or_zero(m1, m2, j, L - j, u + 1, v - j + 1, N, q)
        )
    return lhs, rhs


def wall_identity_corrected(m, n, u: int, v: int, t: int, w: int, q: float):
    """The same identity re-derived from the Clebsch-Gordan intertwiner.

    Differences from the stated form:

    * the right-hand Wall argument is q^{2(w - m1)};
    * C carries no sign (-1)^{m1-n1};
    * each Wall degree is the smaller tensor-leg index, min(v - n1 - n2, t - n2)
      on the left and min(v - j - m1, t - j) on the right.
    """
    m1, m2 = _pair(m)
    n1, n2 = _pair(n)
    N = sum(m)
    L = n1 + n2
    Q2 = q * q
    lhs = _wall_or_zero(min(v - L, t - n2), w - n2, abs(t + n1 - v), q) * _K_or_zero(
        m1, m2, n1, n2, u + 1, w + 1, N, q
    )
    rhs = 0.0
    for j in range(0, min(N, L) + 1):
        rhs += (
            (-1) ** (m1 - n1)
            * coeff_C(m, n, j, N, u, v, t, w, q)
            * _wall_or_zero(min(v - j - m1, t - j), w - m1, abs(t + m1 - v), q)
            * kraw1(j, n1, QPow(-(t + 1)), L, Q2)
            * _K_or_zero(m1, m2, j, L - j, u + 1, v - j + 1, N, q)
        )
    return lhs, rhs
