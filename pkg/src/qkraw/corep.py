"""
Matrix elements of the symmetric corepresentations on degree-N polynomials
in three q-commuting variables z1, z2, z3 (z_i z_j = q z_j z_i for i < j).

``coaction_expand`` computes the coaction by brute force in the tensor
algebra and serves as the oracle for the closed-form ``h_element``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

from .ncalg import NCPoly, _add_into, _mono_times_gen, gen_index, normal_order_word
from .qscalar import ONE, Q, LaurentScalar, q_multinomial

__all__ = [
    "compositions",
    "index_matrices",
    "q_twist",
    "twist_exponent",
    "row_multinomial",
    "col_multinomial",
    "h_element",
    "t_element",
    "t_factor",
    "h_right_element",
    "coaction_expand",
    "matrix_element_table",
]

_QM2 = Q**-2


def _triple(m):
    m = tuple(int(x) for x in m)
    if len(m) != 3 or any(x < 0 for x in m):
        raise ValueError(f"expected a triple of nonnegative integers, got {m}")
    return m


def compositions(N: int):
    """All (m1, m2, m3) with m1 + m2 + m3 = N, in lexicographic order."""
    return [(a, b, N - a - b) for a in range(N + 1) for b in range(N - a + 1)]


@lru_cache(maxsize=None)
def _index_matrices(m, n):
    out = []
    for a11 in range(min(m[0], n[0]) + 1):
        for a12 in range(min(m[0] - a11, n[1]) + 1):
            a13 = m[0] - a11 - a12
            if a13 > n[2]:
                continue
            for a21 in range(min(m[1], n[0] - a11) + 1):
                for a22 in range(min(m[1] - a21, n[1] - a12) + 1):
                    a23 = m[1] - a21 - a22
                    a31, a32, a33 = n[0] - a11 - a21, n[1] - a12 - a22, n[2] - a13 - a23
                    if a23 < 0 or min(a31, a32, a33) < 0:
                        continue
                    out.append(((a11, a12, a13), (a21, a22, a23), (a31, a32, a33)))
    return tuple(out)


def index_matrices(m, n):
    """3x3 nonnegative integer matrices with row sums m and column sums n.

    Ordered lexicographically by the flattened rows.
    """
    m, n = _triple(m), _triple(n)
    if sum(m) != sum(n):
        raise ValueError(f"marginals {m} and {n} have different totals")
    return list(_index_matrices(m, n))


def twist_exponent(a) -> int:
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = a
    return (
        a13 * (a21 + a22 + a32)
        + a31 * (a12 + a22 + a23)
        + a12 * a21
        + a13 * a31
        + a23 * a32
    )


def q_twist(a) -> LaurentScalar:
    """Q(a) = q^{-f(a)}; symmetric under transposition of a."""
    return LaurentScalar.monomial(-twist_exponent(a))


def row_multinomial(a, base=_QM2):
    out = ONE
    for row in a:
        out = out * q_multinomial(sum(row), row, base)
    return out


def col_multinomial(a, base=_QM2):
    return row_multinomial(tuple(zip(*a)), base)


def _column_major_word(a):
    return [(i + 1, k + 1) for k in range(3) for i in range(3) for _ in range(a[i][k])]


@lru_cache(maxsize=None)
def _h(m, n):
    acc = NCPoly.zero()
    for a in _index_matrices(m, n):
        coeff = q_twist(a) * row_multinomial(a)
        acc = acc + normal_order_word(_column_major_word(a)).scale(coeff)
    return acc


def _check_level(N, m, n):
    m, n = _triple(m), _triple(n)
    if sum(m) != N or sum(n) != N:
        raise ValueError(f"|m| = {sum(m)}, |n| = {sum(n)} but N = {N}")
    return m, n


def h_element(N: int, m, n) -> NCPoly:
    """Unnormalized matrix element h^{(N)}_{m,n}, exact."""
    m, n = _check_level(N, m, n)
    return _h(m, n)


def t_factor(N: int, m, n, q: float) -> float:
    """sqrt([N m] / [N n]) with multinomials in base q^-2, at numeric q."""
    m, n = _check_level(N, m, n)
    base = q**-2
    return math.sqrt(q_multinomial(N, m, base) / q_multinomial(N, n, base))


def t_element(N: int, m, n, q: float):
    """Unitary matrix element as (exact h, numeric normalization)."""
    return h_element(N, m, n), t_factor(N, m, n, q)


@lru_cache(maxsize=None)
def _h_right(m, n):
    # \tilde h_{n,m}: b has row sums n and column sums m
    acc = NCPoly.zero()
    for b in _index_matrices(n, m):
        coeff = q_twist(b) * col_multinomial(b)
        acc = acc + normal_order_word(_column_major_word(b)).scale(coeff)
    return acc


def h_right_element(N: int, m, n) -> NCPoly:
    """Right-comodule element \\tilde h_{n,m} for input basis vector w^m.

    Defined by Δ(w^m) = Σ_n w^n ⊗ \\tilde h_{n,m} with w_j = x_ij (i fixed),
    so h_right_element(1, e_k, e_i) = x_ik.
    """
    m, n = _check_level(N, m, n)
    return _h_right(m, n)


def _z_shift(z, k):
    # z^z * z_k = q^{-(sum of exponents of z_l, l > k)} z^{z + e_k}
    return -sum(z[k + 1:]), z[:k] + (z[k] + 1,) + z[k + 1:]


def coaction_expand(m):
    """Expand Δ(z1^m1 z2^m2 z3^m3) = Π_i (Σ_k x_ik ⊗ z_k)^{m_i}.

    Returns {n: coefficient NCPoly of z^n}. Works directly in
    M_q(3) ⊗ C_q[z]; it does not use index matrices or the twist Q(a).
    """
    m = _triple(m)
    state = {((0,) * 9, (0, 0, 0)): ONE}
    for i in range(3):
        for _ in range(m[i]):
            nxt = {}
            for (mono, z), c in state.items():
                for k in range(3):
                    zexp, z2 = _z_shift(z, k)
                    zc = LaurentScalar.monomial(zexp)
                    for mono2, c2 in _mono_times_gen(mono, gen_index(i + 1, k + 1)):
                        _add_into(nxt, (mono2, z2), c * c2 * zc)
            state = nxt
    out = {}
    for (mono, z), c in state.items():
        out.setdefault(z, {})
        _add_into(out[z], mono, c)
    return {z: NCPoly(terms) for z, terms in sorted(out.items())}


def _max_workers():
    raw = os.environ.get("QKRAW_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"QKRAW_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"QKRAW_THREADS must be a positive integer, got {raw!r}")
    return value


def matrix_element_table(N: int, kind: str = "h", q: float | None = None) -> dict:
    """{(m, n): element} for all |m| = |n| = N.

    ``kind`` is 'h', 'h_right' or 't'; 't' needs a numeric ``q`` and stores
    (NCPoly, factor) pairs.
    """
    makers = {
        "h": lambda m, n: h_element(N, m, n),
        "h_right": lambda m, n: h_right_element(N, m, n),
        "t": lambda m, n: t_element(N, m, n, q),
    }
    if kind not in makers:
        raise ValueError(f"unknown table kind {kind!r}")
    if kind == "t" and q is None:
        raise ValueError("kind 't' needs a numeric q")
    keys = [(m, n) for m in compositions(N) for n in compositions(N)]
    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        values = list(pool.map(lambda mn: makers[kind](*mn), keys))
    return dict(zip(keys, values))
