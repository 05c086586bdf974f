"""
Numeric *-representations of SU_q(3) on truncated tensor powers of l^2(N).

π_1 and π_2 act on one leg; a word such as (2, 1) gives
π_21 = (π_2 ⊗ π_1)∘Δ. Every generator image moves each leg index by at
most one, so an element of degree d acts exactly on states whose indices
all lie in [d, K - d). That range is the *safe window*; comparisons are
made there only.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .corep import t_element
from .ncalg import NCPoly, WordPoly, gen_index, gen_label
from .qscalar import LaurentScalar

__all__ = [
    "TruncatedSpace",
    "SparseOperator",
    "TorusChar",
    "elementary_op",
    "generator_op",
    "word_op",
    "adjoint",
    "apply_matrix_element",
    "matrix_element_op",
    "shift_prediction",
    "path_sum_prediction",
    "OutsideSafeWindow",
]


class OutsideSafeWindow(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedSpace:
    legs: int
    K: int

    @property
    def dim(self) -> int:
        return self.K**self.legs

    def index(self, state) -> int:
        state = tuple(state)
        if len(state) != self.legs or any(not 0 <= s < self.K for s in state):
            raise ValueError(f"state {state} is not in the truncated space {self}")
        idx = 0
        for s in state:
            idx = idx * self.K + s
        return idx

    def state(self, idx: int) -> tuple:
        out = []
        for _ in range(self.legs):
            idx, r = divmod(idx, self.K)
            out.append(r)
        return tuple(reversed(out))

    def window(self, margin: int):
        """States with every index in [margin, K - margin)."""
        rng = range(margin, self.K - margin)
        return list(itertools.product(rng, repeat=self.legs))

    def in_window(self, state, margin: int) -> bool:
        return all(margin <= s < self.K - margin for s in state)


class SparseOperator:
    """A linear map on a TruncatedSpace, stored as a scipy CSR matrix."""

    __slots__ = ("space", "matrix")

    def __init__(self, space: TruncatedSpace, matrix):
        self.space = space
        self.matrix = sp.csr_matrix(matrix, dtype=complex)

    @classmethod
    def identity(cls, space):
        return cls(space, sp.identity(space.dim, dtype=complex, format="csr"))

    @classmethod
    def zero(cls, space):
        return cls(space, sp.csr_matrix((space.dim, space.dim), dtype=complex))

    def __matmul__(self, other):
        self._check(other)
        return SparseOperator(self.space, self.matrix @ other.matrix)

    def __add__(self, other):
        self._check(other)
        return SparseOperator(self.space, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check(other)
        return SparseOperator(self.space, self.matrix - other.matrix)

    def __mul__(self, c):
        return SparseOperator(self.space, self.matrix * complex(c))

    __rmul__ = __mul__

    def _check(self, other):
        if other.space != self.space:
            raise ValueError(f"operators live on different spaces: {self.space} vs {other.space}")

    def adjoint(self):
        return SparseOperator(self.space, self.matrix.conj().T)

    def entries(self) -> dict:
        """{(out_state, in_state): value} for the stored nonzeros."""
        coo = self.matrix.tocoo()
        return {
            (self.space.state(r), self.space.state(c)): complex(v)
            for r, c, v in zip(coo.row, coo.col, coo.data)
            if v != 0
        }

    def apply(self, state) -> dict:
        """Image of the basis vector |state> as {state: amplitude}."""
        col = self.matrix[:, self.space.index(state)].tocoo()
        return {self.space.state(r): complex(v) for r, v in zip(col.row, col.data) if v != 0}

    def columns(self, states):
        idx = [self.space.index(s) for s in states]
        return self.matrix[:, idx]

    def window_deviation(self, other=None, margin: int = 0) -> float:
        """max |(self - other)|ψ>| entry over basis states ψ in the window.

        ``other`` defaults to the zero operator.
        """
        diff = self.matrix if other is None else self.matrix - other.matrix
        states = self.space.window(margin)
        if not states:
            return 0.0
        block = diff[:, [self.space.index(s) for s in states]]
        if block.nnz == 0:
            return 0.0
        return float(np.max(np.abs(block.data)))


@dataclass(frozen=True)
class TorusChar:
    """One-dimensional representation x_ij -> α_i δ_ij with α1 α2 α3 = 1."""

    alpha1: complex = 1.0
    alpha2: complex = 1.0

    def __post_init__(self):
        for a in (self.alpha1, self.alpha2):
            if abs(abs(a) - 1) > 1e-12:
                raise ValueError(f"torus phases must have modulus 1, got {a}")

    @classmethod
    def from_angles(cls, theta1: float, theta2: float):
        return cls(cmath.exp(1j * theta1), cmath.exp(1j * theta2))

    @property
    def alphas(self):
        return (self.alpha1, self.alpha2, 1 / (self.alpha1 * self.alpha2))


def _sqrt1m(x):
    return math.sqrt(max(0.0, 1.0 - x))


@lru_cache(maxsize=None)
def _elementary(which: int, g: int, K: int, q: float):
    i, j = gen_label(g)
    if which == 2:
        # π_2 acts on rows/columns 2,3 as π_1 does on 1,2; x11 -> identity
        if (i, j) == (1, 1):
            return sp.identity(K, dtype=complex, format="csr")
        if i == 1 or j == 1:
            return sp.csr_matrix((K, K), dtype=complex)
        i, j = i - 1, j - 1
    elif which != 1:
        raise ValueError(f"elementary representation must be 1 or 2, got {which}")
    rows, cols, vals = [], [], []
    for k in range(K):
        if (i, j) == (1, 1):
            if k >= 1:
                rows.append(k - 1); cols.append(k); vals.append(_sqrt1m(q ** (2 * k)))
        elif (i, j) == (1, 2):
            rows.append(k); cols.append(k); vals.append(q ** (k + 1))
        elif (i, j) == (2, 1):
            rows.append(k); cols.append(k); vals.append(-(q**k))
        elif (i, j) == (2, 2):
            if k + 1 < K:
                rows.append(k + 1); cols.append(k); vals.append(_sqrt1m(q ** (2 * k + 2)))
        elif (i, j) == (3, 3):
            rows.append(k); cols.append(k); vals.append(1.0)
    return sp.csr_matrix((vals, (rows, cols)), shape=(K, K), dtype=complex)


def elementary_op(which: int, gen, K: int, q: float) -> SparseOperator:
    """π_1 or π_2 applied to a generator, truncated to K basis states."""
    if not 0 < q < 1:
        raise ValueError(f"need 0 < q < 1, got {q}")
    g = gen_index(*gen) if isinstance(gen, tuple) else int(gen)
    return SparseOperator(TruncatedSpace(1, K), _elementary(which, g, K, float(q)))


def _check_word(word):
    word = tuple(int(w) for w in word)
    if not word:
        raise ValueError("representation word must be nonempty")
    if any(w not in (1, 2) for w in word):
        raise ValueError(f"word letters must be 1 or 2, got {word}")
    return word


@lru_cache(maxsize=None)
def _generator_matrix(word, g, K, q, alphas):
    r, s = gen_label(g)
    total = None
    for path in itertools.product((1, 2, 3), repeat=len(word) - 1):
        idx = (r,) + path + (s,)
        factors = [_elementary(w, gen_index(idx[a], idx[a + 1]), K, q) for a, w in enumerate(word)]
        if any(f.nnz == 0 for f in factors):
            continue
        term = factors[0]
        for f in factors[1:]:
            term = sp.kron(term, f, format="csr")
        total = term if total is None else total + term
    dim = K ** len(word)
    if total is None:
        total = sp.csr_matrix((dim, dim), dtype=complex)
    if alphas is not None:
        total = total * alphas[s - 1]
    return total.tocsr()


def generator_op(word, gen, K: int, q: float, torus: TorusChar | None = None) -> SparseOperator:
    """π_w(x_rs) = Σ over index paths of π_{w1}(x_{r k1}) ⊗ ... ⊗ π_{wn}(x_{k s})."""
    word = _check_word(word)
    g = gen_index(*gen) if isinstance(gen, tuple) else int(gen)
    alphas = torus.alphas if torus is not None else None
    return SparseOperator(TruncatedSpace(len(word), K), _generator_matrix(word, g, K, float(q), alphas))


def _coeff_value(c, q):
    if isinstance(c, LaurentScalar):
        return c.evaluate(float(q))
    return complex(c)


def word_op(word, p, K: int, q: float, torus: TorusChar | None = None) -> SparseOperator:
    """π_w(p) for an NCPoly or WordPoly ``p``; products follow factor order."""
    word = _check_word(word)
    if not 0 < q < 1:
        raise ValueError(f"need 0 < q < 1, got {q}")
    space = TruncatedSpace(len(word), K)
    if isinstance(p, (NCPoly, WordPoly)):
        terms = list(p.words())
    else:
        raise TypeError(f"cannot represent {type(p).__name__}")
    alphas = torus.alphas if torus is not None else None
    total = sp.csr_matrix((space.dim, space.dim), dtype=complex)
    ident = sp.identity(space.dim, dtype=complex, format="csr")
    for c, w in terms:
        val = _coeff_value(c, q)
        if val == 0:
            continue
        mat = ident
        for g in w:
            mat = mat @ _generator_matrix(word, g, K, float(q), alphas)
        total = total + mat * val
    return SparseOperator(space, total)


def adjoint(op: SparseOperator) -> SparseOperator:
    return op.adjoint()


def matrix_element_op(word, N: int, m, n, K: int, q: float, torus=None) -> SparseOperator:
    """π_w(t^{(N)}_{m,n}) including the square-root normalization."""
    h, factor = t_element(N, m, n, q)
    return word_op(word, h, K, q, torus) * factor


def apply_matrix_element(word, N: int, m, n, state, K: int, q: float, torus=None) -> dict:
    """π_w(t^{(N)}_{m,n})|state> as {state: amplitude}.

    ``state`` must lie in the safe window [N, K - N) on every leg.
    """
    word = _check_word(word)
    space = TruncatedSpace(len(word), K)
    state = tuple(state)
    if not space.in_window(state, N):
        raise OutsideSafeWindow(f"state {state} is outside the safe window [{N}, {K - N}) for K = {K}")
    op = matrix_element_op(word, N, m, n, K, q, torus)
    return {s: v for s, v in op.apply(state).items()}


def shift_prediction(word, N: int, m, n, state, q: float):
    """Closed-form image (target_state, scalar) for words (1,), (2,), (2, 1).

    Returns None when the operator annihilates the state.
    """
    from .qpoly import bi_shift_scalar, uni_shift_scalar

    word = _check_word(word)
    m, n, state = tuple(m), tuple(n), tuple(state)
    if word == (1,):
        if m[0] + m[1] != n[0] + n[1]:
            return None
        T = N - m[2]
        k = state[0]
        target = k + T - m[0] - n[0]
        if target < 0:
            return None
        return (target,), uni_shift_scalar(m[0], n[0], T, k, q)
    if word == (2,):
        if m[0] != n[0]:
            return None
        T = N - m[0]
        k = state[0]
        target = k + T - m[1] - n[1]
        if target < 0:
            return None
        return (target,), uni_shift_scalar(m[1], n[1], T, k, q)
    if word == (2, 1):
        u, v = state
        target = (u - m[1] + N - n[0] - n[1], v + n[1] - m[0])
        if min(target) < 0:
            return None
        return target, bi_shift_scalar(m, n, N, u, v, q)
    raise ValueError(f"no closed-form shift prediction for word {word}")


def path_sum_prediction(N: int, m, n, state, q: float) -> dict:
    """π_121(t_{m,n})|t,u,v> assembled from closed forms.

    Uses π_121 = (π_1 ⊗ π_21)∘Δ and Δ(t_{m,n}) = Σ_k t_{m,k} ⊗ t_{k,n}, so the
    image is a sum over |k| = N of a π_1 shift on the first leg times a
    π_21 shift on the last two legs.
    """
    from .corep import compositions

    m, n, state = tuple(m), tuple(n), tuple(state)
    if len(state) != 3:
        raise ValueError(f"word [1,2,1] needs a 3-leg state, got {state}")
    out = {}
    for k in compositions(N):
        first = shift_prediction((1,), N, m, k, state[:1], q)
        rest = shift_prediction((2, 1), N, k, n, state[1:], q)
        if first is None or rest is None:
            continue
        target = first[0] + rest[0]
        out[target] = out.get(target, 0.0) + first[1] * rest[1]
    return out
