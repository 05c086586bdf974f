import itertools
import math
import random

import numpy as np
import pytest

from qkraw.corep import compositions
from qkraw.ncalg import NCPoly, defining_relations, normal_order_word, quantum_det, star_generator
from qkraw.reps import (
    OutsideSafeWindow,
    SparseOperator,
    TorusChar,
    TruncatedSpace,
    adjoint,
    apply_matrix_element,
    elementary_op,
    generator_op,
    matrix_element_op,
    path_sum_prediction,
    shift_prediction,
    word_op,
)
from qkraw.suites import completeness_deviation

WORDS = [(1,), (2,), (2, 1), (1, 2, 1)]


def test_truncated_space_indexing():
    space = TruncatedSpace(3, 5)
    for idx in range(space.dim):
        assert space.index(space.state(idx)) == idx
    assert space.window(2) == [(2, 2, 2)]
    with pytest.raises(ValueError):
        space.index((5, 0, 0))


def test_elementary_examples():
    q, K = 0.6, 10
    x11 = elementary_op(1, (1, 1), K, q)
    assert x11.apply((0,)) == {}
    for k in range(K):
        assert elementary_op(1, (3, 3), K, q).apply((k,)) == {(k,): 1}
        assert elementary_op(2, (2, 1), K, q).apply((k,)) == {}
        assert elementary_op(2, (1, 1), K, q).apply((k,)) == {(k,): 1}
    assert x11.apply((3,))[(2,)] == pytest.approx(math.sqrt(1 - q**6))
    assert elementary_op(1, (1, 2), K, q).apply((3,))[(3,)] == pytest.approx(q**4)
    assert elementary_op(1, (2, 1), K, q).apply((3,))[(3,)] == pytest.approx(-(q**3))
    assert elementary_op(1, (2, 2), K, q).apply((3,))[(4,)] == pytest.approx(math.sqrt(1 - q**8))
    for g in [(1, 3), (2, 3), (3, 1), (3, 2)]:
        assert elementary_op(1, g, K, q).matrix.nnz == 0
    with pytest.raises(ValueError):
        elementary_op(1, (1, 1), K, 1.0)


def test_word_one_reduces_to_elementary():
    for g in [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]:
        a = word_op((1,), NCPoly.generator(*g), 12, 0.6)
        b = elementary_op(1, g, 12, 0.6)
        assert a.window_deviation(b) == 0.0
    with pytest.raises(ValueError):
        word_op((), NCPoly.one(), 4, 0.5)


def test_path_sum_matches_direct_kron():
    q, K = 0.6, 8
    e1 = lambda g: elementary_op(1, g, K, q).matrix.toarray()
    e2 = lambda g: elementary_op(2, g, K, q).matrix.toarray()
    for r in (1, 2, 3):
        for s in (1, 2, 3):
            direct = sum(np.kron(e2((r, k)), e1((k, s))) for k in (1, 2, 3))
            op = generator_op((2, 1), (r, s), K, q).matrix.toarray()
            assert np.abs(op - direct).max() == 0.0
    # π_21(x13) = Σ_k π_2(x1k) ⊗ π_1(xk3): π_1(x13) = 0 and π_2(x12) = π_2(x13) = 0
    img = generator_op((2, 1), (1, 3), K, q).apply((3, 4))
    assert img == {}


def test_adjoint_is_involution():
    space = TruncatedSpace(2, 6)
    ident = SparseOperator.identity(space)
    assert adjoint(ident).window_deviation(ident) == 0.0
    op = generator_op((2, 1), (2, 3), 6, 0.6)
    assert adjoint(adjoint(op)).window_deviation(op) == 0.0


@pytest.mark.parametrize("q", [0.5, 0.7])
@pytest.mark.parametrize("word", WORDS)
def test_relation_fidelity(word, q):
    K = 24 if len(word) < 3 else 12
    for label, rel in defining_relations():
        assert word_op(word, rel, K, q).window_deviation(margin=2) <= 1e-12, label
    ident = SparseOperator.identity(TruncatedSpace(len(word), K))
    assert word_op(word, quantum_det(), K, q).window_deviation(ident, margin=3) <= 1e-12


@pytest.mark.parametrize("word", WORDS)
def test_star_fidelity(word):
    K = 14 if len(word) < 3 else 10
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            star_img = word_op(word, star_generator(i, j), K, 0.6)
            dagger = adjoint(generator_op(word, (i, j), K, 0.6))
            assert star_img.window_deviation(dagger, margin=2) <= 1e-11


@pytest.mark.parametrize("word", [(2, 1), (1, 2, 1)])
def test_homomorphy(word):
    rng = random.Random(5)
    K, q = 10, 0.6
    for _ in range(6):
        p = normal_order_word([rng.randrange(9) for _ in range(rng.randint(1, 2))])
        r = normal_order_word([rng.randrange(9) for _ in range(rng.randint(1, 2))])
        both = word_op(word, p * r, K, q)
        prod = word_op(word, p, K, q) @ word_op(word, r, K, q)
        assert both.window_deviation(prod, margin=4) <= 1e-11


@pytest.mark.parametrize("N", [0, 1, 2])
def test_orthonormality_121(N):
    assert completeness_deviation((1, 2, 1), N, 12, 0.6) <= 1e-9


@pytest.mark.parametrize("angles", [(0.3, 1.1), (2.0, -0.7)])
def test_torus_twisted_identities(angles):
    torus = TorusChar.from_angles(*angles)
    K, q = 10, 0.6
    for label, rel in defining_relations():
        assert word_op((1, 2, 1), rel, K, q, torus).window_deviation(margin=2) <= 1e-12, label
    ident = SparseOperator.identity(TruncatedSpace(3, K))
    assert word_op((1, 2, 1), quantum_det(), K, q, torus).window_deviation(ident, margin=3) <= 1e-12
    assert completeness_deviation((1, 2, 1), 1, K, q, torus) <= 1e-9
    for i, j in [(1, 2), (2, 3), (3, 1)]:
        star_img = word_op((1, 2, 1), star_generator(i, j), K, q, torus)
        dagger = adjoint(generator_op((1, 2, 1), (i, j), K, q, torus))
        assert star_img.window_deviation(dagger, margin=2) <= 1e-11


def test_torus_validation():
    with pytest.raises(ValueError):
        TorusChar(2.0, 1.0)
    t = TorusChar.from_angles(0.4, 0.9)
    assert abs(np.prod(t.alphas) - 1) < 1e-15


def _image_close(img, pred, tol=1e-10):
    for s in set(img) | set(pred):
        got, want = img.get(s, 0.0), pred.get(s, 0.0)
        assert abs(got - want) <= tol * abs(want) + 1e-12, (s, got, want)


@pytest.mark.parametrize("which", [1, 2])
def test_elementary_shift_identification(which):
    q, K = 0.6, 20
    for N in range(4):
        for m in compositions(N):
            for n in compositions(N):
                op = matrix_element_op((which,), N, m, n, K, q)
                for k in range(K - N):
                    pred = shift_prediction((which,), N, m, n, (k,), q)
                    _image_close(op.apply((k,)), dict([pred]) if pred else {})


def test_kronecker_vanishing_cases():
    q, K = 0.6, 12
    zero_1 = matrix_element_op((1,), 2, (1, 1, 0), (1, 0, 1), K, q)
    zero_2 = matrix_element_op((2,), 2, (1, 1, 0), (0, 1, 1), K, q)
    assert zero_1.window_deviation(margin=2) == 0.0
    assert zero_2.window_deviation(margin=2) == 0.0
    assert apply_matrix_element((1,), 2, (1, 1, 0), (1, 0, 1), (4,), K, q) == {}


def test_bivariate_shift_identification():
    q, K = 0.6, 12
    for N in range(3):
        for m in compositions(N):
            for n in compositions(N):
                op = matrix_element_op((2, 1), N, m, n, K, q)
                for state in TruncatedSpace(2, K).window(N):
                    img = op.apply(state)
                    pred = shift_prediction((2, 1), N, m, n, state, q)
                    assert len(img) <= 1
                    _image_close(img, dict([pred]) if pred else {})


def test_path_sum_121():
    q, K = 0.6, 9
    for N in range(3):
        for m in compositions(N):
            for n in compositions(N):
                op = matrix_element_op((1, 2, 1), N, m, n, K, q)
                for state in TruncatedSpace(3, K).window(N):
                    _image_close(op.apply(state), path_sum_prediction(N, m, n, state, q))


def test_apply_matrix_element_example_and_window():
    img = apply_matrix_element((2, 1), 2, (1, 1, 0), (0, 1, 1), (5, 7), 32, 0.6)
    assert list(img) == [(5, 7)]
    assert img[(5, 7)].real == pytest.approx(0.0007836416409599994, rel=1e-12)
    with pytest.raises(OutsideSafeWindow):
        apply_matrix_element((2, 1), 2, (1, 1, 0), (0, 1, 1), (1, 7), 32, 0.6)
    with pytest.raises(OutsideSafeWindow):
        apply_matrix_element((2, 1), 2, (1, 1, 0), (0, 1, 1), (5, 30), 32, 0.6)


def test_word_211_is_supported():
    ident = SparseOperator.identity(TruncatedSpace(3, 9))
    assert word_op((2, 1, 1), quantum_det(), 9, 0.6).window_deviation(ident, margin=3) <= 1e-12
