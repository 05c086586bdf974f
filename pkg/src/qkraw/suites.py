"""
Named verification suites and their reports.

Each suite compares two independent routes to the same quantity (an
operator evaluation against a closed form, two rewriting strategies, a
brute-force expansion against a formula, ...) and records the worst
deviation per check. Reports are deterministic for fixed parameters.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources

from .corep import _max_workers, coaction_expand, compositions, h_element, index_matrices, row_multinomial
from .ncalg import (
    NCPoly,
    TensorNCPoly,
    antipode,
    coproduct,
    normal_order_word,
    quantum_det,
    reduce_word,
)
from .qpoly import (
    QPow,
    kraw1_orthonormal,
    kraw2_orthonormal,
    wall_identity_admissible,
    wall_identity_corrected,
    wall_identity_stated,
)
from .qscalar import Q, q_multinomial
from .reps import (
    SparseOperator,
    TorusChar,
    TruncatedSpace,
    generator_op,
    matrix_element_op,
    path_sum_prediction,
    shift_prediction,
    word_op,
)

__all__ = [
    "SUITES",
    "SuiteParams",
    "Check",
    "SuiteReport",
    "SuiteParameterError",
    "run_suite",
    "validate_report",
]

# absolute floor under the relative tolerance, for entries that should vanish
ABS_FLOOR = 1e-12


class SuiteParameterError(ValueError):
    """Suite parameters outside their documented ranges."""


@dataclass(frozen=True)
class SuiteParams:
    N: int = 2
    q: float = 0.6
    trunc: int = 24
    tol: float = 1e-10
    seed: int = 0
    count: int = 500
    word: tuple = (1, 2, 1)
    form: str = "both"
    torus: tuple | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["word"] = list(self.word)
        d["torus"] = list(self.torus) if self.torus is not None else None
        return d


@dataclass
class Check:
    description: str
    passed: bool
    max_deviation: float | None = None
    exact: bool = False
    points: int = 0

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "exact": self.exact,
            "max_deviation": self.max_deviation,
            "pass": self.passed,
            "points": self.points,
        }


@dataclass
class SuiteReport:
    suite: str
    params: SuiteParams
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }


def _pmap(fn, items):
    items = list(items)
    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        return list(pool.map(fn, items))


def _close(got, want, tol):
    return abs(got - want) <= tol * abs(want) + ABS_FLOOR


def _numeric_check(description, pairs, tol):
    """Check built from (got, want) pairs with relative tolerance ``tol``."""
    worst, ok, n = 0.0, True, 0
    for got, want in pairs:
        n += 1
        d = abs(got - want)
        worst = max(worst, d)
        ok = ok and _close(got, want, tol)
    return Check(description, ok, worst, False, n)


def _exact_check(description, results):
    results = list(results)
    return Check(description, all(results), None, True, len(results))


def _image_pairs(img: dict, pred: dict):
    for s in set(img) | set(pred):
        yield img.get(s, 0.0), pred.get(s, 0.0)


def _torus(params):
    if params.torus is None:
        return None
    return TorusChar.from_angles(*params.torus)


# -- suites ---------------------------------------------------------------


def _uni_match(params):
    q, K, tol = params.q, params.trunc, params.tol

    def level(args):
        which, N = args
        pairs = []
        for m in compositions(N):
            for n in compositions(N):
                op = matrix_element_op((which,), N, m, n, K, q)
                # one leg: |0> is a genuine boundary, so only the top edge is truncated
                for k in range(0, K - N):
                    pred = shift_prediction((which,), N, m, n, (k,), q)
                    pairs.extend(_image_pairs(op.apply((k,)), dict([pred]) if pred else {}))
        return _numeric_check(f"pi_{which} t-elements vs univariate shift scalar, N = {N}", pairs, tol)

    return _pmap(level, [(w, N) for w in (1, 2) for N in range(params.N + 1)])


def _bi_match(params):
    q, K, tol = params.q, params.trunc, params.tol

    def level(N):
        space = TruncatedSpace(2, K)
        pairs = []
        for m in compositions(N):
            for n in compositions(N):
                op = matrix_element_op((2, 1), N, m, n, K, q)
                for state in space.window(N):
                    pred = shift_prediction((2, 1), N, m, n, state, q)
                    pairs.extend(_image_pairs(op.apply(state), dict([pred]) if pred else {}))
        return _numeric_check(f"pi_21 t-elements vs bivariate shift scalar, N = {N}", pairs, tol)

    def path(N):
        # three legs grow as K^3; a short window suffices for the path sum
        K3 = min(K, 2 * N + 8)
        space = TruncatedSpace(3, K3)
        pairs = []
        for m in compositions(N):
            for n in compositions(N):
                op = matrix_element_op((1, 2, 1), N, m, n, K3, q)
                for state in space.window(N):
                    pairs.extend(_image_pairs(op.apply(state), path_sum_prediction(N, m, n, state, q)))
        return _numeric_check(f"pi_121 t-elements vs path sum of shift scalars, N = {N}", pairs, tol)

    return _pmap(level, range(params.N + 1)) + _pmap(path, range(params.N + 1))


def completeness_deviation(word, N, K, q, torus=None):
    """Worst window deviation of both completeness sums from δ·Id."""
    comps = compositions(N)
    ops = {(m, n): matrix_element_op(word, N, m, n, K, q, torus) for m in comps for n in comps}
    space = TruncatedSpace(len(word), K)
    ident, zero = SparseOperator.identity(space), SparseOperator.zero(space)
    worst = 0.0
    for m in comps:
        for p in comps:
            rows, cols = zero, zero
            for n in comps:
                rows = rows + ops[(m, n)] @ ops[(p, n)].adjoint()
                cols = cols + ops[(n, m)].adjoint() @ ops[(n, p)]
            target = ident if m == p else zero
            worst = max(
                worst,
                rows.window_deviation(target, margin=2 * N),
                cols.window_deviation(target, margin=2 * N),
            )
    return worst


def _unitarity(params):
    word = params.word
    dev = completeness_deviation(word, params.N, params.trunc, params.q, _torus(params))
    label = "".join(map(str, word))
    return [Check(f"completeness sums in pi_{label}, N = {params.N}", dev <= params.tol, dev, False, 1)]


def _hexagon(params):
    det = quantum_det()
    gens = {(i, j): NCPoly.generator(i, j) for i in (1, 2, 3) for j in (1, 2, 3)}
    right, left = [], []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            target = det if i == j else NCPoly.zero()
            r = sum((gens[(i, k)] * antipode(gens[(k, j)]) for k in (1, 2, 3)), NCPoly.zero())
            l_ = sum((antipode(gens[(i, k)]) * gens[(k, j)] for k in (1, 2, 3)), NCPoly.zero())
            right.append(r == target)
            left.append(l_ == target)
    checks = [
        _exact_check("sum_k x_ik S(x_kj) = delta_ij det_q (symbolic)", right),
        _exact_check("sum_k S(x_ik) x_kj = delta_ij det_q (symbolic)", left),
    ]
    word, K, q = params.word, params.trunc, params.q
    space = TruncatedSpace(len(word), K)
    ident, zero = SparseOperator.identity(space), SparseOperator.zero(space)
    worst = 0.0
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            acc = zero
            for k in (1, 2, 3):
                acc = acc + generator_op(word, (i, k), K, q) @ word_op(word, antipode(gens[(k, j)]), K, q)
            worst = max(worst, acc.window_deviation(ident if i == j else zero, margin=3))
    label = "".join(map(str, word))
    checks.append(Check(f"sum_k x_ik S(x_kj) = delta_ij in pi_{label}", worst <= params.tol, worst, False, 9))
    return checks


def _comodule(params):
    def level(N):
        comps = compositions(N)
        results = []
        for m in comps:
            for p in comps:
                lhs = coproduct(h_element(N, m, p))
                rhs = TensorNCPoly(legs=2)
                for n in comps:
                    rhs = rhs + TensorNCPoly.pure(h_element(N, m, n), h_element(N, n, p))
                results.append(lhs == rhs)
        return _exact_check(f"Delta(h_mp) = sum_n h_mn (x) h_np, N = {N}", results)

    return _pmap(level, range(params.N + 1))


def _dual_orth(params):
    q, tol = params.q, max(params.tol, 1e-8)
    checks = []
    for N in range(params.N + 1):
        pairs_o, pairs_d = [], []
        simplex = [c[:2] for c in compositions(N)]
        for u in range(N, N + 3):
            for v in range(N, N + 3):
                for a in simplex:
                    for b in simplex:
                        o = sum(kraw2_orthonormal(a, n, N, u, v, q) * kraw2_orthonormal(b, n, N, u, v, q) for n in simplex)
                        d = sum(kraw2_orthonormal(m, a, N, u, v, q) * kraw2_orthonormal(m, b, N, u, v, q) for m in simplex)
                        want = 1.0 if a == b else 0.0
                        pairs_o.append((o, want))
                        pairs_d.append((d, want))
        checks.append(_numeric_check(f"bivariate orthogonality, N = {N}", pairs_o, tol))
        checks.append(_numeric_check(f"bivariate dual orthogonality, N = {N}", pairs_d, tol))
    Q2 = q * q
    pairs = []
    for N in range(params.N + 1):
        for k in range(N, N + 5):
            p = QPow(-(k + 1))
            for n in range(N + 1):
                for n2 in range(N + 1):
                    s = sum(kraw1_orthonormal(n, x, p, N, Q2) * kraw1_orthonormal(n2, x, p, N, Q2) for x in range(N + 1))
                    pairs.append((s, 1.0 if n == n2 else 0.0))
    checks.append(_numeric_check(f"univariate orthogonality, N <= {params.N}", pairs, tol))
    return checks


def wall_grid(N_max):
    """Admissible parameter points: every (m, n) with |m| = |n| <= N_max and
    u, t, w, v at their minimum or one above."""
    points = []
    for N in range(N_max + 1):
        for m in compositions(N):
            for n in compositions(N):
                vmin = n[0] + n[1] + m[0]
                for u, t, w, v in itertools.product((N, N + 1), (N, N + 1), (N, N + 1), (vmin, vmin + 1)):
                    if wall_identity_admissible(m, n, u, v, t, w):
                        points.append((m, n, u, v, t, w))
    return points


def _wall_identity(params):
    tol = params.tol
    points = wall_grid(params.N)
    forms = {"stated": wall_identity_stated, "corrected": wall_identity_corrected}
    chosen = forms if params.form == "both" else {params.form: forms[params.form]}
    checks = []
    for name, fn in chosen.items():
        worst, ok = 0.0, True
        for m, n, u, v, t, w in points:
            lhs, rhs = fn(m, n, u, v, t, w, params.q)
            d = abs(lhs - rhs)
            worst = max(worst, d)
            ok = ok and d <= tol
        checks.append(Check(f"Wall product identity ({name} form), N <= {params.N}", ok, worst, False, len(points)))
    return checks


def _oracle_h(params):
    def level(N):
        results = []
        for m in compositions(N):
            expanded = coaction_expand(m)
            for n in compositions(N):
                results.append(expanded.get(n, NCPoly.zero()) == h_element(N, m, n))
            results.append(set(expanded) <= set(compositions(N)))
        return _exact_check(f"coaction expansion equals h_element, N = {N}", results)

    def balance(N):
        base = Q**-2
        results = []
        for m in compositions(N):
            for n in compositions(N):
                for a in index_matrices(m, n):
                    lhs = q_multinomial(N, m, base) * row_multinomial(a, base)
                    rhs = q_multinomial(N, n, base) * row_multinomial(tuple(zip(*a)), base)
                    results.append(lhs == rhs)
        return _exact_check(f"multinomial balance [N m][m a] = [N n][n a], N = {N}", results)

    return _pmap(level, range(params.N + 1)) + _pmap(balance, range(params.N + 1))


def random_words(seed: int, count: int, max_len: int = 6):
    rng = random.Random(seed)
    return [
        tuple(rng.randrange(9) for _ in range(rng.randint(1, max_len)))
        for _ in range(count)
    ]


def _confluence(params):
    words = random_words(params.seed, params.count)
    results = []
    for w in words:
        left = reduce_word(w, "leftmost")
        right = reduce_word(w, "rightmost")
        results.append(left == right and left == normal_order_word(w))
    return [_exact_check(f"leftmost and rightmost reduction agree, {params.count} words", results)]


SUITES = {
    "uni-match": _uni_match,
    "bi-match": _bi_match,
    "unitarity": _unitarity,
    "hexagon": _hexagon,
    "comodule": _comodule,
    "dual-orth": _dual_orth,
    "wall-identity": _wall_identity,
    "oracle-h": _oracle_h,
    "confluence": _confluence,
}


def _validate(name, params):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    if params.N < 0:
        raise SuiteParameterError(f"N must be nonnegative, got {params.N}")
    if not 0 < params.q < 1:
        raise SuiteParameterError(f"q must lie in (0, 1), got {params.q}")
    if params.tol <= 0:
        raise SuiteParameterError(f"tolerance must be positive, got {params.tol}")
    if params.count < 0:
        raise SuiteParameterError(f"count must be nonnegative, got {params.count}")
    if not params.word or any(w not in (1, 2) for w in params.word):
        raise SuiteParameterError(f"word letters must be 1 or 2, got {params.word}")
    if params.form not in ("both", "stated", "corrected"):
        raise SuiteParameterError(f"form must be both, stated or corrected, got {params.form!r}")
    needs_trunc = {"uni-match": params.N + 1, "bi-match": 2 * params.N + 1,
                   "unitarity": 4 * params.N + 1, "hexagon": 7}
    if name in needs_trunc and params.trunc < needs_trunc[name]:
        raise SuiteParameterError(
            f"truncation {params.trunc} leaves an empty safe window for {name} at N = {params.N}"
        )


def run_suite(name: str, params: SuiteParams | None = None) -> SuiteReport:
    """Run a named suite; checks are sorted by description."""
    params = params or SuiteParams()
    _validate(name, params)
    checks = SUITES[name](params)
    checks.sort(key=lambda c: c.description)
    return SuiteReport(name, params, checks)


def _schema():
    text = resources.files("qkraw").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_report(data: dict) -> None:
    """Raise jsonschema.ValidationError unless ``data`` is a valid report."""
    import jsonschema

    jsonschema.validate(data, _schema())
