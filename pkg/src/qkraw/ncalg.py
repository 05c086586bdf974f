"""
The quantum matrix bialgebra M_q(3).

Elements are kept in the PBW basis of row-major ordered monomials
x11^a11 x12^a12 ... x33^a33, stored as 9-tuples of exponents. Reduction
to that basis uses the defining relations oriented toward row-major order:

    x_jk x_ik -> q^-1 x_ik x_jk                       (i < j, same column)
    x_kj x_ki -> q^-1 x_ki x_kj                       (i < j, same row)
    x_jk x_il -> x_il x_jk                            (i < j, k < l)
    x_jl x_ik -> x_ik x_jl - (q - q^-1) x_il x_jk     (i < j, k < l)

Nothing here imposes det_q = 1.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .qscalar import ONE, Q, ZERO, LaurentScalar

__all__ = [
    "GENERATORS",
    "gen_index",
    "gen_label",
    "parse_generator",
    "NCPoly",
    "WordPoly",
    "TensorNCPoly",
    "multiply",
    "normal_order_word",
    "reduce_word",
    "rewrite_pair",
    "coproduct",
    "counit",
    "quantum_minor",
    "quantum_det",
    "antipode",
    "star_generator",
    "star",
    "defining_relations",
]

GENERATORS = [(i, j) for i in range(1, 4) for j in range(1, 4)]
_QINV = Q**-1
_CROSS = -(Q - _QINV)
_ZERO_MONO = (0,) * 9


def gen_index(i: int, j: int) -> int:
    if not (1 <= i <= 3 and 1 <= j <= 3):
        raise ValueError(f"generator index out of range: ({i}, {j})")
    return 3 * (i - 1) + (j - 1)


def gen_label(g: int) -> tuple:
    return divmod(g, 3)[0] + 1, g % 3 + 1


def parse_generator(token: str) -> int:
    """'x12' -> index of x_12."""
    t = token.strip().lower()
    if t.startswith("x"):
        t = t[1:]
    t = t.replace("_", "").replace(",", "")
    if len(t) != 2 or not t.isdigit():
        raise ValueError(f"cannot parse generator {token!r}")
    return gen_index(int(t[0]), int(t[1]))


def _mono_word(mono):
    word = []
    for g, e in enumerate(mono):
        word.extend([g] * e)
    return tuple(word)


def _bump(mono, g, by=1):
    lst = list(mono)
    lst[g] += by
    return tuple(lst)


def rewrite_pair(hi: int, lo: int):
    """Rewrite the out-of-order pair x_hi x_lo (hi > lo).

    Returns a list of (coefficient, (a, b)) with a < b.
    """
    (r1, c1), (r2, c2) = gen_label(hi), gen_label(lo)
    if r1 == r2 or c1 == c2:
        return [(_QINV, (lo, hi))]
    # distinct rows and columns; row-major order forces r1 > r2
    if c1 < c2:
        return [(ONE, (lo, hi))]
    return [
        (ONE, (lo, hi)),
        (_CROSS, (gen_index(r2, c1), gen_index(r1, c2))),
    ]


def _add_into(acc, key, coeff):
    v = acc.get(key)
    v = coeff if v is None else v + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@lru_cache(maxsize=None)
def _mono_times_gen(mono, g):
    # canonical form of (ordered monomial) * x_g, as a tuple of (mono, coeff)
    last = -1
    for idx in range(8, -1, -1):
        if mono[idx]:
            last = idx
            break
    if last <= g:
        return ((_bump(mono, g), ONE),)
    prefix = _bump(mono, last, -1)
    acc = {}
    for coeff, (a, b) in rewrite_pair(last, g):
        for m1, c1 in _mono_times_gen(prefix, a):
            for m2, c2 in _mono_times_gen(m1, b):
                _add_into(acc, m2, coeff * c1 * c2)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _mono_times_mono(a, b):
    cur = {a: ONE}
    for g in _mono_word(b):
        nxt = {}
        for m, c in cur.items():
            for m2, c2 in _mono_times_gen(m, g):
                _add_into(nxt, m2, c * c2)
        cur = nxt
    return tuple(cur.items())


class NCPoly:
    """An element of M_q(3) in canonical normal-ordered form."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in dict(terms).items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != 9 or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial exponent vector {mono}")
                c = LaurentScalar.coerce(c)
                if c is NotImplemented:
                    raise TypeError("NCPoly coefficients must be LaurentScalar or rational")
                if c:
                    _add_into(clean, mono, c)
        self._terms = clean

    @classmethod
    def _raw(cls, clean):
        obj = cls.__new__(cls)
        obj._terms = clean
        return obj

    @classmethod
    def one(cls):
        return cls._raw({_ZERO_MONO: ONE})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def generator(cls, i: int, j: int):
        return cls._raw({_bump(_ZERO_MONO, gen_index(i, j)): ONE})

    @classmethod
    def monomial(cls, mono, coeff=ONE):
        return cls({tuple(mono): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set:
        return {sum(m) for m in self._terms}

    def coefficient(self, mono) -> LaurentScalar:
        return self._terms.get(tuple(mono), ZERO)

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.one().scale(other) if other != 0 else NCPoly.zero()
        out = dict(self._terms)
        for m, c in other._terms.items():
            _add_into(out, m, c)
        return NCPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.one().scale(other) if other != 0 else NCPoly.zero()
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = LaurentScalar.coerce(c)
        if not c:
            return NCPoly.zero()
        return NCPoly._raw({m: v * c for m, v in self._terms.items() if v * c})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return multiply(self, other)
        c = LaurentScalar.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        c = LaurentScalar.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __pow__(self, k: int):
        out = NCPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def words(self):
        """Yield (coefficient, generator word) in row-major factor order."""
        for m, c in sorted(self._terms.items()):
            yield c, _mono_word(m)

    def to_json(self) -> dict:
        out = {}
        for m, c in sorted(self._terms.items()):
            if max(m) > 9:
                raise ValueError("JSON monomial keys support exponents up to 9")
            out["".join(str(e) for e in m)] = c.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict):
        return cls({tuple(int(ch) for ch in k): LaurentScalar.from_json(v) for k, v in data.items()})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items()):
            factors = []
            for g, e in enumerate(m):
                if e:
                    i, j = gen_label(g)
                    factors.append(f"x{i}{j}" + (f"^{e}" if e > 1 else ""))
            parts.append(f"({c!r})*" + ("*".join(factors) or "1"))
        return " + ".join(parts)


def multiply(lhs: NCPoly, rhs: NCPoly) -> NCPoly:
    acc = {}
    for m1, c1 in lhs._terms.items():
        for m2, c2 in rhs._terms.items():
            c = c1 * c2
            for m, c3 in _mono_times_mono(m1, m2):
                _add_into(acc, m, c * c3)
    return NCPoly._raw(acc)


def normal_order_word(word) -> NCPoly:
    """Canonical form of the product of generators in ``word``.

    Accepts generator indices, (i, j) pairs or tokens like 'x21'.
    """
    cur = {_ZERO_MONO: ONE}
    for g in _as_indices(word):
        nxt = {}
        for m, c in cur.items():
            for m2, c2 in _mono_times_gen(m, g):
                _add_into(nxt, m2, c * c2)
        cur = nxt
    return NCPoly._raw(cur)


def _as_indices(word):
    out = []
    for g in word:
        if isinstance(g, str):
            out.append(parse_generator(g))
        elif isinstance(g, tuple):
            out.append(gen_index(*g))
        else:
            if not 0 <= g < 9:
                raise ValueError(f"generator index out of range: {g}")
            out.append(int(g))
    return tuple(out)


def reduce_word(word, strategy: str = "leftmost") -> NCPoly:
    """Normal-order by plain rewriting of whole words, with no memoization.

    ``strategy`` picks the redex: 'leftmost' rewrites the first out-of-order
    adjacent pair of a word, 'rightmost' the last one. Used as an independent
    check of the memoized engine and of confluence.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    pending = {_as_indices(word): ONE}
    done = {}
    while pending:
        w, c = pending.popitem()
        positions = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not positions:
            mono = [0] * 9
            for g in w:
                mono[g] += 1
            _add_into(done, tuple(mono), c)
            continue
        p = positions[0] if strategy == "leftmost" else positions[-1]
        for coeff, (a, b) in rewrite_pair(w[p], w[p + 1]):
            _add_into(pending, w[:p] + (a, b) + w[p + 2:], c * coeff)
    return NCPoly._raw(done)


class WordPoly:
    """An element of the free algebra on the x_ij, i.e. unreduced words.

    Used for relations and for anything that must be fed to a
    representation or to the coproduct before normal ordering.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in dict(terms or {}).items():
            c = LaurentScalar.coerce(c)
            if c:
                _add_into(clean, _as_indices(w), c)
        self._terms = clean

    @classmethod
    def from_ncpoly(cls, p: NCPoly):
        return cls({w: c for c, w in p.words()})

    @property
    def terms(self):
        return dict(self._terms)

    def words(self):
        for w, c in sorted(self._terms.items()):
            yield c, w

    def __add__(self, other):
        out = dict(self._terms)
        for w, c in other._terms.items():
            _add_into(out, w, c)
        return WordPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return WordPoly({w: v * c for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, WordPoly):
            out = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    _add_into(out, w1 + w2, c1 * c2)
            return WordPoly(out)
        return self.scale(other)

    def normal_form(self) -> NCPoly:
        acc = NCPoly.zero()
        for w, c in self._terms.items():
            acc = acc + normal_order_word(w).scale(c)
        return acc

    def __repr__(self):
        parts = []
        for w, c in sorted(self._terms.items()):
            parts.append(f"({c!r})*" + ("*".join("x%d%d" % gen_label(g) for g in w) or "1"))
        return " + ".join(parts) or "0"


def _words_of(p):
    if isinstance(p, (NCPoly, WordPoly)):
        return list(p.words())
    raise TypeError(f"expected NCPoly or WordPoly, got {type(p).__name__}")


class TensorNCPoly:
    """Sum of c * (m_1 ⊗ ... ⊗ m_legs) with each leg a normal-ordered monomial."""

    __slots__ = ("_terms", "legs")

    def __init__(self, terms=None, legs: int = 2):
        self.legs = legs
        clean = {}
        for key, c in dict(terms or {}).items():
            key = tuple(tuple(m) for m in key)
            if len(key) != legs:
                raise ValueError("tensor key has the wrong number of legs")
            c = LaurentScalar.coerce(c)
            if c:
                _add_into(clean, key, c)
        self._terms = clean

    @classmethod
    def _raw(cls, clean, legs):
        obj = cls.__new__(cls)
        obj._terms = clean
        obj.legs = legs
        return obj

    @classmethod
    def one(cls, legs: int = 2):
        return cls._raw({(_ZERO_MONO,) * legs: ONE}, legs)

    @classmethod
    def pure(cls, *factors: NCPoly):
        """f_1 ⊗ f_2 ⊗ ..."""
        acc = {(): ONE}
        for f in factors:
            nxt = {}
            for key, c in acc.items():
                for m, c2 in f._terms.items():
                    _add_into(nxt, key + (m,), c * c2)
            acc = nxt
        return cls._raw(acc, len(factors))

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if other.legs != self.legs:
            raise ValueError("leg count mismatch")
        out = dict(self._terms)
        for k, c in other._terms.items():
            _add_into(out, k, c)
        return TensorNCPoly._raw(out, self.legs)

    def __neg__(self):
        return TensorNCPoly._raw({k: -c for k, c in self._terms.items()}, self.legs)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = LaurentScalar.coerce(c)
        return TensorNCPoly._raw({k: v * c for k, v in self._terms.items() if v * c}, self.legs)

    def __mul__(self, other):
        if isinstance(other, TensorNCPoly):
            if other.legs != self.legs:
                raise ValueError("leg count mismatch")
            out = {}
            for k1, c1 in self._terms.items():
                for k2, c2 in other._terms.items():
                    partial = {(): c1 * c2}
                    for a, b in zip(k1, k2):
                        nxt = {}
                        for key, c in partial.items():
                            for m, c3 in _mono_times_mono(a, b):
                                _add_into(nxt, key + (m,), c * c3)
                        partial = nxt
                    for key, c in partial.items():
                        _add_into(out, key, c)
            return TensorNCPoly._raw(out, self.legs)
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, TensorNCPoly):
            return self.legs == other.legs and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def map_leg(self, leg: int, f):
        """Apply a linear map to one leg.

        ``f`` takes a monomial and returns an NCPoly, a TensorNCPoly or a
        scalar; the result's legs are spliced in place of ``leg``.
        """
        out = {}
        new_legs = None
        for key, c in self._terms.items():
            img = f(key[leg])
            if isinstance(img, NCPoly):
                img = TensorNCPoly._raw({(m,): v for m, v in img._terms.items()}, 1)
            elif not isinstance(img, TensorNCPoly):
                img = LaurentScalar.coerce(img)
                img = TensorNCPoly._raw({(): img} if img else {}, 0)
            if new_legs is None:
                new_legs = self.legs - 1 + img.legs
            for sub, v in img._terms.items():
                _add_into(out, key[:leg] + sub + key[leg + 1:], c * v)
        if new_legs is None:
            new_legs = self.legs
        return TensorNCPoly._raw(out, new_legs)

    def collapse(self) -> NCPoly:
        """Multiply the legs together (the product map ∇ for two legs)."""
        acc = NCPoly.zero()
        for key, c in self._terms.items():
            term = NCPoly.one()
            for m in key:
                term = multiply(term, NCPoly._raw({m: ONE}))
            acc = acc + term.scale(c)
        return acc

    def __repr__(self):
        parts = []
        for key, c in sorted(self._terms.items()):
            legs = " ⊗ ".join(repr(NCPoly._raw({m: ONE})) for m in key)
            parts.append(f"({c!r}) [{legs}]")
        return " + ".join(parts) or "0"


@lru_cache(maxsize=None)
def _delta_gen(g):
    i, j = gen_label(g)
    return TensorNCPoly._raw(
        {
            (_bump(_ZERO_MONO, gen_index(i, k)), _bump(_ZERO_MONO, gen_index(k, j))): ONE
            for k in range(1, 4)
        },
        2,
    )


@lru_cache(maxsize=None)
def _delta_word(word):
    if not word:
        return TensorNCPoly.one(2)
    return _delta_word(word[:-1]) * _delta_gen(word[-1])


def coproduct(p) -> TensorNCPoly:
    """Δ, extended multiplicatively from Δ(x_ij) = Σ_k x_ik ⊗ x_kj."""
    acc = TensorNCPoly._raw({}, 2)
    for c, w in _words_of(p):
        acc = acc + _delta_word(tuple(w)).scale(c)
    return acc


def _counit_mono(mono) -> LaurentScalar:
    for g, e in enumerate(mono):
        i, j = gen_label(g)
        if e and i != j:
            return ZERO
    return ONE


def counit(p) -> LaurentScalar:
    """ε with ε(x_ij) = δ_ij."""
    if isinstance(p, WordPoly):
        acc = ZERO
        for c, w in p.words():
            if all(gen_label(g)[0] == gen_label(g)[1] for g in w):
                acc = acc + c
        return acc
    acc = ZERO
    for m, c in p._terms.items():
        acc = acc + c * _counit_mono(m)
    return acc


@lru_cache(maxsize=None)
def quantum_minor(i: int, j: int) -> NCPoly:
    """ξ_ij: the quantum determinant of x with row i and column j removed."""
    i1, i2 = [r for r in (1, 2, 3) if r != i]
    j1, j2 = [c for c in (1, 2, 3) if c != j]
    return normal_order_word([(i1, j1), (i2, j2)]) - normal_order_word([(i1, j2), (i2, j1)]).scale(Q)


def _inversions(perm):
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


@lru_cache(maxsize=None)
def _quantum_det_words():
    terms = {}
    for perm in itertools.permutations((1, 2, 3)):
        coeff = (-Q) ** _inversions(perm)
        terms[tuple(gen_index(r, perm[r - 1]) for r in (1, 2, 3))] = coeff
    return WordPoly(terms)


def quantum_det(as_words: bool = False):
    """Σ_σ (-q)^{ℓ(σ)} x_{1σ(1)} x_{2σ(2)} x_{3σ(3)}."""
    words = _quantum_det_words()
    return words if as_words else words.normal_form()


@lru_cache(maxsize=None)
def _antipode_gen(g) -> NCPoly:
    i, j = gen_label(g)
    return quantum_minor(j, i).scale((-Q) ** (i - j))


@lru_cache(maxsize=None)
def _star_gen(g) -> NCPoly:
    i, j = gen_label(g)
    return quantum_minor(i, j).scale((-Q) ** (j - i))


def _anti_extend(p, on_gen) -> NCPoly:
    acc = NCPoly.zero()
    for c, w in _words_of(p):
        term = NCPoly.one()
        for g in reversed(w):
            term = multiply(term, on_gen(g))
        acc = acc + term.scale(c)
    return acc


def antipode(p) -> NCPoly:
    """S(x_ij) = (-q)^{i-j} ξ_ji, extended anti-multiplicatively.

    In M_q(3) this is the formal minor map; it is an antipode only once
    det_q = 1 is imposed.
    """
    return _anti_extend(p, _antipode_gen)


def star_generator(i: int, j: int) -> NCPoly:
    """x_ij^* = (-q)^{j-i} ξ_ij."""
    return _star_gen(gen_index(i, j))


def star(p) -> NCPoly:
    """Conjugate-linear anti-homomorphic extension of ``star_generator``.

    Coefficients are Laurent polynomials with rational coefficients in a real
    q, so conjugation leaves them unchanged.
    """
    return _anti_extend(p, _star_gen)


def defining_relations():
    """All index instances of the four relation families, as (label, WordPoly).

    Each WordPoly is lhs - rhs of a relation and vanishes in M_q(3).
    """
    out = []
    pairs = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i < j]
    for i, j in pairs:
        for k in (1, 2, 3):
            out.append((
                f"col x{i}{k}x{j}{k}",
                WordPoly({((i, k), (j, k)): 1, ((j, k), (i, k)): -Q}),
            ))
            out.append((
                f"row x{k}{i}x{k}{j}",
                WordPoly({((k, i), (k, j)): 1, ((k, j), (k, i)): -Q}),
            ))
    for i, j in pairs:
        for k, l in pairs:
            out.append((
                f"commute x{i}{l}x{j}{k}",
                WordPoly({((i, l), (j, k)): 1, ((j, k), (i, l)): -1}),
            ))
            out.append((
                f"cross x{i}{k}x{j}{l}",
                WordPoly({
                    ((i, k), (j, l)): 1,
                    ((i, l), (j, k)): -Q,
                    ((j, l), (i, k)): -1,
                    ((j, k), (i, l)): _QINV,
                }),
            ))
    return out
