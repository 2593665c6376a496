"""Exact multivariate Laurent polynomials and classical graph polynomials.

Exponents are stored doubled so that square roots of variables
(``x^(1/2)``) stay exact; coefficients are Python integers.

    >>> x, y = LaurentPoly.var("x"), LaurentPoly.var("y")
    >>> str((x + y) * (x - y))
    '-y^2 + x^2'
    >>> str(pow_half(x, 1) * y)
    'x^(1/2)*y'
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from scipy.cluster.hierarchy import DisjointSet

__all__ = [
    "LaurentPoly",
    "AbstractGraph",
    "pow_half",
    "reduce_w",
    "substitute",
    "rank_poly",
    "tutte",
    "multivariate_tutte",
    "var",
    "edge_var",
    "VAR_ORDER",
    "poly_sum",
]

VAR_ORDER = ("x", "y", "z", "w", "q", "c", "d", "A", "B")
_RANK = {name: i for i, name in enumerate(VAR_ORDER)}


def _var_key(name: str):
    if name in _RANK:
        return (0, _RANK[name], "")
    return (1, 0, name)


Monomial = tuple  # tuple of (variable name, doubled exponent), sorted by _var_key


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: _var_key(t[0])))


def _mono_scale(m: Monomial, num: int, den: int = 1) -> Monomial:
    out = []
    for v, e in m:
        q, r = divmod(e * num, den)
        if r:
            raise ValueError(f"exponent of {v} not representable")
        out.append((v, q))
    return tuple((v, e) for v, e in out if e)


Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients.

    Terms live in a dict mapping a monomial (sorted ``(var, 2*exponent)``
    pairs) to a non-zero integer.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls({((name, 2),): 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({(): int(c)})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: int = 1, *, halves: bool = False) -> "LaurentPoly":
        """Build ``coeff * prod(v**e)``; with ``halves=True`` exponents are in units of 1/2."""
        scale = 1 if halves else 2
        mono = tuple(sorted(((v, e * scale) for v, e in exps.items() if e), key=lambda t: _var_key(t[0])))
        return cls({mono: coeff})

    @staticmethod
    def coerce(value: Scalar) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return LaurentPoly.const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to LaurentPoly")

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def has_integral_exponents(self) -> bool:
        return all(e % 2 == 0 for m in self._terms for _, e in m)

    def exponents(self, name: str) -> set:
        """True (possibly half-integral) exponents of ``name`` across all terms."""
        from fractions import Fraction

        return {Fraction(dict(m).get(name, 0), 2) for m in self._terms}

    def coefficient(self, exps: Mapping[str, int]) -> int:
        mono = LaurentPoly.monomial(exps)
        (m,) = mono._terms
        return self._terms.get(m, 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({m: c * other for m, c in self._terms.items()})
        other = LaurentPoly.coerce(other)
        out: dict = defaultdict(int)
        for (m1, c1), (m2, c2) in itertools.product(self._terms.items(), other._terms.items()):
            out[_mono_mul(m1, m2)] += c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial is not a Laurent polynomial")
            ((m, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power needs a unit coefficient")
            return LaurentPoly({_mono_scale(m, n): c ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- printing ---------------------------------------------------------
    def to_string(self) -> str:
        """Canonical text: graded order on doubled exponents, variables in VAR_ORDER."""
        if not self._terms:
            return "0"
        names = sorted(self.variables(), key=_var_key)

        def key(mono):
            exps = dict(mono)
            vec = tuple(exps.get(v, 0) for v in names)
            return (sum(vec), vec)

        parts = []
        for mono in sorted(self._terms, key=key):
            c = self._terms[mono]
            factors = [_fmt_factor(v, e) for v, e in mono]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_string

    def __repr__(self):
        return f"LaurentPoly({self.to_string()!r})"


def _fmt_factor(v: str, e: int) -> str:
    if e == 2:
        return v
    if e % 2 == 0:
        return f"{v}^{e // 2}"
    return f"{v}^({e}/2)"


def poly_sum(polys: Iterable[Scalar]) -> LaurentPoly:
    """Sum many polynomials with a single accumulator."""
    out: dict = defaultdict(int)
    for p in polys:
        for m, c in LaurentPoly.coerce(p)._terms.items():
            out[m] += c
    return LaurentPoly(out)


def var(name: str) -> LaurentPoly:
    return LaurentPoly.var(name)


def edge_var(prefix: str, edge: str) -> LaurentPoly:
    """Per-edge indeterminate such as ``alpha:e1`` or ``beta:e2``."""
    return LaurentPoly.var(f"{prefix}:{edge}")


def pow_half(p: Scalar, halves: int) -> LaurentPoly:
    """Return ``p ** (halves / 2)``.

    Odd ``halves`` require ``p`` to be a monomial with coefficient 1.
    """
    p = LaurentPoly.coerce(p)
    if halves % 2 == 0:
        return p ** (halves // 2)
    if not p.is_monomial():
        raise ValueError("fractional power of a sum is not representable")
    ((m, c),) = p.items()
    if c != 1:
        raise ValueError("fractional power needs coefficient 1")
    return LaurentPoly({_mono_scale(m, halves, 2): 1})


def reduce_w(p: LaurentPoly, name: str = "w") -> LaurentPoly:
    """Reduce modulo ``w^2 - w``: every positive power of ``w`` becomes ``w``."""
    out: dict = defaultdict(int)
    for m, c in p.items():
        new = []
        for v, e in m:
            if v == name:
                if e < 0 or e % 2:
                    raise ValueError("reduce_w needs non-negative integral powers of w")
                e = 2
            new.append((v, e))
        out[tuple(new)] += c
    return LaurentPoly(out)


def substitute(p: LaurentPoly, bindings: Mapping[str, Scalar]) -> LaurentPoly:
    """Simultaneously replace variables by Laurent polynomials.

    A variable carrying a half-integral exponent may only be replaced by a
    monomial with coefficient 1 (or a constant 1).
    """
    bindings = {k: LaurentPoly.coerce(v) for k, v in bindings.items()}
    cache: dict = {}

    def power(name: str, e2: int) -> LaurentPoly:
        key = (name, e2)
        if key not in cache:
            cache[key] = pow_half(bindings[name], e2)
        return cache[key]

    total = LaurentPoly()
    for m, c in p.items():
        kept = tuple((v, e) for v, e in m if v not in bindings)
        term = LaurentPoly({kept: c})
        for v, e in m:
            if v in bindings:
                term = term * power(v, e)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# abstract (non-ribbon) graphs


@dataclass(frozen=True)
class AbstractGraph:
    """Finite multigraph with signed, labelled edges; loops allowed.

    ``edges`` holds ``(u, v, sign, label)`` tuples with ``0 <= u, v < n_vertices``.
    """

    n_vertices: int
    edges: tuple = ()

    def __post_init__(self):
        for u, v, sign, _ in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge endpoint out of range: {(u, v)}")
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign!r}")

    @property
    def labels(self) -> list:
        return [e[3] for e in self.edges]

    def components(self, subset: Iterable[int] | None = None) -> int:
        """Number of connected components of the spanning subgraph on edge indices ``subset``."""
        ds = DisjointSet(range(self.n_vertices))
        idx = range(len(self.edges)) if subset is None else subset
        for i in idx:
            u, v = self.edges[i][:2]
            ds.merge(u, v)
        return ds.n_subsets

    def rank(self) -> int:
        return self.n_vertices - self.components()

    def nullity(self) -> int:
        return len(self.edges) - self.rank()

    def subsets(self):
        """Yield ``(indices, k(F), n(F), e+(F), e-(F))`` for every spanning subgraph F."""
        m = len(self.edges)
        for r in range(m + 1):
            for sub in itertools.combinations(range(m), r):
                k = self.components(sub)
                n = len(sub) - (self.n_vertices - k)
                neg = sum(1 for i in sub if self.edges[i][2] < 0)
                yield sub, k, n, len(sub) - neg, neg


def _default(value, name):
    return LaurentPoly.var(name) if value is None else LaurentPoly.coerce(value)


def rank_poly(H: AbstractGraph, alpha: Scalar = None, beta: Scalar = None,
              gamma: Scalar = None, delta: Scalar = None) -> LaurentPoly:
    """Signed rank polynomial ``Ra(H; alpha, beta, gamma, delta)`` by subset expansion.

    Omitted arguments stay symbolic (variables ``alpha``, ``beta``, ``gamma``,
    ``delta``). ``beta`` may be a half-integral monomial.
    """
    a, b = _default(alpha, "alpha"), _default(beta, "beta")
    g, d = _default(gamma, "gamma"), _default(delta, "delta")
    k_h = H.components()
    e_pos = sum(1 for e in H.edges if e[2] > 0)
    e_neg = len(H.edges) - e_pos
    counts: dict = defaultdict(int)
    for _, k, n, ep, en in H.subsets():
        # alpha^{e+(Fbar)+e-(F)} beta^{e+(F)+e-(Fbar)}
        counts[(e_pos - ep + en, ep + e_neg - en, k - k_h, n)] += 1
    total = LaurentPoly()
    for (ea, eb, eg, ed), mult in counts.items():
        total = total + mult * (a**ea) * (b**eb) * (g**eg) * (d**ed)
    return total


def tutte(H: AbstractGraph, x: Scalar = None, y: Scalar = None) -> LaurentPoly:
    """Tutte polynomial ``sum_F (x-1)^{k(F)-k(H)} (y-1)^{n(F)}``."""
    xv, yv = _default(x, "x"), _default(y, "y")
    k_h = H.components()
    counts: dict = defaultdict(int)
    for _, k, n, _, _ in H.subsets():
        counts[(k - k_h, n)] += 1
    total = LaurentPoly()
    for (ek, en), mult in counts.items():
        total = total + mult * (xv - 1) ** ek * (yv - 1) ** en
    return total


def multivariate_tutte(H: AbstractGraph, q: Scalar = None,
                       beta: Mapping[str, Scalar] | None = None) -> LaurentPoly:
    """Multivariate Tutte polynomial ``Z_T(H; q, beta) = sum_F q^{k(F)} prod_{e in F} beta_e``.

    ``beta`` maps edge labels to weights; missing labels default to ``beta:<label>``.
    """
    qv = _default(q, "q")
    beta = dict(beta or {})
    weights = [LaurentPoly.coerce(beta[lab]) if lab in beta else edge_var("beta", lab)
               for lab in H.labels]
    total = LaurentPoly()
    for sub, k, _, _, _ in H.subsets():
        term = qv**k
        for i in sub:
            term = term * weights[i]
        total = total + term
    return total
