"""
Schubert calculus in ``H*(Fl(n))``.

Two multiplication engines that share no code beyond permutation basics:

* :func:`product_in_basis` multiplies Schubert polynomials, reduces modulo
  the ideal of symmetric polynomials (Groebner basis
  ``h_{n-i+1}(x_1, ..., x_i)``) and peels off Schubert polynomials by their
  leading monomial ``x^{code(w)}`` (reverse lexicographic order).
* :func:`product_by_transition` expands the left factor with the
  Lascoux-Schuetzenberger transition formula and multiplies by single
  variables with Monk's rule; it never touches polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .permcore import Permutation, all_perms, compose, embed, length, w0_of
from .weights import WeightVector

__all__ = [
    "Poly", "SchubertClass", "schubert_polynomial", "divided_difference",
    "product_in_basis", "product_by_transition", "monk", "multiply_divisor",
    "integral", "at_class_sum", "degree_wrt", "at_term", "simple_reflection",
    "reduce_mod_coinvariants", "expand_in_basis",
]

# polynomials are {exponent tuple: integer coefficient}
Poly = dict


def _add_into(acc: dict, key, coeff) -> None:
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for a, ca in f.items():
        for b, cb in g.items():
            _add_into(out, tuple(x + y for x, y in zip(a, b)), ca * cb)
    return out


def divided_difference(f: Poly, i: int) -> Poly:
    """``(f - s_i f) / (x_i - x_{i+1})`` for 1-based ``i``, monomial by monomial."""
    out: Poly = {}
    k = i - 1
    for a, c in f.items():
        p, q = a[k], a[k + 1]
        if p == q:
            continue
        sign = 1 if p > q else -1
        lo, hi = min(p, q), max(p, q)
        for t in range(hi - lo):
            b = list(a)
            b[k] = lo + (hi - lo - 1 - t)
            b[k + 1] = lo + t
            _add_into(out, tuple(b), sign * c)
    return out


def simple_reflection(i: int, n: int) -> Permutation:
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


@lru_cache(maxsize=None)
def _schubert(images: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    n = len(images)
    if all(images[k] > images[k + 1] for k in range(n - 1)):
        return ((tuple(range(n - 1, -1, -1)), 1),)
    # climb to a longer permutation through an ascent, then come back down
    i = next(k for k in range(n - 1) if images[k] < images[k + 1])
    up = list(images)
    up[i], up[i + 1] = up[i + 1], up[i]
    f = divided_difference(dict(_schubert(tuple(up))), i + 1)
    return tuple(sorted(f.items()))


def schubert_polynomial(w: Permutation) -> Poly:
    """Schubert polynomial in ``x_1..x_n``, from ``x^delta`` by divided differences."""
    return dict(_schubert(w.images))


@dataclass
class SchubertClass:
    """Integer combination of Schubert classes of ``Fl(n)``."""

    n: int
    terms: dict[Permutation, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def basis(cls, w: Permutation) -> SchubertClass:
        return cls(w.n, {w: 1})

    def __add__(self, other: SchubertClass) -> SchubertClass:
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return SchubertClass(self.n, out)

    def scale(self, k) -> SchubertClass:
        return SchubertClass(self.n, {w: k * c for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SchubertClass) and self.n == other.n and self.terms == other.terms

    def degrees(self) -> set[int]:
        return {length(w) for w in self.terms}

    def to_json(self) -> dict[str, int]:
        return {",".join(map(str, w.images)): int(c) for w, c in sorted(self.terms.items())}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*s{w}" if c != 1 else f"s{w}" for w, c in sorted(self.terms.items()))


# ---- engine 1: polynomials modulo the coinvariant ideal ---------------------

@lru_cache(maxsize=None)
def _complete_homogeneous(k: int, nvars: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors (length n) of h_k(x_1..x_nvars)."""
    out = []

    def rec(pos, remaining, acc):
        if pos == nvars - 1:
            out.append(tuple(acc + [remaining] + [0] * (n - nvars)))
            return
        for e in range(remaining, -1, -1):
            rec(pos + 1, remaining - e, acc + [e])

    rec(0, k, [])
    return tuple(out)


def reduce_mod_coinvariants(f: Poly, n: int) -> Poly:
    """Normal form with exponents ``a_i <= n - i``."""
    out: Poly = {}
    pending = dict(f)
    while pending:
        a, c = pending.popitem()
        bad = [i for i in range(n) if a[i] > n - 1 - i]
        if not bad:
            _add_into(out, a, c)
            continue
        i = bad[-1]
        k = n - i                     # x_{i+1}^{k} is the leading term of h_k(x_1..x_{i+1})
        rest = list(a)
        rest[i] -= k
        for e in _complete_homogeneous(k, i + 1, n):
            if e[i] == k:
                continue
            _add_into(pending, tuple(x + y for x, y in zip(rest, e)), -c)
    return out


def _revlex_key(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(a))


def expand_in_basis(f: Poly, n: int) -> SchubertClass:
    """Expand a polynomial already in coinvariant normal form in the Schubert basis of ``S_n``."""
    from .permcore import perm_from_code
    f = dict(f)
    terms: dict[Permutation, int] = {}
    while f:
        lead = max(f, key=_revlex_key)
        c = f[lead]
        w = perm_from_code(lead)
        terms[w] = terms.get(w, 0) + c
        for a, ca in schubert_polynomial(w).items():
            _add_into(f, a, -c * ca)
    return SchubertClass(n, terms)


def product_in_basis(u: Permutation, v: Permutation) -> SchubertClass:
    """``sigma_u * sigma_v`` in ``H*(Fl(n))``."""
    if u.n != v.n:
        raise ValueError("factors from different flag varieties")
    n = u.n
    if length(u) + length(v) > n * (n - 1) // 2:
        return SchubertClass(n)
    f = poly_mul(schubert_polynomial(u), schubert_polynomial(v))
    return expand_in_basis(reduce_mod_coinvariants(f, n), n)


def multiply(c1: SchubertClass, c2: SchubertClass) -> SchubertClass:
    out = SchubertClass(c1.n)
    for u, a in c1.terms.items():
        for v, b in c2.terms.items():
            out = out + product_in_basis(u, v).scale(a * b)
    return out


# ---- engine 2: Monk's rule and transitions ---------------------------------

def _transpose(w: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    x = list(w)
    x[a - 1], x[b - 1] = x[b - 1], x[a - 1]
    return tuple(x)


def _covers(w: tuple[int, ...], a: int, b: int) -> bool:
    """``l(w t_ab) = l(w) + 1`` for ``a < b``."""
    lo, hi = w[a - 1], w[b - 1]
    return lo < hi and not any(lo < w[c - 1] < hi for c in range(a + 1, b))


def monk(k: int, w: Permutation) -> SchubertClass:
    """``sigma_{s_k} * sigma_w = sum sigma_{w t_ab}`` over ``a <= k < b <= n`` covering ``w``."""
    n = w.n
    x = w.images
    terms = {}
    for a in range(1, k + 1):
        for b in range(k + 1, n + 1):
            if _covers(x, a, b):
                terms[Permutation(_transpose(x, a, b))] = 1
    return SchubertClass(n, terms)


def _times_x(i: int, c: dict[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    """Multiply by ``x_i = sigma_{s_i} - sigma_{s_{i-1}}``: ``sum_{b>i} w t_ib - sum_{a<i} w t_ai``."""
    out: dict = {}
    for w, coeff in c.items():
        n = len(w)
        for b in range(i + 1, n + 1):
            if _covers(w, i, b):
                _add_into(out, _transpose(w, i, b), coeff)
        for a in range(1, i):
            if _covers(w, a, i):
                _add_into(out, _transpose(w, a, i), -coeff)
    return out


@lru_cache(maxsize=None)
def _transition_product(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    n = len(u)
    if all(u[k] < u[k + 1] for k in range(n - 1)):
        return ((v, 1),)
    r = max(k for k in range(1, n) if u[k - 1] > u[k])          # last descent
    s = max(k for k in range(r + 1, n + 1) if u[k - 1] < u[r - 1])
    base = _transpose(u, r, s)
    acc = _times_x(r, dict(_transition_product(base, v)))
    lu = sum(1 for i in range(n) for j in range(i + 1, n) if u[i] > u[j])
    for q in range(1, r):
        cand = _transpose(base, q, r)
        if _covers(base, q, r) and sum(1 for i in range(n) for j in range(i + 1, n) if cand[i] > cand[j]) == lu:
            for w, c in _transition_product(cand, v):
                _add_into(acc, w, c)
    return tuple(sorted(acc.items()))


def product_by_transition(u: Permutation, v: Permutation) -> SchubertClass:
    """Independent route to ``sigma_u * sigma_v`` via transition and Monk's rule."""
    if u.n != v.n:
        raise ValueError("factors from different flag varieties")
    return SchubertClass(u.n, {Permutation(w): c for w, c in _transition_product(u.images, v.images)})


def multiply_divisor(c: SchubertClass, weights: Mapping[int, object]) -> SchubertClass:
    """``(sum_k weights[k] sigma_{s_k}) * c`` by Monk's rule."""
    out = SchubertClass(c.n)
    for w, coeff in c.terms.items():
        for k, lam in weights.items():
            if lam:
                out = out + monk(k, w).scale(coeff * lam)
    return out


# ---- integrals and the class sum ------------------------------------------

def integral(c: SchubertClass) -> int:
    """Coefficient of the point class ``sigma_{w_0}``."""
    return c.terms.get(w0_of(c.n), 0)


def at_term(w: Permutation) -> tuple[Permutation, Permutation]:
    """``(iota(w), iota_bar(w0 w))`` for ``w`` in ``S_{n-1}``."""
    return embed(w, "iota"), embed(compose(w0_of(w.n), w), "iota_bar")


def at_class_sum(n: int, engine=product_in_basis) -> SchubertClass:
    """``sum over w in S_{n-1} of sigma_{iota(w)} sigma_{iota_bar(w0 w)}`` in ``Fl(n)``."""
    if n < 2:
        raise ValueError("needs n >= 2")
    total = SchubertClass(n)
    for w in all_perms(n - 1):
        total = total + engine(*at_term(w))
    return total


def degree_wrt(c: SchubertClass, lam: WeightVector) -> int:
    """``integral(c * h^{n-1})`` with ``h = sum_i (lambda_i - lambda_{i+1}) sigma_{s_i}``."""
    if not lam.integral:
        raise ValueError(f"degree needs integral weights, got {lam}")
    if lam.n != c.n:
        raise ValueError("weights and class live on different flag varieties")
    n = c.n
    if not c.terms:
        return 0
    expected = n * (n - 1) // 2 - (n - 1)
    if c.degrees() != {expected}:
        raise ValueError(f"class must be homogeneous of codimension {expected}")
    h = {i: int(lam[i] - lam[i + 1]) for i in range(1, n)}
    for _ in range(n - 1):
        c = multiply_divisor(c, h)
    return int(integral(c))
