"""
Permutations of ``[1, n]`` in one-line notation, r-vectors, lengths and the
two embeddings ``S_{n-1} -> S_n`` used throughout the package.

The r-vector of ``w`` records, for each ``j``, the rank of ``w^{-1}(j)`` in
*ascending* order among ``w^{-1}(j), ..., w^{-1}(n)``.  Subtracting one from
every entry gives the Lehmer code of ``w^{-1}``.

>>> w = Permutation((3, 7, 1, 2, 5, 4, 6))
>>> r_vector(w)
(3, 3, 1, 3, 2, 2, 1)
>>> length(w)
8
>>> embed(w, "iota_bar")
Permutation((1, 4, 8, 2, 3, 6, 5, 7))
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Permutation", "InvalidCodeError", "r_vector", "perm_from_r_vector",
    "length", "embed", "compose", "inverse", "w0_of", "identity",
    "all_perms", "lehmer_code", "perm_from_code", "parse_perm",
]


class InvalidCodeError(ValueError):
    """An r-vector (or code) entry lies outside its allowed range."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``[1, n]`` given by its images ``(w(1), ..., w(n))``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return inverse(self)

    def length(self) -> int:
        return length(self)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __repr__(self) -> str:
        return f"Permutation({self.images!r})"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def w0_of(n: int) -> Permutation:
    """The longest element ``i -> n + 1 - i``."""
    return Permutation(tuple(range(n, 0, -1)))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """``(u * v)(i) = u(v(i))``."""
    if u.n != v.n:
        raise ValueError("cannot compose permutations of different sizes")
    return Permutation(tuple(u.images[x - 1] for x in v.images))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, x in enumerate(w.images, start=1):
        inv[x - 1] = i
    return Permutation(tuple(inv))


def all_perms(n: int) -> Iterator[Permutation]:
    """All of ``S_n`` in lexicographic order of one-line notation."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def length(w: Permutation) -> int:
    """Number of inversions ``i < j`` with ``w(i) > w(j)``."""
    x = w.images
    return sum(1 for i in range(len(x)) for j in range(i + 1, len(x)) if x[i] > x[j])


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    """``c_i = #{j > i : w(j) < w(i)}``."""
    x = w.images
    return tuple(sum(1 for j in range(i + 1, len(x)) if x[j] < x[i]) for i in range(len(x)))


def perm_from_code(code: Iterable[int]) -> Permutation:
    """Inverse of :func:`lehmer_code`."""
    code = list(code)
    n = len(code)
    available = list(range(1, n + 1))
    images = []
    for i, c in enumerate(code):
        if not 0 <= c <= n - 1 - i:
            raise InvalidCodeError(f"code entry {c} at position {i + 1} out of range [0, {n - 1 - i}]")
        images.append(available.pop(c))
    return Permutation(tuple(images))


def r_vector(w: Permutation) -> tuple[int, ...]:
    return tuple(c + 1 for c in lehmer_code(inverse(w)))


def perm_from_r_vector(r: Iterable[int]) -> Permutation:
    r = list(r)
    n = len(r)
    for j, rj in enumerate(r, start=1):
        if not 1 <= rj <= n + 1 - j:
            raise InvalidCodeError(f"r_{j} = {rj} out of range [1, {n + 1 - j}]")
    return inverse(perm_from_code(rj - 1 for rj in r))


def embed(w: Permutation, kind: str) -> Permutation:
    """
    Embed ``w`` in ``S_{n-1}`` into ``S_n``.

    ``"iota"`` appends the fixed point ``n``; ``"iota_bar"`` prepends the
    fixed point 1 and shifts every other value up by one.
    """
    if kind == "iota":
        return Permutation(w.images + (w.n + 1,))
    if kind == "iota_bar":
        return Permutation((1,) + tuple(x + 1 for x in w.images))
    raise ValueError(f"unknown embedding {kind!r}")


def parse_perm(text: str) -> Permutation:
    """Parse ``"3,7,1,2"`` or ``"[3,7,1,2]"``."""
    text = text.strip().strip("[]()")
    return Permutation(tuple(int(t) for t in text.replace(" ", "").split(",") if t))
