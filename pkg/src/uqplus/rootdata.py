"""Cartan data, root lattice reflections, reduced words and diagram symmetries.

Root lattice elements are plain integer tuples of coordinates in the basis
of simple roots.  Indices of simple roots are 1-based at the public surface,
matching how words such as ``(1, 2, 1)`` are written.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Sequence

Weight = tuple  # tuple[int, ...] of simple-root coordinates

__all__ = [
    "CartanData",
    "CartanError",
    "WordVerdict",
    "preset",
    "read_cartan_file",
    "reflect",
    "positive_roots_from_word",
    "positive_roots",
    "longest_words",
    "diagram_symmetries",
    "braid_order",
]


class CartanError(ValueError):
    """Matrix rejected as Cartan data."""


@dataclass(frozen=True)
class CartanData:
    """A symmetrizable Cartan matrix with symmetrizers normalised to ``min d_i = 1``."""

    A: tuple
    name: str = "custom"
    d: tuple = field(init=False)
    B: tuple = field(init=False)

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        object.__setattr__(self, "A", A)
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise CartanError("Cartan matrix must be square and non-empty")
        for i in range(n):
            if A[i][i] != 2:
                raise CartanError(f"a_{i + 1}{i + 1} must be 2")
            for j in range(n):
                if i != j:
                    if A[i][j] not in (0, -1, -2, -3):
                        raise CartanError(f"a_{i + 1}{j + 1} = {A[i][j]} not in {{0,-1,-2,-3}}")
                    if (A[i][j] == 0) != (A[j][i] == 0):
                        raise CartanError(f"a_{i + 1}{j + 1} and a_{j + 1}{i + 1} must vanish together")
            if n > 1 and all(A[i][j] == 0 for j in range(n) if j != i):
                # every node needs a neighbour for the q-commutation argument
                raise CartanError(f"node {i + 1} has no neighbour in the Dynkin diagram")
        d = _symmetrizers(A)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "B", tuple(tuple(d[i] * A[i][j] for j in range(n))
                                           for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.A)

    def inner(self, x: Sequence[int], y: Sequence[int]) -> int:
        """The symmetric form ``(x, y)`` on the root lattice."""
        B = self.B
        return sum(x[i] * B[i][j] * y[j]
                   for i in range(len(x)) if x[i]
                   for j in range(len(y)) if y[j])

    def simple_root(self, i: int) -> Weight:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def a(self, i: int, j: int) -> int:
        """Cartan entry ``a_ij`` with 1-based indices."""
        return self.A[i - 1][j - 1]


def _symmetrizers(A) -> tuple:
    """Solve ``d_i a_ij = d_j a_ji`` with ``min d_i = 1`` on each component."""
    n = len(A)
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] != 0:
                    val = d[i] * A[i][j] / A[j][i]
                    if d[j] is None:
                        d[j] = val
                        comp.append(j)
                        stack.append(j)
                    elif d[j] != val:
                        raise CartanError("Cartan matrix is not symmetrizable")
        scale = lcm(*(x.denominator for x in (d[k] for k in comp)))
        m = min(d[k] * scale for k in comp)
        for k in comp:
            d[k] = d[k] * scale / m
    if any(x.denominator != 1 for x in d):
        raise CartanError("symmetrizers are not integral")
    out = tuple(int(x) for x in d)
    if any(x not in (1, 2, 3) for x in out):
        raise CartanError(f"symmetrizers {out} outside {{1,2,3}}")
    return out


_PRESETS = {
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),
}


def preset(type_tag: str) -> CartanData:
    """Cartan data of ``A2`` (sl3) or ``B2`` (so5)."""
    try:
        return CartanData(_PRESETS[type_tag], name=type_tag)
    except KeyError:
        raise CartanError(f"unknown preset {type_tag!r}; choose from {sorted(_PRESETS)}") from None


def read_cartan_file(path) -> CartanData:
    """Plain text: first line the rank ``n``, then ``n`` rows of ``n`` integers."""
    lines = [ln.split("#", 1)[0].strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CartanError(f"{path}: empty Cartan file")
    try:
        n = int(lines[0])
        rows = [tuple(int(x) for x in ln.replace(",", " ").split()) for ln in lines[1:]]
    except ValueError as exc:
        raise CartanError(f"{path}: {exc}") from None
    if len(rows) != n:
        raise CartanError(f"{path}: expected {n} matrix rows, found {len(rows)}")
    return CartanData(tuple(rows), name=Path(path).stem)


def reflect(cd: CartanData, i: int, gamma: Sequence[int]) -> Weight:
    """``s_i(gamma) = gamma - <gamma, alpha_i^vee> alpha_i``."""
    k = i - 1
    pairing = sum(c * cd.A[k][j] for j, c in enumerate(gamma))
    out = list(gamma)
    out[k] -= pairing
    return tuple(out)


@dataclass(frozen=True)
class WordVerdict:
    """Roots attached to a word and whether the word passed the reducedness test."""

    word: tuple
    roots: tuple
    reduced: bool
    bad_position: int | None = None  # 1-based

    def __bool__(self):
        return self.reduced


def positive_roots_from_word(cd: CartanData, word: Sequence[int]) -> WordVerdict:
    """``beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})`` plus a reducedness verdict.

    A word is reduced exactly when every ``beta_k`` is a positive root; the
    first position where that fails is reported.
    """
    word = tuple(int(i) for i in word)
    for i in word:
        if not 1 <= i <= cd.rank:
            raise CartanError(f"letter {i} outside 1..{cd.rank}")
    roots = []
    bad = None
    seen = set()
    for k, ik in enumerate(word):
        beta = cd.simple_root(ik)
        for j in reversed(word[:k]):
            beta = reflect(cd, j, beta)
        roots.append(beta)
        if bad is None and (any(c < 0 for c in beta) or beta in seen):
            bad = k + 1
        seen.add(beta)
    return WordVerdict(word, tuple(roots), bad is None, bad)


_MAX_ROOTS = 40


def positive_roots(cd: CartanData) -> list:
    """All positive roots by closing the simple roots under reflections."""
    n = cd.rank
    simple = [cd.simple_root(i) for i in range(1, n + 1)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(1, n + 1):
                gamma = reflect(cd, i, beta)
                if all(c >= 0 for c in gamma) and gamma not in roots:
                    roots.add(gamma)
                    nxt.append(gamma)
        if len(roots) > _MAX_ROOTS:
            raise NotImplementedError("root system too large or not of finite type")
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


def longest_words(cd: CartanData) -> list:
    """Every reduced word of the longest Weyl group element, lexicographically."""
    N = len(positive_roots(cd))
    if N > 12:
        raise NotImplementedError(f"{N} positive roots: reduced-word search not supported")
    out = []

    def extend(prefix):
        if len(prefix) == N:
            out.append(tuple(prefix))
            return
        for i in range(1, cd.rank + 1):
            w = prefix + [i]
            if positive_roots_from_word(cd, w).reduced:
                extend(w)

    extend([])
    return out


def diagram_symmetries(cd: CartanData) -> list:
    """Permutations ``w`` (as 1-based tuples) with ``(a_i, a_j) = (a_w(i), a_w(j))``."""
    n = cd.rank
    B = cd.B
    out = []
    for perm in itertools.permutations(range(n)):
        if all(B[i][j] == B[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            out.append(tuple(p + 1 for p in perm))
    return out


def braid_order(cd: CartanData, i: int, j: int) -> int:
    """Order of ``s_i s_j`` read off from ``a_ij a_ji``."""
    if i == j:
        raise ValueError("braid relation needs distinct indices")
    return {0: 2, 1: 3, 2: 4, 3: 6}[cd.a(i, j) * cd.a(j, i)]
