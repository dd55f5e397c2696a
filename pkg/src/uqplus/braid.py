"""Lusztig braid operators, root vectors, PBW monomials and straightening."""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass

from .algebra import AlgElement, Generator, RewriteSystem, is_positive_part, q_degree, word_weight
from .linalg import InconsistentSystem, solve
from .qcoeff import quantum_factorial
from .rootdata import braid_order, positive_roots_from_word, reflect

__all__ = [
    "PBWError",
    "RootVectorTable",
    "StraighteningRelation",
    "BraidReport",
    "divided_power",
    "braid_image",
    "apply_T",
    "root_vectors",
    "verify_braid_relation",
    "pbw_monomials",
    "pbw_monomial",
    "pbw_expand",
    "ls_straighten",
]


class PBWError(AssertionError):
    """An internal-consistency check tied to the PBW theorem failed."""


_T_CACHE: "weakref.WeakKeyDictionary[RewriteSystem, dict]" = weakref.WeakKeyDictionary()


def _cache(rs: RewriteSystem) -> dict:
    c = _T_CACHE.get(rs)
    if c is None:
        c = _T_CACHE[rs] = {}
    return c


def divided_power(rs: RewriteSystem, i: int, s: int, kind: str = "E") -> AlgElement:
    """``X_i^s / [s]_i!`` for ``X`` in ``{E, F}``."""
    if s < 0:
        raise ValueError("divided powers need s >= 0")
    x = rs.E(i) if kind == "E" else rs.F(i)
    c = rs.field.coerce(quantum_factorial(s, rs.cartan.d[i - 1]))
    return rs.power(x, s) / c


def _k_monomial(rs: RewriteSystem, coords) -> AlgElement:
    out = rs.one()
    for k, c in enumerate(coords, start=1):
        g = rs.K(k) if c > 0 else rs.Kinv(k)
        for _ in range(abs(c)):
            out = rs.multiply(out, g)
    return out


def braid_image(rs: RewriteSystem, i: int, gen: Generator) -> AlgElement:
    """``T_i`` applied to a single generator, normalised."""
    cd, fld = rs.cartan, rs.field
    key = ("gen", i, gen)
    cache = _cache(rs)
    if key in cache:
        return cache[key]
    j = gen.index
    if gen.kind in ("K", "Kinv"):
        img = reflect(cd, i, cd.simple_root(j))
        if gen.kind == "Kinv":
            img = tuple(-c for c in img)
        out = _k_monomial(rs, img)
    elif j == i:
        if gen.kind == "E":
            out = -rs.multiply(rs.F(i), rs.K(i))
        else:
            out = -rs.multiply(rs.Kinv(i), rs.E(i))
    else:
        m = -cd.a(i, j)
        out = AlgElement()
        for s in range(m + 1):
            sign = -1 if (s + m) % 2 else 1
            if gen.kind == "E":
                coeff = fld.q(-cd.d[i - 1] * s)
                term = rs.product(divided_power(rs, i, m - s), rs.E(j), divided_power(rs, i, s))
            else:
                coeff = fld.q(cd.d[i - 1] * s)
                term = rs.product(divided_power(rs, i, s, "F"), rs.F(j),
                                  divided_power(rs, i, m - s, "F"))
            out = out + (coeff * sign) * term
    cache[key] = out
    return out


def _apply_word(rs: RewriteSystem, i: int, w) -> AlgElement:
    cache = _cache(rs)
    key = ("word", i, w)
    r = cache.get(key)
    if r is not None:
        return r
    img = braid_image(rs, i, Generator.from_code(w[-1]))
    r = img if len(w) == 1 else rs.multiply(_apply_word(rs, i, w[:-1]), img)
    cache[key] = r
    return r


def apply_T(rs: RewriteSystem, i: int, x: AlgElement) -> AlgElement:
    """Image of ``x`` under the algebra automorphism ``T_i``."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"braid index {i} out of range")
    out: dict = {}
    for w, c in x.terms.items():
        img = _apply_word(rs, i, w) if w else rs.one()
        for v, d in img.terms.items():
            t = c * d
            out[v] = out[v] + t if v in out else t
    return AlgElement(out)


def apply_T_word(rs: RewriteSystem, word, x: AlgElement) -> AlgElement:
    """``T_{w_1} ... T_{w_k}(x)``: the rightmost operator acts first."""
    for i in reversed(tuple(word)):
        x = apply_T(rs, i, x)
    return x


@dataclass(frozen=True)
class BraidReport:
    i: int
    j: int
    m: int
    comparisons: tuple  # of (generator label, lhs, rhs, equal)

    @property
    def passed(self) -> bool:
        return all(c[3] for c in self.comparisons)


def verify_braid_relation(rs: RewriteSystem, i: int, j: int) -> BraidReport:
    """Compare ``T_i T_j T_i ...`` with ``T_j T_i T_j ...`` (``m`` factors) on every generator."""
    m = braid_order(rs.cartan, i, j)
    left = tuple(itertools.islice(itertools.cycle((i, j)), m))
    right = tuple(itertools.islice(itertools.cycle((j, i)), m))
    rows = []
    for k in range(1, rs.rank + 1):
        for label, g in ((f"E{k}", rs.E(k)), (f"F{k}", rs.F(k)), (f"K{k}", rs.K(k))):
            a = apply_T_word(rs, left, g)
            b = apply_T_word(rs, right, g)
            rows.append((label, a, b, a == b))
    return BraidReport(i, j, m, tuple(rows))


@dataclass(frozen=True)
class RootVectorTable:
    word: tuple
    roots: tuple
    vectors: tuple
    rank: int

    def __len__(self):
        return len(self.roots)

    def heights(self) -> tuple:
        return tuple(sum(b) for b in self.roots)

    def export(self) -> str:
        lines = []
        for beta, vec in zip(self.roots, self.vectors):
            coords = ",".join(str(c) for c in beta)
            lines.append(f"beta = ({coords}) ; E_beta = {vec}")
        return "\n".join(lines)


def root_vectors(rs: RewriteSystem, word) -> RootVectorTable:
    """Root vectors ``E_{beta_k} = T_{i_1} ... T_{i_{k-1}}(E_{i_k})`` for a reduced word."""
    cd = rs.cartan
    verdict = positive_roots_from_word(cd, word)
    if not verdict.reduced:
        raise ValueError(f"word {verdict.word} is not reduced (position {verdict.bad_position})")
    word = verdict.word
    vectors = []
    for k, (ik, beta) in enumerate(zip(word, verdict.roots)):
        x = apply_T_word(rs, word[:k], rs.E(ik))
        if not is_positive_part(x):
            raise PBWError(f"root vector for {beta} is not in the positive part: {x}")
        if q_degree(x, cd.rank) != beta:
            raise PBWError(f"root vector for {beta} has weight {q_degree(x, cd.rank)}")
        if sum(beta) == 1 and x != rs.E(beta.index(1) + 1):
            raise PBWError(f"simple root vector for {beta} is not a generator: {x}")
        vectors.append(x)
    return RootVectorTable(word, verdict.roots, tuple(vectors), cd.rank)


def pbw_monomials(table: RootVectorTable, d: int, weight=None) -> list:
    """Exponent vectors of total degree ``d`` (optionally of fixed weight), descending lex."""
    heights = table.heights()
    N = len(heights)
    out = []

    def rec(t, remaining, prefix):
        if t == N:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for k in range(remaining // heights[t], -1, -1):
            prefix.append(k)
            rec(t + 1, remaining - k * heights[t], prefix)
            prefix.pop()

    rec(0, d, [])
    if weight is not None:
        weight = tuple(weight)
        out = [e for e in out if _exp_weight(table, e) == weight]
    return out


def _exp_weight(table: RootVectorTable, exps) -> tuple:
    w = [0] * table.rank
    for k, beta in zip(exps, table.roots):
        if k:
            for a in range(table.rank):
                w[a] += k * beta[a]
    return tuple(w)


def pbw_monomial(rs: RewriteSystem, table: RootVectorTable, exps) -> AlgElement:
    """Normal form of ``E_{beta_1}^{k_1} ... E_{beta_N}^{k_N}``."""
    exps = tuple(exps)
    cache = _cache(rs)
    key = ("pbw", table.word, exps)
    r = cache.get(key)
    if r is not None:
        return r
    last = max((t for t, k in enumerate(exps) if k), default=None)
    if last is None:
        r = rs.one()
    else:
        prev = list(exps)
        prev[last] -= 1
        r = rs.multiply(pbw_monomial(rs, table, prev), table.vectors[last])
    cache[key] = r
    return r


def pbw_expand(rs: RewriteSystem, table: RootVectorTable, x: AlgElement) -> dict:
    """Coordinates of ``x`` in the PBW basis attached to ``table``."""
    if not is_positive_part(x):
        raise ValueError("PBW expansion needs an element of the positive part")
    by_weight: dict = {}
    for w, c in x.terms.items():
        by_weight.setdefault(word_weight(w, rs.rank), {})[w] = c
    out = {}
    one = rs.field.one
    zero = rs.field.zero
    for weight, terms in sorted(by_weight.items()):
        monos = pbw_monomials(table, sum(weight), weight)
        elems = [pbw_monomial(rs, table, e) for e in monos]
        words = sorted(set().union(terms, *(m.terms for m in elems)))
        rows = [[m.terms.get(w, zero) for m in elems] for w in words]
        rhs = [terms.get(w, zero) for w in words]
        try:
            coords = solve(rows, rhs, one)
        except InconsistentSystem:
            raise PBWError(f"weight {weight} component is not spanned by PBW monomials") from None
        except ValueError:
            raise PBWError(f"PBW monomials of weight {weight} are linearly dependent") from None
        for e, c in zip(monos, coords):
            if c:
                out[e] = c
    return out


@dataclass(frozen=True)
class StraighteningRelation:
    i: int
    j: int
    scalar: object
    coefficients: dict  # intermediate exponents (k_{i+1}, ..., k_{j-1}) -> coefficient

    def __str__(self):
        if not self.coefficients:
            return f"pair ({self.i},{self.j}): scalar {self.scalar}, no correction terms"
        terms = ", ".join(f"{e}: {c}" for e, c in sorted(self.coefficients.items(), reverse=True))
        return f"pair ({self.i},{self.j}): scalar {self.scalar}, corrections {{{terms}}}"


def ls_straighten(rs: RewriteSystem, table: RootVectorTable, i: int, j: int) -> StraighteningRelation:
    """``E_{beta_j} E_{beta_i} - q^{-(beta_i, beta_j)} E_{beta_i} E_{beta_j}`` over PBW monomials."""
    N = len(table)
    if not 1 <= i < j <= N:
        raise ValueError(f"need 1 <= i < j <= {N}, got ({i}, {j})")
    cd = rs.cartan
    bi, bj = table.roots[i - 1], table.roots[j - 1]
    scalar = rs.field.q(-cd.inner(bi, bj))
    xi, xj = table.vectors[i - 1], table.vectors[j - 1]
    diff = rs.q_commutator(xj, xi, scalar)
    coords = pbw_expand(rs, table, diff)
    coeffs = {}
    for e, c in coords.items():
        if any(e[t] for t in range(N) if not i - 1 < t < j - 1):
            raise PBWError(f"straightening ({i},{j}) has support outside the window: {e}")
        coeffs[e[i:j - 1]] = c
    return StraighteningRelation(i, j, scalar, coeffs)
