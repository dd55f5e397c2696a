"""Free algebra on E_i, F_i, K_i^{+-1}, defining relations of U_q(g) and normal forms.

Words are tuples of integer letter codes chosen so that integer comparison
is the letter order ``F_1 < ... < F_n < K_1^-1 < K_1 < ... < K_n^-1 < K_n <
E_1 < ... < E_n``.  The term order on words is degree-lexicographic where only
E and F letters count towards the degree.

A :class:`RewriteSystem` orients the relations of U_q(g) so that normal words
have the triangular shape ``F-segment . sorted K-segment . E-segment``, with
the pure E and pure F segments reduced modulo a Groebner basis of the quantum
Serre ideal computed up to a degree cap.
"""

from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .qcoeff import QQ_q, RationalFunction, quantum_binomial
from .rootdata import CartanData

__all__ = [
    "Generator",
    "AlgElement",
    "CapExceeded",
    "RewriteSystem",
    "Presentation",
    "E", "F", "K", "Kinv",
    "serre_relation",
    "relations",
    "build_rewrite_system",
    "normal_form",
    "multiply",
    "commutator",
    "q_commutator",
    "n_degree",
    "q_degree",
    "is_positive_part",
    "word_degree",
    "word_key",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_F0, _K0, _E0 = 0, 1000, 2000


class CapExceeded(ArithmeticError):
    """A word beyond the degree cap of the rewrite system was produced."""

    def __init__(self, degree: int, cap: int):
        super().__init__(f"degree cap exceeded: intermediate word of degree {degree} > cap {cap}")
        self.degree = degree
        self.cap = cap


class Generator(NamedTuple):
    kind: str  # "E", "F", "K" or "Kinv"
    index: int

    @property
    def code(self) -> int:
        if self.index < 1:
            raise ValueError("generator indices start at 1")
        i = self.index - 1
        return {"F": _F0 + i, "Kinv": _K0 + 2 * i, "K": _K0 + 2 * i + 1, "E": _E0 + i}[self.kind]

    @classmethod
    def from_code(cls, c: int) -> Generator:
        if c >= _E0:
            return cls("E", c - _E0 + 1)
        if c >= _K0:
            i, inv = divmod(c - _K0, 2)
            return cls("K" if inv else "Kinv", i + 1)
        return cls("F", c + 1)

    def __str__(self):
        if self.kind == "Kinv":
            return f"K{self.index}^-1"
        return f"{self.kind}{self.index}"


def _is_ef(c: int) -> bool:
    return c < _K0 or c >= _E0


def word_degree(w) -> int:
    """Number of E and F letters in ``w``."""
    return sum(1 for c in w if c < _K0 or c >= _E0)


def word_key(w):
    """Sort key realising the term order (larger key = larger word)."""
    return (word_degree(w), w)


def word_weight(w, rank: int) -> tuple:
    out = [0] * rank
    for c in w:
        if c >= _E0:
            out[c - _E0] += 1
        elif c < _K0:
            out[c - _F0] -= 1
    return tuple(out)


def render_word(w) -> str:
    return "*".join(str(Generator.from_code(c)) for c in w)


def _sign(c) -> int:
    if isinstance(c, RationalFunction):
        return c.leading_sign()
    return (c > 0) - (c < 0)


def render_coefficient(c, *, standalone: bool) -> str:
    """Render a positive-signed coefficient, parenthesised when it has several terms."""
    if isinstance(c, RationalFunction):
        if c.is_monomial():
            s = str(c)
        else:
            s = f"({c})"
    else:
        s = str(c)
    if standalone:
        return s
    return "" if s == "1" else s + "*"


def render_element(x: AlgElement) -> str:
    """Deterministic text: words in decreasing term order, explicit ``*``."""
    if not x.terms:
        return "0"
    parts = []
    for k, (w, c) in enumerate(x.sorted_terms()):
        neg = _sign(c) < 0
        c = -c if neg else c
        if w:
            body = render_coefficient(c, standalone=False) + render_word(w)
        else:
            body = render_coefficient(c, standalone=True)
        if k == 0:
            parts.append(("- " if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class AlgElement:
    """Finite linear combination of words; a free-algebra element.

    ``x * y`` is concatenation in the free algebra.  Use
    :meth:`RewriteSystem.multiply` for the product in U_q(g).
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def word(cls, w, c=None) -> AlgElement:
        return cls({tuple(w): QQ_q.one if c is None else c})

    @classmethod
    def scalar(cls, c) -> AlgElement:
        return cls({(): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, AlgElement):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return AlgElement(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgElement):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    v = c1 * c2
                    out[w] = out[w] + v if w in out else v
            return AlgElement(out)
        return AlgElement({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other):
        return AlgElement({w: other * c for w, c in self.terms.items()})

    def __truediv__(self, other):
        return AlgElement({w: c / other for w, c in self.terms.items()})

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=descending)

    def leading_word(self):
        return max(self.terms, key=word_key)

    def map_coefficients(self, f) -> AlgElement:
        return AlgElement({w: f(c) for w, c in self.terms.items()})

    def homogeneous_components(self) -> dict:
        """Split by N-degree (number of E/F letters)."""
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(word_degree(w), {})[w] = c
        return {d: AlgElement(t) for d, t in sorted(out.items())}

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return f"AlgElement({render_element(self)})"


def E(i: int, field=QQ_q) -> AlgElement:
    return AlgElement({(Generator("E", i).code,): field.one})


def F(i: int, field=QQ_q) -> AlgElement:
    return AlgElement({(Generator("F", i).code,): field.one})


def K(i: int, field=QQ_q) -> AlgElement:
    return AlgElement({(Generator("K", i).code,): field.one})


def Kinv(i: int, field=QQ_q) -> AlgElement:
    return AlgElement({(Generator("Kinv", i).code,): field.one})


def n_degree(x: AlgElement) -> int:
    """Largest number of E/F letters in the support; ``-1`` for zero."""
    return max((word_degree(w) for w in x.terms), default=-1)


def q_degree(x: AlgElement, rank: int):
    """Common root-lattice weight of the support, or ``None`` if not homogeneous."""
    if not x.terms:
        raise ValueError("q_degree of zero is undefined")
    weights = {word_weight(w, rank) for w in x.terms}
    return weights.pop() if len(weights) == 1 else None


def is_positive_part(x: AlgElement) -> bool:
    return all(all(c >= _E0 for c in w) for w in x.terms)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def _q_i_pow(cd: CartanData, i: int, k: int, field):
    return field.q(cd.d[i - 1] * k)


def serre_relation(cd: CartanData, i: int, j: int, kind: str = "E", field=QQ_q) -> AlgElement:
    """``sum_k (-1)^k [1-a_ij, k]_i X_i^{1-a_ij-k} X_j X_i^k`` for ``X`` in ``{E, F}``."""
    if i == j:
        raise ValueError("Serre relations need i != j")
    m = 1 - cd.a(i, j)
    xi = Generator(kind, i).code
    xj = Generator(kind, j).code
    terms = {}
    for k in range(m + 1):
        c = field.coerce(quantum_binomial(m, k, cd.d[i - 1]))
        terms[(xi,) * (m - k) + (xj,) + (xi,) * k] = c if k % 2 == 0 else -c
    return AlgElement(terms)


@dataclass(frozen=True)
class Presentation:
    cartan: CartanData
    relations: tuple  # of (label, AlgElement) where the element equals 0


def relations(cd: CartanData, field=QQ_q) -> Presentation:
    """Every defining relation of U_q(g), each written as an element equal to zero."""
    n = cd.rank
    rels = []
    one = field.one
    for i in range(1, n + 1):
        rels.append((f"K{i}*K{i}^-1", K(i, field) * Kinv(i, field) - AlgElement.scalar(one)))
        rels.append((f"K{i}^-1*K{i}", Kinv(i, field) * K(i, field) - AlgElement.scalar(one)))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i < j:
                rels.append((f"K{i}K{j}", K(i, field) * K(j, field) - K(j, field) * K(i, field)))
            qa = _q_i_pow(cd, i, cd.a(i, j), field)
            rels.append((f"K{i}E{j}K{i}^-1",
                         K(i, field) * E(j, field) * Kinv(i, field) - qa * E(j, field)))
            rels.append((f"K{i}F{j}K{i}^-1",
                         K(i, field) * F(j, field) * Kinv(i, field) - (one / qa) * F(j, field)))
            ef = E(i, field) * F(j, field) - F(j, field) * E(i, field)
            if i == j:
                c = one / (_q_i_pow(cd, i, 1, field) - _q_i_pow(cd, i, -1, field))
                ef = ef - c * (K(i, field) - Kinv(i, field))
            rels.append((f"E{i}F{j}", ef))
    for kind in ("E", "F"):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    rels.append((f"serre-{kind}{i}{j}", serre_relation(cd, i, j, kind, field)))
    return Presentation(cd, tuple(rels))


# ---------------------------------------------------------------------------
# Groebner completion of the pure Serre ideal
# ---------------------------------------------------------------------------

def _overlaps(a, b):
    """Proper overlaps: suffix of ``a`` equal to a prefix of ``b``."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield k


def _find_sub(w, s):
    L = len(s)
    for p in range(len(w) - L + 1):
        if w[p:p + L] == s:
            return p
    return -1


class _Completion:
    """Truncated noncommutative Buchberger for homogeneous relations."""

    def __init__(self, cap: int, field):
        self.cap = cap
        self.field = field
        self.rules: dict = {}  # lhs -> tuple((word, coeff), ...)
        self.log: list = []
        self._memo: dict = {}

    def reduce(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            for v, d in self._nf(w).items():
                t = c * d
                out[v] = out[v] + t if v in out else t
        return {w: c for w, c in out.items() if c}

    def _nf(self, w):
        r = self._memo.get(w)
        if r is not None:
            return r
        hit = None
        for p in range(len(w)):
            for L in self._lens:
                if p + L <= len(w) and w[p:p + L] in self.rules:
                    hit = (p, L)
                    break
            if hit:
                break
        if hit is None:
            r = {w: self.field.one}
        else:
            p, L = hit
            pre, suf = w[:p], w[p + L:]
            r = {}
            for u, c in self.rules[w[p:p + L]]:
                for v, d in self._nf(pre + u + suf).items():
                    t = c * d
                    r[v] = r[v] + t if v in r else t
            r = {v: c for v, c in r.items() if c}
        self._memo[w] = r
        return r

    def _changed(self):
        self._memo = {}
        self._lens = sorted({len(l) for l in self.rules})

    def run(self, relations: Iterable[dict]):
        self._changed()
        pending = [dict(r) for r in relations]
        heap: list = []
        counter = 0

        def add(terms, origin):
            nonlocal counter
            terms = self.reduce(terms)
            if not terms:
                return
            lead = max(terms, key=word_key)
            lc = terms[lead]
            rhs = tuple(sorted(((w, -c / lc) for w, c in terms.items() if w != lead),
                               key=lambda t: word_key(t[0]), reverse=True))
            self.rules[lead] = rhs
            self.log.append(f"rule {render_word(lead)} (degree {len(lead)}) from {origin}")
            # drop rules whose leading word now contains the new one
            for old in [l for l in self.rules if l != lead and _find_sub(l, lead) >= 0]:
                old_rhs = self.rules.pop(old)
                self.log.append(f"retire {render_word(old)} (reducible by {render_word(lead)})")
                pending.append(dict([(old, self.field.one)] + [(w, -c) for w, c in old_rhs]))
            self._changed()
            for other in list(self.rules):
                for a, b in ((lead, other), (other, lead)) if other != lead else ((lead, lead),):
                    for k in _overlaps(a, b):
                        deg = len(a) + len(b) - k
                        if deg <= self.cap:
                            counter += 1
                            heapq.heappush(heap, (deg, counter, a, b, k))

        while pending or heap:
            while pending:
                pending.sort(key=lambda t: min(len(w) for w in t) if t else 0)
                add(pending.pop(0), "relation")
            if not heap:
                break
            deg, _, a, b, k = heapq.heappop(heap)
            if a not in self.rules or b not in self.rules:
                continue
            u = a[:len(a) - k]
            wtail = b[k:]
            s: dict = {}
            for w, c in self.rules[a]:
                s[w + wtail] = s.get(w + wtail, 0) + c
            for w, c in self.rules[b]:
                key = u + w
                s[key] = s.get(key, 0) - c
            s = {w: c for w, c in s.items() if c}
            add(s, f"overlap {render_word(a)}/{render_word(b)}")
        # interreduce right-hand sides
        for lhs in sorted(self.rules, key=word_key):
            rhs = self.reduce(dict(self.rules[lhs]))
            self.rules[lhs] = tuple(sorted(rhs.items(), key=lambda t: word_key(t[0]), reverse=True))
        self._changed()
        return self.rules


# ---------------------------------------------------------------------------
# rewrite system
# ---------------------------------------------------------------------------

class RewriteSystem:
    """Oriented relations of U_q(g) with Serre parts completed up to ``cap``.

    Normal forms are memoised per reduction strategy; the cache is an
    implementation detail and results depend only on the rules.
    """

    STRATEGIES = ("leftmost", "rightmost")

    def __init__(self, cartan: CartanData, rules: dict, cap: int, field, log, e_rules):
        self.cartan = cartan
        self.rules = rules
        self.cap = cap
        self.field = field
        self.completion_log = tuple(log)
        self.e_rules = e_rules
        self._lens = sorted({len(l) for l in rules})
        self._caches = {s: {} for s in self.STRATEGIES}
        self._e_lens = sorted({len(l) for l in e_rules})

    @property
    def rank(self) -> int:
        return self.cartan.rank

    # -- generators ------------------------------------------------------
    def E(self, i: int) -> AlgElement:
        return E(i, self.field)

    def F(self, i: int) -> AlgElement:
        return F(i, self.field)

    def K(self, i: int) -> AlgElement:
        return K(i, self.field)

    def Kinv(self, i: int) -> AlgElement:
        return Kinv(i, self.field)

    def scalar(self, c) -> AlgElement:
        return AlgElement.scalar(self.field.coerce(c))

    def one(self) -> AlgElement:
        return AlgElement.scalar(self.field.one)

    # -- reduction -------------------------------------------------------
    def _redex(self, w, strategy):
        rules, lens = self.rules, self._lens
        n = len(w)
        if strategy == "leftmost":
            for p in range(n):
                for L in lens:
                    if p + L <= n and w[p:p + L] in rules:
                        return p, L
        else:
            for end in range(n, 0, -1):
                for L in reversed(lens):
                    p = end - L
                    if p >= 0 and w[p:end] in rules:
                        return p, L
        return None

    def nf_word(self, w, strategy: str = "leftmost") -> dict:
        cache = self._caches[strategy]
        r = cache.get(w)
        if r is not None:
            return r
        deg = word_degree(w)
        if deg > self.cap:
            raise CapExceeded(deg, self.cap)
        hit = self._redex(w, strategy)
        if hit is None:
            r = {w: self.field.one}
        else:
            p, L = hit
            pre, suf = w[:p], w[p + L:]
            r = {}
            for u, c in self.rules[w[p:p + L]]:
                for v, d in self.nf_word(pre + u + suf, strategy).items():
                    t = c * d
                    r[v] = r[v] + t if v in r else t
            r = {v: c for v, c in r.items() if c}
        cache[w] = r
        return r

    def is_normal_word(self, w) -> bool:
        return self._redex(tuple(w), "leftmost") is None

    def normal_form(self, x: AlgElement, strategy: str = "leftmost") -> AlgElement:
        out: dict = {}
        for w, c in x.terms.items():
            for v, d in self.nf_word(w, strategy).items():
                t = c * d
                out[v] = out[v] + t if v in out else t
        return AlgElement(out)

    def multiply(self, x: AlgElement, y: AlgElement) -> AlgElement:
        out: dict = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                c12 = c1 * c2
                for v, d in self.nf_word(w1 + w2).items():
                    t = c12 * d
                    out[v] = out[v] + t if v in out else t
        return AlgElement(out)

    def product(self, *xs: AlgElement) -> AlgElement:
        out = self.one()
        for x in xs:
            out = self.multiply(out, x)
        return out

    def power(self, x: AlgElement, k: int) -> AlgElement:
        if k < 0:
            raise ValueError("negative power")
        return self.product(*([x] * k))

    def commutator(self, x: AlgElement, y: AlgElement) -> AlgElement:
        return self.multiply(x, y) - self.multiply(y, x)

    def q_commutator(self, x: AlgElement, y: AlgElement, c) -> AlgElement:
        """``x y - c y x``."""
        return self.multiply(x, y) - self.field.coerce(c) * self.multiply(y, x)

    def e_normal_words(self, d: int) -> list:
        """All pure-E normal words of degree ``d`` in increasing term order."""
        if d > self.cap:
            raise CapExceeded(d, self.cap)
        letters = [Generator("E", i).code for i in range(1, self.rank + 1)]
        words = [()]
        for _ in range(d):
            nxt = []
            for w in words:
                for a in letters:
                    v = w + (a,)
                    if not any(len(v) >= L and v[-L:] in self.e_rules for L in self._e_lens):
                        nxt.append(v)
            words = nxt
        return sorted(words)

    def __repr__(self):
        return (f"RewriteSystem({self.cartan.name}, cap={self.cap}, "
                f"rules={len(self.rules)}, field={self.field.name})")


def build_rewrite_system(cd: CartanData, cap: int = 10, field=QQ_q) -> RewriteSystem:
    """Orient the U_q(g) relations and complete the Serre ideals up to ``cap``."""
    if cap < 2:
        raise ValueError("degree cap must be at least 2")
    n = cd.rank
    need = max((1 - cd.a(i, j) + 1 for i in range(1, n + 1) for j in range(1, n + 1) if i != j),
               default=0)
    if need > cap:
        raise ValueError(f"cap {cap} too small to orient the Serre relations (need {need})")
    one = field.one
    B = cd.B
    Ec = [Generator("E", i).code for i in range(1, n + 1)]
    Fc = [Generator("F", i).code for i in range(1, n + 1)]
    Kc = [Generator("K", i).code for i in range(1, n + 1)]
    Kic = [Generator("Kinv", i).code for i in range(1, n + 1)]
    rules: dict = {}
    for i in range(n):
        for j in range(n):
            rhs = [((Fc[j], Ec[i]), one)]
            if i == j:
                c = one / (field.q(cd.d[i]) - field.q(-cd.d[i]))
                rhs += [((Kc[i],), c), ((Kic[i],), -c)]
            rules[(Ec[i], Fc[j])] = tuple(rhs)
            # K_j E_i K_j^-1 = q^(a_j,a_i) E_i
            rules[(Ec[i], Kc[j])] = (((Kc[j], Ec[i]), field.q(-B[j][i])),)
            rules[(Ec[i], Kic[j])] = (((Kic[j], Ec[i]), field.q(B[j][i])),)
            rules[(Kc[j], Fc[i])] = (((Fc[i], Kc[j]), field.q(-B[j][i])),)
            rules[(Kic[j], Fc[i])] = (((Fc[i], Kic[j]), field.q(B[j][i])),)
    kletters = sorted(Kc + Kic)
    for a in kletters:
        for b in kletters:
            same = (a - _K0) // 2 == (b - _K0) // 2
            if same and a != b:
                rules[(a, b)] = (((), one),)
            elif a > b:
                rules[(a, b)] = (((b, a), one),)
    comp = _Completion(cap, field)
    serre = [serre_relation(cd, i, j, "E", field).terms
             for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    e_rules = comp.run(serre)
    to_f = {e: f for e, f in zip(Ec, Fc)}
    for lhs, rhs in e_rules.items():
        rules[lhs] = rhs
        rules[tuple(to_f[c] for c in lhs)] = tuple((tuple(to_f[c] for c in w), c) for w, c in rhs)
    return RewriteSystem(cd, rules, cap, field, comp.log, dict(e_rules))


def normal_form(rs: RewriteSystem, x: AlgElement, strategy: str = "leftmost") -> AlgElement:
    return rs.normal_form(x, strategy)


def multiply(rs: RewriteSystem, x: AlgElement, y: AlgElement) -> AlgElement:
    return rs.multiply(x, y)


def commutator(rs: RewriteSystem, x: AlgElement, y: AlgElement) -> AlgElement:
    return rs.commutator(x, y)


def q_commutator(rs: RewriteSystem, x: AlgElement, y: AlgElement, c) -> AlgElement:
    return rs.q_commutator(x, y, c)
