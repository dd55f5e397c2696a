"""Graded components, centres, normality certificates and the named elements.

Everything here works degree by degree inside the positive part.  Since
commuting with ``E_i`` preserves the root-lattice weight, centre
computations split into one small null-space problem per weight.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgElement,
    CapExceeded,
    RewriteSystem,
    is_positive_part,
    n_degree,
    q_degree,
    word_weight,
)
from .braid import RootVectorTable, pbw_expand, pbw_monomials, root_vectors
from .expr import evaluate
from .linalg import InconsistentSystem, nullspace, solve
from .rootdata import longest_words, preset

__all__ = [
    "GradedComponent",
    "NormalCertificate",
    "CertificateUnavailable",
    "NamedElement",
    "component_basis",
    "center_basis",
    "check_central",
    "check_normal",
    "predicted_scalars",
    "named",
    "named_elements",
    "verify_e3e3p_identity",
    "zprime_decomposition",
    "is_h_eigenvector",
    "scalar_ratio",
]


@dataclass(frozen=True)
class GradedComponent:
    degree: int
    basis: tuple  # normal words, increasing term order

    @property
    def dimension(self) -> int:
        return len(self.basis)


def component_basis(rs: RewriteSystem, d: int) -> GradedComponent:
    """Pure-E normal words of degree ``d``."""
    return GradedComponent(d, tuple(rs.e_normal_words(d)))


def _by_weight(rs: RewriteSystem, d: int) -> dict:
    groups: dict = {}
    for w in rs.e_normal_words(d):
        groups.setdefault(word_weight(w, rs.rank), []).append(w)
    return groups


def default_word(rs: RewriteSystem) -> tuple:
    return longest_words(rs.cartan)[0]


def _table(rs: RewriteSystem, table) -> RootVectorTable:
    if table is None:
        return root_vectors(rs, default_word(rs))
    if isinstance(table, RootVectorTable):
        return table
    return root_vectors(rs, table)


def _normalise(rs, table, x: AlgElement) -> AlgElement:
    """Scale so the first nonzero PBW coordinate (descending lex order) is 1."""
    coords = pbw_expand(rs, table, x)
    wt = q_degree(x, rs.rank)
    for e in pbw_monomials(table, sum(wt), wt):
        if e in coords:
            return x / coords[e]
    return x


def center_basis(rs: RewriteSystem, d: int, table=None) -> list:
    """Basis of the degree-``d`` part of the centre of the positive part.

    Solves ``x E_i - E_i x = 0`` for all ``i`` weight by weight.
    """
    if d + 1 > rs.cap:
        raise CapExceeded(d + 1, rs.cap)
    fld = rs.field
    out = []
    tbl = None
    for weight, words in sorted(_by_weight(rs, d).items()):
        images = []
        for w in words:
            x = AlgElement.word(w, fld.one)
            images.append([rs.commutator(x, rs.E(i)) for i in range(1, rs.rank + 1)])
        rows = []
        for i in range(rs.rank):
            targets = sorted(set().union(*(img[i].terms for img in images)))
            for t in targets:
                rows.append([img[i].terms.get(t, fld.zero) for img in images])
        for vec in nullspace(rows, len(words), fld.one):
            x = AlgElement({w: c for w, c in zip(words, vec)})
            if tbl is None:
                tbl = _table(rs, table)
            out.append(_normalise(rs, tbl, x))
    return out


@dataclass(frozen=True)
class NormalCertificate:
    """``x E_i = c_i E_i x`` for every generator, hence ``xU = Ux``."""

    element: AlgElement
    scalars: tuple

    def __bool__(self):
        return True

    @property
    def central(self) -> bool:
        return all(c == 1 for c in self.scalars)


@dataclass(frozen=True)
class CertificateUnavailable:
    """No scalar ``c`` with ``x E_i = c E_i x`` for this ``i``.

    This only says the generator-level certificate does not exist; it is
    not a proof that ``x`` fails to be normal.
    """

    element: AlgElement
    index: int
    lhs: AlgElement
    rhs: AlgElement

    def __bool__(self):
        return False

    def __str__(self):
        return f"q-commutation certificate unavailable for i={self.index}"


def scalar_ratio(x: AlgElement, y: AlgElement):
    """The scalar ``c`` with ``x = c y``, or None.  Both zero gives None."""
    if not y:
        return None
    if set(x.terms) != set(y.terms):
        return None
    w = next(iter(y.terms))
    c = x.terms[w] / y.terms[w]
    for v, b in y.terms.items():
        if x.terms[v] != c * b:
            return None
    return c


def check_normal(rs: RewriteSystem, x: AlgElement):
    if not x:
        raise ValueError("the zero element has no normality certificate")
    if not is_positive_part(x):
        raise ValueError("normality certificates are computed inside the positive part")
    x = rs.normal_form(x)
    scalars = []
    for i in range(1, rs.rank + 1):
        a = rs.multiply(x, rs.E(i))
        b = rs.multiply(rs.E(i), x)
        c = scalar_ratio(a, b)
        if c is None:
            return CertificateUnavailable(x, i, a, b)
        scalars.append(c)
    return NormalCertificate(x, tuple(scalars))


def check_central(rs: RewriteSystem, x: AlgElement) -> bool:
    if not x:
        return True
    return all(not rs.commutator(x, rs.E(i)) for i in range(1, rs.rank + 1))


def predicted_scalars(rs: RewriteSystem, table: RootVectorTable, k: int) -> tuple:
    """Certificate scalars forced by straightening for the ``k``-th root vector.

    For a simple root ``alpha_i`` placed before ``beta`` in the convex order
    the rule reads ``E_beta E_i = q^{-(alpha_i, beta)} E_i E_beta``; placed after
    it gives ``E_beta E_i = q^{(alpha_i, beta)} E_i E_beta``.
    """
    cd = rs.cartan
    beta = table.roots[k - 1]
    out = []
    for i in range(1, rs.rank + 1):
        alpha = cd.simple_root(i)
        pos = table.roots.index(alpha) + 1
        s = cd.inner(alpha, beta)
        out.append(rs.field.q(-s if pos < k else s))
    return tuple(out)


@dataclass(frozen=True)
class NamedElement:
    tag: str
    element: AlgElement
    degree: int
    weight: tuple


_DEFINITIONS = {
    "A2": (
        ("E3", "-E1*E2 + q^-1*E2*E1"),
        ("E3'", "-E2*E1 + q^-1*E1*E2"),
        ("Omega", "E3*E3'"),
    ),
    "B2": (
        ("E3", "E1*E2 - q^-2*E2*E1"),
        ("E4", "1/(q+q^-1)*(E1^2*E2 - q^-1*(q+q^-1)*E1*E2*E1 + q^-2*E2*E1^2)"),
        ("E3'", "E1*E2 - q^2*E2*E1"),
        ("z", "(1-q^2)*E1*E3 + q^2*(q+q^-1)*E4"),
        ("z'", "-(q^2-q^-2)*(q+q^-1)*E4*E2 + q^2*(q^2-1)*E3^2"),
    ),
}

_ALIASES = {"E3p": "E3'", "zp": "z'", "omega": "Omega", "Ω": "Omega"}


def _type_of(rs: RewriteSystem) -> str:
    A = rs.cartan.A
    for tag in _DEFINITIONS:
        if preset(tag).A == A:
            return tag
    return ""


def named_elements(rs: RewriteSystem) -> dict:
    """All named elements of the preset type, keyed by tag (empty for other types)."""
    tag = _type_of(rs)
    names: dict = {}
    for key, text in _DEFINITIONS.get(tag, ()):
        names[key] = evaluate(rs, text, names)
    return names


def named(rs: RewriteSystem, tag: str) -> NamedElement:
    tag = _ALIASES.get(tag, tag)
    names = named_elements(rs)
    if tag not in names:
        kind = _type_of(rs) or rs.cartan.name
        raise KeyError(f"no named element {tag!r} for type {kind}; known: {sorted(names)}")
    x = names[tag]
    return NamedElement(tag, x, n_degree(x), q_degree(x, rs.rank))


def verify_e3e3p_identity(rs: RewriteSystem, z_factor=1) -> bool:
    """``(q^2-1) E3 E3' = (q^4-1) z E2 + q^2 z'`` in type B2."""
    if _type_of(rs) != "B2":
        raise ValueError("the E3 E3' identity is specific to type B2")
    fld = rs.field
    names = named_elements(rs)
    z = names["z"] * fld.coerce(z_factor)
    lhs = (fld.q(2) - fld.one) * rs.multiply(names["E3"], names["E3'"])
    rhs = (fld.q(4) - fld.one) * rs.multiply(z, rs.E(2)) + fld.q(2) * names["z'"]
    return lhs == rhs


def zprime_decomposition(rs: RewriteSystem) -> AlgElement:
    """The ``u`` with ``z' = q^-2 (q^2-1) E3'^2 + E2 u`` (type B2)."""
    if _type_of(rs) != "B2":
        raise ValueError("the z' decomposition is specific to type B2")
    fld = rs.field
    names = named_elements(rs)
    e3p = names["E3'"]
    target = names["z'"] - fld.q(-2) * (fld.q(2) - fld.one) * rs.multiply(e3p, e3p)
    if not target:
        return AlgElement()
    weight = q_degree(target, rs.rank)
    sub = tuple(w - (1 if k == 1 else 0) for k, w in enumerate(weight))
    words = _by_weight(rs, sum(sub)).get(sub, [])
    images = [rs.multiply(rs.E(2), AlgElement.word(w, fld.one)) for w in words]
    rows_idx = sorted(set(target.terms).union(*(m.terms for m in images)))
    rows = [[m.terms.get(t, fld.zero) for m in images] for t in rows_idx]
    rhs = [target.terms.get(t, fld.zero) for t in rows_idx]
    try:
        coords = solve(rows, rhs, fld.one)
    except InconsistentSystem:
        raise ArithmeticError("z' - q^-2(q^2-1)E3'^2 is not a left multiple of E2") from None
    return AlgElement({w: c for w, c in zip(words, coords)})


def is_h_eigenvector(rs: RewriteSystem, x: AlgElement) -> bool:
    """Torus eigenvectors are exactly the weight-homogeneous elements."""
    if not x:
        raise ValueError("the zero element is excluded")
    return q_degree(x, rs.rank) is not None
