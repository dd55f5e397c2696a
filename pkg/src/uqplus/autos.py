"""Endomorphisms of the positive part given by images of the generators.

An endomorphism is determined by where it sends ``E_1, ..., E_n``; it is
well defined exactly when the images satisfy the quantum Serre relations,
which is what :func:`verify_endo` checks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .algebra import AlgElement, Generator, RewriteSystem, is_positive_part, n_degree, q_degree, serre_relation
from .expr import ExprError, evaluate
from .linalg import determinant
from .rootdata import diagram_symmetries
from .structure import scalar_ratio

__all__ = [
    "EndoSpec",
    "TorusAut",
    "DiagramAut",
    "EndoReport",
    "LowestDegreeReport",
    "LinearPartReport",
    "as_endo",
    "identity",
    "compose",
    "apply_endo",
    "verify_endo",
    "lowest_degree_check",
    "central_action",
    "degree_profile",
    "linear_part_report",
    "read_endo_file",
    "parse_endo_text",
    "torus_weight_scalar",
]


@dataclass(frozen=True)
class EndoSpec:
    """Images ``(s(E_1), ..., s(E_n))`` as normal forms."""

    images: tuple

    def __post_init__(self):
        for i, x in enumerate(self.images, start=1):
            if not x:
                raise ValueError(f"image of E{i} is zero")
            if not is_positive_part(x):
                raise ValueError(f"image of E{i} leaves the positive part: {x}")

    def __str__(self):
        return "; ".join(f"E{i} -> {x}" for i, x in enumerate(self.images, start=1))


@dataclass(frozen=True)
class TorusAut:
    scalars: tuple

    def __post_init__(self):
        if any(not c for c in self.scalars):
            raise ValueError("torus scalars must be nonzero")


@dataclass(frozen=True)
class DiagramAut:
    """``w(E_i) = E_{w(i)}`` for a 1-based permutation ``w``."""

    perm: tuple


def identity(rs: RewriteSystem) -> EndoSpec:
    return EndoSpec(tuple(rs.E(i) for i in range(1, rs.rank + 1)))


def as_endo(rs: RewriteSystem, aut) -> EndoSpec:
    if isinstance(aut, EndoSpec):
        return aut
    n = rs.rank
    if isinstance(aut, TorusAut):
        if len(aut.scalars) != n:
            raise ValueError(f"need {n} torus scalars, got {len(aut.scalars)}")
        return EndoSpec(tuple(rs.field.coerce(c) * rs.E(i)
                              for i, c in enumerate(aut.scalars, start=1)))
    if isinstance(aut, DiagramAut):
        perm = tuple(aut.perm)
        if perm not in diagram_symmetries(rs.cartan):
            raise ValueError(f"{perm} is not a symmetry of the Dynkin diagram")
        return EndoSpec(tuple(rs.E(perm[i - 1]) for i in range(1, n + 1)))
    raise TypeError(f"cannot turn {type(aut).__name__} into an endomorphism")


def apply_endo(rs: RewriteSystem, s, x: AlgElement) -> AlgElement:
    """Substitute ``E_i -> s(E_i)`` in every word of ``x`` and normalise."""
    s = as_endo(rs, s)
    if len(s.images) != rs.rank:
        raise ValueError("endomorphism rank does not match the algebra")
    if not is_positive_part(x):
        raise ValueError("endomorphisms act on the positive part only")
    cache: dict = {(): rs.one()}

    def image(w):
        r = cache.get(w)
        if r is None:
            g = Generator.from_code(w[-1])
            r = rs.multiply(image(w[:-1]), s.images[g.index - 1])
            cache[w] = r
        return r

    out = AlgElement()
    for w, c in x.terms.items():
        out = out + c * image(w)
    return out


def compose(rs: RewriteSystem, a, b) -> EndoSpec:
    """``a o b``: first ``b``, then ``a``."""
    a, b = as_endo(rs, a), as_endo(rs, b)
    return EndoSpec(tuple(apply_endo(rs, a, y) for y in b.images))


@dataclass(frozen=True)
class EndoReport:
    rows: tuple  # (label, image of the relation, passed)

    @property
    def passed(self) -> bool:
        return all(r[2] for r in self.rows)

    def lines(self):
        for label, img, ok in self.rows:
            yield f"{'PASS' if ok else 'FAIL'} {label} -> {img}"


def verify_endo(rs: RewriteSystem, s) -> EndoReport:
    s = as_endo(rs, s)
    rows = []
    for i in range(1, rs.rank + 1):
        for j in range(1, rs.rank + 1):
            if i == j:
                continue
            rel = serre_relation(rs.cartan, i, j, "E", rs.field)
            img = apply_endo(rs, s, rel)
            rows.append((f"serre({i},{j})", img, not img))
    return EndoReport(tuple(rows))


@dataclass(frozen=True)
class LowestDegreeReport:
    degree: int
    components: dict  # degree -> AlgElement
    passed: bool


def lowest_degree_check(rs: RewriteSystem, s, x: AlgElement) -> LowestDegreeReport:
    """Homogeneous ``x`` of degree ``d`` must go to ``y_d + y_{>d}`` with ``y_d != 0``."""
    s = as_endo(rs, s)
    if not x:
        raise ValueError("the zero element is excluded")
    comps = x.homogeneous_components()
    if len(comps) != 1:
        raise ValueError("lowest-degree check needs an N-homogeneous element")
    d = next(iter(comps))
    img = apply_endo(rs, s, x).homogeneous_components()
    ok = bool(img) and min(img) == d
    return LowestDegreeReport(d, img, ok)


def central_action(rs: RewriteSystem, s, x: AlgElement):
    """The scalar ``c`` with ``s(x) = c x``, or None when the image is not proportional."""
    s = as_endo(rs, s)
    if not x:
        raise ValueError("the zero element is excluded")
    return scalar_ratio(apply_endo(rs, s, x), rs.normal_form(x))


def degree_profile(rs: RewriteSystem, s) -> tuple:
    s = as_endo(rs, s)
    return tuple(n_degree(y) for y in s.images)


@dataclass(frozen=True)
class LinearPartReport:
    """Determinant of the degree-one part of ``s``.

    Nonzero is necessary for ``s`` to be an automorphism; it is not
    sufficient, so a nonzero value proves nothing about bijectivity.
    """

    matrix: tuple
    determinant: object

    @property
    def invertible(self) -> bool:
        return bool(self.determinant)


def linear_part_report(rs: RewriteSystem, s) -> LinearPartReport:
    s = as_endo(rs, s)
    fld = rs.field
    n = rs.rank
    codes = [Generator("E", j).code for j in range(1, n + 1)]
    M = tuple(tuple(y.terms.get((c,), fld.zero) for c in codes) for y in s.images)
    return LinearPartReport(M, determinant([list(r) for r in M], fld.one))


_LINE_RE = re.compile(r"\s*E([1-9][0-9]*)\s*->\s*(.*)$")


def parse_endo_text(rs: RewriteSystem, text: str, names=None, source: str = "<text>") -> EndoSpec:
    """Lines ``E<i> -> <expression>``; blank lines and ``#`` comments are skipped."""
    images: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise ValueError(f"{source}:{lineno}: expected 'E<i> -> <expression>'")
        i = int(m.group(1))
        if not 1 <= i <= rs.rank:
            raise ValueError(f"{source}:{lineno}: generator E{i} outside 1..{rs.rank}")
        if i in images:
            raise ValueError(f"{source}:{lineno}: E{i} defined twice")
        try:
            images[i] = evaluate(rs, m.group(2), names)
        except ExprError as exc:
            raise ValueError(f"{source}:{lineno}: {exc}") from None
    missing = [i for i in range(1, rs.rank + 1) if i not in images]
    if missing:
        raise ValueError(f"{source}: no image given for " + ", ".join(f"E{i}" for i in missing))
    return EndoSpec(tuple(images[i] for i in range(1, rs.rank + 1)))


def read_endo_file(rs: RewriteSystem, path, names=None) -> EndoSpec:
    return parse_endo_text(rs, Path(path).read_text(), names, source=str(path))


def torus_weight_scalar(rs: RewriteSystem, t: TorusAut, x: AlgElement):
    """``prod lambda_i^{m_i}`` for the weight ``(m_i)`` of ``x``."""
    wt = q_degree(x, rs.rank)
    if wt is None:
        raise ValueError("element is not weight-homogeneous")
    out = rs.field.one
    for c, m in zip(t.scalars, wt):
        out = out * rs.field.coerce(c) ** m
    return out
