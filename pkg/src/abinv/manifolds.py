"""Manifold presentations, standard builders, and the JSON document format.

A presentation is one of :class:`HomologyData`, :class:`Surgery`,
:class:`Cells`, :class:`ConnectedSum` or :class:`Named`.  The lowering
functions :func:`homology_data`, :func:`surgery_link` and
:func:`cell_complex` extract what a given invariant needs, or raise
:class:`UnsupportedPresentation`.

>>> homology_data(lens_space(5, 2)).linking.q.tolist()
[[3]]
>>> lens_chain(5, 2).matrix.tolist()
[[3, -1], [-1, 2]]
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Optional, Union

from .cells import CellComplex, lens_complex, rp3_heegaard_complex, s1xs2_complex, sphere3_complex
from .errors import BadRange, InvariantViolation, NonSymmetric, NotCoprime, SchemaError, \
    UnsupportedPresentation, require_int
from .exact_linalg import IntegerMatrix, integer_inverse, smith_normal_form
from .topology import HomologyProfile, LinkingForm, homology_from_complex

BASIS_SEARCH_LIMIT = 10**5


@dataclass(frozen=True)
class SurgeryLink:
    """Framed link given by its symmetric linking matrix (framings on the diagonal)."""

    matrix: IntegerMatrix

    def __post_init__(self):
        m = self.matrix
        if not isinstance(m, IntegerMatrix):
            m = IntegerMatrix.from_rows(m) if len(m) else IntegerMatrix.zeros(0, 0)
        if not m.is_symmetric():
            raise NonSymmetric("linking matrix must be square and symmetric")
        object.__setattr__(self, "matrix", m)

    @property
    def m(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class HomologyData:
    profile: HomologyProfile
    linking: Optional[LinkingForm] = None

    def __post_init__(self):
        if self.linking is not None and self.linking.torsion != self.profile.torsion:
            raise InvariantViolation("linking form torsion does not match the profile",
                                     rule="torsion-match")


@dataclass(frozen=True)
class Surgery:
    link: SurgeryLink


@dataclass(frozen=True)
class Cells:
    complex: CellComplex


@dataclass(frozen=True)
class ConnectedSum:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class Named:
    """A standard manifold: ``s3``, ``s1xs2``, ``lens`` (params ``p, q``) or ``rp3-heegaard``."""

    builder: str
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if self.builder not in _NAMED:
            raise SchemaError(f"unknown builder {self.builder!r}", "/type")
        if self.builder == "lens":
            _check_lens(*self.params)
        elif self.params:
            raise BadRange(f"{self.builder} takes no parameters")


ManifoldPresentation = Union[HomologyData, Surgery, Cells, ConnectedSum, Named]


# builders

def sphere3() -> Named:
    return Named("s3")


def s1_x_s2() -> Named:
    return Named("s1xs2")


def rp3_heegaard() -> Named:
    """RP^3 carrying the two-vertex Heegaard-type cell decomposition."""
    return Named("rp3-heegaard")


def _check_lens(p, q):
    require_int(p, "p", 2, BadRange)
    require_int(q, "q", -10**100, BadRange)
    if not 1 <= q < p:
        raise BadRange(f"lens space needs 1 <= q < p, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")


def lens_space(p: int, q: int) -> Named:
    _check_lens(p, q)
    return Named("lens", (p, q))


def lens_chain(p: int, q: int) -> SurgeryLink:
    """Surgery chain of unknots from the negative continued fraction of ``p/q``."""
    require_int(p, "p", 2, BadRange)
    require_int(q, "q", -10**100, BadRange)
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    a, b = p, q % p
    diag = []
    while b:
        c = -(-a // b)
        diag.append(c)
        a, b = b, c * b - a
    n = len(diag)
    return SurgeryLink(IntegerMatrix.from_rows(
        [[diag[i] if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]))


def blow_up(link: SurgeryLink, sign: int) -> SurgeryLink:
    """Append an unlinked unknot with framing ``sign`` (+1 or -1)."""
    if sign not in (1, -1):
        raise BadRange("blow-up framing must be +1 or -1")
    return SurgeryLink(IntegerMatrix.block_diagonal([link.matrix, IntegerMatrix.from_rows([[sign]])]))


# homology of surgery data and sums

def _reduce(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _normalized_form(torsion: tuple, gram: list) -> LinkingForm:
    """Turn a Gram matrix of fractions mod 1 on chain generators into a LinkingForm.

    Generators are replaced, one at a time, by ``y_i = x_i + sum c_j x_j`` (with
    ``c_j`` a multiple of ``p_j/p_i`` when ``j > i`` so the order stays ``p_i``)
    until every diagonal numerator is a unit mod ``p_i``.
    """
    d = len(torsion)
    g = [[_reduce(x) for x in row] for row in gram]
    for i in range(d):
        p = torsion[i]
        if gcd((g[i][i] * p).numerator, p) == 1:
            continue
        ranges = []
        for j in range(d):
            if j == i:
                ranges.append((1,))
            elif j < i:
                ranges.append(range(torsion[j]))
            else:
                step = torsion[j] // p
                ranges.append(range(0, torsion[j], step))
        if prod(len(r) for r in ranges) > BASIS_SEARCH_LIMIT:
            raise InvariantViolation("no diagonal-unit basis found within the search limit",
                                     rule="diagonal-unit")
        for c in product(*ranges):
            val = _reduce(sum((c[a] * c[b] * g[a][b] for a in range(d) for b in range(d)
                               if c[a] and c[b]), Fraction(0)))
            if gcd((val * p).numerator, p) == 1:
                break
        else:
            raise InvariantViolation(
                "linking form admits no basis with unit diagonal numerators "
                "(e.g. a hyperbolic 2-primary summand)", rule="diagonal-unit")
        row = [_reduce(sum((c[a] * g[a][j] for a in range(d) if c[a]), Fraction(0)))
               for j in range(d)]
        row[i] = val
        for j in range(d):
            g[i][j] = row[j]
            g[j][i] = row[j]
    q = [[int(g[i][j] * torsion[i]) for j in range(d)] for i in range(d)]
    return LinkingForm(torsion, IntegerMatrix(d, d, tuple(x for r in q for x in r)))


def surgery_homology(link: SurgeryLink) -> HomologyProfile:
    """``H_1`` of the surgered manifold, the cokernel of the linking matrix."""
    snf = smith_normal_form(link.matrix)
    return HomologyProfile(link.m - snf.rank, snf.nontrivial)


def from_surgery(link: SurgeryLink) -> tuple:
    """Homology profile and linking form ``-L^{-1} mod 1`` of a surgery presentation.

    The torsion generators are the columns of ``U^{-1}`` from the Smith form
    ``U L V = D``; for generator ``x_i`` of order ``d_i`` one has
    ``d_i x_i = L v_i`` and ``Q(x_i, x_j) = -(x_j . v_i) / d_i``.  This also
    works when ``L`` is degenerate.
    """
    L = link.matrix
    profile = surgery_homology(link)
    if not profile.torsion:
        return profile, LinkingForm((), IntegerMatrix.zeros(0, 0))
    snf = smith_normal_form(L)
    uinv = integer_inverse(snf.u)
    idx = [i for i in range(snf.rank) if snf.d[i] > 1]
    xs = [uinv.col(i) for i in idx]
    vs = [snf.v.col(i) for i in idx]
    gram = [[Fraction(-sum(a * b for a, b in zip(xs[j], vs[i])), snf.d[idx[i]])
             for j in range(len(idx))] for i in range(len(idx))]
    return profile, _normalized_form(profile.torsion, gram)


def _sum_homology(parts: list) -> HomologyData:
    b1 = sum(h.profile.b1 for h in parts)
    orders = [p for h in parts for p in h.profile.torsion]
    if not orders:
        empty = LinkingForm((), IntegerMatrix.zeros(0, 0))
        return HomologyData(HomologyProfile(b1, ()), empty)
    snf = smith_normal_form(IntegerMatrix.diagonal(orders))
    torsion = snf.nontrivial
    profile = HomologyProfile(b1, torsion)
    if any(h.linking is None for h in parts):
        return HomologyData(profile, None)
    block = []
    for h in parts:
        block.append(h.linking.matrix())
    n = len(orders)
    big = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for m in block:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                big[off + i][off + j] = x
        off += len(m)
    uinv = integer_inverse(snf.u)
    xs = [uinv.col(i) for i in range(n) if snf.d[i] > 1]
    gram = [[sum((a * big[s][t] * b for s, a in enumerate(x) for t, b in enumerate(y) if a and b),
                 Fraction(0)) for y in xs] for x in xs]
    return HomologyData(profile, _normalized_form(torsion, gram))


def connected_sum(parts) -> ConnectedSum:
    parts = tuple(parts)
    for part in parts:
        homology_data(part)
    return ConnectedSum(parts)


# lowering

_SUPPORT = {
    "homology": ("homology", "surgery", "cells", "connected_sum", "named"),
    "surgery": ("surgery", "connected_sum of surgery-capable parts", "named"),
    "cells": ("cells", "named"),
}


def _named_homology(n: Named) -> HomologyData:
    if n.builder == "s3":
        return HomologyData(HomologyProfile(0, ()), LinkingForm((), IntegerMatrix.zeros(0, 0)))
    if n.builder == "s1xs2":
        return HomologyData(HomologyProfile(1, ()), LinkingForm((), IntegerMatrix.zeros(0, 0)))
    if n.builder == "rp3-heegaard":
        return HomologyData(HomologyProfile(0, (2,)), LinkingForm((2,), IntegerMatrix.from_rows([[1]])))
    p, q = n.params
    return HomologyData(HomologyProfile(0, (p,)), LinkingForm((p,), IntegerMatrix.from_rows([[pow(q, -1, p)]])))


def _named_surgery(n: Named) -> SurgeryLink:
    if n.builder == "s3":
        return SurgeryLink(IntegerMatrix.zeros(0, 0))
    if n.builder == "s1xs2":
        return SurgeryLink(IntegerMatrix.from_rows([[0]]))
    if n.builder == "rp3-heegaard":
        return SurgeryLink(IntegerMatrix.from_rows([[2]]))
    return lens_chain(*n.params)


def _named_cells(n: Named) -> CellComplex:
    if n.builder == "s3":
        return sphere3_complex()
    if n.builder == "s1xs2":
        return s1xs2_complex()
    if n.builder == "rp3-heegaard":
        return rp3_heegaard_complex()
    return lens_complex(n.params[0])


_NAMED = {"s3", "s1xs2", "lens", "rp3-heegaard"}


def homology_data(m: ManifoldPresentation) -> HomologyData:
    if isinstance(m, HomologyData):
        return m
    if isinstance(m, Named):
        return _named_homology(m)
    if isinstance(m, Surgery):
        return HomologyData(*from_surgery(m.link))
    if isinstance(m, Cells):
        return HomologyData(homology_from_complex(m.complex, 1), None)
    if isinstance(m, ConnectedSum):
        return _sum_homology([homology_data(p) for p in m.parts])
    raise UnsupportedPresentation(f"cannot lower {type(m).__name__} to homology data",
                                  _SUPPORT["homology"])


def surgery_link(m: ManifoldPresentation) -> SurgeryLink:
    if isinstance(m, Surgery):
        return m.link
    if isinstance(m, Named):
        return _named_surgery(m)
    if isinstance(m, ConnectedSum):
        return SurgeryLink(IntegerMatrix.block_diagonal(
            [surgery_link(p).matrix for p in m.parts]) if m.parts else IntegerMatrix.zeros(0, 0))
    raise UnsupportedPresentation(f"{type(m).__name__} carries no surgery data", _SUPPORT["surgery"])


def cell_complex(m: ManifoldPresentation) -> CellComplex:
    if isinstance(m, Cells):
        return m.complex
    if isinstance(m, Named):
        return _named_cells(m)
    raise UnsupportedPresentation(f"{type(m).__name__} carries no cell decomposition",
                                  _SUPPORT["cells"])


# JSON

def _int(v, ptr):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"expected an integer, got {json.dumps(v)}", ptr)
    return v


def _int_list(v, ptr):
    if not isinstance(v, list):
        raise SchemaError("expected an array of integers", ptr)
    return [_int(x, f"{ptr}/{i}") for i, x in enumerate(v)]


def _matrix(v, ptr):
    if not isinstance(v, list):
        raise SchemaError("expected an array of integer arrays", ptr)
    rows = [_int_list(r, f"{ptr}/{i}") for i, r in enumerate(v)]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise SchemaError("rows have different lengths", ptr)
    return rows


def _keys(doc, ptr, required, optional=()):
    for key in required:
        if key not in doc:
            raise SchemaError(f"missing key {key!r}", ptr)
    extra = set(doc) - set(required) - set(optional) - {"type"}
    if extra:
        raise SchemaError(f"unexpected keys {sorted(extra)}", ptr)


def _from_obj(doc, ptr="") -> ManifoldPresentation:
    if not isinstance(doc, dict):
        raise SchemaError("expected an object", ptr or "/")
    kind = doc.get("type")
    if not isinstance(kind, str):
        raise SchemaError("missing or non-string 'type'", f"{ptr}/type")
    if kind in ("s3", "s1xs2", "rp3_heegaard"):
        _keys(doc, ptr, ())
        return {"s3": sphere3, "s1xs2": s1_x_s2, "rp3_heegaard": rp3_heegaard}[kind]()
    if kind == "lens":
        _keys(doc, ptr, ("p", "q"))
        return lens_space(_int(doc["p"], f"{ptr}/p"), _int(doc["q"], f"{ptr}/q"))
    if kind == "surgery":
        _keys(doc, ptr, ("matrix",))
        rows = _matrix(doc["matrix"], f"{ptr}/matrix")
        return Surgery(SurgeryLink(IntegerMatrix.from_rows(rows) if rows else IntegerMatrix.zeros(0, 0)))
    if kind == "homology":
        _keys(doc, ptr, ("b1", "torsion"), ("q_matrix",))
        profile = HomologyProfile(_int(doc["b1"], f"{ptr}/b1"), tuple(_int_list(doc["torsion"], f"{ptr}/torsion")))
        linking = None
        if "q_matrix" in doc:
            rows = _matrix(doc["q_matrix"], f"{ptr}/q_matrix")
            d = profile.d
            if len(rows) != d or any(len(r) != d for r in rows):
                raise SchemaError(f"q_matrix must be {d}x{d}", f"{ptr}/q_matrix")
            linking = LinkingForm(profile.torsion, IntegerMatrix.from_rows(rows, d) if d else IntegerMatrix.zeros(0, 0))
        return HomologyData(profile, linking)
    if kind == "cells":
        _keys(doc, ptr, ("boundary1", "boundary2", "boundary3"))
        mats = [_matrix(doc[f"boundary{i}"], f"{ptr}/boundary{i}") for i in (1, 2, 3)]
        return Cells(CellComplex.from_rows(*mats))
    if kind == "connected_sum":
        _keys(doc, ptr, ("parts",))
        parts = doc["parts"]
        if not isinstance(parts, list):
            raise SchemaError("expected an array", f"{ptr}/parts")
        return connected_sum(_from_obj(p, f"{ptr}/parts/{i}") for i, p in enumerate(parts))
    raise SchemaError(f"unknown manifold type {kind!r}", f"{ptr}/type")


def parse_manifold(text: str) -> ManifoldPresentation:
    """Parse a JSON manifold document."""
    try:
        doc = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    return _from_obj(doc)


def _reject_float(s):
    raise SchemaError(f"non-integer number {s} (couplings and entries must be integers)")


def _to_obj(m: ManifoldPresentation) -> dict:
    if isinstance(m, Named):
        if m.builder == "lens":
            return {"type": "lens", "p": m.params[0], "q": m.params[1]}
        return {"type": m.builder.replace("-", "_")}
    if isinstance(m, Surgery):
        return {"type": "surgery", "matrix": m.link.matrix.tolist()}
    if isinstance(m, HomologyData):
        out = {"type": "homology", "b1": m.profile.b1, "torsion": list(m.profile.torsion)}
        if m.linking is not None:
            out["q_matrix"] = m.linking.q.tolist()
        return out
    if isinstance(m, Cells):
        c = m.complex
        return {"type": "cells", "boundary1": c.d1.tolist(), "boundary2": c.d2.tolist(),
                "boundary3": c.d3.tolist()}
    if isinstance(m, ConnectedSum):
        return {"type": "connected_sum", "parts": [_to_obj(p) for p in m.parts]}
    raise UnsupportedPresentation(f"cannot serialize {type(m).__name__}")


def serialize_manifold(m: ManifoldPresentation) -> str:
    return json.dumps(_to_obj(m), sort_keys=True)
