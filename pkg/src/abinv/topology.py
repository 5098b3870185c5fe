"""Homology profiles, torsion linking forms and the parity classification.

>>> h = HomologyProfile(0, (2,))
>>> classify_parity(h, 1).beta
1
>>> h1_order_mod_n(HomologyProfile(1, ()), 5)
5
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Sequence

from .cells import CellComplex
from .errors import BadRange, DimensionMismatch, InvalidModulus, InvariantViolation, require_int
from .exact_linalg import IntegerMatrix, as_integer_matrix, smith_normal_form

BRUTE_FORCE_NONDEGENERACY = 10**4


@dataclass(frozen=True)
class HomologyProfile:
    """``H_1 = Z^b1 + Z_p1 + ... + Z_pd`` with ``p1 | p2 | ... | pd``."""

    b1: int
    torsion: tuple = ()

    def __post_init__(self):
        require_int(self.b1, "b1", 0)
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        for p in t:
            require_int(p, "torsion coefficient", 2, BadRange)
        for a, b in zip(t, t[1:]):
            if b % a:
                raise InvariantViolation(f"torsion {list(t)} is not a divisor chain", rule="divisor-chain")

    @property
    def d(self) -> int:
        return len(self.torsion)

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    def to_dict(self) -> dict:
        return {"b1": self.b1, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class LinkingForm:
    """Symmetric form on the torsion group with ``Q_ij = q_ij / p_i`` (mod 1).

    Entries of ``q`` are stored reduced into ``[0, p_i)``.
    """

    torsion: tuple
    q: IntegerMatrix

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        HomologyProfile(0, t)
        q = as_integer_matrix(self.q, len(t))
        if q.shape != (len(t), len(t)):
            raise DimensionMismatch(f"q matrix of shape {q.shape} for {len(t)} torsion factors")
        q = IntegerMatrix(q.rows, q.cols, tuple(
            q[i, j] % t[i] for i in range(len(t)) for j in range(len(t))))
        object.__setattr__(self, "q", q)
        for i in range(len(t)):
            for j in range(i + 1, len(t)):
                if Fraction(q[i, j], t[i]) != Fraction(q[j, i], t[j]):
                    raise InvariantViolation(
                        f"Q[{i}][{j}] = {q[i, j]}/{t[i]} differs from Q[{j}][{i}] = {q[j, i]}/{t[j]}",
                        rule="symmetric")
            if gcd(q[i, i], t[i]) != 1:
                raise InvariantViolation(
                    f"gcd(q[{i}][{i}], p_{i}) = gcd({q[i, i]}, {t[i]}) != 1", rule="diagonal-unit")
        if not self._nondegenerate():
            raise InvariantViolation("form is degenerate", rule="nondegenerate")

    @property
    def profile(self) -> HomologyProfile:
        return HomologyProfile(0, self.torsion)

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.q[i, j], self.torsion[i])

    def matrix(self) -> list:
        """``Q`` as nested lists of fractions."""
        d = len(self.torsion)
        return [[self.entry(i, j) for j in range(d)] for i in range(d)]

    def _nondegenerate(self) -> bool:
        t = self.torsion
        if prod(t) <= BRUTE_FORCE_NONDEGENERACY:
            return all(any(linking_eval(self, kappa, tuple(int(i == j) for i in range(len(t))))
                           for j in range(len(t)))
                       for kappa in product(*(range(p) for p in t)) if any(kappa))
        # kappa -> (sum_i q_ji kappa_i mod p_j)_j must be onto, i.e. the relation
        # matrix [q | diag(p)] has only unit divisors.
        d = len(t)
        rows = [list(self.q.row(j)) + [t[j] * (i == j) for i in range(d)] for j in range(d)]
        return all(x == 1 for x in smith_normal_form(rows).d)


@dataclass(frozen=True)
class ParityClassification:
    """``p' = p / gcd(k, p)``; ``beta`` counts ``p' = 2 mod 4``, ``gamma`` counts ``p' = 0 mod 4``."""

    k: int
    beta: int
    gamma: int
    p_prime: tuple
    k_prime: tuple

    @property
    def alpha(self) -> int:
        return len(self.p_prime) - self.beta - self.gamma


def homology_from_complex(c: CellComplex, degree: int) -> HomologyProfile:
    """Homology of the cellular chain complex in the given degree."""
    if degree not in (0, 1, 2, 3):
        raise BadRange(f"degree must be 0..3, got {degree!r}")
    dims = (c.v, c.e, c.f, c.p)
    boundaries = {1: c.d1, 2: c.d2, 3: c.d3}
    rank_in = smith_normal_form(boundaries[degree]).rank if degree in boundaries else 0
    out = boundaries.get(degree + 1)
    snf = smith_normal_form(out) if out is not None else None
    rank_out = snf.rank if snf else 0
    torsion = tuple(x for x in snf.d[:snf.rank] if x > 1) if snf else ()
    return HomologyProfile(dims[degree] - rank_in - rank_out, torsion)


def h1_order_mod_n(h: HomologyProfile, n: int) -> int:
    """``|H^1(M; Z_n)| = n^b1 * prod gcd(n, p_i)``."""
    require_int(n, "n", 1, InvalidModulus)
    return n ** h.b1 * prod(gcd(n, p) for p in h.torsion)


def classify_parity(h: HomologyProfile, k: int) -> ParityClassification:
    require_int(k, "k", 1, BadRange)
    gs = [gcd(k, p) for p in h.torsion]
    pp = tuple(p // g for p, g in zip(h.torsion, gs))
    kp = tuple(k // g for g in gs)
    return ParityClassification(k, sum(1 for x in pp if x % 4 == 2), sum(1 for x in pp if x % 4 == 0),
                                pp, kp)


def cup_obstruction_vanishes(h: HomologyProfile, k: int) -> bool:
    """True when ``beta == 0``.

    This is the criterion used for the vanishing of ``|tau_4k|^2`` and
    ``|Z_CS|^2``; it is claimed (not checked here) to coincide with the
    vanishing of all cubes ``a u a u a`` in ``H^1(M; Z_2k)``.
    """
    return classify_parity(h, k).beta == 0


def linking_eval(q: LinkingForm, kappa: Sequence[int], tau: Sequence[int]) -> Fraction:
    """``Q(kappa, tau)`` reduced into ``[0, 1)``."""
    d = len(q.torsion)
    if len(kappa) != d or len(tau) != d:
        raise DimensionMismatch(f"torsion vectors must have length {d}")
    s = sum((Fraction(kappa[i] * tau[j] * q.q[i, j], q.torsion[i])
             for i in range(d) for j in range(d) if kappa[i] and tau[j]), Fraction(0))
    return s - (s.numerator // s.denominator)


def torsion_elements(torsion: Sequence[int]):
    """All vectors of ``Z_p1 x ... x Z_pd`` in lexicographic order."""
    return product(*(range(p) for p in torsion))


def forms_isometric(a: LinkingForm, b: LinkingForm, up_to_sign: bool = True,
                    limit: int = 10**6) -> bool:
    """Brute-force search for a group automorphism carrying ``a`` to ``b`` (or ``-b``).

    Only meant for small torsion groups (tests and diagnostics).
    """
    if a.torsion != b.torsion:
        return False
    t = a.torsion
    d = len(t)
    if d == 0:
        return True
    elements = list(torsion_elements(t))
    if len(elements) ** d > limit:
        raise InvariantViolation("isometry search too large", rule="size-cap")
    # candidate images of generator i must have order dividing p_i
    cands = [[y for y in elements if all((t[i] * y[j]) % t[j] == 0 for j in range(d))]
             for i in range(d)]
    signs = (1, -1) if up_to_sign else (1,)
    for images in product(*cands):
        # images must generate: the image matrix is invertible on the group
        span = {tuple(sum(c * img[j] for c, img in zip(coeffs, images)) % t[j] for j in range(d))
                for coeffs in torsion_elements(t)}
        if len(span) != len(elements):
            continue
        for s in signs:
            if all(linking_eval(b, images[i], images[j]) == (s * a.entry(i, j)) % 1
                   for i in range(d) for j in range(d)):
                return True
    return False
