"""The ribbon category of Z_N-graded lines with ``c_{1,1} = exp(2 pi i / N)``.

Single phases are kept exact as exponents of a ``2N``-th root of unity, so a
sign ``epsilon = -1`` and an odd ``N`` live in the same group.  Only sums of
phases (Gauss sums) are evaluated in floating point.

>>> CategoryZn(4).braiding(1, 1)
PhaseExponent(num=2, order=8)
>>> complex(round(gauss_delta(4).real, 9), gauss_delta(4).imag)
(2-2j)
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadRange, InvalidModulus, require_int
from .report import Report


@dataclass(frozen=True, eq=False)
class PhaseExponent:
    """``exp(2 pi i num / order)`` with ``num`` reduced into ``[0, order)``."""

    num: int
    order: int

    def __post_init__(self):
        require_int(self.order, "order", 1, InvalidModulus)
        object.__setattr__(self, "num", self.num % self.order)

    @property
    def turns(self) -> Fraction:
        """The angle as a fraction of a full turn, in ``[0, 1)``."""
        return Fraction(self.num, self.order)

    def __eq__(self, other):
        if isinstance(other, PhaseExponent):
            return self.turns == other.turns
        if other == 1:
            return self.num == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.turns)

    def __mul__(self, other: "PhaseExponent") -> "PhaseExponent":
        order = math.lcm(self.order, other.order)
        return PhaseExponent(self.num * (order // self.order) + other.num * (order // other.order), order)

    def __pow__(self, e: int) -> "PhaseExponent":
        return PhaseExponent(self.num * e, self.order)

    def inverse(self) -> "PhaseExponent":
        return PhaseExponent(-self.num, self.order)

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.num / self.order)


def one(order: int = 1) -> PhaseExponent:
    return PhaseExponent(0, order)


@dataclass(frozen=True)
class CategoryZn:
    n: int
    epsilon: int = 1

    def __post_init__(self):
        require_int(self.n, "N", 1, InvalidModulus)
        if self.epsilon not in (1, -1) or isinstance(self.epsilon, bool):
            raise BadRange(f"epsilon must be +1 or -1, got {self.epsilon!r}")

    @property
    def _eps(self) -> int:
        # epsilon as an exponent of the 2N-th root of unity
        return self.n if self.epsilon == -1 else 0

    def phase(self, num: int) -> PhaseExponent:
        return PhaseExponent(num, 2 * self.n)

    def braiding(self, p: int, q: int) -> PhaseExponent:
        """``c_{p,q} = c_{1,1}^{pq}``."""
        return self.phase(2 * p * q)

    def twist(self, p: int) -> PhaseExponent:
        """``theta_p = epsilon^p c_{1,1}^{p^2}``."""
        return self.phase(self._eps * p + 2 * p * p)

    def dimension(self, p: int) -> PhaseExponent:
        """``dim(p) = tr(id_p) = epsilon^p``."""
        return self.phase(self._eps * p)

    def dual(self, p: int) -> int:
        return (-p) % self.n

    def s_entry(self, p: int, q: int) -> PhaseExponent:
        """``S_{p,q} = epsilon^{p+q} c_{q,p} c_{p,q}``."""
        return self.phase(self._eps * (p + q) + 4 * p * q)

    def s_matrix(self) -> list:
        return [[self.s_entry(p, q) for q in range(self.n)] for p in range(self.n)]

    def is_modular(self) -> bool:
        """Invertibility of S, which is Vandermonde in ``alpha_p = c_{1,1}^{2p}``.

        The ``epsilon^{p+q}`` factor only rescales rows and columns.
        """
        alphas = {self.phase(4 * p) for p in range(self.n)}
        modular = len(alphas) == self.n
        assert modular == (self.n % 2 == 1)
        return modular


def braiding(cat: CategoryZn, p: int, q: int) -> PhaseExponent:
    return cat.braiding(p, q)


def twist(cat: CategoryZn, p: int) -> PhaseExponent:
    return cat.twist(p)


def s_matrix(cat: CategoryZn) -> list:
    return cat.s_matrix()


def is_modular(cat) -> bool:
    if isinstance(cat, int):
        cat = CategoryZn(cat)
    return cat.is_modular()


def _phase_sum(exponents, order: int) -> complex:
    re = math.fsum(math.cos(2 * math.pi * e / order) for e in exponents)
    im = math.fsum(math.sin(2 * math.pi * e / order) for e in exponents)
    return complex(re, im)


def gauss_delta(n: int) -> complex:
    """``Delta_N = sum_{p<N} exp(-2 pi i p^2 / N)``; exactly ``0j`` when ``N = 2 mod 4``."""
    require_int(n, "N", 1, InvalidModulus)
    if n % 4 == 2:
        return 0j
    return _phase_sum([(-p * p) % n for p in range(n)], n)


def gauss_delta_half(k: int) -> complex:
    """``sum_{p<2k} exp(-2 pi i p^2 / 4k)``, half the range of ``Delta_4k``."""
    require_int(k, "k", 1, BadRange)
    return _phase_sum([(-p * p) % (4 * k) for p in range(2 * k)], 4 * k)


def approx_equal(a, b, tol: float = 1e-9) -> bool:
    """Tolerance ``tol * (1 + max magnitude)``."""
    return abs(a - b) <= tol * (1 + max(abs(a), abs(b)))


def verify_ribbon_axioms(cat: CategoryZn) -> Report:
    """Exhaustive check over ``Z_N`` (indices reduced mod N) of the braided ribbon laws."""
    n = cat.n
    rep = Report(f"ribbon axioms N={n} epsilon={cat.epsilon:+d}")
    rng = range(n)
    c, th, s = cat.braiding, cat.twist, cat.s_entry

    def first_bad(pred, arity):
        for idx in itertools.product(rng, repeat=arity):
            if not pred(*idx):
                return idx
        return None

    cases = [
        ("braiding symmetric c_pq = c_qp", lambda p, q: c(p, q) == c(q, p), 2),
        ("braiding unit c_p0 = 1", lambda p: c(p, 0) == 1, 1),
        ("braiding bilinear c_p,q+r = c_pq c_pr",
         lambda p, q, r: c(p, (q + r) % n) == c(p, q) * c(p, r), 3),
        ("braiding bilinear c_p+q,r = c_pr c_qr",
         lambda p, q, r: c((p + q) % n, r) == c(p, r) * c(q, r), 3),
        ("twist unit theta_0 = 1", lambda: th(0) == 1, 0),
        ("twist law theta_p+q = c_qp c_pq theta_p theta_q",
         lambda p, q: th((p + q) % n) == c(q, p) * c(p, q) * th(p) * th(q), 2),
        ("twist duality theta_p* = theta_p", lambda p: th(cat.dual(p)) == th(p), 1),
        ("S symmetric", lambda p, q: s(p, q) == s(q, p), 2),
        ("S-twist S_pq = eps^(p+q) theta_p+q / (theta_p theta_q)",
         lambda p, q: s(p, q) == cat.dimension(p + q) * th((p + q) % n) * th(p).inverse() * th(q).inverse(), 2),
        ("dimension S_p0 = eps^p", lambda p: s(p, 0) == cat.dimension(p), 1),
    ]
    for name, pred, arity in cases:
        bad = first_bad(pred, arity)
        rep.add(name, "holds" if bad is None else f"fails at {bad}", "holds", bad is None)
    return rep
