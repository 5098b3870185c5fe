"""Oriented polyhedral decompositions stored as signed boundary matrices.

``d1`` is vertex-by-edge (final minus initial vertex), ``d2`` is edge-by-face
(signed multiplicity of each edge in the face boundary) and ``d3`` is
face-by-polyhedron.  A labeling of the edges is closed on a face when the
corresponding entry of ``d2.T @ l`` vanishes mod N.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, NotAComplex
from .exact_linalg import IntegerMatrix, as_integer_matrix


@dataclass(frozen=True)
class CellComplex:
    d1: IntegerMatrix
    d2: IntegerMatrix
    d3: IntegerMatrix

    def __post_init__(self):
        for name in ("d1", "d2", "d3"):
            object.__setattr__(self, name, as_integer_matrix(getattr(self, name)))
        if self.d1.cols != self.d2.rows or self.d2.cols != self.d3.rows:
            raise DimensionMismatch(
                f"boundary shapes {self.d1.shape}, {self.d2.shape}, {self.d3.shape} do not chain")
        if self.v < 1:
            raise NotAComplex("a decomposition needs at least one vertex", rule="connected")
        if not (self.d1 @ self.d2).is_zero():
            raise NotAComplex("d1 @ d2 != 0")
        if not (self.d2 @ self.d3).is_zero():
            raise NotAComplex("d2 @ d3 != 0")
        if not self._connected():
            raise NotAComplex("the 1-skeleton is not connected", rule="connected")

    @classmethod
    def from_rows(cls, d1, d2, d3) -> "CellComplex":
        """Build from nested lists, inferring empty shapes from the neighbours."""
        v = len(d1)
        e = len(d1[0]) if d1 else len(d2)
        f = len(d2[0]) if d2 else len(d3)
        p = len(d3[0]) if d3 else 0
        return cls(IntegerMatrix.from_rows(d1, e) if v else IntegerMatrix.zeros(0, e),
                   IntegerMatrix.from_rows(d2, f) if e else IntegerMatrix.zeros(0, f),
                   IntegerMatrix.from_rows(d3, p) if f else IntegerMatrix.zeros(0, p))

    @property
    def v(self) -> int:
        return self.d1.rows

    @property
    def e(self) -> int:
        return self.d1.cols

    @property
    def f(self) -> int:
        return self.d2.cols

    @property
    def p(self) -> int:
        return self.d3.cols

    def _connected(self) -> bool:
        parent = list(range(self.v))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j in range(self.e):
            ends = [i for i in range(self.v) if self.d1[i, j]]
            for a in ends[1:]:
                parent[find(a)] = find(ends[0])
        return len({find(x) for x in range(self.v)}) == 1


def sphere3_complex() -> CellComplex:
    """One vertex, one loop edge ``i``, two discs both bounded by ``i``."""
    return CellComplex.from_rows([[0]], [[1, -1]], [[1, -1], [1, -1]])


def s1xs2_complex() -> CellComplex:
    """One vertex, edges ``(i, j)``; faces: torus square ``i+j-i-j`` and disc ``j``."""
    return CellComplex.from_rows([[0, 0]], [[0, 0], [0, 1]], [[0], [0]])


def rp3_heegaard_complex() -> CellComplex:
    """Genus-two style decomposition of RP^3: two vertices, edges ``(i, j, k, m, n)``.

    Face constraints: ``i+j``, ``m+n``, ``i-k-n``, ``-j+k+m``, ``-i+j-m+n``.
    """
    faces = [(1, 1, 0, 0, 0), (0, 0, 0, 1, 1), (1, 0, -1, 0, -1),
             (0, -1, 1, 1, 0), (-1, 1, 0, -1, 1)]
    d2 = [[face[r] for face in faces] for r in range(5)]
    d1 = [[-1, 1, 0, 1, -1], [1, -1, 0, -1, 1]]
    d3 = [[0, 0], [0, 0], [1, -1], [1, -1], [1, -1]]
    return CellComplex.from_rows(d1, d2, d3)


def lens_complex(p: int) -> CellComplex:
    """Minimal CW structure of a lens space with fundamental group Z_p."""
    return CellComplex.from_rows([[0]], [[p]], [[0]])
