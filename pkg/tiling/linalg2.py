"""2x2 matrices, lattices and spectra over exact scalars."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from tiling.errors import (
    BadSpectrum,
    InvariantViolation,
    MixedRadicals,
    NonRationalMatrix,
    NotAnEigenvalue,
    NotDiagonalizable,
    Singular,
    ZeroVector,
)
from tiling.exactnum import ONE, ZERO, QuadScalar, as_scalar, qs_sqrt

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vec2:
    x: QuadScalar
    y: QuadScalar

    @classmethod
    def of(cls, x, y) -> "Vec2":
        return cls(as_scalar(x), as_scalar(y))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scale(self, s) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def __iter__(self):
        yield self.x
        yield self.y

    def __str__(self):
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class Mat2:
    m11: QuadScalar
    m12: QuadScalar
    m21: QuadScalar
    m22: QuadScalar

    @classmethod
    def of(cls, m11, m12, m21, m22) -> "Mat2":
        return cls(as_scalar(m11), as_scalar(m12), as_scalar(m21), as_scalar(m22))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "Mat2":
        rows = [list(r) for r in rows]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError(f"expected a 2x2 matrix, got {rows!r}")
        return cls.of(rows[0][0], rows[0][1], rows[1][0], rows[1][1])

    @classmethod
    def from_columns(cls, c1: Vec2, c2: Vec2) -> "Mat2":
        return cls(c1.x, c2.x, c1.y, c2.y)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def diag(cls, d1, d2) -> "Mat2":
        return cls(as_scalar(d1), ZERO, ZERO, as_scalar(d2))

    def rows(self) -> list[list[QuadScalar]]:
        return [[self.m11, self.m12], [self.m21, self.m22]]

    def columns(self) -> tuple[Vec2, Vec2]:
        return Vec2(self.m11, self.m21), Vec2(self.m12, self.m22)

    def det(self) -> QuadScalar:
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self) -> QuadScalar:
        return self.m11 + self.m22

    def transpose(self) -> "Mat2":
        return Mat2(self.m11, self.m21, self.m12, self.m22)

    def inverse(self) -> "Mat2":
        det = self.det()
        if not det:
            raise Singular(f"matrix {self} is singular")
        return Mat2(self.m22 / det, -self.m12 / det, -self.m21 / det, self.m11 / det)

    def scale(self, s) -> "Mat2":
        return Mat2(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.m11 + other.m11, self.m12 + other.m12, self.m21 + other.m21, self.m22 + other.m22)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.m11 - other.m11, self.m12 - other.m12, self.m21 - other.m21, self.m22 - other.m22)

    def __matmul__(self, other):
        if isinstance(other, Vec2):
            return Vec2(self.m11 * other.x + self.m12 * other.y, self.m21 * other.x + self.m22 * other.y)
        if isinstance(other, Mat2):
            return Mat2(
                self.m11 * other.m11 + self.m12 * other.m21,
                self.m11 * other.m12 + self.m12 * other.m22,
                self.m21 * other.m11 + self.m22 * other.m21,
                self.m21 * other.m12 + self.m22 * other.m22,
            )
        return NotImplemented

    def power(self, n: int) -> "Mat2":
        if n < 0:
            return self.inverse().power(-n)
        result, base = Mat2.identity(), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def entries(self) -> tuple[QuadScalar, ...]:
        return (self.m11, self.m12, self.m21, self.m22)

    def is_diagonal(self) -> bool:
        return not self.m12 and not self.m21

    def is_rational(self) -> bool:
        return all(e.is_rational for e in self.entries())

    def radical(self) -> int:
        """Common square-free radical of the entries (0 when all rational)."""
        d = 0
        for e in self.entries():
            if e.d:
                if d and d != e.d:
                    raise MixedRadicals(d, e.d)
                d = e.d
        return d

    def __str__(self):
        return f"[[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]]"


@dataclass(frozen=True)
class Lattice:
    """The full-rank lattice ``basis @ Z^2``."""

    basis: Mat2

    def __post_init__(self):
        if not self.basis.det():
            raise Singular("lattice basis is singular")

    @classmethod
    def standard(cls) -> "Lattice":
        return cls(Mat2.identity())

    @property
    def covolume(self) -> QuadScalar:
        return abs(self.basis.det())

    def vectors(self) -> tuple[Vec2, Vec2]:
        return self.basis.columns()

    def point(self, i: int, j: int) -> Vec2:
        b1, b2 = self.vectors()
        return b1.scale(i) + b2.scale(j)

    def transformed(self, matrix: Mat2) -> "Lattice":
        """The lattice ``matrix @ self``."""
        return Lattice(matrix @ self.basis)


class SpectrumKind(str, Enum):
    REAL_DISTINCT = "RealDistinct"
    REAL_REPEATED = "RealRepeated"
    COMPLEX_PAIR = "ComplexPair"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a rational matrix; real ones ordered ``|l1| >= |l2|``."""

    kind: SpectrumKind
    trace: Fraction
    det: Fraction
    discriminant: Fraction
    lambda1: Optional[QuadScalar] = None
    lambda2: Optional[QuadScalar] = None

    @property
    def modulus_sq(self) -> Optional[Fraction]:
        return self.det if self.kind is SpectrumKind.COMPLEX_PAIR else None

    @property
    def radical(self) -> int:
        return self.lambda1.d if self.lambda1 is not None else 0


@dataclass(frozen=True)
class ProjectivePair:
    """A point ``[v1 : v2]`` of the projective line, canonically scaled."""

    v1: QuadScalar
    v2: QuadScalar

    def __post_init__(self):
        if not self.v1 and not self.v2:
            raise ZeroVector("[0 : 0] is not a projective point")

    def canonical(self) -> "ProjectivePair":
        if self.v2:
            return ProjectivePair(self.v1 / self.v2, ONE)
        return ProjectivePair(ONE, ZERO)

    def as_vector(self) -> Vec2:
        return Vec2(self.v1, self.v2)

    def __str__(self):
        return f"[{self.v1} : {self.v2}]"


def _require_rational(a: Mat2) -> None:
    if not a.is_rational():
        raise NonRationalMatrix(f"matrix {a} has irrational entries")


def normalize_det(a: Mat2) -> tuple[Mat2, bool]:
    """Return ``(A', inverted)`` with ``|det A'| >= 1``."""
    _require_rational(a)
    det = a.det()
    if not det:
        raise Singular(f"matrix {a} is singular")
    if abs(det) < 1:
        return a.inverse(), True
    return a, False


def eigen(a: Mat2) -> Spectrum:
    _require_rational(a)
    tr = a.trace().as_fraction()
    det = a.det().as_fraction()
    if not det:
        raise Singular(f"matrix {a} is singular")
    disc = tr * tr - 4 * det
    if disc < 0:
        return Spectrum(SpectrumKind.COMPLEX_PAIR, tr, det, disc)
    if disc == 0:
        lam = QuadScalar.rational(tr / 2)
        return Spectrum(SpectrumKind.REAL_REPEATED, tr, det, disc, lam, lam)
    root = qs_sqrt(disc)
    plus = (root + tr) / 2
    minus = (QuadScalar.rational(tr) - root) / 2
    if abs(minus) > abs(plus):
        plus, minus = minus, plus
    if plus + minus != tr or plus * minus != det:
        raise InvariantViolation(f"eigenvalues {plus}, {minus} fail trace/det check for {a}")
    return Spectrum(SpectrumKind.REAL_DISTINCT, tr, det, disc, plus, minus)


def eigenvector_ratio(m: Mat2, lam: QuadScalar) -> ProjectivePair:
    """Projective eigenvector of ``m`` for the eigenvalue ``lam``."""
    if lam * lam - m.trace() * lam + m.det():
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue of {m}")
    n = m - Mat2.identity().scale(lam)
    if n.m11 or n.m12:
        v = Vec2(-n.m12, n.m11)
    elif n.m21 or n.m22:
        v = Vec2(-n.m22, n.m21)
    else:
        # m is lam * I and every direction is an eigenvector
        v = Vec2(ONE, ZERO)
    if not (n @ v).is_zero():
        raise InvariantViolation(f"kernel vector {v} is not annihilated by {n}")
    return ProjectivePair(v.x, v.y).canonical()


def conjugate(p: Mat2, a: Mat2) -> Mat2:
    """``P^-1 A P``: the matrix of ``A`` in the frame given by the columns of ``P``."""
    return p.inverse() @ a @ p


def is_projectively_rational(v: ProjectivePair) -> bool:
    """True iff some non-zero multiple of ``v`` has rational coordinates."""
    if not v.v1 and not v.v2:
        raise ZeroVector("[0 : 0] is not a projective point")
    if not v.v1 or not v.v2:
        return True
    return (v.v1 / v.v2).is_rational


def diagonalize(a: Mat2) -> tuple[Mat2, Mat2]:
    """Return ``(V, D)`` with ``V^-1 A V == D`` diagonal and ``D[0,0]`` the dominant eigenvalue."""
    spectrum = eigen(a)
    if spectrum.kind is SpectrumKind.COMPLEX_PAIR:
        raise NotDiagonalizable(f"{a} has no real eigenbasis")
    if spectrum.kind is SpectrumKind.REAL_REPEATED:
        if not a.is_diagonal() or a.m11 != a.m22:
            raise NotDiagonalizable(f"{a} is a non-trivial Jordan block")
        return Mat2.identity(), a
    v1 = eigenvector_ratio(a, spectrum.lambda1).as_vector()
    v2 = eigenvector_ratio(a, spectrum.lambda2).as_vector()
    frame = Mat2.from_columns(v1, v2)
    d = conjugate(frame, a)
    logger.debug(f"diagonalized {a} in frame {frame}")
    if not d.is_diagonal():
        raise BadSpectrum(f"eigenframe of {a} does not diagonalize it")
    return frame, d
