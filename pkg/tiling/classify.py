"""Decide whether a dilation and a lattice admit a simultaneous tile."""
from __future__ import annotations

import logging
from typing import Optional

from models import ClassificationReport, SpectrumSummary, TilingCase
from tiling.errors import InvariantViolation, MixedRadicals
from tiling.linalg2 import (
    Lattice,
    Mat2,
    Spectrum,
    SpectrumKind,
    conjugate,
    eigen,
    eigenvector_ratio,
    is_projectively_rational,
    normalize_det,
)

logger = logging.getLogger(__name__)

EXIT_CODES = {
    TilingCase.Expanding_Exists: 0,
    TilingCase.Mixed_IrrationalSlope_Exists: 0,
    TilingCase.DetOne_NoTile: 1,
    TilingCase.Mixed_RationalSlope_NoTile: 1,
    TilingCase.Unsupported: 3,
}


def _rows(m: Mat2) -> list[list[str]]:
    return [[str(e) for e in row] for row in m.rows()]


def _summary(spectrum: Spectrum) -> SpectrumSummary:
    return SpectrumSummary(
        kind=spectrum.kind.value,
        trace=str(spectrum.trace),
        det=str(spectrum.det),
        discriminant=str(spectrum.discriminant),
        lambda1=None if spectrum.lambda1 is None else str(spectrum.lambda1),
        lambda2=None if spectrum.lambda2 is None else str(spectrum.lambda2),
        modulus_sq=None if spectrum.modulus_sq is None else str(spectrum.modulus_sq),
    )


def _decide(a: Mat2, frame: Mat2, report: ClassificationReport, spectrum: Spectrum) -> TilingCase:
    if abs(spectrum.det) == 1:
        report.notes.append("|det A| = 1: a multiplicative tile would need measure zero")
        return TilingCase.DetOne_NoTile
    if spectrum.kind is SpectrumKind.COMPLEX_PAIR:
        report.notes.append("complex pair with modulus > 1: A is expanding")
        return TilingCase.Expanding_Exists
    if abs(spectrum.lambda2) >= 1:
        report.notes.append("|lambda1| > 1 and |lambda2| >= 1")
        return TilingCase.Expanding_Exists

    lattice_radical = frame.radical()
    if spectrum.radical and lattice_radical and spectrum.radical != lattice_radical:
        report.notes.append(
            f"eigenvalues need sqrt({spectrum.radical}) and the lattice needs sqrt({lattice_radical})"
        )
        return TilingCase.Unsupported
    try:
        m = conjugate(frame, a)
        v = eigenvector_ratio(m, spectrum.lambda2)
    except MixedRadicals as exc:
        report.notes.append(str(exc))
        return TilingCase.Unsupported
    report.conjugated_matrix = _rows(m)
    report.eigenvector = [str(v.v1), str(v.v2)]
    report.slope_rational = is_projectively_rational(v)
    if report.slope_rational:
        report.notes.append("contracting eigendirection has rational slope in the lattice frame")
        return TilingCase.Mixed_RationalSlope_NoTile
    report.notes.append("contracting eigendirection has irrational slope in the lattice frame")
    return TilingCase.Mixed_IrrationalSlope_Exists


def classify_lattice(a: Mat2, lattice: Optional[Lattice] = None) -> ClassificationReport:
    """Classify ``(A, P Z^2)`` into the five tiling cases.

    Args:
        a: rational invertible dilation matrix
        lattice: lattice ``P Z^2``; defaults to ``Z^2``

    Returns:
        ClassificationReport with the verdict and the data it was read from
    """
    lattice = lattice or Lattice.standard()
    normalized, inverted = normalize_det(a)
    spectrum = eigen(normalized)
    report = ClassificationReport(
        matrix=_rows(a),
        lattice=_rows(lattice.basis),
        normalized_matrix=_rows(normalized),
        inverted=inverted,
        spectrum=_summary(spectrum),
        case=TilingCase.Unsupported,
    )
    if inverted:
        report.notes.append("|det A| < 1: classified A^-1 instead")
    report.case = _decide(normalized, lattice.basis, report, spectrum)
    report.exists = report.case.exists
    logger.info(f"classified A={a} P={lattice.basis}: {report.case.value}")
    return report


def classify_wavelet(a: Mat2) -> ClassificationReport:
    """Classify whether ``A`` admits a single-function wavelet set for ``Z^2``.

    A wavelet set tiles by ``Z^2`` translations and by ``A^T`` dilations, so
    the contracting eigenvector is read off ``A^T``.
    """
    transposed = a.transpose()
    report = classify_lattice(transposed, Lattice.standard())
    report.subject = "wavelet"
    report.matrix = _rows(a)
    report.lattice = None

    normalized, _ = normalize_det(a)
    spectrum = eigen(normalized)
    if spectrum.kind is SpectrumKind.REAL_DISTINCT and abs(spectrum.det) != 1 and abs(spectrum.lambda2) < 1:
        direct = eigenvector_ratio(normalized.transpose(), spectrum.lambda2)
        direct_case = (
            TilingCase.Mixed_RationalSlope_NoTile
            if is_projectively_rational(direct)
            else TilingCase.Mixed_IrrationalSlope_Exists
        )
        if direct_case is not report.case:
            raise InvariantViolation(f"wavelet verdict {direct_case} disagrees with lattice verdict {report.case}")
    report.notes.append("read from the eigenvector of A^T")
    return report
