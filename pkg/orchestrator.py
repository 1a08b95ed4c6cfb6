"""Orchestrator using LangGraph to run classify, construct and verify in sequence."""
import os
import logging
from typing import Any, Dict, Optional, TypedDict

from langgraph.graph import StateGraph, END

from models import (
    ClassificationReport,
    ConstructionReport,
    IterationTrace,
    PipelineReport,
    RunConfig,
    TilingCase,
    VerificationReport,
)
from tiling.classify import classify_lattice
from tiling.construct import expanding_seed, finite_measure_mult_tile, fitted_prop32
from tiling.errors import NoRectangularDomain, NotDiagonalizable, TilekitError
from tiling.exactnum import as_scalar
from tiling.lattice_points import rectangular_domain
from tiling.linalg2 import Lattice, Mat2, diagonalize, normalize_det
from tiling.scb import scb_complete
from tiling.setalg import RectSet
from tiling.speegle import speegle_iterate
from tiling.verify import axis_strip, check_multiplicative, check_translational
from utils.report_builder import prop32_report, scb_report, speegle_report, write_json
from utils.scalar_loader import matrix_to_json, parse_window
from utils.trace_tracker import IterationTracer
import config

logger = logging.getLogger(__name__)

PIPELINE_EXIT_CODES = {
    "verified": 0,
    "verdict_only": 0,
    "no_tile": 1,
    "verification_failed": 1,
    "unsupported": 3,
    "construction_failed": 1,
    "error": 2,
}


class TilingState(TypedDict, total=False):
    """State structure for the tiling pipeline."""
    matrix: Mat2
    lattice: Lattice
    config: RunConfig
    classification: ClassificationReport
    frame: Mat2
    diagonal: Mat2
    frame_lattice: Lattice
    tile: RectSet
    construction: ConstructionReport
    iteration: IterationTrace
    translational: VerificationReport
    multiplicative: VerificationReport
    report: PipelineReport
    axis_gap: bool
    status: str
    error: str


class TilingOrchestrator:
    """Decides existence, builds a tile in the eigenframe and verifies it exactly."""

    def __init__(self, results_dir: Optional[str] = None):
        self.results_dir = results_dir
        if results_dir:
            os.makedirs(results_dir, exist_ok=True)
        self.workflow = self._build_workflow()

    def _build_workflow(self):
        """Build LangGraph workflow for the pipeline."""
        workflow = StateGraph(TilingState)

        workflow.add_node("classify", self._classify)
        workflow.add_node("frame", self._frame)
        workflow.add_node("construct", self._construct)
        workflow.add_node("verify", self._verify)
        workflow.add_node("report", self._report)

        workflow.set_entry_point("classify")
        workflow.add_conditional_edges("classify", self._next_after("classified"),
                                       {"continue": "frame", "stop": "report"})
        workflow.add_conditional_edges("frame", self._next_after("framed"),
                                       {"continue": "construct", "stop": "report"})
        workflow.add_conditional_edges("construct", self._next_after("constructed"),
                                       {"continue": "verify", "stop": "report"})
        workflow.add_edge("verify", "report")
        workflow.add_edge("report", END)

        return workflow.compile()

    @staticmethod
    def _next_after(expected: str):
        def route(state: TilingState) -> str:
            return "continue" if state.get("status") == expected else "stop"
        return route

    def _classify(self, state: TilingState) -> TilingState:
        """Classify the pair and stop unless a tile exists."""
        try:
            report = classify_lattice(state["matrix"], state["lattice"])
            state["classification"] = report
            if report.case is TilingCase.Unsupported:
                state["status"] = "unsupported"
            elif report.exists:
                state["status"] = "classified"
            else:
                state["status"] = "no_tile"
        except TilekitError as e:
            state["error"] = f"Classification failed: {str(e)}"
            state["status"] = "error"
        return state

    def _frame(self, state: TilingState) -> TilingState:
        """Move to the eigenframe where the dilation is diagonal."""
        try:
            normalized, _ = normalize_det(state["matrix"])
            frame, diagonal = diagonalize(normalized)
            state["frame"] = frame
            state["diagonal"] = diagonal
            state["frame_lattice"] = state["lattice"].transformed(frame.inverse())
            state["status"] = "framed"
        except NotDiagonalizable as e:
            logger.warning(f"⚠️ No real eigenframe, reporting the verdict only: {e}")
            state["error"] = str(e)
            state["status"] = "verdict_only"
        except TilekitError as e:
            state["error"] = f"Frame change failed: {str(e)}"
            state["status"] = "construction_failed"
        return state

    def _construct(self, state: TilingState) -> TilingState:
        """Build a tile (or a packing) for the diagonal dilation."""
        cfg = state["config"]
        d, lattice = state["diagonal"], state["frame_lattice"]
        l1, l2 = d.m11, d.m22
        try:
            if abs(l2) > 1:
                seed, _ = expanding_seed(d, lattice, cfg.cap)
                result = scb_complete(seed, d, lattice, cfg.depth, cap=cfg.cap, mult_depth=config.MULT_CHECK_DEPTH)
                state["tile"] = result.tile
                state["construction"] = scb_report(result, d)
            elif abs(l2) == 1 and self._fits_prop32(lattice):
                tile, shear = fitted_prop32(l1, l2, lattice, cfg.depth)
                state["tile"] = tile
                state["construction"] = prop32_report(tile, l1, l2, shear, cfg.depth)
            else:
                if abs(l2) == 1:
                    logger.info("no lattice vector on the vertical axis, building by iteration")
                return self._iterate(state)
            state["status"] = "constructed"
        except TilekitError as e:
            logger.warning(f"⚠️ Construction failed: {e}")
            state["error"] = f"Construction failed: {str(e)}"
            state["status"] = "construction_failed"
        return state

    @staticmethod
    def _fits_prop32(lattice: Lattice) -> bool:
        try:
            rectangular_domain(lattice, axes=(1,))
        except NoRectangularDomain:
            return False
        return True

    def _iterate(self, state: TilingState) -> TilingState:
        """Band tile pushed into a lattice packing step by step."""
        cfg = state["config"]
        d, lattice = state["diagonal"], state["frame_lattice"]
        omega = finite_measure_mult_tile(d, cfg.bands)
        tracer = IterationTracer(self.results_dir) if self.results_dir else None
        trace, last = speegle_iterate(omega, d, lattice, cfg.steps, cap=cfg.cap, tracer=tracer)
        state["iteration"] = trace
        state["construction"] = speegle_report(last, trace, d, cfg.bands)
        state["axis_gap"] = True
        if last is None:
            state["error"] = trace.message or "iteration stopped at the cap"
            state["status"] = "construction_failed"
            return state
        state["tile"] = last
        state["status"] = "constructed"
        return state

    def _verify(self, state: TilingState) -> TilingState:
        """Check both packings exactly over the configured window."""
        cfg = state["config"]
        try:
            window = parse_window(",".join(cfg.window))
            tile, d = state["tile"], state["diagonal"]
            exclude = None
            eps = cfg.exclude_axis
            if eps is None and state.get("axis_gap"):
                # band tiles never reach the axis x = 0
                eps = config.AXIS_EXCLUSION
            if eps is not None:
                exclude = axis_strip(window, as_scalar(eps))
            state["translational"] = check_translational(
                tile, state["frame_lattice"], window, require_cover=cfg.require_cover)
            state["multiplicative"] = check_multiplicative(
                tile, d, cfg.depth, window, exclude=exclude, require_cover=cfg.require_cover)
            passed = state["translational"].passed and state["multiplicative"].passed
            state["status"] = "verified" if passed else "verification_failed"
        except TilekitError as e:
            state["error"] = f"Verification failed: {str(e)}"
            state["status"] = "error"
        return state

    def _report(self, state: TilingState) -> TilingState:
        """Collect everything into a PipelineReport."""
        report = PipelineReport(
            status=state.get("status", "error"),
            classification=state.get("classification"),
            frame=matrix_to_json(state["frame"]) if "frame" in state else None,
            diagonal=matrix_to_json(state["diagonal"]) if "diagonal" in state else None,
            frame_lattice=matrix_to_json(state["frame_lattice"].basis) if "frame_lattice" in state else None,
            construction=state.get("construction"),
            iteration=state.get("iteration"),
            translational=state.get("translational"),
            multiplicative=state.get("multiplicative"),
            error=state.get("error") or None,
        )
        if self.results_dir:
            write_json(report, os.path.join(self.results_dir, "pipeline_report.json"))
        state["report"] = report
        logger.info(f"✅ Pipeline finished with status {report.status}")
        return state

    def run(self, matrix: Mat2, lattice: Optional[Lattice] = None,
            run_config: Optional[RunConfig] = None) -> PipelineReport:
        """
        Run the whole pipeline for one dilation and lattice.

        Args:
            matrix: rational invertible dilation
            lattice: lattice to tile by; defaults to Z^2
            run_config: depths, caps and window

        Returns:
            PipelineReport with whatever stages were reached
        """
        initial_state: TilingState = {
            "matrix": matrix,
            "lattice": lattice or Lattice.standard(),
            "config": run_config or RunConfig(),
            "status": "initialized",
            "error": "",
        }
        try:
            final_state: Dict[str, Any] = self.workflow.invoke(initial_state)
            return final_state["report"]
        except Exception as e:
            logger.error(f"❌ Pipeline crashed: {e}")
            return PipelineReport(status="error", error=str(e))
