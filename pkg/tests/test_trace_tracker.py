from models import IterationStep
from utils.trace_tracker import TRACE_COLUMNS, IterationTracer


def _step(n: int) -> IterationStep:
    return IterationStep(
        n=n, m=n + 2, truncation="1", measure_s="1/2", measure_u="0", measure_tau_u="0",
        measure_r="1/4", measure_changed="1/8", change_bound="1/4", measure_x="1/8", x_bound="1/2",
        packs=True, address_matches=True, boxes=4,
    )


def test_empty_trace_loads_nothing(tmp_path):
    assert IterationTracer(str(tmp_path)).load() is None


def test_steps_are_written_as_rows(tmp_path):
    tracer = IterationTracer(str(tmp_path / "traces"))
    tracer.record(_step(1))
    tracer.record(_step(2))
    frame = tracer.load()
    assert list(frame.columns) == TRACE_COLUMNS
    assert frame["m"].tolist() == [3, 4]
    assert frame["measure_changed"].tolist() == ["1/8", "1/8"]
    assert frame["packs"].all()


def test_frame_keeps_recorded_order(tmp_path):
    tracer = IterationTracer(str(tmp_path), filename="steps.csv")
    for n in (1, 2, 3):
        tracer.record(_step(n))
    assert tracer.to_frame()["n"].tolist() == [1, 2, 3]
    assert tracer.csv_path.endswith("steps.csv")
