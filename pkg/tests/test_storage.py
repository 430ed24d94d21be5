from datetime import datetime, timezone

from residuum.models.results import VerificationReport
from residuum.storage import ReportStore


def make_reports():
    return [
        VerificationReport.build("first", 1 + 1j, 1 + 1j, 1e-6, {"term": 2j}),
        VerificationReport.build("second", 1 + 0j, 0j, 1e-6, {}),
        VerificationReport.not_applicable("third", 1e-5, "no sector limit"),
    ]


def test_save_and_reload(tmp_path):
    store = ReportStore(str(tmp_path / "runs.db"))
    run_id = store.save_run(make_reports(), "all", "2024.1", timestamp=datetime(2024, 6, 11, 12, 0))

    runs = store.list_runs()
    assert [run["run_id"] for run in runs] == [run_id]
    assert (runs[0]["passed"], runs[0]["failed"], runs[0]["not_applicable"]) == (1, 1, 1)
    assert runs[0]["timestamp"] == "2024-06-11T12:00:00"

    reports = store.get_reports(run_id)
    assert [r.name for r in reports] == ["first", "second", "third"]
    assert reports[0].detail("term") == 2j
    assert reports[1].status == "fail"
    assert reports[2].notes == ["no sector limit"]


def test_reports_dataframe(tmp_path):
    store = ReportStore(str(tmp_path / "runs.db"))
    first = store.save_run(make_reports(), "all")
    second = store.save_run(make_reports()[:1], "planar")

    everything = store.load_reports_dataframe()
    assert len(everything) == 4
    one = store.load_reports_dataframe(second)
    assert one["name"].tolist() == ["first"]
    assert store.load_reports_dataframe(first)["status"].tolist() == ["pass", "fail", "not_applicable"]
    assert one.loc[0, "lhs_im"] == 1.0


def test_default_timestamp_is_utc(tmp_path):
    store = ReportStore(str(tmp_path / "runs.db"))
    before = datetime.now(timezone.utc)
    store.save_run(make_reports(), "all")

    stamp = datetime.fromisoformat(store.list_runs()[0]["timestamp"])
    assert stamp.utcoffset().total_seconds() == 0
    assert stamp >= before.replace(microsecond=0)
