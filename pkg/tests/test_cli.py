import csv
import io
import json
import time

import pytest

from hyperank.config import settings
from hyperank.main import main
from hyperank.models import GeneratorSpec
from hyperank.repositories.instance_repo import InstanceRepository
from hyperank.services.generator import generate

from .helpers import DATA

APPENDIX = str(DATA / "appendix_instance.json")
VMS = str(DATA / "scheduling_vms.json")
TASKS = str(DATA / "reference_tasks.json")
TABLES = str(DATA / "table_schema.json")


def _rows(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def _error_payload(err: str) -> dict:
    return json.loads([line for line in err.splitlines() if line.startswith("{")][-1])


def test_allocate_emits_one_document_per_edge(tmp_path):
    out = tmp_path / "alloc.json"
    assert main(["allocate", "--instance", APPENDIX, "--out", str(out)]) == 0

    (doc,) = json.loads(out.read_text())
    assert set(doc) == {"edge_id", "k", "key", "selected", "total_cost", "short_selection", "bound"}
    assert doc["edge_id"] == "t1"
    assert doc["selected"] == ["n4"]
    assert doc["total_cost"] == 60
    assert doc["short_selection"] is False
    assert doc["bound"]["k"] == 1
    assert doc["bound"]["M"] == pytest.approx(1.418471, abs=1e-6)
    assert doc["bound"]["alpha_bound"] == pytest.approx(doc["bound"]["M"])
    assert doc["bound"]["upsilon_at_most_one"] == 1


def test_allocate_verbose_includes_ranking(tmp_path):
    out = tmp_path / "alloc.json"
    assert main(["allocate", "--instance", APPENDIX, "--verbose", "--out", str(out)]) == 0

    (doc,) = json.loads(out.read_text())
    assert [r["position"] for r in doc["ranked"]] == [1, 2, 3, 4, 5, 6]
    assert [r["node_id"] for r in doc["ranked"] if r["selected"]] == ["n4"]


def test_allocate_csv_summary_and_verbose_rows(tmp_path):
    out = tmp_path / "alloc.csv"
    assert main(["allocate", "--instance", APPENDIX, "--format", "csv", "--out", str(out)]) == 0
    (row,) = _rows(out)
    assert row["selected"] == "n4"
    assert row["short_selection"] == "false"
    assert float(row["total_cost"]) == 60

    assert main(["allocate", "--instance", APPENDIX, "--format", "csv", "--verbose", "--out", str(out)]) == 0
    rows = _rows(out)
    assert [r["position"] for r in rows] == ["1", "2", "3", "4", "5", "6"]
    assert [r["node_id"] for r in rows if r["selected"] == "true"] == ["n4"]


def test_allocate_feasible_only_and_tensor_key(tmp_path):
    out = tmp_path / "alloc.json"
    assert main(["allocate", "--instance", APPENDIX, "--feasible-only", "--verbose", "--out", str(out)]) == 0
    (doc,) = json.loads(out.read_text())
    assert sorted(r["node_id"] for r in doc["ranked"]) == ["n1", "n3", "n6"]
    assert doc["selected"] == ["n1"]

    assert main(["allocate", "--instance", APPENDIX, "--key", "tensor", "--verbose", "--out", str(out)]) == 0
    (doc,) = json.loads(out.read_text())
    assert doc["key"] == "tensor"
    assert doc["selected"] == ["n6"]
    assert doc["ranked"][0]["key"] == pytest.approx(4.579341, abs=1e-6)


def test_short_selection_is_reported(tmp_path):
    doc = json.loads(open(APPENDIX).read())
    doc["edges"][0]["k"] = 4
    wide = tmp_path / "wide.json"
    wide.write_text(json.dumps(doc))
    out = tmp_path / "alloc.json"

    assert main(["allocate", "--instance", str(wide), "--feasible-only", "--out", str(out)]) == 0
    (result,) = json.loads(out.read_text())
    assert result["short_selection"] is True
    assert sorted(result["selected"]) == ["n1", "n3", "n6"]
    assert result["total_cost"] == 1150


def test_allocate_dot_export(tmp_path):
    dot = tmp_path / "scores.dot"
    out = tmp_path / "alloc.json"
    assert main(["allocate", "--instance", APPENDIX, "--dot", str(dot), "--out", str(out)]) == 0

    text = dot.read_text()
    assert text.startswith("digraph")
    assert text.count("[label=") == 6
    # six distinct keys form a chain: only neighbouring arcs
    assert text.count(" -> ") == 5
    assert "n1@t1#appendix" in text


def _dot_seconds(tmp_path, n: int) -> float:
    h = generate(GeneratorSpec.allocation_default(), n, seed=n, k=5)
    instance = tmp_path / f"gen{n}.json"
    InstanceRepository(str(instance)).save(h)
    args = ["allocate", "--instance", str(instance), "--dot", str(tmp_path / f"gen{n}.dot"), "--threads", "1"]
    args += ["--out", str(tmp_path / f"gen{n}.json.out")]
    start = time.perf_counter()
    assert main(args) == 0
    return time.perf_counter() - start


@pytest.mark.slow
def test_dot_export_scales(tmp_path):
    small = min(_dot_seconds(tmp_path, 1000) for _ in range(3))
    large = min(_dot_seconds(tmp_path, 4000) for _ in range(3))
    assert large < 5.0
    # four times the nodes: well under the sixteen-fold growth of a pairwise build
    assert large / small <= 8.0
    assert (tmp_path / "gen4000.dot").read_text().count(" -> ") == 3999



def test_schedule_all_schedulers(tmp_path):
    out = tmp_path / "sched.csv"
    assert main(["schedule", "--tasks", TASKS, "--vms", VMS, "--scheduler", "all", "--out", str(out)]) == 0
    rows = _rows(out)
    assert len(rows) == 3 * 4
    assert [r["node_id"] for r in rows if r["scheduler"] == "rr"] == ["vm1", "vm2", "vm3"]
    assert list(rows[0]) == ["scheduler", "task_id", "node_id", "score", "cost"]


def test_schedule_exclusive_infeasible_exits_2(tmp_path, capsys):
    vms = json.loads(open(VMS).read())
    vms["nodes"] = vms["nodes"][:2]
    small = tmp_path / "vms.json"
    small.write_text(json.dumps(vms))

    code = main(["schedule", "--tasks", TASKS, "--vms", str(small), "--exclusive"])
    assert code == 2
    assert "exclusive" in _error_payload(capsys.readouterr().err)["detail"]


def test_tables_json(tmp_path):
    out = tmp_path / "tables.json"
    question = "orders.total order amount in dollars"
    assert main(["tables", "--schema", TABLES, "--question", question, "--k", "2", "--out", str(out)]) == 0
    docs = json.loads(out.read_text())
    assert len(docs) == 2
    assert docs[0] == {"entity": question, "score": 1.0}


def test_validate_ok(capsys):
    assert main(["validate", "--instance", APPENDIX]) == 0
    assert capsys.readouterr().out.strip() == "ok: 6 node(s), 1 edge(s), 6 attribute(s)"


def test_validate_reports_violations(tmp_path, capsys):
    doc = json.loads(open(APPENDIX).read())
    doc["nodes"][0]["metadata"] = doc["nodes"][0]["metadata"][:3]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))

    assert main(["validate", "--instance", str(bad)]) == 1
    payload = _error_payload(capsys.readouterr().err)
    assert payload["context"]


def test_missing_file_exits_3(tmp_path, capsys):
    assert main(["validate", "--instance", str(tmp_path / "nope.json")]) == 3
    assert "nope.json" in _error_payload(capsys.readouterr().err)["detail"]


def test_bad_flags_and_presets_exit_1(capsys):
    assert main(["allocate"]) == 1
    assert main(["allocate", "--instance", APPENDIX, "--metrics", "no-such-preset"]) == 1
    assert main(["bench", "alloc", "--sizes", "0"]) == 1


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "0.1.0" in capsys.readouterr().out


def _without_times(path):
    return [{k: v for k, v in row.items() if k != "wall_time_ns"} for row in _rows(path)]


def test_bench_alloc_independent_of_threads(tmp_path):
    one, many = tmp_path / "one.csv", tmp_path / "many.csv"
    args = ["bench", "alloc", "--config", str(DATA / "bench_alloc.json"), "--sizes", "30,60", "--trials", "2"]
    assert main(args + ["--threads", "1", "--out", str(one)]) == 0
    assert main(args + ["--threads", "4", "--out", str(many)]) == 0

    assert _without_times(one) == _without_times(many)
    assert len(_rows(one)) == 2 * 2 * 4


@pytest.mark.parametrize("threads", [1, 4])
def test_threads_setting_is_the_default(tmp_path, monkeypatch, threads):
    baseline = tmp_path / "baseline.csv"
    out = tmp_path / "out.csv"
    args = ["bench", "alloc", "--config", str(DATA / "bench_alloc.json"), "--sizes", "30", "--trials", "3"]
    assert main(args + ["--threads", "1", "--out", str(baseline)]) == 0

    monkeypatch.setattr(settings, "threads", threads)
    assert settings.effective_threads() == threads
    assert settings.effective_threads(2) == 2
    assert main(args + ["--out", str(out)]) == 0

    assert _without_times(out) == _without_times(baseline)


def test_bench_sched_and_bound(tmp_path):
    sched = tmp_path / "sched.json"
    assert main(["bench", "sched", "--sizes", "10", "--trials", "2", "--format", "json", "--out", str(sched)]) == 0
    assert len(json.loads(sched.read_text())) == 2 * 4

    bound = tmp_path / "bound.csv"
    ce = tmp_path / "ce"
    args = ["bench", "bound", "--trials", "25", "--seed", "3", "--counterexamples", str(ce), "--out", str(bound)]
    assert main(args) == 0
    assert len(_rows(bound)) == 25
    assert not ce.exists()
