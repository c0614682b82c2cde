import json
from fractions import Fraction

import pytest

from lattice_mgn import cli
from lattice_mgn.pipeline import CACHE_ENV, SCHEMA_VERSION, StoreRejected, ValueStore, pipeline_run
from lattice_mgn.recursion import levels_upto


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_level_one_store():
    store = pipeline_run(1)
    assert sorted(store.nbar) == sorted(store.n) == [(0, 3), (1, 1)]
    assert len(store.nbar) + len(store.n) == 4
    with pytest.raises(ValueError):
        pipeline_run(0)


def test_round_trip(store, tmp_path):
    path = tmp_path / "s.json"
    store.save(path)
    again = ValueStore.load(path)
    assert again.nbar == store.nbar and again.n == store.n and again.samples == store.samples
    assert again.to_json() == store.to_json()
    doc = json.loads(path.read_text())
    assert doc["schemaVersion"] == SCHEMA_VERSION
    assert doc["chi"]["closed"]["2,1"] == "247/1440"
    assert set(doc["polynomials"]) == {f"{kind}:{g},{n}" for kind in ("Nbar", "N") for g, n in levels_upto(5)}


def _mutated(store, tmp_path, edit):
    doc = store.to_json()
    edit(doc)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    return path


def test_schema_mismatch_is_discarded(store, tmp_path):
    path = _mutated(store, tmp_path, lambda d: d.update(schemaVersion=SCHEMA_VERSION + 1))
    assert ValueStore.load(path) is None
    with pytest.raises(StoreRejected):
        ValueStore.from_json(json.loads(path.read_text()))


def test_wrong_sample_is_discarded(store, tmp_path):
    def edit(doc):
        samples = doc["samples"]["Nbar:0,3"]
        for key in samples:
            samples[key] = str(Fraction(samples[key]) + 1)
    assert ValueStore.load(_mutated(store, tmp_path, edit)) is None


def test_missing_prerequisite_is_discarded(store, tmp_path):
    def edit(doc):
        del doc["polynomials"]["N:1,2"]
    assert ValueStore.load(_mutated(store, tmp_path, edit)) is None


def test_unreadable_file_is_discarded(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert ValueStore.load(path) is None
    assert ValueStore.load(tmp_path / "absent.json") is None


def test_fit_extends_a_partial_cache(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert run(capsys, "fit", "--max-level", "1", "--cache", str(path))[0] == 0
    code, out = run(capsys, "fit", "--max-level", "2", "--cache", str(path))
    assert code == 0 and len(out.splitlines()) == 4
    assert ValueStore.load(path).max_level == 2


@pytest.mark.parametrize("argv,want", [
    (["eval", "--g", "1", "--n", "2", "--b", "2,2"], "17/12\n"),
    (["eval", "--g", "0", "--n", "3", "--b", "1,1,1"], "0\n"),
    (["eval", "--g", "1", "--n", "1", "--b", "4", "--kind", "n"], "1/4\n"),
    (["eval", "--g", "1", "--n", "2", "--b", "2,2", "--kind", "n"], "0\n"),
    (["eval", "--g", "1", "--n", "2", "--b", "2,0"], "11/12\n"),
    (["chi", "--g", "0", "--n", "5", "--closed"], "7\n"),
    (["chi", "--g", "1", "--n", "1", "--open"], "-1/12\n"),
    (["chi", "--g", "2", "--n", "1"], "open    1/120\nclosed  247/1440\n"),
    (["poly", "--g", "1", "--n", "1", "--k", "0"], "1/48*b1^2 + 5/12\n"),
    (["census", "--g", "1", "--n", "1", "--b", "4"], '{"count": "1/4", "structures": 6, "halfEdges": 4}\n'),
])
def test_cli_outputs(warm_env, capsys, argv, want):
    code, out = run(capsys, *argv)
    assert code == 0 and out == want


def test_poly_json(warm_env, capsys):
    code, out = run(capsys, "poly", "--g", "1", "--n", "2", "--k", "2", "--format", "json")
    doc = json.loads(out)
    assert (doc["g"], doc["n"], doc["k"]) == (1, 2, 2)
    assert {"exp": [0, 0], "coef": "7/32"} in doc["terms"]


def test_dualgraphs_command(capsys):
    code, out = run(capsys, "dualgraphs", "--g", "1", "--n", "2")
    assert json.loads(out) == {"g": 1, "n": 2, "count": 5, "autOrders": [1, 1, 2, 2, 2]}
    code, out = run(capsys, "dualgraphs", "--g", "1", "--n", "1", "--list")
    assert len(json.loads(out)) == 2


def test_series_commands(warm_env, capsys):
    code, out = run(capsys, "series", "--which", "f0", "--order", "5")
    assert json.loads(out)["coefficients"] == ["0", "1", "1/2", "1/3", "7/24", "17/60"]
    code, out = run(capsys, "series", "--which", "f1", "--order", "2")
    assert json.loads(out)["coefficients"] == ["5/12", "1/2", "17/24"]
    code, out = run(capsys, "series", "--which", "pde", "--order", "5")
    assert code == 0 and json.loads(out)["vanishes"] is True


def test_verify_exit_code(warm_env, capsys):
    code, out = run(capsys, "verify", "--suite", "table")
    assert code == 0 and json.loads(out)["passed"]


def test_bad_input_exits(capsys):
    with pytest.raises(SystemExit):
        cli.main(["eval", "--g", "0", "--n", "2", "--b", "1,1"])
    with pytest.raises(SystemExit):
        cli.main(["eval", "--g", "0", "--n", "3", "--b", "1,1"])
    with pytest.raises(SystemExit):
        cli.main(["census", "--g", "0", "--n", "3", "--b", "8,8,8"])
    with pytest.raises(SystemExit):
        cli.main(["eval", "--g", "0", "--n", "3", "--b", "x"])


COLD_WARM_COMMANDS = [
    ["eval", "--g", "1", "--n", "2", "--b", "2,2"],
    ["eval", "--g", "0", "--n", "5", "--b", "1,1,0,0,2", "--kind", "n"],
    ["poly", "--g", "0", "--n", "5", "--k", "2"],
    ["poly", "--g", "1", "--n", "2", "--k", "0", "--kind", "n", "--format", "json"],
    ["chi", "--g", "1", "--n", "3"],
    ["dualgraphs", "--g", "0", "--n", "5"],
    ["census", "--g", "0", "--n", "4", "--b", "2,2,0,0"],
    ["series", "--which", "f1", "--order", "4"],
    ["fit", "--max-level", "2", "--cache", "{cache}"],
]


@pytest.mark.parametrize("argv", COLD_WARM_COMMANDS, ids=lambda a: a[0])
def test_cold_and_warm_runs_match(fitted_cache, tmp_path, monkeypatch, capsys, argv):
    outputs = []
    for cache in (tmp_path / "cold.json", fitted_cache[0]):
        monkeypatch.setenv(CACHE_ENV, str(cache))
        if "fit" in argv:
            target = tmp_path / ("fresh.json" if cache.name == "cold.json" else "warm.json")
            if cache != tmp_path / "cold.json":
                target.write_text(cache.read_text())
            args = [a.replace("{cache}", str(target)) for a in argv]
        else:
            args = argv
        outputs.append(run(capsys, *args))
    assert outputs[0] == outputs[1]
    assert not (tmp_path / "cold.json").exists()
