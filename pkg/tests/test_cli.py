import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from chanent import cli
from chanent import io as jio
from chanent.channels import Channel, random_unital_kraus, state_channel
from chanent.channels import DensityOperator

from conftest import max_unit_deviation, xlogx_sum
from oracles import grid_minimum_2x2


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    args = cli.build_parser().parse_args(list(argv))
    code = cli.run(cli.RunConfig(**vars(args)), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def channel_file(tmp_path):
    def write(obj, name="channel.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


def stochastic_spec(s):
    return {"kind": "stochastic", "dim": len(s), "data": s}


def test_choi_example(channel_file):
    code, out, _ = run("choi", "--input", channel_file(stochastic_spec([[0.5, 0.5], [0.5, 0.5]])))
    assert code == 0
    result = json.loads(out)
    assert result["spectrum"] == [0.5] * 4
    assert result["properties"]["A"] and result["properties"]["B"] and result["properties"]["C"]
    assert result["extremal"] is False


def test_choi_identity(channel_file):
    chan = jio.channel_to_json(Channel.identity(2))
    code, out, _ = run("choi", "--input", channel_file(chan))
    assert code == 0
    assert json.loads(out)["extremal"] is True


def test_choi_transpose(channel_file):
    chan = jio.channel_to_json(Channel.transpose(2))
    code, out, _ = run("choi", "--input", channel_file(chan))
    assert code == 2
    assert json.loads(out)["properties"]["A"] is False


def test_choi_output_round_trip(channel_file, rng):
    t = random_unital_kraus(2, 2, rng)
    code, out, _ = run("choi", "--input", channel_file(jio.channel_to_json(t)))
    assert code == 0
    back = jio.channel_from_json(json.loads(out))
    assert back.kind == "superop"
    assert max_unit_deviation(back, t) < 1e-10


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run("choi", "--input", str(bad))
    assert code == 1
    assert "cannot read" in err


def test_invalid_stochastic(channel_file):
    code, _, err = run("hent", "--input", channel_file(stochastic_spec([[0.5, 0.6], [0.5, 0.5]])))
    assert code == 1
    assert "sum to 1" in err


@pytest.mark.parametrize(
    "obj",
    [
        {"kind": "unknown", "dim": 2, "data": []},
        {"kind": "superop", "dim": 2},
        {"kind": "kraus", "dim": 2, "data": [[[1, 0]]]},
        {"kind": "state", "dim": 2, "data": [[["a", 0], 0], [0, 1]]},
    ],
)
def test_bad_specifications(channel_file, obj):
    code, _, _ = run("choi", "--input", channel_file(obj))
    assert code == 1


def test_hent_half():
    code, out, _ = run("hent", "--p", "0.5")
    assert code == 0
    result = json.loads(out)
    assert result["H"] == pytest.approx(0.693147, abs=1e-6)
    assert result["d"] == pytest.approx(1.386294, abs=1e-6)
    assert result["gap"] == pytest.approx(0.693147, abs=1e-6)


def test_hent_deterministic(channel_file):
    code, out, _ = run("hent", "--input", channel_file(stochastic_spec([[0, 1], [1, 0]])))
    result = json.loads(out)
    assert code == 0
    assert (result["H"], result["d"], result["gap"]) == (0, 0, 0)
    assert result["witness"] == [{"assignment": [2, 1], "label": "swap", "weight": 1.0}]


def test_hent_general_matches_grid():
    code, out, _ = run("hent", "--p", "0.6", "--q", "0.7")
    assert code == 0
    assert json.loads(out)["H"] == pytest.approx(grid_minimum_2x2([[0.6, 0.4], [0.7, 0.3]]), abs=1e-5)


def test_hent_bits():
    _, out, _ = run("hent", "--p", "0.5", "--bits")
    result = json.loads(out)
    assert result["H"] == pytest.approx(1.0)
    assert result["unit"] == "bits"


def test_hent_quantum_input(channel_file, rng):
    chan = jio.channel_to_json(random_unital_kraus(2, 2, rng))
    code, out, err = run("hent", "--input", channel_file(chan))
    assert code == 3
    assert out == ""
    assert "entropy" in err


def test_entropy_quantum(channel_file):
    u = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
    phi = DensityOperator(u @ np.diag([0.2, 0.8]) @ u.conj().T)
    code, out, _ = run("entropy", "--input", channel_file(jio.channel_to_json(state_channel(phi))))
    assert code == 0
    result = json.loads(out)
    assert result["ohya"] == pytest.approx(xlogx_sum(0.2, 0.8), abs=1e-10)
    assert result["H_upper"] == pytest.approx(result["ohya"], abs=1e-10)
    assert result["d"] == pytest.approx(2 * result["ohya"], abs=1e-10)
    assert result["classical"] is False


def test_entropy_classical_normalized():
    _, out, _ = run("entropy", "--p", "0.5", "--normalized")
    result = json.loads(out)
    assert result["d"] == pytest.approx(2 * np.log(2))  # spectrum (1/4, 1/4, 1/4, 1/4)
    assert result["H"] == pytest.approx(np.log(2))


def test_verify_classical():
    code, out, _ = run("verify", "--p", "0.3", "--q", "0.9")
    result = json.loads(out)
    assert code == 0
    assert result["holds"] is True
    assert result["round_trip_error"] < 1e-10


def test_verify_quantum(channel_file, rng):
    code, out, _ = run("verify", "--input", channel_file(jio.channel_to_json(random_unital_kraus(2, 3, rng))))
    assert code == 3
    assert json.loads(out)["properties"]["A"] is True


def test_example_rows():
    code, out, _ = run("example", "--sweep-step", "0.1")
    assert code == 0
    assert "\r" not in out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "H_closed_form", "H_vertex", "d_choi", "gap"]
    data = np.array(rows[1:], dtype=float)
    assert len(data) == 9
    assert np.allclose(data[:, 1], data[:, 2], atol=1e-10)
    assert np.all(data[:, 4] > 0)
    half = data[4]
    assert half == pytest.approx([0.5, 0.693147, 0.693147, 1.386294, 0.693147], abs=1e-6)
    seven = data[6]
    assert seven[2] == pytest.approx(xlogx_sum(0.7, 0.3), abs=1e-10)
    assert seven[3] == pytest.approx(1.221729, abs=1e-6)


def test_example_small_p():
    _, out, _ = run("example", "--sweep-step", "0.0001", "--stop", "0.0003")
    data = np.array(list(csv.reader(io.StringIO(out)))[1:], dtype=float)
    assert np.all(np.diff(data[:, 1]) > 0)
    assert data[0, 1] < 2e-3 and data[0, 3] < 4e-3


def test_example_bad_step():
    code, _, err = run("example", "--sweep-step", "0")
    assert code == 1
    assert "positive" in err


def test_random_summary():
    code, out, _ = run("random", "--seed", "42", "--count", "1000", "--n", "2")
    assert code == 0
    assert json.loads(out)["failures"] == 0


def test_random_deterministic_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("random", "--seed", "7", "--count", "20", "--n", "3", "--output", str(a))
    run("random", "--seed", "7", "--count", "20", "--n", "3", "--output", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_random_forced_deterministic(monkeypatch):
    monkeypatch.setattr(cli, "random_stochastic", lambda n, rng: np.eye(n)[::-1])
    code, out, _ = run("random", "--count", "1")
    assert code == 0
    assert json.loads(out)["min_gap"] == 0


def test_random_bad_config():
    assert run("random", "--count", "0")[0] == 1
    assert run("random", "--n", "4")[0] == 1


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "chanent.cli", "hent", "--p", "0.5"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["H"] == pytest.approx(np.log(2), abs=1e-11)


def test_json_precision():
    assert jio.round_sig(np.pi) == 3.14159265359
    assert jio.dumps({"x": 1 / 3}) == '{\n  "x": 0.333333333333\n}\n'
