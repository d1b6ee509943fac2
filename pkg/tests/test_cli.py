from dagsim.cli import main

CONFIG_SMALL = """
block_creation_time = 20
propagation_delay = 5
total_blocks = 25
miner_count = 3
miner_powers = equal
miner_strategies = random,random,rational
block_capacity = 20
mempool_capacity = 120
fee_mean = 150
topology = ring
seed = 9
"""


def write_config(tmp_path, text=CONFIG_SMALL, name="sim.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_run_appends_one_row(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out = tmp_path / "rows.csv"
    assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
    assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3  # header + two identical rows
    assert lines[1] == lines[2]


def test_missing_config_file_reports_not_found(tmp_path, capsys):
    rc = main(
        ["run", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path / "o.csv")]
    )
    assert rc == 2
    assert "not found" in capsys.readouterr().err


def test_invalid_lambda_names_the_field(tmp_path, capsys):
    cfg = write_config(
        tmp_path, CONFIG_SMALL.replace("block_creation_time = 20", "block_creation_time = 0")
    )
    rc = main(["run", "--config", str(cfg), "--out", str(tmp_path / "o.csv")])
    assert rc == 2
    assert "block_creation_time" in capsys.readouterr().err


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg = write_config(tmp_path, CONFIG_SMALL + "\nmystery_knob = 4\n")
    rc = main(["run", "--config", str(cfg), "--out", str(tmp_path / "o.csv")])
    assert rc == 2
    assert "mystery_knob" in capsys.readouterr().err


def test_dump_dag_flag(tmp_path):
    cfg = write_config(tmp_path)
    dump = tmp_path / "dag.csv"
    rc = main(
        [
            "run",
            "--config", str(cfg),
            "--out", str(tmp_path / "o.csv"),
            "--dump-dag", str(dump),
        ]
    )
    assert rc == 0
    assert dump.read_text().startswith("id,miner,mined_at,parents,tx_count")


def test_blocks_and_seed_overrides(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "o.csv"
    rc = main(
        ["run", "--config", str(cfg), "--out", str(out), "--blocks", "10", "--seed", "3"]
    )
    assert rc == 0
    header, row = out.read_text().splitlines()
    cells = dict(zip(header.split(","), row.split(",")))
    assert cells["total_blocks"] == "10"
    assert cells["seed"] == "3"


def test_exp1_writes_deterministic_csv(tmp_path):
    cfg = write_config(tmp_path)
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["exp1", "--config", str(cfg), "--malicious", "0,1", "--seeds", "1,2"]
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b), "--workers", "2"]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_exp3_mode_flag(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "lam.csv"
    rc = main(
        [
            "exp3",
            "--config", str(cfg),
            "--lambdas", "20",
            "--mode", "all-malicious",
            "--seeds", "1",
            "--out", str(out),
        ]
    )
    assert rc == 0
    body = out.read_text()
    assert "rational|rational|rational" in body


def test_exp1b_rejects_bad_alpha(tmp_path, capsys):
    cfg = write_config(tmp_path)
    rc = main(
        [
            "exp1b",
            "--config", str(cfg),
            "--alphas", "0.6",
            "--seeds", "1",
            "--out", str(tmp_path / "o.csv"),
        ]
    )
    assert rc == 2
    assert "alpha" in capsys.readouterr().err
