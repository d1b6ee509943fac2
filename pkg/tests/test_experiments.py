import pytest

from dagsim import ConfigError
from dagsim.experiments import (
    AGGREGATED_COLUMNS,
    CSV_COLUMNS,
    alpha_sweep,
    append_csv_row,
    format_value,
    lambda_sweep,
    malicious_count_sweep,
    run_single,
    write_csv,
)

from .conftest import small_config


def tiny_base(**overrides):
    return small_config(total_blocks=25, mempool_capacity=120, **overrides)


def read_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestSweepMechanics:
    def test_rows_cover_every_setting_and_seed(self):
        rows = malicious_count_sweep(
            tiny_base(), malicious_counts=(0, 2), seeds=(1, 2), workers=1
        )
        seed_rows = [r for r in rows if r["row_kind"] == "seed"]
        assert {(r["setting"], r["seed"]) for r in seed_rows} == {
            (0.0, 1),
            (0.0, 2),
            (2.0, 1),
            (2.0, 2),
        }
        kinds = [r["row_kind"] for r in rows]
        assert kinds.count("mean") == 2 and kinds.count("stddev") == 2

    def test_aggregates_match_seed_rows(self):
        rows = malicious_count_sweep(
            tiny_base(), malicious_counts=(1,), seeds=(1, 2, 3), workers=1
        )
        seeds = [r for r in rows if r["row_kind"] == "seed"]
        mean = next(r for r in rows if r["row_kind"] == "mean")
        for col in AGGREGATED_COLUMNS:
            values = [r[col] for r in seeds if r[col] is not None]
            if values:
                assert mean[col] == pytest.approx(sum(values) / len(values))

    def test_worker_count_does_not_change_rows(self):
        kwargs = dict(malicious_counts=(0, 1), seeds=(1, 2))
        serial = malicious_count_sweep(tiny_base(), workers=1, **kwargs)
        parallel = malicious_count_sweep(tiny_base(), workers=2, **kwargs)
        assert serial == parallel

    def test_all_honest_leaves_malicious_columns_na(self):
        rows = malicious_count_sweep(
            tiny_base(), malicious_counts=(0,), seeds=(1,), workers=1
        )
        row = rows[0]
        assert row["malicious_profit_mean"] is None
        assert row["profit_ratio"] is None
        assert row["honest_profit_mean"] > 0

    def test_all_malicious_leaves_honest_columns_na(self):
        rows = malicious_count_sweep(
            tiny_base(), malicious_counts=(3,), seeds=(1,), workers=1
        )
        row = rows[0]
        assert row["honest_profit_mean"] is None
        assert row["malicious_profit_mean"] > 0


class TestValidation:
    def test_malicious_count_beyond_miner_count(self):
        with pytest.raises(ConfigError):
            malicious_count_sweep(tiny_base(), malicious_counts=(4,), seeds=(1,))

    def test_alpha_out_of_range(self):
        with pytest.raises(ConfigError):
            alpha_sweep(tiny_base(), alphas=(0.5,), seeds=(1,))
        with pytest.raises(ConfigError):
            alpha_sweep(tiny_base(), alphas=(0.0,), seeds=(1,))

    def test_lambda_outside_table_range(self):
        with pytest.raises(ConfigError):
            lambda_sweep(tiny_base(), lambdas=(5.0,), seeds=(1,))
        with pytest.raises(ConfigError):
            lambda_sweep(tiny_base(), lambdas=(601.0,), seeds=(1,))

    def test_unknown_mode(self):
        with pytest.raises(ConfigError):
            lambda_sweep(tiny_base(), lambdas=(20.0,), mode="mixed", seeds=(1,))


class TestAlphaSweep:
    def test_two_miner_population(self):
        rows = alpha_sweep(tiny_base(), alphas=(0.3,), seeds=(1,), workers=1)
        row = rows[0]
        assert row["miner_count"] == 2
        assert row["alpha"] == pytest.approx(0.3)
        assert row["strategies"] == "rational|random"
        assert row["powers"] == "0.3|0.7"


class TestCsv:
    def test_schema_is_stable_superset(self, tmp_path):
        rows = lambda_sweep(
            tiny_base(), lambdas=(20.0,), mode="all-honest", seeds=(1,), workers=1
        )
        path = tmp_path / "out.csv"
        write_csv(rows, path)
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        for line in lines[1:]:
            assert len(line.split(",")) == len(CSV_COLUMNS)

    def test_byte_identical_reruns(self, tmp_path):
        for name in ("a.csv", "b.csv"):
            rows = malicious_count_sweep(
                tiny_base(), malicious_counts=(0, 1), seeds=(1, 2), workers=2
            )
            write_csv(rows, tmp_path / name)
        assert read_bytes(tmp_path / "a.csv") == read_bytes(tmp_path / "b.csv")

    def test_append_writes_header_once(self, tmp_path):
        path = tmp_path / "single.csv"
        row = run_single(tiny_base())
        append_csv_row(row, path)
        append_csv_row(row, path)
        lines = path.read_text().splitlines()
        assert len(lines) == 3
        assert lines[1] == lines[2]

    def test_na_serialization(self):
        assert format_value(None) == "NA"
        assert format_value(0.123456789) == "0.123457"
        assert format_value(3) == "3"


def test_run_single_dumps_dag_when_asked(tmp_path):
    dump = tmp_path / "dag.csv"
    row = run_single(tiny_base(), dump_dag_path=dump)
    lines = dump.read_text().splitlines()
    assert lines[0] == "id,miner,mined_at,parents,tx_count"
    assert len(lines) == 2 + row["total_blocks"]  # header + genesis + mined
