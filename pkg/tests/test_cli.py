import pytest

from critgb.cli import (BenchRecord, bench_cell, bench_grid, least_squares_slope,
                        main, read_csv, trend_points, write_csv)
from critgb.systems import ProblemShape, read_instance


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAnalyze:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "analyze", "--n", "3", "--p", "1",
                           "--degrees", "3,2")
        assert code == 0
        assert "delta 14" in out
        assert "dreg 5" in out
        assert "hs_critical 1,3,5,4,1" in out


class TestGenSolve:
    def test_round_trip(self, tmp_path, capsys):
        inst = tmp_path / "inst.txt"
        code, out, _ = run(capsys, "gen", "--n", "2", "--p", "1",
                           "--degrees", "1,2", "--seed", "1",
                           "-o", str(inst))
        assert code == 0
        sysm = read_instance(inst)
        assert sysm.shape == ProblemShape(2, 1, (1, 2))
        code, out, _ = run(capsys, "solve", str(inst))
        assert code == 0
        assert "status ok" in out
        assert "delta 2" in out
        assert "grevlex_basis:" in out and "lex_basis:" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "solve", "/nonexistent/instance.txt")
        assert code == 2

    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "gen", "--n", "2")
        assert code == 1


class TestKpoly:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "kpoly", "--n", "3", "--p", "1",
                           "--degrees", "3,2")
        assert code == 0
        assert "permutation 1,3,4,2" in out
        assert "t1^2*t2 + t1*t2^2 - 3*t1*t2 + 1" in out


class TestEnCheck:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "en-check", "--n", "4", "--p", "1",
                           "--degrees", "3,2")
        assert code == 0
        assert "ranks 1,6,8,3" in out
        assert "complex ok" in out
        assert "minors ok" in out


class TestSweep:
    def test_small(self, capsys):
        code, out, _ = run(capsys, "sweep", "--max-n", "3")
        assert code == 0
        assert "sweep ok" in out


class TestBench:
    def test_cell_record_fields(self):
        rec = bench_cell(ProblemShape(2, 1, (1, 3)), seed=0, prime=65521)
        assert rec.status == "ok"
        assert rec.dwit_empirical <= rec.dwit_bound
        assert rec.solve_time_seconds >= 0 and rec.fglm_time_seconds >= 0
        assert rec.delta == 6

    def test_csv_round_trip(self, tmp_path):
        cells = [(2, 1, (1, 3)), (2, 1, (3, 2))]
        records = bench_grid(cells, seeds=2, prime=65521)
        path = tmp_path / "bench.csv"
        write_csv(records, path)
        assert read_csv(path) == records
        with open(path) as fh:
            header = fh.readline().strip().split(",")
        assert header == BenchRecord.columns()

    def test_ok_rows_respect_invariants(self):
        records = bench_grid([(2, 1, (2, 3))], seeds=3, prime=65521)
        for r in records:
            assert r.status == "ok"
            assert r.dwit_empirical <= r.dwit_bound

    def test_slope_helper(self):
        assert least_squares_slope([(0, 0), (1, 2)]) == pytest.approx(2.0)
        with pytest.raises(ValueError):
            least_squares_slope([(1, 1)])

    def test_trend_points_skip_failures(self):
        rec = bench_cell(ProblemShape(2, 1, (1, 3)), seed=0, prime=65521)
        bad = BenchRecord(**{**rec.__dict__, "status": "genericity-failure:x"})
        pts = trend_points([rec, bad])
        assert len(pts) == 1

    def test_cli_bench_writes_files(self, tmp_path, capsys):
        csv_path = tmp_path / "b.csv"
        dat_path = tmp_path / "b.dat"
        code, out, _ = run(capsys, "bench", "--seeds", "1",
                           "--cells", "2,1,1:3;2,1,3:2",
                           "-o", str(csv_path), "--plot-data", str(dat_path))
        assert code == 0
        assert csv_path.exists() and dat_path.exists()
        rows = read_csv(csv_path)
        assert len(rows) == 2
        lines = dat_path.read_text().strip().splitlines()
        assert all(len(line.split()) == 2 for line in lines)

    def test_quadratic_cells_rejected(self, capsys):
        code, _, err = run(capsys, "bench", "--seeds", "1",
                           "--cells", "2,1,2:2", "-o", "/tmp/x.csv")
        assert code == 1

    def test_fig2_mode(self, tmp_path, capsys):
        csv_path = tmp_path / "fig2.csv"
        dat_path = tmp_path / "fig2.dat"
        code, out, _ = run(capsys, "bench", "--fig2", "--seeds", "1",
                           "-o", str(csv_path), "--plot-data", str(dat_path))
        assert code == 0
        rows = read_csv(csv_path)
        assert sorted({r.n for r in rows}) == [2, 3, 4]
        assert all(r.degrees == "3:3" for r in rows)
        lines = dat_path.read_text().strip().splitlines()
        assert len(lines) == len([r for r in rows if r.status == "ok"])

    def test_parallel_workers_merge_deterministically(self):
        cells = [(2, 1, (1, 3)), (2, 1, (3, 2))]
        serial = bench_grid(cells, seeds=2, prime=65521)
        parallel = bench_grid(cells, seeds=2, prime=65521, workers=2)
        keyed = lambda rs: [(r.seed, r.n, r.p, r.degrees, r.delta,
                             r.dwit_empirical, r.status) for r in rs]
        assert keyed(serial) == keyed(parallel)


class TestKernelBench:
    def test_runs(self, capsys):
        code, out, _ = run(capsys, "kernel-bench")
        assert code == 0
        assert "rref" in out and "axpy_merge" in out


class TestPrimeEnvVar:
    def test_default_prime_from_environment(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("CRITGB_PRIME", "101")
        inst = tmp_path / "inst.txt"
        code, _, _ = run(capsys, "gen", "--n", "2", "--p", "1",
                         "--degrees", "1,2", "-o", str(inst))
        assert code == 0
        assert read_instance(inst).field.p == 101

    def test_bad_prime_is_a_computation_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "--prime", "91", "gen", "--n", "2",
                           "--p", "1", "--degrees", "1,2",
                           "-o", str(tmp_path / "x.txt"))
        assert code == 2
        assert "prime" in err
