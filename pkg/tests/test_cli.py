import csv
import io

import numpy as np
import pytest

from frobmul.cli import CSV_COLUMNS, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from frobmul.multiplier import karatsuba_mul
from frobmul.poly_basis import BitPoly
from frobmul.selftest import SelftestConfig, run_selftest


def write(path, data):
    path.write_bytes(data)
    return str(path)


def test_mul_identity(tmp_path, capsys):
    b = bytes([0x5A, 0x00, 0x13, 0x00, 0x00])
    out = tmp_path / "c.bin"
    rc = main(["mul", write(tmp_path / "a.bin", b"\x01"), write(tmp_path / "b.bin", b), str(out)])
    assert rc == EXIT_OK
    assert out.read_bytes() == b"\x5a\x00\x13"
    assert capsys.readouterr().out.strip() == str(BitPoly.from_bytes(b).degree() + 1)


def test_mul_empty_inputs(tmp_path):
    out = tmp_path / "c.bin"
    a = write(tmp_path / "a.bin", b"")
    assert main(["mul", a, a, str(out)]) == EXIT_OK
    assert out.read_bytes() == b""


@pytest.mark.parametrize("field", ["auto", "64", "128"])
def test_mul_1mib_matches_karatsuba(tmp_path, field):
    rng = np.random.default_rng(7)
    da, db = rng.bytes(1 << 20), rng.bytes(1 << 20)
    out = tmp_path / "c.bin"
    rc = main(["mul", write(tmp_path / "a", da), write(tmp_path / "b", db), str(out), "--field", field, "--verify"])
    assert rc == EXIT_OK
    want = karatsuba_mul(BitPoly.from_bytes(da), BitPoly.from_bytes(db))
    assert out.read_bytes() == want.to_bytes()


def test_mul_missing_file(tmp_path):
    assert main(["mul", str(tmp_path / "nope"), str(tmp_path / "nope"), str(tmp_path / "c")]) == EXIT_USAGE


def test_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["mul", "a", "b", "c", "--field", "32"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE
    assert main(["bench", "--min-log", "5", "--max-log", "4"]) == EXIT_USAGE
    assert main(["bench", "--min-log", "40", "--max-log", "40", "--field", "64"]) == EXIT_USAGE


def test_selftest_quick(capsys):
    assert main(["selftest", "--level", "quick"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out and "invariants ok" in out


def test_selftest_full_includes_partition():
    results = run_selftest(SelftestConfig(level="full"))
    names = {r.name for r in results}
    assert "m16.frobenius_partition" in names
    assert all(r.ok for r in results)


def test_selftest_fault_injection(capsys):
    assert main(["selftest", "--corrupt-encode-table"]) == EXIT_VERIFY
    out = capsys.readouterr().out
    assert "FAIL encode.decode_round_trip" in out


def test_bench_csv(tmp_path):
    path = tmp_path / "b.csv"
    assert main(["bench", "--min-log", "10", "--max-log", "12", "--reps", "3", "--csv", str(path), "--seed", "1"]) == 0
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    assert [int(r["log2_size_words"]) for r in rows] == [10, 11, 12]
    assert [int(r["n_bits"]) for r in rows] == [1 << 16, 1 << 17, 1 << 18]
    assert all(r["m"] == "64" and r["reps"] == "3" for r in rows)
    means = [float(r["mean_s"]) for r in rows]
    assert means == sorted(means)
    for r in rows:
        stages = [float(r[c]) for c in CSV_COLUMNS[5:]]
        assert all(s > 0 for s in stages)
        assert sum(stages) <= float(r["mean_s"]) * 1.05


def test_bench_default_reps():
    from frobmul.cli import build_parser
    args = build_parser().parse_args(["bench"])
    assert args.reps == 100 and args.csv == "-" and args.field == "auto"


def test_bench_stdout(capsys):
    assert main(["bench", "--min-log", "8", "--max-log", "8", "--reps", "2", "--field", "128"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].split(",")[2] == "128"
