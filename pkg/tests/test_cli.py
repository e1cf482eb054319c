import csv
import json
import zlib

import pytest

from gapscope import load_cache, prime_engine
from gapscope.report_cli import main


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("GAPSCOPE_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def check_manifest(outdir):
    manifest = json.loads((outdir / "manifest.json").read_text())
    for out in manifest["outputs"]:
        target = outdir / out["path"]
        assert target.exists()
        assert zlib.crc32(target.read_bytes()) == out["crc32"]
    return manifest


def test_exponents_csv(tmp_path):
    out = tmp_path / "exp"
    assert main(["exponents", "--kind", "primes", "--range", "2..1000",
                 "--outdir", str(out)]) == 0
    header, rows = read_csv(out / "exponents.csv")
    assert header == ["n", "s_n", "s_next", "frac_ratio", "exponent",
                      "asymptote", "defined"]
    assert len(rows) == 999
    assert all(r[6] == "true" for r in rows)
    assert all(r[4] != "" for r in rows)
    assert rows[0][0] == "2" and rows[-1][0] == "1000"
    assert rows[0][5] == ""  # asymptote undefined at n = 2
    manifest = check_manifest(out)
    assert manifest["command"] == "exponents"
    assert manifest["tool_version"]


def test_exponents_naturals_has_undefined_row(tmp_path):
    out = tmp_path / "expn"
    assert main(["exponents", "--kind", "naturals", "--range", "2..50",
                 "--outdir", str(out)]) == 0
    _, rows = read_csv(out / "exponents.csv")
    assert rows[0][6] == "false" and rows[0][4] == ""
    assert all(r[6] == "true" for r in rows[1:])


def test_equidist_csv_decreasing(tmp_path):
    out = tmp_path / "eqd"
    assert main(["equidist", "--kind", "primes", "--ns", "dyadic:10..14",
                 "--outdir", str(out)]) == 0
    header, rows = read_csv(out / "equidist.csv")
    assert header == ["kind", "n", "star_discrepancy", "weyl_h1", "weyl_h2",
                      "riemann_identity_err"]
    disc = [float(r[2]) for r in rows]
    assert disc == sorted(disc, reverse=True)
    assert all(d1 > d2 for d1, d2 in zip(disc, disc[1:]))
    # Koksma consistency on every row
    assert all(float(r[5]) <= float(r[2]) for r in rows)
    check_manifest(out)


def test_equidist_combo_kind(tmp_path):
    out = tmp_path / "eqc"
    assert main(["equidist", "--kind", "combo:1,1", "--ns", "64,128",
                 "--outdir", str(out)]) == 0
    _, rows = read_csv(out / "equidist.csv")
    assert [r[0] for r in rows] == ["combo:1,1", "combo:1,1"]


def test_conjectures_battery(tmp_path):
    out = tmp_path / "cj"
    assert main(["conjectures", "--range", "2..20000", "--outdir", str(out)]) == 0
    header, rows = read_csv(out / "conjectures.csv")
    assert header == ["name", "n", "lhs", "rhs", "violated"]
    names = {r[0] for r in rows}
    assert {"firoozbakht", "eq10", "eq27", "cramer_granville", "eq20",
            "eq28", "sandwich", "ratio_floor"} <= names
    eq10_viol = [r for r in rows if r[0] == "eq10" and r[4] == "True"]
    assert [int(r[1]) for r in eq10_viol] == [2, 3, 4]
    for r in eq10_viol:
        assert float(r[2]) >= float(r[3])  # lhs fails to stay below rhs
    check_manifest(out)


def test_conjectures_single_form(tmp_path):
    out = tmp_path / "cj1"
    assert main(["conjectures", "--range", "1..5000", "--form", "eq27",
                 "--outdir", str(out)]) == 0
    _, rows = read_csv(out / "conjectures.csv")
    assert {r[0] for r in rows} == {"eq27"}
    viol = sorted(int(r[1]) for r in rows if r[4] == "True")
    assert viol == [1, 2, 3, 4, 5, 6, 8, 9, 11, 30]


def test_conjectures_usage_errors(tmp_path):
    out = tmp_path / "bad"
    assert main(["conjectures", "--range", "2..1000", "--eps", "1.5",
                 "--outdir", str(out)]) == 2
    assert main(["conjectures", "--range", "1000..2", "--outdir", str(out)]) == 2
    assert main(["conjectures", "--range", "abc", "--outdir", str(out)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["conjectures", "--range", "1..100", "--form", "eq99"])
    assert exc.value.code == 2


def test_equidist_usage_errors(tmp_path):
    assert main(["equidist", "--kind", "primes", "--ns", "bogus"]) == 2
    assert main(["equidist", "--kind", "fib", "--ns", "dyadic:4..6"]) == 2
    assert main(["exponents", "--kind", "primes", "--range", "0..10"]) == 2


def test_primes_save_and_load(tmp_path, capsys):
    path = tmp_path / "ten.pgc"
    assert main(["primes", "--count", "10", "--save", str(path)]) == 0
    out = capsys.readouterr().out
    assert "count=10" in out and "p_10=29" in out
    assert load_cache(path).primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_reproduce_small_not_comparable(tmp_path):
    out = tmp_path / "rep"
    assert main(["reproduce", "--n", "1024", "--outdir", str(out)]) == 0
    payload = json.loads((out / "reproduce.json").read_text())
    assert payload["paper_values"] == "not comparable"
    assert payload["abs_diffs"] == "not comparable"
    assert 1.0 < payload["eq14_lhs"] < 1.01
    check_manifest(out)


def test_reproduce_small_deterministic(tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert main(["reproduce", "--n", "4096", "--outdir", str(out1)]) == 0
    assert main(["reproduce", "--n", "4096", "--outdir", str(out2)]) == 0
    assert (out1 / "reproduce.json").read_bytes() == (out2 / "reproduce.json").read_bytes()
    assert (out1 / "manifest.json").read_bytes() == (out2 / "manifest.json").read_bytes()


def test_reproduce_recovers_from_corrupt_cache(tmp_path):
    cache = prime_engine.default_cache_path(1024)
    cache.parent.mkdir(parents=True, exist_ok=True)
    cache.write_bytes(b"PGC1 this is nonsense")
    out = tmp_path / "rep"
    assert main(["reproduce", "--n", "1024", "--outdir", str(out)]) == 0
    assert load_cache(cache).count == 1024  # regenerated in place


def test_reproduce_uses_cache_second_time(tmp_path):
    out = tmp_path / "rep"
    assert main(["reproduce", "--n", "2048", "--outdir", str(out)]) == 0
    assert prime_engine.default_cache_path(2048).exists()
    assert main(["reproduce", "--n", "2048", "--outdir", str(out)]) == 0


def test_csv_outputs_deterministic(tmp_path):
    o1, o2 = tmp_path / "d1", tmp_path / "d2"
    for out in (o1, o2):
        assert main(["exponents", "--kind", "primes", "--range", "2..500",
                     "--outdir", str(out)]) == 0
    assert (o1 / "exponents.csv").read_bytes() == (o2 / "exponents.csv").read_bytes()
    assert (o1 / "manifest.json").read_bytes() == (o2 / "manifest.json").read_bytes()
    for out in (o1, o2):
        assert main(["conjectures", "--range", "2..2000",
                     "--outdir", str(out)]) == 0
    assert (o1 / "conjectures.csv").read_bytes() == (o2 / "conjectures.csv").read_bytes()


def test_csv_floats_round_trip(tmp_path):
    out = tmp_path / "rt"
    assert main(["equidist", "--kind", "primes", "--ns", "512,1024",
                 "--outdir", str(out)]) == 0
    _, rows = read_csv(out / "equidist.csv")
    from gapscope.equidist import star_discrepancy
    from gapscope.sequences import PRIMES
    table = prime_engine.load_or_build(1024)
    assert float(rows[0][2]) == star_discrepancy(PRIMES, 512, table)
    assert float(rows[1][2]) == star_discrepancy(PRIMES, 1024, table)
