import pytest

from jbekit.cli import main


@pytest.fixture
def sample(tmp_path):
    p = tmp_path / "in.bin"
    p.write_bytes(bytes([0, 0, 1, 2, 3, 0, 0, 0]) * 500 + b"tail")
    return p


def test_compress_decompress_inspect(sample, tmp_path, capsys):
    out = tmp_path / "out.jbk"
    assert main(["compress", "--pipeline", "5", str(sample), str(out)]) == 0
    line = capsys.readouterr().out
    assert "original=4004" in line and "ratio=" in line
    assert main(["inspect", str(out)]) == 0
    assert "RLE,BWT,MTF,JBE,ARI" in capsys.readouterr().out
    back = tmp_path / "back.bin"
    assert main(["decompress", str(out), str(back)]) == 0
    assert back.read_bytes() == sample.read_bytes()


def test_stage_list_matches_preset1(sample, tmp_path, capsys):
    a, b = tmp_path / "a.jbk", tmp_path / "b.jbk"
    assert main(["compress", "--stages", "rle,ari", str(sample), str(a)]) == 0
    assert main(["compress", "--pipeline", "1", str(sample), str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    main(["inspect", str(a)])
    assert "preset: 1" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["--pipeline", "9"],
    ["--stages", "rle,lzw"],
    ["--pipeline", "1", "--stages", "rle"],
])
def test_bad_selector_exit_2(sample, tmp_path, argv):
    with pytest.raises(SystemExit) as e:
        main(["compress", *argv, str(sample), str(tmp_path / "x.jbk")])
    assert e.value.code == 2


def test_missing_input_exit_1(tmp_path, capsys):
    assert main(["compress", str(tmp_path / "nope"), str(tmp_path / "x")]) == 1
    assert "error" in capsys.readouterr().err


def test_truncated_container(sample, tmp_path, capsys):
    out = tmp_path / "out.jbk"
    main(["compress", str(sample), str(out)])
    out.write_bytes(out.read_bytes()[:-5])
    assert main(["decompress", str(out), str(tmp_path / "r")]) == 1
    err = capsys.readouterr().err
    assert "truncated" in err
    assert not (tmp_path / "r").exists()


def test_wrong_magic(tmp_path, capsys):
    bad = tmp_path / "bad.jbk"
    bad.write_bytes(b"PK\x03\x04 definitely not ours")
    assert main(["decompress", str(bad), str(tmp_path / "r")]) == 1
    assert "not a JBEK container" in capsys.readouterr().err
    assert main(["inspect", str(bad)]) == 1


def test_corrupt_names_stage(sample, tmp_path, capsys):
    out = tmp_path / "out.jbk"
    main(["compress", "--pipeline", "2", str(sample), str(out)])
    blob = out.read_bytes()
    out.write_bytes(blob[:-1])
    assert main(["decompress", str(out), str(tmp_path / "r")]) == 1
    assert "[ARI]" in capsys.readouterr().err


def test_no_color_env(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("JBEKIT_NO_COLOR", "1")
    main(["inspect", str(tmp_path / "missing")])
    assert "\033[" not in capsys.readouterr().err


def test_bench_csv_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["bench", "--seed", "42", "--sizes", "1k,2k", "--samples", "2", "--jobs", "1"]
    assert main([*args, "--out", str(a)]) == 0
    assert main([*args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert len(lines) == 26 and lines[0] == "type,preset,mean_ratio,min,max,n"
    assert "preset 5:" in capsys.readouterr().err


def test_bench_reuses_corpus(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    args = ["bench", "--sizes", "512", "--samples", "1", "--corpus", str(corpus), "--format", "markdown"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert (corpus / "manifest.tsv").exists()
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert "### bitmap8" in first
