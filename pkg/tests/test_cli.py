import json

import pytest

from rors.cli import main

SUBCLASS = (
    "<http://x/A> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://x/B> .\n"
    "<http://x/B> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://x/C> .\n"
)


@pytest.fixture
def nt(tmp_path):
    def write(text, name="in.nt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_materialize_example(nt, tmp_path):
    out, rep = tmp_path / "out.nt", tmp_path / "rep.json"
    code = main(["materialize", nt(SUBCLASS), "-o", str(out), "--report", str(rep), "--sorted"])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3 and "<http://x/A> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://x/C> ." in lines
    doc = json.loads(rep.read_text())
    assert doc["output_count"] - doc["input_count"] == doc["derived_count"] == 1


def test_empty_file(nt, tmp_path):
    out = tmp_path / "out.nt"
    assert main(["materialize", nt(""), "-o", str(out)]) == 0
    assert out.read_bytes() == b""


def test_parse_errors(nt, tmp_path):
    bad = nt(SUBCLASS + "garbage\n")
    assert main(["materialize", bad, "-o", str(tmp_path / "o.nt")]) == 2
    assert main(["materialize", bad, "--lenient", "-o", str(tmp_path / "o.nt")]) == 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["materialize"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["materialize", "x.nt", "--workers", "0"])
    assert info.value.code == 1
    assert main(["stats", "/nonexistent/file.nt"]) == 1


def test_iteration_limit_exit(nt, tmp_path):
    src = nt(
        "<http://x/p> <http://www.w3.org/2000/01/rdf-schema#domain> <http://x/D> .\n"
        "<http://x/a> <http://www.w3.org/2002/07/owl#sameAs> <http://x/b> .\n"
        "<http://x/b> <http://x/p> <http://x/c> .\n"
    )
    code = main(["materialize", src, "--mode", "fixpoint", "--max-iterations", "1",
                 "-o", str(tmp_path / "o.nt")])
    assert code == 4


def test_generated_dataset_fixpoint_matches_oracle(tmp_path):
    data = tmp_path / "g.nt"
    assert main(["generate", "--size", "10000", "--seed", "42", "-o", str(data)]) == 0
    code = main(["materialize", str(data), "--mode", "fixpoint", "--verify",
                 "-o", str(tmp_path / "c.nt")])
    assert code == 0


def test_generate_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.nt", tmp_path / "b.nt"
    main(["generate", "--size", "2000", "-o", str(a)])
    main(["generate", "--size", "2000", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_stats(nt, tmp_path, capsys):
    assert main(["stats", nt(SUBCLASS)]) == 0
    assert "no instance triples" in capsys.readouterr().out
    assert main(["stats", nt("", "e.nt")]) == 1
    assert "empty dataset" in capsys.readouterr().err
    data = tmp_path / "g.nt"
    main(["generate", "--size", "5000", "-o", str(data)])
    capsys.readouterr()
    assert main(["stats", str(data), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["sameAs"] == 0 and doc["total"] == 5000


def test_strategies_and_dot(tmp_path, capsys):
    dot = tmp_path / "spo.dot"
    assert main(["strategies", "--class", "spo", "--grouped", "--dot", str(dot)]) == 0
    out = capsys.readouterr().out
    assert "O3 -> R3 -> O7 -> O4" in out
    assert dot.read_text().startswith("digraph")
    assert main(["strategies", "--class", "all", "--limit", "5"]) == 0
    assert "maximal paths: 5+" in capsys.readouterr().out


def test_rules_dump(capsys):
    assert main(["rules", "dump", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 27
    assert main(["rules", "dump"]) == 0
    assert capsys.readouterr().out.count("\n") == 28


def test_bench(capsys):
    code = main(["bench", "--size", "3000", "--strategies", "rors", "--repeats", "1"])
    assert code == 0
    table = capsys.readouterr().out.splitlines()
    assert len(table) == 3  # header line, column names, one row
    assert main(["bench", "--size", "3000", "--strategies", "rors", "--repeats", "1",
                 "--workers", "1,8"]) == 0
    rows = capsys.readouterr().out.splitlines()[2:]
    assert len({r.split()[7] for r in rows}) == 1  # same derived count


def test_bench_unknown_strategy():
    with pytest.raises(SystemExit) as info:
        main(["bench", "--strategies", "nope"])
    assert info.value.code == 1
