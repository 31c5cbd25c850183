import subprocess
import sys

import pytest

from matroidstack.cli import main
from matroidstack.matroid import format_matroid, from_nonbases, parse_matroid, parse_matroids
from matroidstack.setkit import format_family, parse_family, subset
from matroidstack.vencoding import parse_vencoding

FANO_LINES = [subset(x) for x in ([1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6])]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture()
def fano_file(tmp_path):
    p = tmp_path / "fano.txt"
    p.write_text(format_matroid(from_nonbases(7, 3, FANO_LINES)))
    return str(p)


def test_enumerate_counts(capsys):
    assert run(capsys, "enumerate", "--n", "5", "--r", "2", "--count-only")[1] == "171\n"
    assert run(capsys, "enumerate", "--n", "6", "--r", "3", "--class", "paving", "--count-only")[1] == "352\n"
    assert run(capsys, "enumerate", "--n", "6", "--r", "3", "--class", "sparse", "--count-only")[1] == "271\n"
    assert run(capsys, "enumerate", "--n", "7", "--r", "3", "--class", "steiner", "--count-only")[1] == "30\n"
    code, out, err = run(capsys, "enumerate", "--n", "6", "--r", "3", "--class", "steiner", "--count-only")
    assert code == 0 and out == "0\n" and "warning" in err
    assert run(capsys, "enumerate", "--n", "3", "--r", "1", "--class", "paving", "--count-only")[1] == "7\n"


def test_enumerate_output_is_deterministic(capsys, tmp_path):
    _, a, _ = run(capsys, "enumerate", "--n", "5", "--r", "2")
    _, b, _ = run(capsys, "enumerate", "--n", "5", "--r", "2", "--jobs", "2")
    assert a == b
    assert len(parse_matroids(a)) == 171
    out = tmp_path / "m.txt"
    assert run(capsys, "enumerate", "--n", "5", "--r", "2", "--out", str(out))[0] == 0
    assert out.read_bytes() == a.encode()


def test_encode_decode(capsys, fano_file, tmp_path):
    v = tmp_path / "v.txt"
    assert run(capsys, "encode", "--in", fano_file, "--out", str(v))[0] == 0
    assert parse_vencoding(v.read_text()).size() == 7
    code, out, _ = run(capsys, "decode", "--in", str(v))
    assert code == 0 and parse_matroid(out) == from_nonbases(7, 3, FANO_LINES)
    bad = tmp_path / "bad.txt"
    bad.write_text(v.read_text().replace("level 2 7", "level 2 6"))
    assert run(capsys, "decode", "--in", str(bad))[0] == 1


def test_erections(capsys, tmp_path, fano_file):
    p = tmp_path / "u26.txt"
    p.write_text(format_matroid(from_nonbases(6, 2, [])))
    # every rank-3 paving matroid, U(3,6) included, truncates to U(2,6)
    assert run(capsys, "erections", "--in", str(p), "--count-only")[1] == "352\n"
    assert run(capsys, "erections", "--in", fano_file, "--count-only")[1] == "0\n"
    code, out, _ = run(capsys, "erections", "--in", str(p))
    assert code == 0 and len(parse_matroids(out)) == 352


def test_verify(capsys, fano_file, tmp_path):
    code, out, _ = run(capsys, "verify", "--in", fano_file)
    assert code == 0
    assert "basis_exchange\tok" in out and "decode_roundtrip\tok" in out and "V_size_bound\tok" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("matroid v1\nn 4\nr 2\nbases 2\n1 2\n3 4\n")
    code, out, _ = run(capsys, "verify", "--in", str(bad))
    assert code == 2 and "basis_exchange\tFAIL" in out


def test_random(capsys):
    a = run(capsys, "random", "--mode", "knuth-stack", "--n", "7", "--r", "3", "--seed", "42", "--levels", "0,0,7")
    b = run(capsys, "random", "--mode", "knuth-stack", "--n", "7", "--r", "3", "--seed", "42", "--levels", "0,0,7")
    assert a == b and a[0] == 0 and parse_matroid(a[1]).is_paving()
    code, out, _ = run(capsys, "random", "--mode", "greedy-steiner", "--n", "10", "--r", "3", "--seed", "1")
    assert code == 0 and parse_family(out)[:2] == (10, 3)
    code, out, _ = run(capsys, "random", "--mode", "greedy-steiner", "--n", "10", "--r", "3", "--seed", "1",
                       "--trials", "20")
    lines = out.splitlines()
    assert lines[0] == "trial\tM" and len([ln for ln in lines if not ln.startswith("#")]) == 21
    assert any(ln.startswith("# threshold\t") for ln in lines)
    assert run(capsys, "random", "--mode", "knuth-stack", "--n", "5", "--r", "2", "--seed", "1",
               "--levels", "a,b")[0] == 1


def test_construct(capsys, fano_file, tmp_path):
    code, out, _ = run(capsys, "construct", "--mode", "sparse-to-paving", "--in", fano_file, "--block", "1,2,3",
                       "--elem", "4")
    m = parse_matroid(out)
    assert code == 0 and m.is_paving() and not m.is_sparse_paving()
    sfile = tmp_path / "s.txt"
    sfile.write_text(format_family(7, 3, FANO_LINES))
    code, out, _ = run(capsys, "construct", "--mode", "steiner-to-paving", "--in", str(sfile), "--block", "1 2 3",
                       "--elem", "4")
    assert code == 0
    hp = tmp_path / "hp.txt"
    hp.write_text(out)
    code, out, _ = run(capsys, "construct", "--mode", "steiner-decode", "--in", str(hp))
    assert code == 0 and out.endswith("block 1 2 3\nelem 4\n")
    assert set(parse_family(out.rsplit("block", 1)[0])[2]) == set(FANO_LINES)
    code, _, err = run(capsys, "construct", "--mode", "steiner-decode", "--in", str(sfile))
    assert code == 2 and "not in construction image" in err
    assert run(capsys, "construct", "--mode", "steiner-to-paving", "--in", str(sfile))[0] == 1
    assert run(capsys, "construct", "--mode", "steiner-to-paving", "--in", str(sfile), "--block", "1 2 4",
               "--elem", "5")[0] == 1


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "20", "--r", "3")
    assert code == 0 and "upper_p\t355.465936014314\tin range" in out
    code, out, _ = run(capsys, "bounds", "--n", "6", "--r", "3", "--with-census")
    assert code == 0 and "VIOLATED" not in out and "truncation_product" in out


def test_usage_and_input_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--n", "5"])
    assert exc.value.code == 1
    capsys.readouterr()
    assert run(capsys, "enumerate", "--n", "9", "--r", "3", "--count-only")[0] == 1
    assert run(capsys, "verify", "--in", str(tmp_path / "missing.txt"))[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matroidstack", "enumerate", "--n", "4", "--r", "2",
                           "--count-only"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "36\n"
