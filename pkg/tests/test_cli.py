import json
import subprocess
import sys

import pytest

from npf.cli import SUBCOMMANDS, build_parser, main
from npf.golden import EXPECTED_TABLE


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_all_subcommands_registered():
    sub = next(a for a in build_parser()._actions if a.dest == "command")
    assert set(sub.choices) == set(SUBCOMMANDS)


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "--k", "12")
    assert code == 0
    assert out.strip() == '{"k":12,"omega_bound":62,"big_omega_bound":98,"grh_omega_bound":98,"selberg_exponent":100}'


def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--k", "12", "--text")
    assert "omega_bound" in out and "62" in out


def test_sieve(capsys):
    code, out, _ = run(capsys, "sieve", "--threshold", "g1", "--lo", "3", "--hi", "4")
    assert code == 0 and abs(json.loads(out)["threshold"] - 3.0387443) < 1e-6
    code, out, _ = run(capsys, "sieve", "--fn", "g1", "--k", "12")
    data = json.loads(out)
    assert data["alpha"] == "11/60" and abs(data["F"] - data["closed_form"]) < 1e-12


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "bounds", "--k", "2")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "sieve", "--threshold", "g2", "--lo", "3", "--hi", "4")
    assert code == 2 and "no sign change" in err
    code, _, err = run(capsys, "np-record", "--form", "delta14", "--p", "5", "--no-cache")
    assert code == 2


def test_np_record_csv(capsys):
    code, out, _ = run(capsys, "np-record", "--p", "5", "--no-cache")
    assert code == 0
    assert out == "p,Np,omega,big_omega,complete,factorization\n5,48823296,4,13,true,2^10*3*23*691\n"


def test_np_record_json(capsys):
    code, out, _ = run(capsys, "np-record", "--p", "2", "--no-cache", "--format", "json")
    assert json.loads(out) == [{"p": 2, "Np": 2073, "omega": 2, "big_omega": 2, "complete": True,
                                "factorization": "3*691"}]


def test_np_scan_with_undecided_file(capsys, tmp_path):
    out = tmp_path / "scan.csv"
    code, _, _ = run(capsys, "np-scan", "--x", "300", "--omega", "5", "--no-cache", "--out", str(out),
                     "--budget-seconds", "0.001")
    assert code == 0
    assert out.read_text().startswith("p,Np,omega,big_omega,complete,factorization\n")
    undecided = tmp_path / "scan.csv.undecided.csv"
    if undecided.exists():
        assert undecided.read_text().startswith("p,Np,")


def test_congruence(capsys):
    code, out, err = run(capsys, "congruence", "--x", "2000", "--no-cache")
    assert code == 0 and out == "p,Np_mod\n" and "0 violating" in err
    code, out, _ = run(capsys, "congruence", "--x", "4", "--start", "2", "--no-cache")
    assert out.splitlines()[1:] == ["2,2073", "3,44224"]


def test_group_count(capsys):
    code, out, _ = run(capsys, "group-count", "--ell", "5", "--ell", "7", "--k", "12", "--k", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "ell,k,lambda,orderG,countC1,delta_num,delta_den,brute_match"
    assert "5,12,1,480,115,23,96,true" in lines
    assert "7,4,3,672,105,5,32,true" in lines


def test_group_count_level_two(capsys):
    code, out, _ = run(capsys, "group-count", "--ell", "3", "--k", "12", "--n", "2")
    assert code == 0 and len(out.splitlines()) == 4


def test_bernoulli_and_chowla(capsys):
    code, out, _ = run(capsys, "bernoulli", "--k", "24")
    data = json.loads(out)
    assert data["B_k_over_k"] == "-236364091/65520" and data["numerator_factorization"] == "103*2294797"
    code, out, _ = run(capsys, "chowla", "--p", "103", "--n", "24", "--i-max", "2")
    assert json.loads(out)["checks"][0]["passed"] is True


@pytest.mark.slow
def test_chowla_deep(capsys):
    code, out, _ = run(capsys, "chowla", "--p", "103", "--n", "24", "--i-max", "2", "--deep")
    data = json.loads(out)
    assert data["checks"][1]["progression"] == [{"k": 702, "divides": True}]
    assert data["joint_progression"] == {"base": 5532, "modulus": 11730}


def test_eisenstein_primes(capsys):
    code, out, _ = run(capsys, "eisenstein-primes", "--form", "delta12", "--limit", "2000", "--lmax", "10000",
                       "--no-cache", "--check-ell", "691")
    data = json.loads(out)
    assert data["candidates"] == [2, 3, 691] and data["nu"] == 3
    assert data["congruence_checks"] == {"691": None}


def test_bk_report(capsys):
    code, out, _ = run(capsys, "bk-report", "--kmax", "24")
    lines = out.splitlines()
    assert lines[0] == "k,omega,k_over_log_k,log_k,numerator"
    assert lines[1].startswith("12,1,") and lines[-1].startswith("24,2,")


def test_ingest_and_scan_file(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("# npf-coeffs v1\n# level=11 weight=4 label=t\n2 1\n3 -5\n5 7\n7 -9\n11 -1\n")
    code, out, _ = run(capsys, "ingest", str(path))
    assert json.loads(out)["level"] == 11 and json.loads(out)["primes"] == 5
    code, out, _ = run(capsys, "np-scan", "--coeff-file", str(path), "--x", "7")
    assert [line.split(",")[0] for line in out.splitlines()[1:]] == ["2", "3", "5", "7"]
    path.write_text("# npf-coeffs v1\n# level=11 weight=4 label=t\n2 1\n4 10\n")
    code, _, err = run(capsys, "ingest", str(path))
    assert code == 2 and "line 4" in err


def test_coeffs_roundtrip(capsys, tmp_path):
    out = tmp_path / "c.txt"
    code, _, _ = run(capsys, "coeffs", "--k", "12", "--n", "100", "--no-cache", "--out", str(out))
    text = out.read_text()
    assert text.startswith("# npf-coeffs v1\n# level=1 weight=12 label=delta12\n2 -24\n3 252\n")
    code, out2, _ = run(capsys, "coeffs", "--k", "12", "--n", "100", "--no-cache")
    assert out2 == text


def test_erdos_kac_small(capsys):
    code, out, _ = run(capsys, "erdos-kac", "--x", "1000", "--y", "1000", "--no-cache")
    data = json.loads(out)
    assert data["sample_size"] == 162 and 0 <= data["ks_distance"] <= 1


def test_thread_count_independence(capsys, tmp_path):
    args = ["np-scan", "--x", "800", "--cache-dir", str(tmp_path), "--budget-seconds", "30"]
    code1, out1, _ = run(capsys, *args, "--threads", "1")
    code2, out2, _ = run(capsys, *args, "--threads", "auto")
    assert code1 == code2 == 0 and out1 == out2


def test_warm_cache_idempotent(capsys, tmp_path):
    args = ["np-scan", "--x", "500", "--omega", "4", "--cache-dir", str(tmp_path)]
    _, cold, _ = run(capsys, *args)
    assert (tmp_path / "delta12_N501.txt").exists()
    _, warm1, _ = run(capsys, *args)
    _, warm2, _ = run(capsys, *args)
    assert cold == warm1 == warm2


def test_table_subprocess(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "npf.cli", "table-7-1", "--cache-dir", str(tmp_path)],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == EXPECTED_TABLE
    assert proc.stdout.splitlines()[2] == "| 5 | 2^10*3*23*691 |"
