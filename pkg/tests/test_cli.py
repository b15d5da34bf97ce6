import json

import numpy as np
import pytest

from topospin.category import save_category, zn_strings
from topospin.cli import main
from topospin.modular import phi_closed_form_zn

TOP_KEYS = {"command", "inputs", "value", "decomposition", "assertions",
            "elapsed_ms"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


def test_modular_route_document(capsys):
    code, doc, _ = run(capsys, "phi", "modular", "--theory", "zn:3:1",
                       "--r", "3")
    assert code == 0
    assert set(doc) == TOP_KEYS
    want = phi_closed_form_zn(3, 1, 3)
    assert abs(complex(doc["value"]["re"], doc["value"]["im"]) - want) < 1e-12
    assert doc["decomposition"]["terms"]["enumerated"] == 9


def test_brute_route_reports_decomposition(capsys):
    code, doc, _ = run(capsys, "phi", "brute", "--theory", "zn:2:1",
                       "--r", "2", "--seed", "5")
    assert code == 0
    assert doc["decomposition"]["prefactor_exponent"] == 9
    assert doc["decomposition"]["terms"]["surviving"] == 16


def test_analytic_route_with_ladders_and_alias(capsys):
    code, doc, _ = run(capsys, "phi", "analytic", "--theory", "fibonacci",
                       "--r", "2", "--ladders", "AΛ=2,BC=3")
    assert code == 0
    assert doc["inputs"]["ladders"]["AL"] == 2
    assert doc["inputs"]["ladders"]["BC"] == 3
    phi = complex(doc["decomposition"]["phi"]["re"],
                  doc["decomposition"]["phi"]["im"])
    assert abs(phi - ((1 + np.sqrt(5)) / 2) ** 2) < 1e-10


def test_ratio_route(capsys):
    code, doc, _ = run(capsys, "phi", "ratio", "--theory", "zn:3:1",
                       "--r", "3")
    assert code == 0
    assert abs(doc["value"]["re"] - 1 / 9) < 1e-12


def test_route_validation_failures(capsys):
    code, _, err = run(capsys, "phi", "brute", "--theory", "fibonacci",
                       "--r", "2")
    assert code == 2 and "zn:N:p" in err
    code, _, err = run(capsys, "phi", "modular", "--theory", "zn:2:1",
                       "--r", "2", "--seed", "1")
    assert code == 2
    code, _, err = run(capsys, "phi", "analytic", "--theory", "zn:2:1",
                       "--r", "2", "--triple", "alpha,beta")
    assert code == 2 and "three" in err
    code, _, err = run(capsys, "zeta", "--theory", "nonsense", "--r", "2")
    assert code == 2 and "unknown theory" in err


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "phi", "analytic", "--theory", "zn:3:1",
                       "--r", "3", "--triple", "gamma,id,gamma",
                       "--budget", "1000")
    assert code == 3 and "budget" in err


def test_zero_value_phase_exit_code(capsys):
    code, _, err = run(capsys, "zeta", "--theory", "zn:2:1", "--r", "2")
    assert code == 1 and "central charge" in err


def test_degenerate_r_warns(capsys):
    code, _, err = run(capsys, "phi", "modular", "--theory", "zn:2:1",
                       "--r", "1")
    assert code == 0
    assert "warning" in err and "r=1" in err


def test_lens_and_zeta_values(capsys):
    code, doc, _ = run(capsys, "lens", "--theory", "fibonacci", "--r", "2")
    assert code == 0
    assert abs(doc["value"]["re"] - 0.72360679) < 1e-7
    code, doc, _ = run(capsys, "zeta", "--theory", "zn:3:1", "--r", "3")
    assert code == 0
    assert abs(complex(doc["value"]["re"], doc["value"]["im"]) - 1j) < 1e-12
    assert doc["assertions"][0]["pass"]


def test_search_command(capsys):
    code, doc, err = run(capsys, "search-min-replicas", "--n", "2")
    assert code == 0
    assert doc["value"]["re"] == 4.0
    assert any(c["name"] == "no-witness-of-size-3" for c in doc["assertions"])
    assert "witness kets" in err


def test_verify_suite(capsys):
    code, doc, _ = run(capsys, "verify", "--suite", "abelian-cross")
    assert code == 0
    assert len(doc["assertions"]) == 30
    assert all(c["pass"] for c in doc["assertions"])


def test_ladder_scan(capsys):
    code, doc, _ = run(capsys, "ladder-scan", "--theory", "zn:2:1", "--r", "2",
                       "--boundary", "AB", "--max-n", "3")
    assert code == 0
    assert all(c["pass"] for c in doc["assertions"])


def test_file_theory_and_out(tmp_path, capsys):
    path = tmp_path / "flat.json"
    save_category(zn_strings(2, 1), path)
    out = tmp_path / "result.json"
    code, doc, _ = run(capsys, "phi", "analytic", "--theory", f"file:{path}",
                       "--r", "2", "--out", str(out))
    assert code == 0
    stored = json.loads(out.read_text())
    assert stored == doc


def test_cache_replay_is_stable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TOPOSPIN_CACHE", str(tmp_path))
    _, first, _ = run(capsys, "phi", "modular", "--theory", "zn:3:2",
                      "--r", "2")
    assert len(list(tmp_path.glob("*.json"))) == 1
    _, second, _ = run(capsys, "phi", "modular", "--theory", "zn:3:2",
                       "--r", "2")
    first.pop("elapsed_ms")
    second.pop("elapsed_ms")
    assert first == second


def test_triple_tokens(capsys):
    code, doc, _ = run(capsys, "phi", "brute", "--theory", "zn:2:1", "--r", "2",
                       "--triple", "alpha,id,alpha")
    assert code == 0
    assert abs(doc["value"]["re"] - 2.0**-6) < 1e-15
    assert doc["decomposition"]["phi"] is None
