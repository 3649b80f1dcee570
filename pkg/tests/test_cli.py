import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from mckatz.cli import main
from mckatz.random_tuples import random_irreducible_triple
from mckatz.rigidity import LocalData, katz_reduce
from mckatz.tuples import MonodromyTuple, middle_convolution, mt_twist
from mckatz.weyl import RiemannScheme, ThetaOperator, adjoint, build_L2J2, build_P, riemann_scheme


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out


def dump(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def l4_file(tmp_path, levelt_l4):
    return dump(tmp_path, "l4.json", levelt_l4.to_json())


@pytest.fixture
def wedge_file(tmp_path, wedge):
    return dump(tmp_path, "wedge.json", wedge.to_json())


# -- tuple commands -----------------------------------------------------------


def test_mc_minus_one_matches_library(capsys, wedge_file, rank4):
    code, out = run(capsys, "mc", wedge_file, "--lambda", "1/2")
    assert code == 0
    assert MonodromyTuple.from_json(out) == rank4


def test_mt_matches_library(capsys, l4_file, levelt_l4):
    code, out = run(capsys, "mt", l4_file, "--lambdas", "1/2,0,1/2")
    assert code == 0
    assert MonodromyTuple.from_json(out) == mt_twist(levelt_l4, [Fraction(1, 2), 0, Fraction(1, 2)])


def test_mt_product_violation_exit_code(capsys, l4_file):
    code, out = run(capsys, "mt", l4_file, "--lambdas", "1/2,0,0")
    assert code == 2
    assert out["kind"] == "ProductViolation"


def test_levelt_matches_library(capsys, levelt_l4):
    code, out = run(capsys, "levelt", "--exp0", "2/15,7/15,8/15,13/15", "--expinf=-11/20,-3/20,1/20,13/20")
    assert code == 0
    assert MonodromyTuple.from_json(out) == levelt_l4


def test_levelt_resonance_exit_code(capsys):
    code, out = run(capsys, "levelt", "--exp0", "1/3", "--expinf", "4/3")
    assert code == 2
    assert out["kind"] == "ResonanceError"


def test_irreducible(capsys, l4_file):
    code, out = run(capsys, "irreducible", l4_file)
    assert code == 0
    assert out == {"irreducible": True, "span_dim": 16, "rank": 4}


def test_equivalent_round_trip(capsys, tmp_path, wedge_file, rank4):
    back = middle_convolution(rank4, Fraction(1, 2))
    other = dump(tmp_path, "back.json", back.to_json())
    code, out = run(capsys, "equivalent", wedge_file, other)
    assert code == 0
    assert out["equivalent"] is True
    assert out["witness"] is not None


def test_forms_on_wedge(capsys, wedge_file):
    code, out = run(capsys, "forms", wedge_file)
    assert code == 0
    assert out["dimension"] == 1
    assert out["forms"][0]["symmetry"] == "symmetric"
    assert out["forms"][0]["nondegenerate"] is True


def test_random_triple_is_seeded(capsys):
    code, out = run(capsys, "random-triple", "--seed", "5", "--rank", "3")
    assert code == 0
    expected = random_irreducible_triple(random.Random(5), 3)
    assert MonodromyTuple.from_json(out) == expected


# -- local data commands ------------------------------------------------------


def test_numerology_from_tuple(capsys, wedge_file, rank4):
    code, out = run(capsys, "numerology", wedge_file, "--lambda", "1/2")
    assert code == 0
    assert LocalData.from_json(out) == rank4.local_data()


def test_katz_reduce_l4(capsys, l4_file, levelt_l4):
    code, out = run(capsys, "katz-reduce", l4_file)
    assert code == 0
    assert out == katz_reduce(levelt_l4.local_data()).to_json()
    assert out["status"] == "rank1"


def test_scott_with_form(capsys, tmp_path, final_triple, omega):
    t = dump(tmp_path, "final.json", final_triple.to_json())
    f = dump(tmp_path, "omega.json", omega.to_json())
    code, out = run(capsys, "scott", t, "--form", f)
    assert code == 0
    assert out["sp_dims"] == [5, 13, 3]
    assert out["sum_cent_gl"] == 36


# -- operator commands --------------------------------------------------------


def test_scheme_on_catalog(capsys):
    code, out = run(capsys, "scheme", "catalog:L2J2")
    assert code == 0
    assert out["fuchs_ok"] is True
    assert out["self_adjoint"] is True
    out.pop("fuchs_ok")
    out.pop("self_adjoint")
    assert RiemannScheme.from_json(out) == riemann_scheme(build_L2J2())


def test_adjoint_round_trip(capsys, tmp_path):
    code, out = run(capsys, "adjoint", "catalog:P")
    assert code == 0
    assert ThetaOperator.from_json(out) == adjoint(build_P())
    again = dump(tmp_path, "adj.json", out)
    code, out = run(capsys, "adjoint", again)
    assert ThetaOperator.from_json(out) == build_P()


def test_shift_and_divide(capsys, tmp_path):
    code, out = run(capsys, "divide", "catalog:L3", "--q", '["-119", "-300", "900"]')
    assert code == 0
    r = dump(tmp_path, "r.json", out)
    code, out = run(capsys, "shift", r, "--a=-1/6")
    assert code == 0
    assert ThetaOperator.from_json(out).same_up_to_scalar(build_L2J2())


def test_divide_not_divisible_exit_code(capsys):
    code, out = run(capsys, "divide", "catalog:L2J2", "--q", '["1", "7"]')
    assert code == 2
    assert out["kind"] == "NotDivisible"


def test_pretty_output(capsys):
    code, out = run(capsys, "shift", "catalog:P", "--a", "0", "--pretty")
    assert code == 0
    assert out.startswith("900*")


def test_remark_family(capsys):
    code, out = run(capsys, "remark-family", "--a1=-1/6", "--c1", "19/20", "--c2", "9/20", "--c3", "3/4")
    assert code == 0
    assert ThetaOperator.from_json(out["L"]).order == 6


# -- errors and parsing -------------------------------------------------------


def test_unknown_catalog_name(capsys):
    code, out = run(capsys, "adjoint", "catalog:nope")
    assert code == 3
    assert out["kind"] == "parse"


def test_bad_rational(capsys, l4_file):
    code, _ = run(capsys, "mc", l4_file, "--lambda", "one half")
    assert code == 3


def test_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "wedge", str(tmp_path / "missing.json"))
    assert code == 3


def test_bad_json_shape(capsys, tmp_path):
    code, _ = run(capsys, "wedge", dump(tmp_path, "bad.json", {"matrices": "nope"}))
    assert code == 3


def test_argparse_error(capsys):
    assert main(["mc"]) == 3
    capsys.readouterr()


def test_mc_reducible_exit_code(capsys, tmp_path):
    t = {"rank": 2, "points": ["0", "1", "inf"], "matrices": [
        {"rows": 2, "cols": 2, "entries": [["-1", "0"], ["0", "1"]]},
        {"rows": 2, "cols": 2, "entries": [["-1", "0"], ["0", "1"]]},
        {"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "1"]]},
    ]}
    code, out = run(capsys, "mc", dump(tmp_path, "red.json", t), "--lambda", "1/2")
    assert code == 2
    assert out["kind"] == "IrreducibilityError"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mckatz.cli", "golden"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["mismatched"] == []
