import io
import json
from fractions import Fraction

import pytest

from peis.cli import EXIT_CHECK, EXIT_OK, EXIT_PRECISION, EXIT_USAGE, main
from peis.exact import bernoulli_number
from peis.padic import PadicInt


def run(*argv, environ=None):
    out = io.StringIO()
    code = main(list(argv), stdout=out, environ={} if environ is None else environ)
    return code, out.getvalue()


def run_json(*argv, environ=None):
    code, text = run(*argv, environ=environ)
    return code, json.loads(text)


@pytest.mark.parametrize("n, expected", [(12, "-691/2730"), (0, "1/1"), (3, "0/1"), (1, "-1/2")])
def test_bernoulli_examples(n, expected):
    code, out = run_json("bernoulli", "--n", str(n))
    assert code == EXIT_OK
    assert out["value"] == expected
    assert Fraction(expected) == bernoulli_number(n)


def test_bernoulli_negative_is_usage_error():
    code, out = run_json("bernoulli", "--n", "-1")
    assert code == EXIT_USAGE
    assert out["error"]["code"] == "usage"


def test_lp_both_routes():
    code, out = run_json("lp", "--p", "5", "--chi", "w2", "--at", "-1", "--route", "both")
    assert code == EXIT_OK
    res = out["results"]
    assert set(res) == {"interpolation", "measure"}
    for route, r in res.items():
        assert r["route"] == route
        assert r["error_bound_exponent"] == r["value"]["N"]
    # level 8 gives level + 1 digits on the measure route
    assert res["measure"]["error_bound_exponent"] == 9
    assert out["agreement_digits"] >= 6
    a = int(res["interpolation"]["value"]["residue"])
    b = int(res["measure"]["value"]["residue"])
    assert (a - b) % 5**9 == 0


def test_lp_interpolation_rejects_positive_s():
    code, out = run_json("lp", "--chi", "w2", "--at", "2", "--route", "interpolation")
    assert code == EXIT_USAGE


def test_zeta_star_example():
    code, out = run_json("zeta-star", "--p", "5", "--u", "2", "--at", "-1")
    assert code == EXIT_OK
    assert out["exact"] == "1/3"
    assert out["value"]["digits"].startswith("2 + 3*5 + ")
    assert int(out["value"]["residue"]) == PadicInt.from_rational(Fraction(1, 3), 5, 20).residue
    assert out["route"] == "interpolated branch"
    assert out["error_bound_exponent"] == 20


def test_zeta_star_pole_exit_code():
    code, out = run_json("zeta-star", "--u", "0", "--at", "1")
    assert code == EXIT_USAGE
    assert out["error"]["code"] == "pole"


def test_weierstrass_example():
    code, out = run_json("weierstrass", "--p", "5", "--coeffs", "5,6,1")
    assert code == EXIT_OK
    assert (out["mu"], out["lambda"]) == (0, 1)


def test_weierstrass_bad_coeffs():
    code, _ = run_json("weierstrass", "--coeffs", "5,x")
    assert code == EXIT_USAGE


def test_lvalue_trivial():
    code, out = run_json("lvalue", "--n", "2", "--chi", "trivial")
    assert code == EXIT_OK
    assert out["rational"] == "-1/12"


def test_measure_ec_compatible():
    code, out = run_json("measure", "--kind", "ec", "--c", "2", "--d", "1", "--level", "0", "--level", "1")
    assert code == EXIT_OK
    assert out["compatibility"]["ok"]
    assert out["total_mass"] == {"0": "0/1", "1": "0/1"}


def test_measure_verbatim_formula_incompatible():
    code, out = run_json("measure", "--kind", "ec", "--c", "2", "--d", "1", "--level", "0",
                         "--level", "1", "--ec-formula", "verbatim")
    assert code == EXIT_OK
    assert not out["compatibility"]["ok"]


def test_eisenstein_csv():
    code, text = run("eisenstein", "--kind", "classical", "--weight", "4", "--qprec", "5", "--output", "csv")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "n,valuation"
    # G_4 has a_0 = zeta(-3)/2 = 1/240, and v_5(1/240) = -1
    assert lines[1] == "0,-1"
    assert len(lines) == 7


def test_eisenstein_padic_weight_pair():
    code, out = run_json("eisenstein", "--kind", "padic", "--weight", "2,2", "--qprec", "6")
    assert code == EXIT_OK
    assert out["expansion"]["weight"] == {"s": 2, "u": 2}
    assert len(out["expansion"]["coeffs"]) == 7


def test_determinism_byte_identical():
    argv = ("lp", "--chi", "w2", "--at", "-3", "--route", "both", "--levels", "5")
    assert run(*argv) == run(*argv)


def test_env_override_and_flag_precedence():
    _, out = run_json("bernoulli", "--n", "2", environ={"PEIS_P": "7", "PEIS_PREC": "9"})
    assert out["config"]["p"] == 7
    assert out["config"]["prec"] == 9
    _, out = run_json("bernoulli", "--n", "2", "--p", "11", environ={"PEIS_P": "7"})
    assert out["config"]["p"] == 11


def test_bad_env_value_is_usage_error():
    code, out = run_json("bernoulli", "--n", "2", environ={"PEIS_PREC": "many"})
    assert code == EXIT_USAGE


def test_non_prime_is_rejected():
    code, _ = run_json("bernoulli", "--n", "2", "--p", "9")
    assert code == EXIT_USAGE


def test_defaults_in_config():
    _, out = run_json("bernoulli", "--n", "2")
    assert out["config"] == {"p": 5, "prec": 20, "qprec": 50, "tprec": 12, "levels": 8,
                             "ec_formula": "regularized", "output": "json"}


def test_verify_unknown_suite():
    code, _ = run("verify", "nosuch")
    assert code == EXIT_USAGE


def test_verify_kummer_passes():
    code, out = run_json("verify", "kummer")
    assert code == EXIT_OK
    assert out["passed"]
    names = [c["name"] for c in out["results"]["kummer"]]
    assert "regularity p=691" in names
    for c in out["results"]["kummer"]:
        assert {"observed", "required"} <= set(c)


def test_verify_weierstrass_restricted_prime():
    code, out = run_json("verify", "weierstrass", "--p", "7")
    assert code == EXIT_OK
    names = [c["name"] for c in out["results"]["weierstrass"]]
    assert "weierstrass random p=7" in names
    assert "weierstrass random p=5" not in names


def test_precision_exhaustion_exit_code():
    code, out = run_json("weierstrass", "--coeffs", "0", "--prec", "3")
    assert code == EXIT_PRECISION
    assert out["error"]["code"] == "precision"
    code, out = run_json("eisenstein", "--kind", "family", "--weight", "2", "--prec", "1")
    assert code == EXIT_PRECISION


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PRECISION}) == 4


def test_help_lists_flags_and_env(capsys):
    code, _ = run("verify", "--help")
    assert code == EXIT_OK
    text = capsys.readouterr().out
    for flag in ("--p", "--prec", "--qprec", "--tprec", "--levels", "--ec-formula", "--output", "PEIS_TPREC"):
        assert flag in text


def test_verify_failure_exit_code():
    # the verbatim E_c formula is not a distribution, so the suite must fail
    code, out = run_json("verify", "distributions", "--p", "5", "--ec-formula", "verbatim")
    assert code == EXIT_CHECK
    assert not out["passed"]
    failed = [c["name"] for c in out["results"]["distributions"] if not c["passed"]]
    assert failed and all(n.startswith("E_c") for n in failed)
