import json
import os
import subprocess
from fractions import Fraction

import pytest

import orientarith as oa


def test_bernoulli_and_valuation():
    assert oa.bernoulli(12) == Fraction(-691, 2730)
    assert oa.padic_valuation(Fraction(1, 8), 2) == -3
    assert oa.padic_valuation(0, 5) is None


def test_phi_matrix_rows():
    assert oa.phi_matrix(1, 2) == [[1], [7, 24], [511, 4080, 5760]]
    assert oa.moment_modulus(2) == 5760


def test_phi_round_trip():
    l = [3, -1, 4, 1, -5, 9]
    seq = oa.phi_apply(1, l, 6)
    assert oa.phi_invert(1, seq, 6) == l
    assert oa.mom_euler_check(seq, 1, 6)["status"] == "pass"
    bad = list(seq)
    bad[2] += 1
    report = oa.mom_euler_check(bad, 1, 6)
    assert report["status"] == "fail"
    assert report["first_failure_weight"] == 6


def test_psi0_and_membership():
    seq = oa.psi0_apply(2, [1, 0, 0], 4)
    assert seq == [5760, 846720, 1081624320]
    assert oa.mom0_check(seq, 2, 4)["status"] == "pass"
    assert oa.psi0_invert(2, seq, 4)["high"] == [1, 0, 0]
    with pytest.raises(oa.MembershipError):
        oa.psi0_invert(2, [1, 1, 1], 4)


def test_eisenstein_and_lift():
    a0, a = oa.eisenstein(4, 5)
    assert a0 == Fraction(1, 240)
    assert a == [1, 9, 28, 73, 126]

    abs_point = [-oa.bernoulli(2 * k) / (4 * k) for k in range(2, 7)]
    assert oa.ko_check("string", abs_point, 6)["status"] == "pass"
    lifted = oa.lift_to_tmf("string", abs_point, 6)
    assert lifted["status"] == "lifted"
    assert lifted["entries"] == [1] * 5

    bumped = list(abs_point)
    bumped[4] += 1393459200
    obstructed = oa.lift_to_tmf("string", bumped, 6)
    assert obstructed["status"] == "obstructed"
    assert (obstructed["prime"], obstructed["weight"], obstructed["valuation_deficit"]) == (691, 12, 1)


def test_psi2_cusp():
    r = oa.psi2_apply([5760, 846720, 1081624320], 4)
    assert r[0] == 5761
    assert oa.tmf_check(r, 4)["status"] == "pass"
    assert oa.cusp_evaluate(r)[0] == 5761 * Fraction(1, 240)


def test_basis_and_spin():
    d = oa.basis_data(2, 2)
    assert d["C"] == 40320 and d["c"] == [-9, 10]
    assert oa.basis_rank_check(7, 2, 0, True)
    assert oa.spin_extend(2, 5, 8, 8)[:3] == [5, 3, 59]


def test_cli_in_process_and_binary():
    code, out, _ = oa.run_cli(["phi-matrix", "--m", "1", "--rows", "2"])
    assert code == 0
    assert json.loads(out)["schema"] == "orientarith/phi-matrix/" + oa.SCHEMA_VERSION
    assert oa.run_cli(["verify", "mom-euler", "--seq", "1,7,512"])[0] == 1
    assert oa.run_cli(["nope"])[0] == 2

    binary = os.environ.get("ORIENTARITH_CLI")
    if binary:
        done = subprocess.run([binary, "phi-matrix", "--m", "1", "--rows", "2"], capture_output=True, text=True)
        assert done.returncode == 0
        assert done.stdout == out
