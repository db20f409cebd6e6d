import json
import os
import subprocess
from decimal import Decimal

import pytest

import qmoment


def close(a, b, rel):
    a, b = Decimal(a), Decimal(b)
    return abs(a - b) <= rel * abs(b)


def test_q_moment_reference():
    f = qmoment.zoo("q-exponential", lambda_="1", q="0.5")
    r = qmoment.q_moment(f, 3)
    assert r["n"] == 3
    assert close(r["value"], "168", Decimal("1e-35"))
    assert close(qmoment.mass(f), "1", Decimal("1e-35"))


def test_euler_identity():
    a = qmoment.euler_product("10", "0.5", 60)
    b = qmoment.euler_series("10", "0.5", 60)
    assert close(a, "1492.6744760726426155834410174147209301351859210092660840733", Decimal("1e-50"))
    assert close(a, b, Decimal("1e-45"))


def test_rules():
    assert qmoment.erlang_rule("4", 1, "0.5")["status"] == "Indeterminate"
    assert qmoment.qexp_rule("3", "0.5")["status"] == "Determinate"
    assert qmoment.qexp_rule("3", "0.5")["proof_strength"] == "exact-rule"


def test_witness_pipeline():
    f = qmoment.theta_table("0.5")
    assert qmoment.condition_C(f)["status"] == "Indeterminate"
    w = qmoment.witness(f, m=1, N=4, digits=60)
    assert w["accepted"] is True
    assert w["verified_to"] == 4
    assert Decimal(w["max_residual"]) < Decimal("1e-10")
    with pytest.raises(qmoment.PrecisionExhausted):
        qmoment.witness(f, m=1, N=8, digits=30)
    with pytest.raises(qmoment.InfeasibleWitness):
        qmoment.witness(f, m=2, N=2, digits=60)


def test_table_round_trip():
    t = qmoment.theta_table("0.5", 5)
    text = qmoment.write_table(t)
    back = qmoment.read_table(text)
    assert qmoment.write_table(back) == text
    assert back.kind == "table"
    with pytest.raises(ValueError):
        qmoment.read_table('{"q": "0.5"}')


def test_errors():
    with pytest.raises(ValueError):
        qmoment.zoo("gamma", q="0.5")
    with pytest.raises(qmoment.DomainError):
        qmoment.zoo("q-exponential", lambda_="1", q="1.5")
    assert issubclass(qmoment.DomainError, qmoment.QMomentError)


@pytest.mark.skipif(not os.environ.get("QMOMENT_CLI"), reason="command-line tool not built")
def test_cli_matches_module():
    out = subprocess.run(
        [os.environ["QMOMENT_CLI"], "moments", "--zoo", "q-exponential", "--param", "lambda=1", "--q", "0.5",
         "--n-max", "3", "--digits", "30"],
        check=True, capture_output=True, text=True).stdout
    rows = json.loads(out)["rows"]
    f = qmoment.zoo("q-exponential", lambda_="1", q="0.5")
    assert close(rows[3]["value"], qmoment.q_moment(f, 3, 30)["value"], Decimal("1e-25"))
