import pytest

from conftest import QQ
from detvar.gallery import build
from detvar.verify import (
    _congruence_43,
    _congruences_44,
    run_check,
    verify_chern,
    verify_prop42,
    verify_prop44,
    verify_thm45_and_kappa,
)


def value(rep, name):
    w = rep.witnesses[name]
    return w["value"] if isinstance(w, dict) else w


def ok(rep, name):
    return rep.witnesses[name]["ok"]


@pytest.fixture(scope="module")
def reports_b1(ctx1):
    return {c: run_check(c, ctx1) for c in ("3.1", "4.1", "4.2", "4.3", "4.4")}


def test_all_pass_b1(reports_b1):
    for c, rep in reports_b1.items():
        assert rep.status == "pass", (c, rep.failures)


def test_prop31_witnesses(reports_b1):
    r = reports_b1["3.1"]
    assert value(r, "codim_IX") == 2
    assert value(r, "coker_m_betti") == [2, 4, 2]
    assert value(r, "E_betti") == [1, 6, 8, 3]
    assert value(r, "C1_betti") == [1, 10, 20, 15, 4]


def test_prop41_witnesses(reports_b1):
    r = reports_b1["4.1"]
    assert value(r, "I_generators") == [[1, 1, 1]] * 4
    assert value(r, "X1_single_generator") == [[2, 2]]


def test_prop42_witnesses(reports_b1):
    r = reports_b1["4.2"]
    assert value(r, "nodes_length") == 8
    assert value(r, "branch_degree") == 4
    assert value(r, "singular_scheme") == [8, 8]


def test_prop43_witnesses(reports_b1):
    r = reports_b1["4.3"]
    assert value(r, "tangency") == [12, 6]
    assert value(r, "C2_betti") == [1, 5, 5, 1]
    assert value(r, "C2_fibre_degree") == 5


def test_nodes_b2(ctx2):
    assert value(verify_prop42(ctx2), "nodes_length") == 27


def test_nodes_b3():
    rep = verify_prop42(build(3))
    assert rep.status == "pass"
    assert value(rep, "nodes_length") == 64


def test_prop42_skips_generic():
    assert verify_prop42(build(1, QQ, "generic", check=False)).status == "skipped"


@pytest.mark.parametrize("b", [1, 2, 3])
def test_congruences_generic(b):
    ctx = build(b, QQ, "generic", check=False)
    assert _congruence_43(ctx).is_zero()
    r0, r2 = _congruences_44(ctx)
    assert r0.is_zero() and r2.is_zero()


def test_congruence_is_not_vacuous():
    # det M on its own is not in I_C, so the q^2 term matters
    ctx = build(1, QQ, "generic", check=False)
    assert not ctx.I_C().normal_form(ctx.detM).is_zero()


@pytest.mark.parametrize("check", ["3.1", "4.1"])
def test_generic_parts_b3(check):
    rep = run_check(check, build(3, QQ, "generic", check=False))
    assert rep.status == "pass", rep.failures


def test_prop44_generic_b2():
    rep = verify_prop44(build(2, QQ, "generic", check=False))
    assert ok(rep, "f_congruence_mod_a0") and ok(rep, "f_congruence_mod_a2")


@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_cone_and_kappa_report(b):
    rep = verify_thm45_and_kappa(b)
    assert rep.status == "pass", rep.failures
    assert value(rep, "canonical_degree") == b - 3


def test_chern_report():
    rep = verify_chern(1)
    assert rep.status == "pass"
    assert value(rep, "c2") == 2


def test_unknown_check(ctx1):
    with pytest.raises(ValueError):
        run_check("9", ctx1)


def test_report_json_shape(reports_b1):
    d = reports_b1["4.2"].to_dict()
    assert list(d) == ["check", "b", "field", "seed", "status", "witnesses", "wall_ms"]
    assert d["b"] == 1 and d["field"] == "fp:1009" and d["seed"] == 42
