import math

import pytest

import zenochain as zc


def test_splitter_and_chain():
    assert zc.bs_matrix(0.0).to_list() == [[1.0, -0.0], [0.0, 1.0]]
    left, _ = zc.chain_matrix(math.pi / 24, 0.0, 1.0, 12).apply(1.0, 0.0)
    assert left == pytest.approx(math.cos(math.pi / 24) ** 12, rel=1e-14)
    with pytest.raises(ValueError):
        zc.loss_matrix(1.5, 0.0)


def test_published_efficiency_and_balanced_null():
    r = zc.evaluate(zc.ProtocolParams(6, 12, blocks=True))
    assert abs(r.w2 - 0.62) <= 0.01
    assert abs(r.w_tr - 0.35) <= 0.01
    k1 = zc.balanced_kappa1(12, 0.0)
    assert k1 == pytest.approx(0.186335087701509357, rel=1e-14)
    b = zc.evaluate(zc.ProtocolParams(6, 12, kappa1=k1, blocks=True))
    assert b.w1 <= 1e-20
    assert b.eta == math.inf
    assert b.eta_text == "inf"


def test_no_blocks_reliability():
    r = zc.evaluate(zc.ProtocolParams(6, 12, kappa1=0.01, kappa2=1e-3, kappa3=1e-3))
    assert r.eta == pytest.approx(zc.eta_nb_closed_form(6), rel=1e-10)
    assert r.total() == pytest.approx(1.0, abs=1e-10)


def test_oracle_matches_closed_form():
    p = zc.ProtocolParams(7, 9, kappa1=0.02, kappa2=1e-2, kappa3=3e-3)
    c = zc.outer_coefficients(p)
    t = zc.propagate(p)
    assert t.d1_amplitude == pytest.approx(c.m1, abs=1e-12)
    assert t.d2_amplitude == pytest.approx(c.m2, abs=1e-12)
    assert t.d3_amplitudes == pytest.approx(c.m3, abs=1e-12)
    assert t.total() == pytest.approx(1.0, abs=1e-12)
    assert zc.splitter_count(zc.ProtocolParams(6, 12)) == 66


def test_states():
    c = zc.outer_coefficients(zc.ProtocolParams(6, 12, blocks=True))
    photon = zc.output_state(c, "single_photon")
    coherent = zc.output_state(c, "coherent", 2.0)
    assert photon["labels"][:2] == ["D1", "D2"]
    assert sum(photon["values"]) == pytest.approx(1.0, abs=1e-12)
    assert sum(coherent["values"]) == pytest.approx(4.0, abs=1e-12)
    assert coherent["no_click_probability"] is None
    assert zc.ratio_invariance_check(c)
    with pytest.raises(ArithmeticError):
        zc.ratio_invariance_check(zc.TransferCoefficients(0.0, 0.0, [0.6], 0.8))


def test_sweep_and_table():
    csv = zc.run_sweep_csv(
        '{"axes": [{"name": "M", "start": 2, "stop": 4, "steps": 3}],'
        ' "fixed": {"N": 12}, "scenario": "with_blocks"}'
    )
    lines = csv.strip().splitlines()
    assert lines[1].startswith("M,N,kappa1")
    assert len(lines) == 2 + 3
    with pytest.raises(zc.SpecError):
        zc.run_sweep_csv('{"axes": [{"name": "theta", "start": 0}]}')
    assert "w_tr_convention=entering_probability" in zc.table1_csv()
