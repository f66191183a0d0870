import math
import os
import pathlib

import pytest

import riflab

DATA = pathlib.Path(os.environ.get("RIFLAB_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def p2():
    return riflab.load_poly(DATA / "p2.json")


@pytest.fixture(scope="module")
def phi2(p2):
    return riflab.build_rif(p2)


def test_reflection(p2):
    assert riflab.reflect(p2).terms() == {(1, 1): 2, (1, 0): -1, (0, 1): -1}


def test_unimodular_on_torus(phi2):
    for t in (0.3, 1.1, 2.5):
        z = [complex(math.cos(t), math.sin(t)), complex(math.cos(2 * t), -math.sin(2 * t))]
        assert abs(abs(phi2(z)) - 1) < 1e-12


def test_coefficients(phi2):
    a = riflab.expand(phi2.ptilde, phi2.p, [30, 30])
    assert a.shape == (31, 31)
    assert a[1, 1] == pytest.approx(0.5, abs=1e-15)
    assert a[2, 2] == pytest.approx(0.125, abs=1e-15)
    one = riflab.Poly(2, {(0, 0): 1})
    inv = riflab.expand(one, phi2.p, [10, 10])
    assert inv[3, 4] == pytest.approx(math.comb(7, 3) / 2**8, rel=1e-14)


@pytest.mark.parametrize("alpha,status", [(0.5, "convergent"), (0.74, "convergent"), (1.0, "divergent")])
def test_membership(phi2, alpha, status):
    assert riflab.classify(phi2, [alpha, alpha], schedule=[16, 32, 64, 128, 256])["status"] == status


def test_levelset_threshold(phi2):
    o = riflab.omega(phi2, 0, samples=50000)
    assert abs(o["exponent"] + 0.5) < 0.1


def test_embeddings():
    assert riflab.cs_from_ps([3, 2]) == [3, 3, 3]
    assert riflab.ps_from_cs([2, 4, 4]) == [2, 2]
    assert riflab.hp_embed_feasible([0.7, 0.7, 100], [1.5, 1.5, math.inf])["feasible"]
    assert not riflab.hp_embed_feasible([0.8, 0.8, 1], [1.5, 1.5, math.inf])["feasible"]
    assert riflab.hp_embed_feasible([0.5, 0.5], [1, 1], closed=[True, True])["feasible"]


def test_loja(p2):
    e = riflab.loja(p2, [1, 1])
    assert abs(e["q_hat"] - 2) < 0.15
    assert riflab.lojasiewicz_threshold(2, 1, 3) == (1, 3)


def test_blaschke():
    assert riflab.blaschke_norm([0], 1.5, 64) == pytest.approx(2**1.5)
    assert riflab.blaschke_norm([0.5, -0.5], 0.0) == pytest.approx(1.0)


def test_errors():
    with pytest.raises(riflab.RiflabError, match="interior_zero"):
        riflab.build_rif(riflab.Poly(2, {(0, 0): 0.5, (1, 1): -1}))
    with pytest.raises(riflab.RiflabError, match="parse_error"):
        riflab.Poly.from_json('{"vars": 2, "terms": []}')


def test_report(p2):
    rep, code = riflab.report(p2, alphas=[[0.5, 0.5]])
    assert code == 0
    assert rep["stages"]["classify"]["verdicts"][0]["status"] == "convergent"
    again, _ = riflab.report(p2, alphas=[[0.5, 0.5]])
    assert again == rep
