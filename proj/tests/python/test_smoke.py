import numpy as np
import pytest

import tvgs


def path_graph(n):
    w = np.zeros((n, n))
    for i in range(n - 1):
        w[i, i + 1] = w[i + 1, i] = 1.0
    return tvgs.Graph(w)


def test_transforms_round_trip():
    rng = np.random.default_rng(0)
    g = tvgs.random_graph(5, 0.6, 3)
    t = tvgs.dft_basis(6)
    x = rng.normal(size=(5, 6)) + 1j * rng.normal(size=(5, 6))
    s = tvgs.jft(x, g, t)
    ref = g.basis.T @ x @ np.conj(t.basis)
    assert np.allclose(s, ref)
    assert np.allclose(tvgs.ijft(s, g, t), x)


def test_fixture_plan():
    supp = tvgs.support_of(tvgs.fixture_spectrum())
    assert (supp.b_joint, supp.b_graph, supp.b_time) == (7, 3, 3)
    assert tvgs.partition_bands(supp) == [([0, 1, 2], [2]), ([0, 1], [1, 3])]
    p = tvgs.plan(supp, path_graph(4), tvgs.dft_basis(4))
    assert p.total_samples == 7
    assert tvgs.plan_ratio(p) == tvgs.Fraction(7, 16)
    assert tvgs.SamplingPlan.from_json(p.to_json()).total_samples == 7


def test_sample_and_reconstruct():
    g = tvgs.random_graph(8, 0.5, 11)
    t = tvgs.dft_basis(12)
    x, spectrum, supp = tvgs.random_jbl(g, t, 4, 0.3, 12)
    p = tvgs.plan(supp, g, t)
    assert p.total_samples == supp.b_joint
    samples = tvgs.sample(x, p, g, t)
    assert sum(s.size for s in samples) == supp.b_joint
    xr = tvgs.reconstruct(samples, p, g, t, threads=2)
    assert tvgs.nrmse(x, xr) < 1e-9
    sep = tvgs.separate_plan(supp, g, t)
    assert tvgs.plan_ratio(p) <= tvgs.plan_ratio(sep)


def test_compress_and_bounds():
    data = tvgs.correlated_series(6, 32, 4)
    g = tvgs.correlation_graph(data)
    t = tvgs.dft_basis(32)
    r = tvgs.compress_to_jbl(data.astype(complex), g, t, energy_keep=0.9, b_graph=3)
    assert r.support.b_graph == 3
    assert np.abs(r.signal.imag).max() < 1e-10
    sgp = tvgs.select_vertices(g, r.support.rows_active)
    bounds = tvgs.per_vertex_bounds(g, t, r.support, sgp)
    assert len(bounds) == 6
    samples, ratio = tvgs.subset_bound(g, t, r.support, sgp, sgp)
    assert samples == r.support.b_joint


def test_errors_carry_codes():
    with pytest.raises(tvgs.TvgsError) as info:
        tvgs.Graph(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert info.value.code == "Asymmetric"
    with pytest.raises(ValueError):
        tvgs.dft_basis(0)
    with pytest.raises(tvgs.TvgsError) as info:
        tvgs.nrmse(np.zeros((2, 2)), np.ones((2, 2)))
    assert info.value.code == "ZeroReference"
