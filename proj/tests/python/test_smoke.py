"""End-to-end smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import monoclust as mc


@pytest.fixture
def synthetic():
    return mc.make_synthetic(200, 3, 4, noise=0.1, seed=11)


def test_version_string():
    assert mc.__version__


def test_dataset_from_numpy_roundtrip():
    X = np.arange(12, dtype=float).reshape(4, 3)
    d = mc.Dataset(X, labels=[5, 2, 2, 5])
    assert d.n == 4 and d.u == 3
    np.testing.assert_allclose(d.features, X)
    assert d.labels == [1, 0, 0, 1]  # remapped to ordinal ids
    assert d.label_names == ["2", "5"]
    assert not d.has_missing()


def test_preference_decomposition():
    rng = np.random.default_rng(3)
    for _ in range(100):
        u = rng.integers(1, 10)
        x, y = rng.normal(size=u), rng.normal(size=u)
        w = rng.uniform(size=u)
        lhs = mc.weighted_l1(x, y, w)
        rhs = mc.preference(x, y, w) + mc.preference(y, x, w)
        assert math.isclose(lhs, rhs, abs_tol=1e-9)


def test_constraint_generation_counts(synthetic):
    cs = mc.generate_constraints(synthetic.labels, 0.2, seed=4)
    n_f = int(0.2 * synthetic.n)
    assert len(cs) == n_f * (n_f - 1) // 2
    assert mc.unsat(synthetic.labels, cs) == 0.0


def test_clustering_determinism_and_metrics(synthetic):
    cs = mc.generate_constraints(synthetic.labels, 0.15, seed=5)
    cfg = mc.EMConfig(k=4, seed=9)
    a = mc.pckm_mono(synthetic, cs, cfg)
    b = mc.pckm_mono(synthetic, cs, cfg)
    assert a.status == "success"
    assert a.labels == b.labels
    assert a.objective == b.objective
    assert len(a.labels) == synthetic.n
    assert -1.0 <= mc.ari(synthetic.labels, a.labels) <= 1.0
    assert 0.0 <= mc.unsat(a.labels, cs) <= 1.0


def test_mono_kmeans_is_stratified(synthetic):
    out = mc.mono_kmeans(synthetic, mc.EMConfig(k=4, seed=2))
    assert mc.nmi_index(out.labels, synthetic) == 0.0


def test_empty_constraints_reduce_to_plain_kmeans(synthetic):
    cfg = mc.EMConfig(k=4, seed=13)
    assert mc.pck_means(synthetic, mc.ConstraintSet(), cfg).labels == \
        mc.kmeans(synthetic, cfg).labels


def test_cop_kmeans_dead_end():
    X = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    d = mc.Dataset(X)
    cs = mc.ConstraintSet()
    cs.cl = [(0, 1), (0, 2), (1, 2)]
    out = mc.cop_kmeans(d, cs, mc.EMConfig(k=2, seed=1))
    assert out.status == "dead-end"
    assert out.labels is None


def test_ari_perfect_agreement():
    assert mc.ari([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0


def test_sign_test_posterior():
    b = [0.1 * i for i in range(30)]
    a = [v + 1.0 for v in b]
    res = mc.bayesian_sign_test(a, b, rope=(-0.01, 0.01), n_samples=20000,
                                seed=3)
    assert res.p_right > 0.95
    assert math.isclose(res.p_left + res.p_rope + res.p_right, 1.0,
                        abs_tol=1e-9)
    assert res.samples.shape == (20000, 3)
    np.testing.assert_allclose(res.samples.sum(axis=1), 1.0, atol=1e-9)


def test_csv_io(tmp_path, synthetic):
    path = str(tmp_path / "data.csv")
    mc.write_csv(synthetic, path)
    back = mc.load_csv(path, label_column=-1, has_header=True)
    assert back.n == synthetic.n and back.u == synthetic.u
    assert back.labels == synthetic.labels
    np.testing.assert_array_equal(back.features, synthetic.features)


def test_standardize_and_impute():
    X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    d = mc.Dataset(X)
    z = mc.standardize(d)
    col = z.features[:, 0]
    assert math.isclose(col.mean(), 0.0, abs_tol=1e-12)
    assert math.isclose(col.std(), 1.0, abs_tol=1e-12)  # population std
    assert (z.features[:, 1] == 0.0).all()

    Xm = np.array([[np.nan, 2.0], [1.0, 2.0], [3.0, 2.0], [5.0, 9.0]])
    filled = mc.knn_impute(mc.Dataset(Xm), k_neighbors=2)
    assert filled.features[0, 0] == pytest.approx(2.0)
