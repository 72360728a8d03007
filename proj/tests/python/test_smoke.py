import math

import pytest

import netpca


def test_module_surface():
    for name in netpca.__all__:
        assert hasattr(netpca, name), name
    assert netpca.__version__


def test_graph_basics():
    g = netpca.Graph(4, [(0, 1), (1, 2), (2, 0), (1, 0)])
    assert g.vertex_count == 4
    assert g.edge_count == 3
    assert g.has_edge(0, 1)
    assert not g.has_edge(0, 3)
    assert g.degree(1) == 2
    assert g.neighbors(1) == [0, 2]
    assert "4 vertices" in repr(g)

    with pytest.raises(ValueError):
        netpca.Graph(3, [(0, 0)])


def test_counting_matches_brute_force():
    k4 = netpca.Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert netpca.count(k4, "triangle") == 4
    assert netpca.count(k4, "cycle4") == 3
    assert netpca.count(k4, "cycle4", mode="induced") == 0
    for cfg in netpca.configuration_names():
        for mode in ("copies", "induced"):
            assert netpca.count(k4, cfg, mode) == netpca.brute_force_count(k4, cfg, mode)


def test_density_and_max_count():
    assert netpca.max_count(5, "triangle") == 10
    assert netpca.max_count(5, "star2") == 30
    p3 = netpca.Graph(3, [(0, 1), (1, 2)])
    assert netpca.density(p3, "star1") == pytest.approx(2 / 3)
    with pytest.raises(ValueError):
        netpca.density(p3, "star3")  # needs 4 vertices
    p6 = netpca.Graph(6, [(i, i + 1) for i in range(5)])
    vec = netpca.density_vector(p6)
    assert vec.shape == (9,)
    assert all(0.0 <= v <= 1.0 for v in vec)
    narrowed = netpca.density_vector(p6, configs=["star1", "triangle"])
    assert narrowed.shape == (2,)
    assert narrowed[1] == 0.0


def test_partition_and_defaults():
    g = netpca.sample_graph(24, "constant:0.5", seed=3)[0]
    assignment, classes = netpca.partition(g, k=2, tau=12, seed=9)
    assert sorted(set(int(a) for a in assignment)) == [1, 2]
    assert len(classes) == 2
    assert sum(c.vertex_count for c in classes) == 24
    assert all(c.vertex_count >= 12 for c in classes)

    assert netpca.default_tau_k(264) == (12, 22)
    with pytest.raises(ValueError):
        netpca.default_tau_k(5)


def test_sampler_and_moments():
    g, latents = netpca.sample_graph(60, "constant:0.3", seed=11)
    assert g.vertex_count == 60
    assert latents.shape == (60,)
    assert all(0.0 <= x < 1.0 for x in latents)
    again, _ = netpca.sample_graph(60, "constant:0.3", seed=11)
    assert again.edges == g.edges

    m = netpca.kernel_moment("constant:0.5", "triangle")
    assert m["method"] == "closed_form"
    assert m["value"] == pytest.approx(0.125)
    assert m["std_error"] == 0.0

    mc = netpca.kernel_moment("logdist:0.8,0.1", "star1", method="monte_carlo",
                              budget=20000, seed=5)
    assert mc["std_error"] > 0.0
    assert 0.0 < mc["value"] < 1.0

    with pytest.raises(ValueError):
        netpca.kernel_moment("constant:0.5", "isolate")


def test_pcan_and_spcan():
    graphs = [netpca.sample_graph(40, "constant:0.35", seed=100 + i)[0] for i in range(12)]
    res = netpca.pcan(graphs)
    p = len(res["row_names"])
    assert p + len(res["dropped_rows"]) == 9
    assert res["loadings"].shape == (p, p)
    assert res["scores"].shape == (12, p)
    assert res["values"].shape == (p, 12)
    ev = list(res["eigenvalues"])
    assert ev == sorted(ev, reverse=True)
    assert sum(res["variance_explained"]) == pytest.approx(1.0)
    assert res["graph_ids"] == ["g%d" % i for i in range(12)]

    sub = netpca.spcan(graphs, k=1, seed=4)
    assert sub["k"] == 1
    assert sub["tau"] == 12
    assert list(sub["eigenvalues"]) == ev

    two = netpca.spcan(graphs, k=2, tau=14, seed=4)
    assert two["scores"].shape[0] == 12
    rerun = netpca.spcan(graphs, k=2, tau=14, seed=4)
    assert (two["values"] == rerun["values"]).all()

    with pytest.raises(ValueError):
        netpca.pcan(graphs[:1])


def test_edge_list_round_trip(tmp_path):
    g = netpca.sample_graph(20, "constant:0.4", seed=7)[0]
    path = str(tmp_path / "g.txt")
    netpca.write_edge_list(g, path)
    back = netpca.load_edge_list(path)
    assert back.vertex_count == g.vertex_count
    assert back.edge_count == g.edge_count

    manifest = tmp_path / "manifest.csv"
    manifest.write_text("id,path\ng,g.txt\n")
    graphs, ids, labels = netpca.load_manifest(str(manifest))
    assert len(graphs) == 1
    assert ids == ["g"]
    assert math.isclose(netpca.density(graphs[0], "star1"),
                        netpca.density(g, "star1"))
