import pytest

import fracnet


def small_config(seed=1):
    cfg = fracnet.GeneratorConfig()
    cfg.n = 64
    cfg.alpha = 160
    cfg.n_g = 100
    cfg.fixed_count = True
    cfg.seed = seed
    return cfg


def test_generate_and_graph():
    net = fracnet.generate_network(small_config())
    assert len(net) > 0
    assert net.to_csv().startswith("id,x1,y1,x2,y2,aperture,kind,hub_id\n")
    g = fracnet.build_graph(net)
    assert g.n_nodes == len(net)
    assert sum(g.degrees()) == 2 * g.edge_count()


def test_generation_is_deterministic():
    a = fracnet.generate_network(small_config(5)).to_csv()
    b = fracnet.generate_network(small_config(5)).to_csv()
    assert a == b


def test_metrics_on_small_graphs():
    k4 = fracnet.FractureGraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert fracnet.clustering_coefficient(k4) == pytest.approx(1.0)
    assert fracnet.mean_path_length(k4) == pytest.approx(1.0)
    assert fracnet.subgraph_census4(k4)["clique"] == 1


def test_advection_path_of_five():
    path = fracnet.FractureGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    r = fracnet.solve_steady(path, [0], [4])
    assert r["u"] == pytest.approx([10, 5, 0, -5, -10], abs=1e-8)


def test_channel_permeability():
    mask = fracnet.Mask(64, 64)
    for y in range(24, 40):
        for x in range(64):
            mask.set(x, y, True)
    opt = fracnet.PipelineOptions()
    opt.tol = 1e-7
    r = fracnet.permeability(mask, opt)
    assert r["converged"]
    assert r["K"] == pytest.approx(16**3 / (12 * 64), rel=0.05)


def test_config_and_errors():
    rc = fracnet.parse_config_text("gamma=0.7\nn=128\n")
    assert rc.generator.gamma == 0.7
    assert rc.generator.alpha == 320
    with pytest.raises(fracnet.ValidationError):
        fracnet.parse_config_text("gamma=-1\n")
    with pytest.raises(fracnet.Error):
        fracnet.sample_fracture_length(1.0, 1.0, 10.0, 0.5)
