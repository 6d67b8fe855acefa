"""Smoke test for the acquaintance_py extension.

Build and install it first:
    pip install --no-build-isolation ./crates/python
"""

import json

import acquaintance_py as acq


def main():
    p4 = acq.Graph.family("path", 4)
    value, witness = acq.exact(p4)
    assert value == 2, value
    assert acq.verify(p4, witness)[0]
    assert acq.verify(p4, witness.reverse())[0]

    footnote = acq.Strategy(4, [[(0, 1)], [(2, 3)], [(0, 1)]])
    reordered = acq.Strategy(4, [[(0, 1)], [(0, 1)], [(2, 3)]])
    assert acq.verify(p4, footnote)[0]
    ok, missing = acq.verify(p4, reordered)
    assert not ok and missing == [(0, 3)]

    k88 = acq.Graph.family("complete_bipartite", 8, 8)
    s = acq.complete_bipartite_strategy(3)
    assert len(s) == 3 and acq.verify(k88, s)[0]
    back = acq.Strategy.from_json(s.to_json(), k88)
    assert back.rounds() == s.rounds()
    assert json.loads(s.to_json())["format_version"] == 1

    g = acq.Graph.family("gnp", 30, p=0.2, seed=7)
    assert acq.Graph.parse(g.to_text()).edges() == g.edges()
    best, name = acq.best_strategy(g)
    bounds = acq.lower_bounds(g)
    assert bounds["best_lower"] <= len(best)
    assert acq.verify(g, best)[0], name

    base, coloring = acq.plant(24, 4, 0.5, 1)
    h, w = acq.reduce(base, 4, coloring, 1)
    assert h.n == 48 and len(w) == 1 and acq.verify(h, w)[0]
    assert acq.audit(h)["passed"]
    det = acq.ac1_deterministic(h)
    rnd = acq.ac1_randomized(h, seed=3)
    assert acq.verify(h, det)[0] and acq.verify(h, rnd)[0]

    doubled, rungs = acq.double(acq.Graph.family("gnp", 12, p=0.5, seed=2), seed=5)
    assert len(rungs) == 1 and acq.verify(doubled, rungs)[0]

    try:
        acq.ac1_deterministic(acq.Graph.family("path", 10))
    except ValueError as e:
        assert "at least 2" in str(e)
    else:
        raise AssertionError("path should be rejected")

    print("smoke test ok:", name, len(best), "rounds on", g)


if __name__ == "__main__":
    main()
