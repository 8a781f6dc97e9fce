"""Smoke test for the spexlab extension module.

Build first, e.g. `maturin develop --release -m crates/python/Cargo.toml`.
"""

import math

import spexlab


def main():
    k5 = spexlab.Graph.family("complete", 5)
    assert (k5.order, k5.size) == (5, 10)
    assert math.isclose(spexlab.lambda_max(k5), 4.0)

    c5 = spexlab.Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert c5 == spexlab.Graph.from_graph6(c5.graph6())
    assert c5.isomorphic(spexlab.Graph.family("cycle", 5))
    assert spexlab.is_free(c5, "clique:3")
    assert spexlab.find(k5, "fr:2") is not None

    r = spexlab.spectral_radius(c5)
    assert math.isclose(r["lambda1"], 2.0) and len(r["perron"]) == 5

    assert spexlab.k_core(k5.disjoint_union(spexlab.Graph(2, [(0, 1)])), 2) == [0, 1, 2, 3, 4]

    ext = spexlab.Graph.family("extremal", 3, 4)
    d = spexlab.decompose(ext, 3)
    assert [c["class"] for c in d["components"]] == ["J2"]
    assert spexlab.eta(ext, 3, [1, 2])["holds"]

    s = spexlab.extremal_search(7, pattern="clique:3")
    assert math.isclose(s["best_lambda"], math.sqrt(7))

    v = spexlab.verify_bound("nosal", 8)
    assert not v["bound"]["violated"]

    try:
        spexlab.Graph.from_graph6("!!")
    except ValueError:
        pass
    else:
        raise AssertionError("bad graph6 accepted")

    assert all(c["failures"] == 0 for c in spexlab.selftest(1))
    print("spexlab", spexlab.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
