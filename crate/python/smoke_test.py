"""Smoke test for the segre extension module.

Build and install first, e.g. `pip install crates/py` or
`maturin develop -m crates/py/Cargo.toml`, then run `python python/smoke_test.py`.
"""

import json

import segre


def main():
    assert segre.hirschowitz_bound(2, 2, 1) == 2
    assert segre.mukai_sakai_bound(2, 2, 1) == 2
    assert segre.s_max(2, 3, 1, 2) == 2
    assert segre.valid_s(4, 2, 0, 1) == [2, 4]

    rows = segre.strata(4, 2, 0)
    assert [(x["k"], x["s"], x["dim"], x["locus_dim"]) for x in rows] == [(1, 2, 12, 0), (1, 4, 13, 1)]

    cert = segre.construct(3, 4, 1, 2, 2)
    assert cert["n_k"] == 3
    assert cert["verdict"] in ("PaperGuaranteed", "SharpGuaranteed")
    assert json.loads(segre.construct_json(3, 4, 1, 2, 2)) == cert

    p = segre.Profile(2, 3, 1)
    assert p.s == [4, 2]
    q = p.apply("I,II")
    assert (q.d, q.s) == (0, [3, 3])
    assert q.dual().apply(segre.dual_step(3, "I,II")) == p.dual()
    assert p.apply_all([["I", "I"], "I,I"]).s == [2, -2]
    assert segre.Profile.from_json(p.to_json()) == p
    assert not p.type_feasible(1, "II")

    try:
        segre.Profile(2, 3, 1, [4, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("incongruent profile accepted")

    try:
        segre.Profile(2, 3, 0, [2**63 - 2, 0]).apply("II,I")
    except OverflowError:
        pass
    else:
        raise AssertionError("overflow not reported")

    assert segre.fuzz(1, 50)["failures"] == []
    print("smoke test passed")


if __name__ == "__main__":
    main()
