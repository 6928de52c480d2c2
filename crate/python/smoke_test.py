"""Smoke test for the quadbound_py extension.

Build it first:  pip install --no-build-isolation -e crates/python
"""

import quadbound_py as qb


def main():
    assert qb.basis_dims(2) == [2, 2]
    assert qb.basis_dims(4) == [2, 3, 1, 1]

    report = qb.verify_tables(3)
    assert all(line["status"] != "fail" for line in report["lines"]), report
    report = qb.verify_tables(4)
    assert all(line.get("erratum") for line in report["lines"] if line["status"] == "fail")

    orbits = qb.orbits(2, 3, 2)
    assert orbits[-1]["cardinality"] == 0
    assert any(o["admissible"] for o in orbits)

    p = qb.SdpProblem(2, 4, 3)
    print(p)
    assert p.params == (2, 4, 3)
    assert p.num_variables > 0 and len(p.block_sizes) == len(p.block_labels)
    text = p.to_sdpa()
    assert text.startswith("* quadbound")
    manifest = p.manifest()
    assert manifest["parameters"]["q"] == 2

    y = [0.0] * len(qb.orbits(2, 4, 3))
    blocks = p.evaluate(y)
    assert len(blocks) == len(p.block_sizes)

    out = "Success\nPrimal objective value: -2.0000001\nDual objective value: -1.9999999\n"
    bound = p.bound_from_output(out)
    assert bound["bound"] == 2 and bound["trusted"], bound

    trial = qb.psd_trial(2, 3, 2, trials=20, seed=1)
    assert not trial["disagreements"], trial
    print("ok")


if __name__ == "__main__":
    main()
