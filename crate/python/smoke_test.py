"""Smoke test for the qtwist extension module.

Build and install first:  pip install -e crates/qtwist-py --no-build-isolation
"""

import json
import pathlib

import qtwist

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "crates/qtwist-cli/tests/fixtures"


def main():
    assert qtwist.q_binom(4, 2, "2") == "35"

    a2 = qtwist.Datum([[2, -1], [-1, 2]], [["4", "6"], ["1/24", "4"]])
    assert a2.linking == ["4/3", "4/3"]
    assert a2.default_bound() == 4
    assert a2.serre("x", 1, 2) == "1 * x1.x1.x2 # e + -30 * x1.x2.x1 # e + 144 * x2.x1.x1 # e"

    ured = a2.ured()
    assert ured.letters == ["x1", "x2", "y1", "y2"]
    assert len(ured) == 8

    iso = qtwist.verify_isomorphism(a2)
    assert iso["pass"], iso
    bad = qtwist.verify_isomorphism(a2, r5_constant="1")
    assert not bad["pass"]

    twist = qtwist.twist_to_dj(a2, ["2"])
    assert twist["pass"]
    assert twist["qhat"] == [["4", "1/2"], ["1/2", "4"]]
    assert twist["sigma"]["matrix"][0][1] == "1/12"

    assert qtwist.transpositions(3) == ["(12)", "(13)", "(23)"]
    assert qtwist.nichols_hilbert(3, "minus_one", 4) == [1, 3, 4, 3, 1]
    fk = qtwist.fk_relations(3, "chi")
    assert len(fk) == 5 and fk.graded_dimension(2) == 4

    exp = qtwist.verify_exp_deformation(4, "1")
    assert exp["pass"] and exp["target_t"] == ["2", "3"]

    phi = qtwist.search_twist_table(4)
    assert phi is not None
    composite = qtwist.compose_with_group_twist(4, phi, "1")
    assert composite["pass"]

    code, report = qtwist.run("nichols-hilbert", json.dumps({"n": 3, "cocycle": "chi"}))
    assert code == 0 and report["result"]["series"] == [1, 3, 4, 3, 1]
    code, report = qtwist.run("verify-iso", (FIXTURES / "a2_mutated_r5.json").read_text())
    assert code == 1

    try:
        qtwist.Datum([[2]], [["1"]])
    except ValueError as e:
        assert "q[1][1] = 1" in str(e)
    else:
        raise AssertionError("q_11 = 1 accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
