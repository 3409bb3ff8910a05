#!/usr/bin/env python3
"""Smoke test for the widegraph Python extension module.

Builds nothing itself: it locates the compiled cdylib under target/,
copies it next to a temp directory under the importable name, and runs a
few end-to-end checks (homology, transfer matrices, cycle lifting, and a
covering dimension report).

Usage:
    cargo build -p widegraph-py            # or --release
    python3 python/smoke_test.py
"""

import os
import shutil
import sys
import tempfile
from fractions import Fraction

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def locate_extension():
    candidates = [
        os.path.join(REPO, "target", profile, name)
        for profile in ("release", "debug")
        for name in ("libwidegraph.so", "widegraph.dll", "libwidegraph.dylib")
    ]
    for path in candidates:
        if os.path.exists(path):
            return path
    sys.exit("extension not found; run `cargo build -p widegraph-py` first")


def import_widegraph():
    src = locate_extension()
    stage = tempfile.mkdtemp(prefix="widegraph-py-")
    ext = ".pyd" if src.endswith(".dll") else ".so"
    shutil.copy(src, os.path.join(stage, "widegraph" + ext))
    sys.path.insert(0, stage)
    import widegraph

    return widegraph


def frac(s):
    return Fraction(s)


def main():
    wg = import_widegraph()
    print(f"widegraph {wg.__version__}")

    # homology of the theta graph: two independent cycles
    theta = wg.Graph(
        ["u", "v"],
        [("A", "u", "v"), ("B", "u", "v"), ("C", "u", "v")],
    )
    assert theta.betti1() == 2, theta.betti1()
    basis = theta.h1_basis()
    assert len(basis) == 3 and len(basis[0]) == 2
    # the cohomology representatives are dual to the basis: the pairing
    # (dot product of edge coordinates) is the identity
    reps = theta.h1_cohom_representatives()
    for i in range(2):
        for j in range(2):
            pairing = sum(
                frac(basis[r][i]) * frac(reps[r][j]) for r in range(3)
            )
            assert pairing == (1 if i == j else 0), (i, j, pairing)
    print("theta graph homology: ok")

    # connected double cover of the loop by a 2-gon
    two_gon = wg.Graph(["p", "q"], [("a", "p", "q"), ("b", "p", "q")])
    loop = wg.Graph(["v"], [("l", "v", "v")])
    phi = wg.Morphism(
        two_gon,
        loop,
        {"p": "v", "q": "v"},
        {"a": ("l", False), "b": ("l", True)},
        {"p": 1, "q": 1},
        {"a": 1, "b": 1},
        2,
    )
    assert phi.is_valid(), phi.validate()
    assert phi.image_cycle(["a+", "b-"]) == ["l+", "l+"]
    assert phi.degree_over(["a+", "b-"], ["l+"]) == 2
    lifts = phi.lift_cycles(["l+"])
    assert lifts == [["a+", "b-"]], lifts
    assert phi.pullback_chain(["l+"]) == {"a": "1", "b": "-1"}
    push = phi.pushforward_h1()
    pull = phi.pullback_h1()
    assert frac(push[0][0]) * frac(pull[0][0]) == 2, (push, pull)
    # lifting is seed independent at the chain level
    for seed in (1, 2, 3, 123456789):
        seeded = phi.lift_cycles(["l+"], seed)
        total = sum(len(c) for c in seeded)
        assert total == 2, seeded
    print("two-gon over loop morphism: ok")

    # weight-graded dimensions of a two-component covering
    covering = wg.Covering(
        [("P", 1), ("Q", 2)],
        [("A1", "P", "Q"), ("A2", "P", "Q")],
        [("E1", "P"), ("E2", "Q")],
    )
    dims = covering.dimension_report()
    assert dims == {
        "h0": 1,
        "w0": 1,
        "w1": 6,
        "w2": 2,
        "h1_special": 7,
        "h1_total": 9,
    }, dims
    gamma, gamma_prime, gamma_tilde = covering.graphs()
    assert gamma.betti1() == 1
    assert gamma_prime.betti1() == 1
    assert gamma_tilde.betti1() == 2
    print("covering dimension report: ok")

    # invalid inputs raise ValueError with the violated rule in the message
    try:
        wg.Covering([("P", 0), ("Q", 0)], [], [("E", "P")])
    except ValueError as e:
        assert "not connected" in str(e), e
    else:
        sys.exit("disconnected covering was accepted")
    bad = wg.Morphism(
        two_gon,
        loop,
        {"p": "v", "q": "v"},
        {"a": ("l", False), "b": ("l", True)},
        {"p": 1, "q": 1},
        {"a": 1, "b": 2},
        2,
    )
    assert not bad.is_valid()
    assert any("fiber sum" in v for v in bad.validate())
    print("error paths: ok")

    # degree-2 cyclic covering morphism from the shipped fixtures
    fixture = os.path.join(REPO, "fixtures", "covering_morphisms", "cyclic_degree2.json")
    f = wg.CoveringMorphism.from_json(fixture)
    report = f.functorial_report()
    assert report["degree"] == 2
    assert report["weight0_push_pull_is_n_id"]
    assert report["weight2_push_pull_is_n_id"]
    assert report["target_dimensions"]["h1_total"] == 2
    print("covering morphism functorial report: ok")

    print("smoke test passed")


if __name__ == "__main__":
    main()
