#!/usr/bin/env python3
"""Smoke test for the flatfiber Python module.

Build the extension and run this script:

    cargo build --release -p flatfiber-py
    cp target/release/libflatfiber.so python/flatfiber.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import flatfiber


def main() -> None:
    names = flatfiber.builtin_names()
    assert "p4g" in names and "it113" in names, names

    # group-level report
    g = json.loads(flatfiber.analyze_json("p4g"))
    assert g["point_group_order"] == 8, g
    assert g["first_betti"] == 0

    g = json.loads(flatfiber.analyze_json("p1"))
    assert g["first_betti"] == 2

    # wallpaper recognition on builtin presentations
    assert flatfiber.wallpaper_type("pgg") == "22x"
    assert flatfiber.wallpaper_type("p3m1") == "*333"

    # GL(2,Z) conjugacy classes
    assert flatfiber.conjclass("0,-1;1,0") == "A"
    assert flatfiber.conjclass("1,0;0,1") == "I"
    try:
        flatfiber.conjclass("2,0;0,1")
        raise AssertionError("non-unimodular input must be rejected")
    except ValueError:
        pass

    # full fibration analysis of Example 6's group
    r = json.loads(flatfiber.fiber_json("it113", "builtin"))
    assert r["complete"] and r["dual"]
    assert r["structure"]["kind"] == "C2"
    assert r["fibration"]["fiber"] == "2*22"
    assert r["splitting"]["orthogonal"] is False

    # torus fibration of the plane group p1
    r = json.loads(flatfiber.fiber_json("p1", "g1"))
    assert r["fibration"]["fiber"] == "O" and r["splitting"]["orthogonal"] is True

    # enumeration counts of the affinity pair classes
    assert len(flatfiber.pair_classes("torus", False)) == 7
    assert len(flatfiber.pair_classes("torus", True)) == 34
    assert len(flatfiber.pair_classes("pillow", False)) == 10
    assert len(flatfiber.pair_classes("pillow", True)) == 40

    # table verification: everything presented passes
    passed, failed, skipped = flatfiber.verify_tables(1)
    assert (passed, failed, skipped) == (9, 0, 0), (passed, failed, skipped)
    passed, failed, skipped = flatfiber.verify_tables()
    assert failed == 0 and passed >= 22, (passed, failed, skipped)

    print(f"smoke test ok: {passed} table rows pass, {skipped} skipped")


if __name__ == "__main__":
    main()
