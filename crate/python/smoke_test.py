#!/usr/bin/env python3
"""Smoke test for the _xoprec extension module.

Builds nothing itself: run `cargo build -p xoprec-py --release` first, then
`python3 python/smoke_test.py`. Loads the compiled module straight from the
cargo target directory and exercises one pinned value per binding.
"""

import importlib.util
import pathlib
import sys


def load_module():
    root = pathlib.Path(__file__).resolve().parents[1]
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("lib_xoprec.so", "_xoprec.so", "lib_xoprec.dylib")
    ]
    for path in candidates:
        if path.is_file():
            spec = importlib.util.spec_from_file_location("_xoprec", path)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            print(f"loaded {path}")
            return module
    sys.exit(
        "no compiled extension found; run `cargo build -p xoprec-py --release` first"
    )


def check(name, got, want):
    if got != want:
        sys.exit(f"FAIL {name}: got {got!r}, want {want!r}")
    print(f"ok {name}: {got!r}")


def expect_value_error(name, fn):
    try:
        fn()
    except ValueError as e:
        print(f"ok {name}: raised ValueError ({e})")
        return
    sys.exit(f"FAIL {name}: expected ValueError")


def main():
    x = load_module()

    check(
        "validate",
        x.validate("laguerre", xtype="II", j=1, a="3"),
        "laguerre type II j = 1 (a=3)",
    )

    # Pinned reference table (same object the CLI prints as JSON).
    check(
        "table laguerre II j=1 a=3 n=2",
        x.table("laguerre", 2, xtype="II", j=1, a="3"),
        {
            "family": "laguerre",
            "type": "II",
            "j": 1,
            "params": {"a": "3"},
            "n": 2,
            "multiplier": "closed",
            "multiplier_poly": ["6", "4", "1"],
            "coeffs": {"2": "1", "1": "20", "0": "104", "-1": "120", "-2": "20"},
        },
    )

    # Closed multipliers pinned from the displayed closed forms.
    check(
        "multiplier laguerre I j=1 a=1",
        x.multiplier("laguerre", xtype="I", j=1, a="1"),
        ["2", "4", "1"],
    )
    check(
        "multiplier hermite III j=2",
        x.multiplier("hermite", xtype="III", j=2),
        ["0", "3/2", "0", "1"],
    )

    # Member polynomials and exact evaluation (row-index semantics).
    check(
        "member laguerre I j=1 a=1 row 0",
        x.member("laguerre", 0, xtype="I", j=1, a="1"),
        ["3", "1"],
    )
    check(
        "eval laguerre I j=1 a=1 row 0 at 1",
        x.eval_member("laguerre", 0, "1", xtype="I", j=1, a="1"),
        "4",
    )
    check("row_degree hermite III j=2 row 0", x.row_degree("hermite", 0, xtype="III", j=2), 0)
    check("row_degree hermite III j=2 row 1 (gap)", x.row_degree("hermite", 1, xtype="III", j=2), None)
    expect_value_error(
        "member at a gap row",
        lambda: x.member("hermite", 1, xtype="III", j=2),
    )

    # Type-III multiplier decomposition constants.
    check(
        "decomposition hermite III j=2",
        x.multiplier_decomposition("hermite", xtype="III", j=2),
        ("1", "0"),
    )

    # Classical monic members.
    check(
        "classical hermite n=3",
        x.classical_monic("hermite", 3),
        ["0", "-3/2", "0", "1"],
    )
    check(
        "classical jacobi n=1 a=b=1/2",
        x.classical_monic("jacobi", 1, a="1/2", b="1/2"),
        ["0", "1"],
    )

    # Squared-seed table: top term is monic at shift +2j.
    fourj = x.table_four_j_one("laguerre", 3, xtype="I", j=1, a="1/2")
    check("4j+1 kind", fourj["kind"], "4j+1")
    check("4j+1 top coefficient", fourj["coeffs"]["2"], "1")

    # Validation errors arrive as ValueError.
    expect_value_error("unknown family", lambda: x.validate("weber"))
    expect_value_error("hermite type I", lambda: x.validate("hermite", xtype="I", j=1))
    expect_value_error("laguerre without a", lambda: x.validate("laguerre"))
    expect_value_error(
        "orthogonal strictness rejects domain root",
        lambda: x.validate("jacobi", xtype="III", j=1, a="7/3", b="7/3", orthogonal=True),
    )

    print("smoke test passed")


if __name__ == "__main__":
    main()
