#!/usr/bin/env python3
"""Smoke test for the Python bindings.

Build the extension first, then run this script from anywhere:

    cargo build -p thetakp-py --features extension-module
    python3 python/smoke_test.py

The script copies the built cdylib next to a scratch directory under
the import name `thetakp` and checks the pinned genus-2 example end to
end (exact formulas, numeric winding count, and their agreement).
"""

import json
import pathlib
import shutil
import sys
import tempfile

REPO = pathlib.Path(__file__).resolve().parent.parent

CURVE = '{"f": ["-1", "0", "0", "0", "0", "1"]}'
DIVISOR = '[{"point": "infinity", "mult": 1}]'
POINT = '"infinity"'
PINNED = {
    "order": 3,
    "gap_sequence": [2, 4],
    "sw_prefix": [-2, 0],
    "n_used": 2,
    "formulas": {"sw": 3, "gap": 3, "thm41": 3},
}


def locate_cdylib() -> pathlib.Path:
    candidates = [
        REPO / "target" / "release" / "libthetakp.so",
        REPO / "target" / "debug" / "libthetakp.so",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("no libthetakp.so found; run: cargo build -p thetakp-py")
    # prefer the newest build
    return max(built, key=lambda p: p.stat().st_mtime)


def main() -> None:
    scratch = pathlib.Path(tempfile.mkdtemp(prefix="thetakp-py-"))
    shutil.copy2(locate_cdylib(), scratch / "thetakp.so")
    sys.path.insert(0, str(scratch))
    import thetakp

    curve = thetakp.Curve(CURVE)
    assert curve.genus() == 2, curve.genus()
    print("genus:", curve.genus())

    assert curve.h0("[]") == 1
    assert curve.h0(DIVISOR) == 1
    print("h0 of the trivial bundle:", curve.h0("[]"))

    assert curve.gap_sequence(DIVISOR, POINT) == [2]
    assert curve.weight(DIVISOR, POINT) == 1

    report = json.loads(curve.order_report(DIVISOR, POINT))
    assert report == PINNED, report
    assert curve.order(DIVISOR, POINT) == 3
    print("exact order report:", json.dumps(report))

    k = curve.theta_order(DIVISOR, POINT)
    assert k == 3, k
    print("numeric order:", k)

    verdict = json.loads(curve.verify(DIVISOR, POINT))
    assert verdict["order"] == 3 and verdict["numeric"] == 3 and verdict["agree"] is True, verdict
    print("verify:", json.dumps(verdict))

    # error mapping: bad input surfaces as ValueError
    try:
        curve.h0('[{"point": {"x": "1", "y": "1"}, "mult": 1}]')
    except ValueError as e:
        print("rejected off-curve point:", e)
    else:
        sys.exit("off-curve point was accepted")

    try:
        thetakp.Curve('{"f": ["1", "0", "1"]}')
    except ValueError as e:
        print("rejected even-degree model:", e)
    else:
        sys.exit("even-degree model was accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
