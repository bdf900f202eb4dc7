#!/usr/bin/env python3
"""Smoke test for the nandtree_py extension module.

Builds nothing itself: expects the cdylib to exist already, e.g.

    cargo build -p nandtree-py --release
    python3 python/smoke_test.py
"""

import json
import math
import shutil
import sys
import tempfile
from pathlib import Path


def import_extension():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libnandtree_py.so",
        root / "target" / "debug" / "libnandtree_py.so",
        root / "target" / "release" / "libnandtree_py.dylib",
        root / "target" / "debug" / "libnandtree_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p nandtree-py --release")
    stage = Path(tempfile.mkdtemp(prefix="nandtree_py_"))
    shutil.copy(built, stage / "nandtree_py.so")
    sys.path.insert(0, str(stage))
    import nandtree_py

    return nandtree_py


def classical_nand_fold(bits):
    level = list(bits)
    while len(level) > 1:
        level = [int(not (level[i] and level[i + 1])) for i in range(0, len(level), 2)]
    return level[0]


def main():
    nt = import_extension()
    checks = 0

    # builders and counts
    g = nt.nand_tree("11")
    assert len(g) == 5 and len(g.bonds()) == 4, g
    checks += 1

    g3 = nt.nand_tree("00011011")
    assert len(g3) == 7 + 4 + 8
    checks += 1

    # classification agrees with the classical fold for all depth-2 inputs
    for pattern in range(16):
        bits = [(pattern >> (3 - k)) & 1 for k in range(4)]
        tree = nt.nand_tree("".join(map(str, bits)))
        got = nt.classify_bit(tree)
        want = str(classical_nand_fold(bits))
        assert got == want, (bits, got, want)
        exact = nt.classify_bit(tree, exact=True)
        assert exact == want, (bits, exact, want)
    checks += 1

    # scattering engine: flux conservation and the closed form at E = 0
    sol = nt.transmission_qst(g3, 0.37)
    flux = sol["B"][0] ** 2 + sol["B"][1] ** 2 + sol["T"]
    assert abs(flux - 1.0) < 1e-10, sol
    checks += 1

    y_num, y_den = nt.tree_output_y(g, 0.25)
    assert y_den != 0.0
    checks += 1

    # engines agree on a tree away from poles
    t_qst = nt.transmission_qst(g3, 0.37)["T"]
    t_negf = nt.transmission_negf(g3, 0.37)
    assert abs(t_qst - t_negf) < 1e-6, (t_qst, t_negf)
    checks += 1

    # single gates through the compiler
    circuit = nt.compile_expr("a NAND b")
    assert circuit.variables() == ["a", "b"]
    rows = circuit.truth_table()
    outputs = [out for (_, out, _, _) in rows]
    oracle = [str(bit) for (_, _, bit, _) in rows]
    assert outputs == oracle == ["1", "1", "1", "0"], rows
    checks += 1

    # documents round-trip through JSON
    doc = json.loads(circuit.to_json())
    assert doc["meta"]["inputs"]["a"] == [0]
    rebuilt = nt.circuit_from_json(json.dumps(doc))
    assert rebuilt.variables() == ["a", "b"]
    checks += 1

    graph_doc = g3.to_json()
    same = nt.Graph.from_json(graph_doc)
    assert len(same) == len(g3)
    checks += 1

    # catalog structures: the all-carbon tree shows the interference dip,
    # the anchored pair molecule transmits weakly through its sulfurs
    carbon = nt.catalog("nand3-carbon")
    dip = nt.transmission_negf(carbon, 0.0, attach=nt.nand3_attach())
    assert dip < 1e-12, dip
    checks += 1

    anchored = nt.catalog("anchored-00")
    sulfurs = [site_id for (site_id, _, label) in anchored.sites() if label == "S"]
    assert len(sulfurs) == 2
    t = nt.transmission_negf(anchored, 0.0, contacts=(sulfurs[0], sulfurs[1]))
    assert 2.05e-3 <= t <= 8.2e-3, t
    checks += 1

    # hamiltonian is symmetric
    h = g.hamiltonian()
    n = len(h)
    assert all(
        math.isclose(h[i][j], h[j][i], abs_tol=0.0) for i in range(n) for j in range(n)
    )
    checks += 1

    print(f"nandtree_py smoke test: {checks} checks passed")


if __name__ == "__main__":
    main()
