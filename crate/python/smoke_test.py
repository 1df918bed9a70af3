"""Smoke test for the dshier Python bindings.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import json
import sys

import dshier_py as d


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    return bool(cond)


def main():
    results = []
    print("dshier", d.__version__)

    sl2 = d.LieAlgebra.sl(2)
    results.append(check(sl2.dim == 3 and sl2.labels == ["E12", "H1", "E21"], "sl2 basis"))
    h = ["0"] * 3
    h[sl2.labels.index("H1")] = "1"
    e = ["0"] * 3
    e[sl2.labels.index("E12")] = "1"
    results.append(check(sl2.bracket(h, e)[sl2.labels.index("E12")] == "2", "[h, e] = 2e"))
    results.append(check(d.LieAlgebra.from_json(sl2.to_json()).dim == 3, "algebra JSON round trip"))

    so7 = d.LieAlgebra.so([3, 2, 2])
    g = d.Grading.from_partition(so7)
    results.append(check(g.depth == "3/2" and g.nilpotent_type, "so7 (3,2,2): depth 3/2, nilpotent type"))
    results.append(check(not g.probe_non_nilpotent(20, 1), "so7 cyclic elements sampled nilpotent"))

    g2 = d.LieAlgebra.g2()
    short = d.Grading.g2(g2, "~A1")
    results.append(check(short.find_integrable() is None, "G2 ~A1 has no quasi-cyclic element"))

    t = d.IntegrableTriple.so([3, 2, 2])
    ok, failures = t.check()
    results.append(check(ok and not failures, "so7 integrable triple passes its checks"))
    results.append(check(t.classification() == ("quasicyclic", "mixed"), "so7 f + E is quasi-cyclic, mixed"))
    back = d.IntegrableTriple.from_json(t.algebra, t.to_json())
    results.append(check(json.loads(back.to_json())["p"] == json.loads(t.to_json())["p"], "triple JSON round trip"))

    vir = d.BracketTable.virasoro()
    flow = vir.ham_flow(d.DiffPoly("1/2*u^2"), d.DiffPoly("u"))
    results.append(check(flow == d.DiffPoly("3*u*u[1] + c*u[3]"), "KdV flow " + str(flow)))
    results.append(check(vir.check_axioms() == ([], []), "Virasoro axioms"))
    results.append(check(d.lenard_kdv(3)[2] == "1/2*c*u[0]*u[2] + 1/2*u[0]^3", "Lenard chain"))

    hier = d.Hierarchy.solve(d.IntegrableTriple.sl_principal(2), "5")
    dens = hier.densities(3)
    results.append(check(len(dens) == 3 and hier.flatness_check(), "sl2 hierarchy: 3 densities, flat"))
    results.append(check(hier.gauge_invariance(1), "densities gauge invariant"))
    kdv = json.loads(hier.kdv_comparison(3))
    results.append(check(kdv["matches_oracle"] and kdv["involutive"] and kdv["mu"] == "-1/2", "densities match KdV"))
    try:
        hier.densities(50)
        results.append(check(False, "window error raised"))
    except d.WindowTooSmallError:
        results.append(check(True, "window error raised"))

    so7h = d.Hierarchy.solve(t, "2")
    results.append(check(so7h.flatness_check() and len(so7h.densities()) >= 1, "so7 hierarchy through degree 2"))

    results.append(check(len(json.loads(d.table1_json())) == 15, "15 table rows"))

    print(f"{sum(results)}/{len(results)} passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
