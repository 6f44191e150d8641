"""Smoke test for the pyweaklg extension module."""

from fractions import Fraction

import pyweaklg as w


def main():
    f16 = w.LaurentPoly.builtin("V16")
    assert len(f16) == 20
    phi = f16.constant_term_series(6)
    assert phi[:3] == [1, 4, 40], phi
    assert f16.constant_term_series(6, mitm=True) == phi

    l16 = w.DOperator.builtin("V16")
    assert l16.solve_series(6) == phi
    report = w.verify(f16, l16, 20)
    assert report["verdict"] == "very-weak-confirmed-to-20", report

    f22 = w.LaurentPoly.builtin("V22")
    recorded = w.DOperator.builtin("V22")
    assert recorded.solve_series(1)[1] == Fraction(32, 5)
    assert w.verify(f22, recorded, 10)["first_mismatch"] == "1"
    basis = w.fit_operator(f22.constant_term_series(25), 3, 4)
    assert len(basis) >= 1
    derived = w.DOperator.builtin("V22", derived=True)
    assert derived.solve_series(20) == f22.constant_term_series(20)

    x = w.LaurentPoly(1, [(1, [1]), (1, [-1])])
    assert (x ** 2).constant_term() == 2
    assert x.resize([Fraction(1, 2)]).constant_term_series(4) == [1, 0, 2, 0, 6]

    inv = w.polytope_invariants([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]], expect="P3-sample")
    assert inv["degree"] == "64" and inv["mismatches"] == "none", inv

    ansatz = "dim 1\n1 : b : free\n-1 : b : free\n"
    found = w.search_ansatz(ansatz, [1, 0, 2, 0, 6, 0, 20], [7], depth=2, verify_depth=6)
    assert len(found) == 2

    assert "V18" in w.catalog_names()
    print("pyweaklg smoke test passed")


if __name__ == "__main__":
    main()
