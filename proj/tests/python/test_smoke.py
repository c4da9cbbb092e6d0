"""Smoke tests for the python module: import, exact arithmetic surface,
a small Poincare evaluation, and MLDE discovery."""

import json
import sys
from fractions import Fraction

try:
    import _logvvmf as lv
except ImportError:
    import logvvmf as lv


def test_decompose_roundtrip():
    out = lv.decompose(2, 1, 1, 1)
    assert out["reconstruction_ok"]
    assert out["length"] >= 1
    # S has the one-letter word (0)
    s = lv.decompose(0, -1, 1, 0)
    assert s["word"] == [0]
    assert s["strict"]


def test_mobius():
    z = lv.mobius(1, 1, 0, 1, 0.25 + 1j)  # T acts by translation
    assert abs(z - (1.25 + 1j)) < 1e-12


def test_eisenstein():
    e4 = lv.eisenstein("E4", 6)
    assert e4[0] == Fraction(1)
    assert e4[1] == Fraction(240)
    assert e4[2] == Fraction(2160)
    delta = lv.eisenstein("Delta", 6)
    assert delta[1] == Fraction(1)
    assert delta[2] == Fraction(-24)
    p = lv.eisenstein("P", 3)
    assert p[0] == Fraction(-1, 12)
    assert p[1] == Fraction(2)


def test_reps_and_eval():
    std = lv.standard_rep()
    assert std["dim"] == 2
    m = lv.eval_rep(std, 1, 1, 0, 1)  # rho(T) = modified Jordan block
    assert abs(m[0][0] - 1) < 1e-12 and abs(m[1][0] - 1) < 1e-12
    assert abs(m[0][1]) < 1e-12 and abs(m[1][1] - 1) < 1e-12


def test_poincare_small():
    triv = lv.trivial_rep()
    out = lv.poincare_eval(triv, [0], [8], 40, 0.1 + 1.2j)
    assert out["folded"]
    # compare with the weight-8 Eisenstein q-expansion at the same point
    q = __import__("cmath").exp(2j * 3.141592653589793 * (0.1 + 1.2j))
    e8 = 1 + sum(480 * sigma7(n) * q**n for n in range(1, 12))
    assert abs(out["matrix"][0][0] - e8) < 1e-6


def sigma7(n):
    return sum(d**7 for d in range(1, n + 1) if n % d == 0)


def test_qexp_and_mlde():
    triv = lv.trivial_rep()
    entries = lv.poincare_qexp(triv, [0], [8], 60, 3)
    series = entries[0][0]
    coeffs = {tuple(t[:2]): complex(float(t[2][0]), float(t[2][1])) for t in series["terms"]}
    assert abs(coeffs[(1, 0)] - 480) / 480 < 1e-6

    delta_terms = [[n, 0, [str(c), "0"]] for n, c in lv.eisenstein("Delta", 24).items()]
    comps = [{"mu": "0", "basis": "binomial", "order": 24, "terms": delta_terms}]
    mlde = lv.minimal_mlde(comps, 12)
    assert mlde["order"] == 1
    assert mlde["lead_weight"] == 0


def test_modularity():
    std = lv.standard_rep()
    r = lv.verify_modularity(std, [0], [7, 7], 40, 1, 1, 0, 1, 1j)
    assert r < 1e-6


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
