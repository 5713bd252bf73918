"""Smoke test for the `bks` extension module.

Build and install first:

    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/bks-*.whl
"""

import json

import bks


def main():
    product, symbol = bks.lfactors(2, [1])
    assert product == "L(s+1/2,chi) * L(2s,chi^2)", product
    print("a_w for n=2, I={1}:", product, "->", symbol)

    q2 = bks.ScalarQV("1/q^2")
    assert str(-q2) == "-1/q^2"
    assert (q2 * bks.ScalarQV("q^2")) == bks.ScalarQV("1")

    one0 = bks.CoefficientFunction.indicator(1, 0)
    ft = bks.fourier(one0)
    assert ft.floor == -1
    assert ft.coefficient(-1) == -q2
    assert bks.fourier(ft) == one0
    print("F(1_0) for n=1 starts with", ft.coefficients(1))

    for n in range(1, 5):
        b = bks.CoefficientFunction.basic(n)
        assert bks.fourier(b) == b
    print("F(b) = b for n = 1..4")

    f = bks.CoefficientFunction.from_json('{"n":1,"kind":"finite","floor":0,"coeffs":["1","1"]}')
    assert json.loads(f.to_json())["coeffs"] == ["1", "1"]

    value, index = bks.norm([["1/2", "0"], ["0", "2"]], 2)
    assert (value, index) == ("1/2", 1)
    assert bks.norm([["1/2", "0"], ["0", "2"]])[0] == "2"
    try:
        bks.norm([["2", "0"], ["0", "1"]], 3)
    except ValueError as e:
        print("rejected non-symplectic matrix:", e)
    else:
        raise AssertionError("expected ValueError")

    report = bks.verify_rank_one(5.0, 1, 2.0, 30)
    assert report["agrees"], report

    checks = bks.verify_local(3, samples=5)
    assert all(c["passed"] for c in checks), checks
    print("local suite:", ", ".join(c["name"] for c in checks))

    g = bks.verify_global(4.0, 8.0, 1e-8)
    assert g["passed"] and abs(g["sumPhi"] - g["sumFPhi"] + 0.75) < 1e-10
    print("global check discrepancy:", g["discrepancy"])

    print("ok")


if __name__ == "__main__":
    main()
