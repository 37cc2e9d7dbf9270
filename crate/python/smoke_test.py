"""Smoke test for the quinv extension module. Run after
`pip install --no-build-isolation ./crates/py`."""

import json

import quinv

SIGMA = """5 4
9 3 6 1 3
2 5 9 4 8
3 9 7 3 5
5 8 4 6 4 8 7
9 3 6 5 2 10 1"""

VARPHI = [
    [4, 5],
    [6, 3, 1, 3, 9],
    [8, 4, 5, 9, 2],
    [3, 3, 5, 7, 9],
    [7, 8, 4, 4, 6, 8, 5],
    [10, 1, 6, 2, 5, 9, 3],
]


def main():
    sigma = quinv.Filling.parse(SIGMA)
    assert sigma.shape == [7, 7, 5, 5, 5, 2]
    s = quinv.stats(sigma)
    assert (s["maj"], s["inv"], s["quinv"]) == (33, 40, 32), s

    image = quinv.varphi(sigma)
    assert image == quinv.Filling(VARPHI)
    assert (image.maj(), image.quinv(), image.inv()) == (33, 40, 34)
    assert image.is_row_equivalent(sigma)

    out, steps = quinv.gamma(sigma, trace=True)
    assert out == quinv.gamma(sigma)
    assert [0, 0, 5, 3, 7, 9, 3] in [st["after"][0] for st in steps]

    flip = quinv.Filling([[3, 3], [9, 3], [2, 5], [3, 9], [5, 8], [9, 3]])
    r = quinv.rho(flip, 1, 6)
    assert (r["start_row"], r["end_row"]) == (5, 3)
    assert r["filling"] == quinv.t(flip, 1, 3, to=5)

    x = quinv.Filling([[1, 2], [5, 4], [3, 7]])
    y = quinv.phi(x, 1)
    assert y.rows == [[1, 2], [5, 4], [7, 3]]
    assert (x.ndes_vector(), y.ndes_vector()) == ([1, 2], [2, 1])

    rect = quinv.Filling([[3, 9], [8, 5]])
    assert quinv.theta(rect.reverse()).rows == [[9, 3], [8, 5]]

    remark = quinv.Filling.parse("3\n4 1 2\n3 3 3")
    assert quinv.class_poly(remark, ["maj", "quinv"]) == "q^2*t^3 + 2*q^2*t^2 + 2*q^2*t + q^2"
    assert quinv.verify("T1", filling=remark)["passed"]
    t2 = quinv.verify("T2", filling=remark)
    assert not t2["passed"] and t2["instances"] == 6

    mac = quinv.macdonald([1, 1], 2)
    assert mac == {(0, 2): "1", (1, 1): "q + 1", (2, 0): "1"}, mac
    assert mac == quinv.macdonald([1, 1], 2, stat="quinv")

    sweep = quinv.verify("theta", rect=(2, 2), workers=2)
    assert sweep["passed"] and sweep["instances"] > 0
    assert json.loads(sweep["json"])["theorem"] == "theta"

    try:
        quinv.Filling.parse("1 0")
    except ValueError:
        pass
    else:
        raise AssertionError("non-positive entry accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
