"""Quick end-to-end check of the Python bindings.

Build and install first, e.g. `pip install ./crates/python` or
`maturin develop -m crates/python/Cargo.toml`, then run this file.
"""

import json
from fractions import Fraction
from math import factorial

import fusslog


def main():
    # [x^n] log G_2 = C(2n, n) / (2n)
    for n in range(1, 8):
        expected = Fraction(factorial(2 * n), factorial(n) ** 2 * 2 * n)
        assert Fraction(fusslog.coeff_log(2, n)) == expected, n
    assert fusslog.coeff_log(1, 4) == "1/4"
    assert fusslog.coeff_log_power(2, 1, 2) == "0"
    assert fusslog.knuth_log2_coeff(5) == fusslog.coeff_log_power(2, 5, 2)
    assert fusslog.log_gk_series(2, 3) == ["0", "1", "3/2", "10/3"]
    assert all(row[3] for row in fusslog.coeff_table(3, 8, power=2))

    assert fusslog.gen_catalan(2, 5) == 42
    assert fusslog.count_ornaments(3, 4) == factorial(11) // factorial(8)
    assert fusslog.count_multisets(3, 2) == 10

    ornaments = fusslog.enumerate("ornaments", 2, 3)
    assert len(ornaments) == 20
    trees = [o.map("cycle-tree") for o in ornaments]
    assert [t.map("ornament") for t in trees] == ornaments
    for o, t in zip(ornaments, trees):
        assert o.map("multiset") == t.map("multiset")

    path = fusslog.Structure.from_json('{"kind":"path","k":2,"steps":"RURU","labels":[2,1]}')
    field = path.map("minimal-field")
    assert field.kind == "field"
    assert len(json.loads(field.to_json())["parts"]) == 2
    assert field.map("path") == path
    assert path.render().count("#") == 2

    try:
        fusslog.Structure.from_json('{"kind":"path","k":2,"steps":"URRU","labels":[1,2]}')
    except ValueError as e:
        assert "rises above the diagonal" in str(e)
    else:
        raise AssertionError("invalid path accepted")

    overall, report = fusslog.verify("all", [2, 3], 3)
    assert overall and json.loads(report)["overall"]

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
