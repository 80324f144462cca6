"""Quick end-to-end check of the sr1kit extension module.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/sr1kit-*.whl
"""

import sr1kit
from sr1kit import Matrix


def check(label, cond):
    print(("ok   " if cond else "FAIL ") + label)
    return cond


def main():
    results = []
    a = Matrix.parse("5,5;7,7")
    results.append(check("det of 5,5;7,7 is 0", a.det() == 0))
    results.append(check("5,5;7,7 has sr1", sr1kit.sr1(a)["sr1"]))

    clean = sr1kit.is_clean(a)
    results.append(check("5,5;7,7 is not clean", clean["clean"] is False and clean["complete"]))

    m, e = sr1kit.exchange_witness(a, 3)
    results.append(check("exchange witness is idempotent", e.is_idempotent() and e == a + m * (a - a * a)))
    quoted = (Matrix(0, 0, 3, -2), Matrix(5, 5, -4, -4))
    results.append(check("quoted witness appears", quoted in sr1kit.exchange_witnesses(a, 3)))

    scalar = Matrix(3, 0, 0, 3)
    results.append(check("3I is not sr1", not sr1kit.sr1(scalar)["sr1"]))
    results.append(check("3I over Z/4", sr1kit.sr1(scalar, modulus=4)["sr1"]))

    s = sr1kit.smith(Matrix(6, 10, 0, 0))
    results.append(check("smith of 6,10;0,0", s["D"] == [2, 0]))

    x = Matrix(7, -3, 5, 2)
    cert = sr1kit.find_unitizer(Matrix(6, 10, 0, 0), x)
    results.append(check("unitizer certificate", abs(cert["unit_value"]) == 1))

    big = 10**30 + 7
    b = Matrix(big, 1, 0, 1)
    results.append(check("big entries survive", b.entries[0] == big and b.det() == big))
    results.append(check("smith with big entries", sr1kit.smith(b)["D"] == [1, big]))

    sols = sr1kit.solve_conic(1, 0, 1, 0, 0, -25)
    results.append(check("circle of radius 5 has 12 points", sols["complete"] and len(sols["points"]) == 12))

    try:
        Matrix.parse("1,2;3")
        results.append(check("parse error raised", False))
    except sr1kit.Sr1kitError as exc:
        results.append(check("parse error raised", "missing entry" in str(exc)))

    summary = sr1kit.density_scan(2, 1, 1)
    results.append(check("small scan covers 625 matrices", summary["total_matrices"] == 625))

    if not all(results):
        raise SystemExit(1)
    print("all smoke checks passed")


if __name__ == "__main__":
    main()
