"""Quick check that the compiled `puro` module loads and agrees with known values.

Build and install first:

    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

import sys

import puro


def check(name, got, want):
    ok = got == want
    print(f"{'ok  ' if ok else 'FAIL'} {name}: {got!r}")
    return ok


def main():
    results = []

    results.append(check("o-sequence", puro.is_o_sequence([1, 3, 6, 10]), True))
    results.append(check("not an o-sequence", puro.is_o_sequence([1, 2, 4]), False))
    results.append(check("macaulay bound", puro.macaulay_bound(5, 2), "7"))

    v = puro.decide_pure([1, 3, 5, 4])
    results.append(check("decide status", v["status"], "pure"))
    results.append(check("witness rebuilds h", puro.order_ideal_h_vector(v["witness"]), [1, 3, 5, 4]))
    results.append(check("not pure", puro.decide_pure([1, 2, 3, 5])["status"], "not_pure"))

    soc4 = puro.decide_pure([1, 49, 81, 79, 81])
    results.append(check("non-unimodal socle 4", soc4["status"], "pure"))
    results.append(check("two maxima", puro.shape([1, 49, 81, 79, 81])["maxima_count"], 2))

    # type 1 pure sequences in two variables, socle degree 3
    results.append(check("enumerate", puro.enumerate_pure(2, 3, 1), [[1, 2, 2, 1]]))

    ci = puro.LevelAlgebra.from_ideal([[3, 0, 0], [0, 3, 0], [0, 0, 3]])
    results.append(check("complete intersection", ci.hilbert(), [1, 3, 6, 7, 6, 3, 1]))
    results.append(check("ci has wlp", ci.wlp()["wlp_char0"], True))

    # WLP over Q, lost in characteristics 2, 5 and 7
    a = puro.LevelAlgebra.from_ideal([[10, 0, 0], [0, 7, 0], [0, 0, 7], [4, 3, 0], [4, 0, 5]])
    results.append(check("failing primes", a.wlp()["failing_primes"], [2, 5, 7]))
    results.append(check("char 3 keeps wlp", a.has_wlp_in_char(3), True))

    results.append(check("f to h", puro.f_to_h([1, 4, 6, 4]), [1, 1, 1, 1]))
    results.append(check("h to f", puro.h_to_f([1, 1, 1, 1], 3), [1, 4, 6, 4]))
    results.append(check("cm", puro.is_cm([1, 4, 6, 4]), True))
    f = puro.pure_f_type2(4, 2)
    results.append(check("type 2 chain", puro.type2_inequality_check(f), True))

    try:
        puro.f_to_h([2, 3])
        results.append(check("bad f raises", False, True))
    except ValueError:
        results.append(check("bad f raises", True, True))

    passed = sum(results)
    print(f"{passed}/{len(results)} passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
