"""Smoke test for the Python bindings.

Build and install first:  pip install -e crates/py --no-build-isolation
"""

import sys

import qschubert as qs


def ok(report):
    return all(e["status"] == "pass" for e in report) and len(report) > 0


def main():
    q = qs.RatFunc("q")
    qinv = qs.RatFunc("q^-1")
    assert str(q * qinv) == "1"
    assert (q - qinv).bar() == qinv - q
    assert str(qs.RatFunc("q^2 - 1") / (q - qs.RatFunc("1"))) == "q + 1"

    pd = qs.parabolic(7, [2, 5, 6])
    assert len(pd["phi"]) == 17, pd

    pres = qs.presentation(3, [2])
    assert pres["generators"] == [[2, 3], [1, 3]]
    assert len(pres["relations"]) == 1
    assert qs.coinv_presentation(3, [2])["generators"] == [[2, 3], [1, 3]]

    # T_2(E_1) = E_2 E_1 - q^{-1} E_1 E_2
    rv = dict((tuple(r), t) for r, t in qs.root_vectors(3, [2]))
    assert rv[(2, 3)] == {"2": "1"}
    assert rv[(1, 3)] == {"2,1": "1", "1,2": "-q^-1"}

    nf = qs.nilrad_normal_form(3, [2], [(2, 3), (1, 3)])
    assert nf == [{"monomial": [[1, 3], [2, 3]], "coeff": "q"}], nf

    assert ok(qs.verify_theorem(4, [1, 3]))
    assert ok(qs.verify_lemma("TE_1", 3))
    assert ok(qs.verify_lemma("lemma1", 4, [2]))
    assert ok(qs.verify_coinvariants(3, [1]))
    for kind in ["reflect", "neg_q", "qsc_to_coinv", "psi"]:
        assert ok(qs.verify_map(kind, 3, [2])), kind
    assert ok(qs.verify_smash(2, [1]))

    try:
        qs.presentation(3, [5])
    except ValueError:
        pass
    else:
        raise AssertionError("invalid J accepted")

    print("python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
