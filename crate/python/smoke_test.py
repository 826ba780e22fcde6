"""Smoke test for the csp extension module."""

import csp


def main():
    u = csp.Word("g1 g2", 2)
    v = csp.Word("g2 g1", 2)
    w = csp.conjugate_test(u, v)
    assert w is not None and str(w * u * w.inverse()) == str(v)
    assert csp.conjugate_test(csp.Word("g1", 2), csp.Word("g2", 2)) is None

    push = csp.push_aut(1, 4)
    lam = csp.Word("L", 3, 3)
    assert len(push.apply(lam)) >= 1
    assert push.compose(push.inverse()).images() == ["g1", "g2", "g3"]

    s3 = csp.PermGroup(["(1 2)", "(2 3)"])
    assert s3.order() == 6 and s3.is_centerless() and not s3.is_abelian()

    spec = csp.Spec(4, 2, ["(1 2)", "(2 3)"], samples=1000)
    run = csp.witness(spec)
    assert run.valid and run.orbit_size == 6
    assert run.q_order == "768" and run.p0_order == "12"
    assert not run.centralizer_condition
    cert = run.certificate()
    assert csp.verify_certificate(cert) == "VALID"
    assert csp.verify_certificate(cert.replace("orbit-size 6", "orbit-size 5")).startswith("REJECTED")

    assert all(holds for _, holds, _ in csp.birman(spec))
    rotation = csp.Spec(4, 2, ["(1 2 3)", "(1 2)"], samples=100)
    assert not all(holds for _, holds, _ in csp.birman(rotation, inverted=True))

    try:
        csp.witness(csp.Spec(4, 2, ["(1 2)(3 4)", "(1 3)(2 4)"], cap=10))
    except csp.CapExceededError:
        pass
    else:
        raise AssertionError("expected CapExceededError")

    try:
        csp.Spec(3, 2, ["(1 2)"])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for n = 3")
    print("smoke test passed")


if __name__ == "__main__":
    main()
