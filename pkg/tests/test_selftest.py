from expsums.selftest import run_selftest
from expsums.verifier import newton_identities, vanishing_cycle_sign


def test_fresh_build_passes():
    results = run_selftest()
    assert all(r.passed for r in results), [r.line() for r in results if not r.passed]
    assert {r.name for r in results} >= {"gauss-sums", "hasse-davenport", "nodal-cubic-chi", "milnor-cross-check"}


def test_corrupted_sign_trips_nodal_cubic():
    results = {r.name: r for r in run_selftest(sign=-vanishing_cycle_sign())}
    assert not results["nodal-cubic-chi"].passed
    assert not results["triangle-chi"].passed
    assert not results["euler-chain"].passed


def test_corrupted_newton_trips_hasse_davenport():
    def broken(P, D):
        return [-e for e in newton_identities(P, D)]

    results = {r.name: r for r in run_selftest(newton=broken)}
    assert not results["hasse-davenport"].passed
    assert results["gauss-sums"].passed


def test_line_format():
    (first, *_) = run_selftest()
    assert first.line().startswith("PASS  gauss-sums")
