import json
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsums.charsum import extension_sums
from expsums.cycint import CycInt
from expsums.ff_arith import build_field
from expsums.mpoly import parse
from expsums.verifier import (
    APPLIES,
    NOT_APPLICABLE,
    ChainMismatch,
    HypothesisReport,
    VerificationReport,
    check_hypotheses,
    chi_from_point_counts,
    critical_locus_finite,
    dimension_via_chi,
    euler_chain,
    euler_singular_top_form,
    euler_smooth_fiber,
    newton_identities,
    predicted_dimension,
    recover_eigenvalues,
    transversal_hyperplane,
    vanishing_cycle_sign,
    verify,
    verify_bound,
)

F3, F5, F7 = build_field(3), build_field(5), build_field(7)


# -- closed forms ------------------------------------------------------------------------------

def test_predicted_dimension_examples():
    assert predicted_dimension(3, 2, []) == 4
    assert predicted_dimension(3, 2, [1]) == 3
    assert predicted_dimension(3, 3, [1, 1, 1]) == 5
    with pytest.raises(ValueError):
        predicted_dimension(2, 1, [5])


def test_euler_smooth_fiber_examples():
    assert euler_smooth_fiber(3, 2) == 0
    assert euler_smooth_fiber(2, 1) == 2
    for n in range(1, 6):
        assert euler_smooth_fiber(1, n) == n


def test_point_count_oracles():
    assert chi_from_point_counts(parse("x2^2*x3 - x1^3 - x1^2*x3", 3, F5)) == 1
    assert chi_from_point_counts(parse("x1*x2*x3", 3, F5)) == 3
    assert chi_from_point_counts(parse("x1^2 + x2^2 - x3^2", 3, F7)) == 2


def test_sign_is_fixed_by_oracles():
    sign = vanishing_cycle_sign()
    assert sign in (1, -1)
    assert euler_singular_top_form(3, 3, []) == 0
    assert euler_singular_top_form(3, 3, [1, 1, 1]) == 3
    assert euler_singular_top_form(3, 3, [1]) == 1


def test_wrong_sign_breaks_the_oracles():
    wrong = -vanishing_cycle_sign()
    assert euler_singular_top_form(3, 3, [1], wrong) != 1
    assert euler_singular_top_form(3, 3, [1, 1, 1], wrong) != 3
    with pytest.raises(ChainMismatch):
        dimension_via_chi(3, 2, [1], wrong)


def test_dimension_via_chi_examples():
    assert dimension_via_chi(3, 2, []) == 4
    assert dimension_via_chi(3, 2, [1]) == 3
    assert dimension_via_chi(2, 2, []) == 1


def mu_lists():
    return st.integers(2, 6).flatmap(
        lambda d: st.integers(1, 4).flatmap(
            lambda n: st.tuples(
                st.just(d), st.just(n),
                st.lists(st.integers(1, 6), max_size=6).filter(lambda mus: sum(mus) < (d - 1) ** n),
            )
        )
    )


@given(mu_lists())
def test_chain_identity(case):
    d, n, mus = case
    assert dimension_via_chi(d, n, mus) == predicted_dimension(d, n, mus)
    ch = euler_chain(d, n, mus)
    assert ch.total_space == 1 - ch.affine_fiber


# -- bounds and eigenvalues --------------------------------------------------------------------

def test_bound_examples():
    sums = extension_sums(parse("x1", 1, F5), F5, 2).sums
    assert all(c.holds and c.max_ratio == 0 for c in verify_bound([[s] for s in sums], 1, 5, 1))
    S1 = extension_sums(parse("x1^2", 1, F5), F5, 1).sums[0]
    (check,) = verify_bound([[S1.galois(b) for b in range(1, 5)]], 1, 5, 1)
    assert check.max_ratio == pytest.approx(1.0, abs=1e-12) and check.holds
    S1 = extension_sums(parse("x1^2*x2 + x2^2", 2, F5), F5, 1).sums[0]
    assert abs(S1.numeric()) <= 15
    assert verify_bound([[S1]], 3, 5, 2)[0].holds


def test_bound_with_zero_dimension():
    (c,) = verify_bound([[CycInt.integer(5, 1)]], 0, 5, 1)
    assert c.max_ratio is None and not c.holds
    (c,) = verify_bound([[CycInt.integer(5, 0)]], 0, 5, 1)
    assert c.holds


def test_recovery_gauss_sum():
    sums = extension_sums(parse("x1^2", 1, F5), F5, 2).sums
    rec = recover_eigenvalues(sums, 1, 5, 1)
    assert rec.elementary == [-sums[0]]
    assert rec.ok
    assert all(m == pytest.approx(math.sqrt(5), rel=1e-9) for mods in rec.root_moduli.values() for m in mods)


def test_recovery_two_variable_quadric():
    sums = extension_sums(parse("x1^2 + x2^2", 2, F5), F5, 2).sums
    rec = recover_eigenvalues(sums, 1, 5, 2)
    assert rec.ok
    assert rec.root_moduli[1] == [pytest.approx(5.0, rel=1e-9)]


def test_recovery_refuses_zero_sums():
    rec = recover_eigenvalues([CycInt.integer(5, 0)] * 3, 2, 5, 1)
    assert not rec.ok and rec.status.startswith("refused")


def test_recovery_needs_surplus_terms():
    sums = extension_sums(parse("x1^2", 1, F5), F5, 1).sums
    with pytest.raises(ValueError):
        recover_eigenvalues(sums, 1, 5, 1)


def test_wrong_dimension_is_detected():
    sums = extension_sums(parse("x1^3 + x1", 1, F5), F5, 4).sums
    assert recover_eigenvalues(sums, 2, 5, 1).ok
    bad = recover_eigenvalues(sums, 1, 5, 1)
    assert not bad.ok and "inconsistent" in bad.status


def test_corrupted_newton_is_detected():
    sums = extension_sums(parse("x1^2", 1, F5), F5, 3).sums
    rec = recover_eigenvalues(sums, 1, 5, 1, newton=lambda P, D: [-e for e in newton_identities(P, D)])
    assert not rec.ok


@pytest.mark.parametrize("text,n,p,M", [("x1^3 + x1", 1, 5, 4), ("x1^3 + 2*x1", 1, 7, 4), ("x1^2*x2 + x2^2", 2, 5, 4)])
def test_galois_consistency(text, n, p, M):
    F = build_field(p)
    f = parse(text, n, F)
    D = 2 if n == 1 else 3
    per_b = []
    for b in range(1, p):
        sums = extension_sums(f, F, M, b).sums
        rec = recover_eigenvalues(sums, D, p, n)
        per_b.append((rec.recurrence_verified, [round(x, 6) for x in sorted(rec.root_moduli[1])]))
        assert rec.elementary == [e.galois(b) for e in recover_eigenvalues(extension_sums(f, F, M).sums, D, p, n).elementary]
    assert len(set(map(str, per_b))) == 1


# -- diagnostics -------------------------------------------------------------------------------

def test_critical_locus_examples():
    v = critical_locus_finite(parse("x1^2 + x2^2", 2, F5))
    assert v.finite and v.points == 1
    assert critical_locus_finite(parse("x1^2*x2 + x2^2", 2, F5)).finite
    for p in (3, 5):
        f = parse(f"x1^{p + 1} + x2^{p}", 2, build_field(p))
        assert not critical_locus_finite(f).finite
        assert not critical_locus_finite(f, e_max=3, method="count").finite


def test_critical_count_agrees_with_exact():
    v = critical_locus_finite(parse("x1^3 - x1 + x2^2", 2, F7), method="count", e_max=2)
    assert v.finite and v.points == 2


def test_transversal_examples():
    t = transversal_hyperplane(parse("x1^3 + x2^3", 2, F7))
    assert t is not None and t.e == 1
    t = transversal_hyperplane(parse("x1^2*x2", 2, F7))
    assert t is not None and t.e == 1
    # the hyperplane (a point) avoids both (0:1) and (1:0)
    a, b = (c[0] for c in t.normal)
    assert a % 7 and b % 7
    t = transversal_hyperplane(parse("x1*x2*x3", 3, F7))
    assert t is not None and t.e == 1
    assert all(c[0] % 7 for c in t.normal)


# -- hypotheses --------------------------------------------------------------------------------

def test_hypotheses_smooth_case():
    rep = check_hypotheses(parse("x1^3 + x2^3 + x1", 2, F7))
    assert rep.verdict == APPLIES and rep.points == [] and predicted_dimension(rep.d, rep.n, rep.milnor_numbers) == 4


def test_hypotheses_singular_case():
    rep = check_hypotheses(parse("x1^2*x2 + x2^2", 2, F5))
    assert rep.verdict == APPLIES
    assert rep.milnor_numbers == [1] and rep.degrees == [2]
    assert rep.h1 and rep.h2 and rep.h3
    assert rep.points[0]["point"]["coords"] == [[0], [1]]


def test_hypothesis_two_fails():
    rep = check_hypotheses(parse("x1^2*x2 + x1*x2", 2, F5))
    assert not rep.h2 and rep.verdict == NOT_APPLICABLE


def test_hypothesis_two_fails_without_lower_form():
    rep = check_hypotheses(parse("x1^2*x2 + 1", 2, F5))
    assert not rep.h2 and rep.verdict == NOT_APPLICABLE


def test_hypothesis_three_fails():
    rep = check_hypotheses(parse("x1^4 + x2^3", 2, F3))
    assert not rep.h3 and rep.verdict == NOT_APPLICABLE


@pytest.mark.parametrize("p", [3, 5])
def test_counterexample_guard(p):
    rep = check_hypotheses(parse(f"x1^{p + 1} + x2^{p}", 2, build_field(p)))
    assert rep.critical_locus["status"] == "infinite"
    assert not rep.applies


def test_heuristic_isolation_downgrades_verdict():
    rep = check_hypotheses(parse("x1^2*x2 + x2^2", 2, F5), e_max=2, isolation="count")
    assert rep.verdict == "applies modulo heuristic certification"


def test_hypothesis_report_roundtrip():
    rep = check_hypotheses(parse("x1^2*x2 + x2^2", 2, F5))
    assert HypothesisReport.from_json(json.loads(json.dumps(rep.to_json()))) == rep


# -- full pipeline -----------------------------------------------------------------------------

def test_verify_smooth_regression():
    rep = verify(parse("x1^3 + x1", 1, F5), m_max=4)
    assert rep.predicted_dimension == 2 and rep.consistent
    assert rep.recovery.ok and rep.recovery.surplus_terms == 2


def test_verify_reports_json_roundtrip():
    rep = verify(parse("x1^2*x2 + x2^2", 2, F5), m_max=4)
    text = json.dumps(rep.to_json(), sort_keys=True)
    again = VerificationReport.from_json(json.loads(text))
    assert json.dumps(again.to_json(), sort_keys=True) == text


def test_verify_respects_budget():
    rep = verify(parse("x1^2*x2 + x2^2", 2, F5), budget=5**6)
    assert rep.sums["M"] == 3 and rep.recovery is None
    assert rep.provenance["checked"]["dimension_and_purity"] == "not attempted"


def test_verify_not_applicable_is_still_consistent():
    rep = verify(parse("x1^4 + x2^3", 2, F3), m_max=1)
    assert rep.verdict == NOT_APPLICABLE and rep.consistent


def test_verify_rejects_trivial_character():
    with pytest.raises(ValueError):
        verify(parse("x1^2", 1, F5), b=5)


@pytest.mark.parametrize("seed", range(3))
def test_smooth_random_polynomials_are_pure(seed):
    rng = random.Random(seed)
    p = rng.choice([5, 7])
    F = build_field(p)
    a, b = rng.randrange(1, p), rng.randrange(p)
    f = parse(f"{a}*x1^3 + {b}*x1^2 + x1", 1, F)
    rep = verify(f, m_max=4)
    assert rep.predicted_dimension == 2 and rep.recovery.ok and rep.consistent
