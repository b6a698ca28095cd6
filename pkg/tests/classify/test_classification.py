import numpy as np
import pytest

from classify.classification import CHECKS, check_copositive, check_P, check_P0, check_R0, check_semi_positive, \
    check_strictly_copositive, check_strictly_semi_positive, classify_all, find_s0_witness, find_s_witness, \
    find_r0_violation
from classify.report import ClassificationReport, ClassificationSummary, TensorClass, Verdict, WitnessMeaning
from conftest import EXAMPLE_ENTRIES, dominant_cases, make_dominant_tensor, make_symmetric_random_tensor
from search.budget import SearchBudget
from tensor.operations import apply, poly_value
from tensor.tensor import Tensor

EQUIVALENCE_BUDGET = SearchBudget(grid_resolution=1 / 64, multistarts=128)


def test_example_tensor_is_strictly_semi_positive(example_tensor, small_budget):
    assert check_strictly_semi_positive(example_tensor, small_budget).verdict == Verdict.HOLDS
    assert check_semi_positive(example_tensor, small_budget).verdict == Verdict.HOLDS


def test_example_tensor_is_r0(example_tensor, small_budget):
    assert check_R0(example_tensor, small_budget).verdict == Verdict.HOLDS


@pytest.mark.parametrize("check", list(CHECKS.values()))
def test_identity_holds_every_class(check, small_budget):
    report = check(Tensor.identity(4, 2), small_budget)
    assert report.verdict == Verdict.HOLDS


def test_zero_tensor_verdicts(zero_tensor, small_budget):
    assert check_semi_positive(zero_tensor, small_budget).verdict == Verdict.HOLDS
    assert check_copositive(zero_tensor, small_budget).verdict == Verdict.HOLDS
    assert check_P0(zero_tensor, small_budget).verdict == Verdict.HOLDS

    for check in (check_strictly_semi_positive, check_strictly_copositive, check_P, check_R0):
        report = check(zero_tensor, small_budget)
        assert report.verdict == Verdict.VIOLATED
        assert report.witness_meaning == WitnessMeaning.VIOLATING_VECTOR
        assert np.max(np.abs(report.witness)) == pytest.approx(1.0)


def test_negated_identity_violations_carry_witness(small_budget):
    tensor = Tensor.identity(3, 2).negated()
    report = check_semi_positive(tensor, small_budget)
    assert report.verdict == Verdict.VIOLATED
    witness = report.witness
    assert np.all(witness >= 0)
    active = witness > 1e-10
    assert np.all(apply(tensor, witness)[active] < 0)

    copositive = check_copositive(Tensor.identity(4, 2).negated(), small_budget)
    assert copositive.verdict == Verdict.VIOLATED
    assert poly_value(Tensor.identity(4, 2).negated(), copositive.witness) < 0


def test_odd_order_identity_is_not_p0(small_budget):
    # x_i^3 < 0 for x_i < 0, so x = (-1, -1) violates both P0 and P
    tensor = Tensor.identity(3, 2)
    assert check_P0(tensor, small_budget).verdict == Verdict.VIOLATED
    assert check_P(tensor, small_budget).verdict == Verdict.VIOLATED


def test_even_order_identity_is_p(small_budget):
    assert check_P(Tensor.identity(4, 3), small_budget).verdict == Verdict.HOLDS


def test_s_witness_certifies(example_tensor, small_budget):
    report = find_s_witness(example_tensor, small_budget)
    assert report.verdict == Verdict.HOLDS
    assert report.witness_meaning == WitnessMeaning.CERTIFYING_VECTOR
    assert np.all(report.witness > 0)
    assert np.all(apply(example_tensor, report.witness) > 0)


def test_s0_holds_for_zero_tensor_but_s_does_not(zero_tensor, small_budget):
    assert find_s0_witness(zero_tensor, small_budget).verdict == Verdict.HOLDS
    assert find_s_witness(zero_tensor, small_budget).verdict == Verdict.UNDETERMINED


def test_r0_violation_for_zero_tensor_is_a_direction(zero_tensor, small_budget):
    value, point = find_r0_violation(zero_tensor, small_budget)
    assert value == 0.0
    assert np.all(point >= 0) and np.max(point) == pytest.approx(1.0)


def test_classify_all_order_and_consistency(example_tensor, small_budget):
    summary = classify_all(example_tensor, small_budget)
    assert [report.class_name for report in summary.reports] == list(TensorClass.ALL)
    assert summary.inconsistencies == []
    assert summary.report_for(TensorClass.STRICTLY_SEMI_POSITIVE).holds


def test_summary_lists_broken_implications():
    budget = SearchBudget()
    reports = [ClassificationReport(TensorClass.P, Verdict.HOLDS, budget),
               ClassificationReport(TensorClass.P0, Verdict.VIOLATED, budget)]
    summary = ClassificationSummary(reports)
    assert summary.inconsistencies == [{'premise': TensorClass.P, 'conclusion': TensorClass.P0}]
    assert not summary.all_hold


def test_report_to_dict_embeds_budget():
    budget = SearchBudget(seed=4)
    report = ClassificationReport(TensorClass.S, Verdict.HOLDS, budget, witness=[1.0, 0.5],
                                  witness_meaning=WitnessMeaning.CERTIFYING_VECTOR, extremal_value=0.25)
    assert report.to_dict() == {'class_name': 'S', 'verdict': 'Holds', 'witness': [1.0, 0.5],
                                'witness_meaning': 'CertifyingVector', 'extremal_value': 0.25,
                                'budget': budget.to_dict()}


@pytest.mark.parametrize("seed, order, dim, sign", dominant_cases(20, signs=(1.0, 1.0, -1.0)))
def test_strict_semi_positivity_matches_strict_copositivity_on_symmetric(seed, order, dim, sign):
    tensor = make_dominant_tensor(seed, order, dim, sign)
    semi_positive = check_strictly_semi_positive(tensor, EQUIVALENCE_BUDGET)
    copositive = check_strictly_copositive(tensor, EQUIVALENCE_BUDGET)
    assert semi_positive.verdict == copositive.verdict


@pytest.mark.parametrize("seed, order, dim", [case[:3] for case in dominant_cases(20)])
def test_strict_semi_positivity_matches_strict_copositivity_on_random_symmetric(seed, order, dim):
    tensor = make_symmetric_random_tensor(seed, order, dim)
    semi_positive = check_strictly_semi_positive(tensor, EQUIVALENCE_BUDGET)
    copositive = check_strictly_copositive(tensor, EQUIVALENCE_BUDGET)
    assert semi_positive.verdict == copositive.verdict


def verdicts_and_witnesses(summary):
    return [(report.verdict, None if report.witness is None else report.witness.tolist())
            for report in summary.reports]


@pytest.mark.parametrize("factor", [1.0, 2.0 ** -10, 2.0 ** -20, 2.0 ** -30, 2.0 ** 10])
def test_classify_all_is_invariant_under_power_of_two_scaling(example_tensor, small_budget, factor):
    expected = classify_all(example_tensor, small_budget)
    scaled = classify_all(example_tensor.scaled(factor), small_budget)
    assert verdicts_and_witnesses(scaled) == verdicts_and_witnesses(expected)
    for report, reference in zip(scaled.reports, expected.reports):
        if reference.extremal_value is not None:
            assert report.extremal_value == reference.extremal_value * factor


@pytest.mark.parametrize("factor", [1e-3, 1e-6, 1e-9, 1e3])
@pytest.mark.parametrize("tensor", [Tensor.from_entries(3, 2, EXAMPLE_ENTRIES), Tensor.identity(4, 2),
                                    Tensor.zeros(3, 2), Tensor.identity(3, 2).negated()])
def test_classify_all_verdicts_do_not_depend_on_positive_scaling(tensor, small_budget, factor):
    expected = [report.verdict for report in classify_all(tensor, small_budget).reports]
    assert [report.verdict for report in classify_all(tensor.scaled(factor), small_budget).reports] == expected


def test_single_checks_survive_tiny_scaling(example_tensor, small_budget):
    tiny = example_tensor.scaled(1e-9)
    assert check_strictly_semi_positive(tiny, small_budget).verdict == Verdict.HOLDS
    assert check_R0(tiny, small_budget).verdict == Verdict.HOLDS
    assert find_s_witness(tiny, small_budget).verdict == Verdict.HOLDS


def test_classify_all_is_deterministic_for_equal_seeds(example_tensor):
    first = classify_all(example_tensor, SearchBudget(grid_resolution=1 / 16, multistarts=16, seed=7, threads=1))
    second = classify_all(example_tensor, SearchBudget(grid_resolution=1 / 16, multistarts=16, seed=7, threads=4))
    assert first.to_dict() == second.to_dict()


def monotonicity_fixtures():
    tensors = [Tensor.from_entries(3, 2, EXAMPLE_ENTRIES), Tensor.identity(3, 2), Tensor.identity(4, 3),
               Tensor.zeros(3, 2), Tensor.ones(4, 2), Tensor.identity(3, 2).negated(),
               Tensor.diagonal(4, [1.0, 2.0])]
    return tensors + [make_dominant_tensor(*case) for case in dominant_cases(8, signs=(1.0, -1.0))]


@pytest.mark.parametrize("tensor", monotonicity_fixtures())
def test_class_implications_hold_on_fixtures(tensor, small_budget):
    assert classify_all(tensor, small_budget).inconsistencies == []
