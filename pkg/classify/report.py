from typing import List, Optional

import numpy as np

from search.budget import SearchBudget


class TensorClass(object):
    SEMI_POSITIVE = 'SemiPositive'
    STRICTLY_SEMI_POSITIVE = 'StrictlySemiPositive'
    P = 'P'
    P0 = 'P0'
    COPOSITIVE = 'Copositive'
    STRICTLY_COPOSITIVE = 'StrictlyCopositive'
    S = 'S'
    S0 = 'S0'
    R0 = 'R0'

    ALL = (SEMI_POSITIVE, STRICTLY_SEMI_POSITIVE, P, P0, COPOSITIVE, STRICTLY_COPOSITIVE, S, S0, R0)

    # premise => conclusion, used as a consistency check over one budget
    IMPLICATIONS = ((STRICTLY_SEMI_POSITIVE, SEMI_POSITIVE),
                    (P, P0),
                    (STRICTLY_COPOSITIVE, COPOSITIVE),
                    (S, S0),
                    (P, STRICTLY_SEMI_POSITIVE),
                    (STRICTLY_COPOSITIVE, STRICTLY_SEMI_POSITIVE),
                    (STRICTLY_SEMI_POSITIVE, R0))


class Verdict(object):
    HOLDS = 'Holds'
    VIOLATED = 'Violated'
    UNDETERMINED = 'Undetermined'


class WitnessMeaning(object):
    VIOLATING_VECTOR = 'ViolatingVector'
    CERTIFYING_VECTOR = 'CertifyingVector'


class ClassificationReport(object):
    def __init__(self, class_name: str, verdict: str, budget: SearchBudget, witness: Optional[np.ndarray] = None,
                 witness_meaning: Optional[str] = None, extremal_value: Optional[float] = None) -> None:
        self.class_name = class_name
        self.verdict = verdict
        self.budget = budget
        self.witness = None if witness is None else np.array(witness, dtype=float)
        self.witness_meaning = witness_meaning
        self.extremal_value = extremal_value

    @property
    def holds(self) -> bool:
        return self.verdict == Verdict.HOLDS

    @property
    def violated(self) -> bool:
        return self.verdict == Verdict.VIOLATED

    def to_dict(self) -> dict:
        return {'class_name': self.class_name,
                'verdict': self.verdict,
                'witness': None if self.witness is None else [float(value) for value in self.witness],
                'witness_meaning': self.witness_meaning,
                'extremal_value': None if self.extremal_value is None else float(self.extremal_value),
                'budget': self.budget.to_dict()}

    def __repr__(self) -> str:
        return f'ClassificationReport({self.class_name}: {self.verdict})'


class ClassificationSummary(object):
    def __init__(self, reports: List[ClassificationReport]) -> None:
        self.reports = reports
        self.inconsistencies = self._find_inconsistencies()

    def report_for(self, class_name: str) -> ClassificationReport:
        for report in self.reports:
            if report.class_name == class_name:
                return report
        raise KeyError(class_name)

    def _find_inconsistencies(self) -> List[dict]:
        verdicts = {report.class_name: report.verdict for report in self.reports}
        inconsistencies = []
        for premise, conclusion in TensorClass.IMPLICATIONS:
            if verdicts.get(premise) == Verdict.HOLDS and verdicts.get(conclusion) == Verdict.VIOLATED:
                inconsistencies.append({'premise': premise, 'conclusion': conclusion})
        return inconsistencies

    @property
    def all_hold(self) -> bool:
        return all(report.holds for report in self.reports)

    def to_dict(self) -> dict:
        return {'reports': [report.to_dict() for report in self.reports],
                'inconsistencies': self.inconsistencies}
