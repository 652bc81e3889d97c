"""
Evaluation module initialization.
"""
from superjordan.evaluation.property_suite import (
    SUITES,
    EvaluationResults,
    PropertySuiteEvaluator,
    get_property_evaluator,
)

__all__ = [
    'SUITES',
    'EvaluationResults',
    'PropertySuiteEvaluator',
    'get_property_evaluator',
]
