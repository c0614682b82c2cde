"""Exact lattice point counts on moduli spaces of stable curves."""
from .exact import Polynomial, QuasiPolynomial, bernoulli, solve_linear_exact
from .pipeline import ValueStore, pipeline_run
from .recursion import EvaluationContext, nbar_value

__all__ = ["Polynomial", "QuasiPolynomial", "bernoulli", "solve_linear_exact",
           "ValueStore", "pipeline_run", "EvaluationContext", "nbar_value"]
