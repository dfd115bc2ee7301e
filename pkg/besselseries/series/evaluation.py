"""Single-point evaluation by any of the three methods, as an EvalOutcome."""

from .catalog import catalog_eval
from .closed_form import SeriesSpec, closed_form_sum
from .exceptions import InvalidParameter
from .oracle import EvalOutcome, Method, TruncationPolicy, oracle_sum


def closed_method(spec: SeriesSpec) -> Method:
    return Method.THEOREM2 if spec.alternating else Method.THEOREM1


def evaluate(spec: SeriesSpec, x, method: Method, policy: TruncationPolicy | None = None) -> EvalOutcome:
    if method == Method.ORACLE:
        return oracle_sum(spec, x, policy)
    if method == Method.CATALOG:
        return EvalOutcome(catalog_eval(spec, x), 0.0, 1, Method.CATALOG)
    if method != closed_method(spec):
        raise InvalidParameter(f"{method} does not cover {spec}")
    return EvalOutcome(closed_form_sum(spec, x), 0.0, spec.N, method)
