"""Python face of the C++ core: scaling polytopes, box certificates,
size-function checks and extremizer studies.

Report-level entry points take/return JSON strings so the output matches the
`hbl` command line byte for byte.
"""

try:
    from . import _hbl as _core  # packaged layout: extension inside hbl/
except ImportError:
    import _hbl as _core  # dev layout: extension on sys.path from the build tree

GridFunction = _core.GridFunction
Triple = _core.Triple
InputError = _core.InputError
InfeasibleError = _core.InfeasibleError
CertificateError = _core.CertificateError
NumericError = _core.NumericError

eval_b = _core.eval_b
delta3 = _core.delta3
eval_functional = _core.eval_functional
rearrange = _core.rearrange
rearrangement_gap = _core.rearrangement_gap
dilate = _core.dilate
best_gaussian = _core.best_gaussian
polytope_report = _core.polytope_report
certify_report = _core.certify_report
certify_sweep_csv = _core.certify_sweep_csv
check_b_report = _core.check_b_report
extremize_report = _core.extremize_report

__all__ = [
    "CertificateError",
    "GridFunction",
    "InfeasibleError",
    "InputError",
    "NumericError",
    "Triple",
    "best_gaussian",
    "certify_report",
    "certify_sweep_csv",
    "check_b_report",
    "delta3",
    "dilate",
    "eval_b",
    "eval_functional",
    "extremize_report",
    "polytope_report",
    "rearrange",
    "rearrangement_gap",
]
