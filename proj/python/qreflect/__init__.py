"""Exact verification of diagonal boundary operators.

Thin wrapper over the compiled extension: build CLI-style flag lists from
keyword arguments and hand back parsed JSON reports.
"""

import json

from ._qreflect import dump_matrix, predicted_job_count as _predicted, q_gamma, suite_names, verify_args

__version__ = "0.1.0"

__all__ = [
    "dump_matrix",
    "predicted_job_count",
    "q_gamma",
    "suite_names",
    "verify",
    "verify_args",
]

_LIST_KEYS = {"N", "m", "a", "gradation"}


def _to_args(kwargs):
    args = []
    for key, value in kwargs.items():
        flag = "--" + key.replace("_", "-")
        if key == "negative_control":
            if value:
                args.append(flag)
            continue
        if key in _LIST_KEYS and isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        args.extend([flag, str(value)])
    return args


def verify(**kwargs):
    """Run the suite; returns the report dict with an added 'exit_code' key.

    Keywords mirror the CLI flags of `qreflect verify`: suite, N, m, a,
    gradation, q, q_root, x, y, u, v, ep, em, p, mode, seed, reps, format,
    negative_control. List values are allowed for N, m, a, gradation.
    """
    code, text = verify_args(_to_args(kwargs))
    report = json.loads(text)
    report["exit_code"] = code
    return report


def predicted_job_count(**kwargs):
    return _predicted(_to_args(kwargs))
