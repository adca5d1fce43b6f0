"""Exact local calculus for orbifold charts, map germs and preimages."""

import json as _json

from . import _core

__version__ = _core.__version__

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2


def _run(fn, scenario, *args, **kwargs):
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    report, code = fn(text, *args, **kwargs)
    return _json.loads(report), code


def analyze(scenario):
    """Full pipeline report. Returns (report dict, exit code)."""
    return _run(_core.analyze, scenario)


def sard(scenario, samples=None, seed=None, box=None):
    """Regular-value sampling; box is a list of (lo, hi) pairs."""
    return _run(_core.sard, scenario, samples, seed, box)


def strata(scenario):
    return _run(_core.strata, scenario)


def obstruct(scenario):
    return _run(_core.obstruct, scenario)


def classify1(scenario):
    return _run(_core.classify1, scenario)


def retraction(scenario):
    return _run(_core.retraction, scenario)


def corpus_names():
    return list(_core.corpus_names())


def corpus_scenario(name):
    """(command, scenario dict) of a built-in entry."""
    command, text = _core.corpus_scenario(name)
    return command, _json.loads(text)


def corpus_run(anchor="", corrupt=False):
    """(summary dict, all passed)."""
    text, ok = _core.corpus_run(anchor, corrupt)
    return _json.loads(text), ok
