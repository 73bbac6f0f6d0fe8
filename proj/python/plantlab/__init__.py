"""Planted subgraph detection under monotone adversaries."""

import json

from . import _core
from ._core import (
    ConfigError,
    Error,
    ExecutionError,
    Graph,
    InputError,
    ResourceError,
    UnsupportedError,
    center_matrix,
    closed_form_nuclear_norm,
    count_copies,
    estimate_containment_probability,
    exact_containment_probability,
    make_family,
    nuclear_norm,
    sample_er,
    thread_count,
)

__all__ = [
    "ConfigError", "Error", "ExecutionError", "Graph", "InputError", "ResourceError", "UnsupportedError",
    "apply_adversary", "calibrate_threshold", "center_matrix", "closed_form_nuclear_norm", "count_copies",
    "decide", "estimate_containment_probability", "estimate_risk", "exact_containment_probability",
    "make_family", "nuclear_norm", "regime_report", "run_experiment", "sample_er", "sample_planted",
    "solve_clique_sdp", "solve_nuclear_program", "theoretical_threshold", "thread_count", "uniformity_audit",
]


def _spec(value):
    return json.dumps(value)


def sample_planted(n, p, q, family, seed):
    """Returns (graph, planted_copy, planted_vertices)."""
    return _core._sample_planted(n, p, q, family, seed)


def apply_adversary(spec, graph, *, side, n, p, q, family, seed, plant=None):
    """Applies an adversary ("identity", {"kind": "random_monotone", "delta": 0.3}, ...) on the null or alt side.

    On the alt side `plant` is the (planted_copy, planted_vertices) pair from sample_planted.
    """
    copy, verts = plant if plant is not None else (Graph(graph.order), [])
    return _core._apply_adversary(_spec(spec), side, graph, copy, list(verts), n, p, q, family, seed)


def solve_nuclear_program(w, q, t, config=None):
    z, result = _core._solve_nuclear_program(w, q, t, json.dumps(config) if config else "")
    return z, json.loads(result)


def solve_clique_sdp(w, q, k, config=None):
    z, result = _core._solve_clique_sdp(w, q, k, json.dumps(config) if config else "")
    return z, json.loads(result)


def decide(detector, graph, *, n, p, q, family, tau):
    return json.loads(_core._decide(_spec(detector), graph, n, p, q, family, tau))


def theoretical_threshold(detector, *, n, p, q, family):
    return _core._theoretical_threshold(_spec(detector), n, p, q, family)


def calibrate_threshold(detector, *, n, p, q, family, alpha, trials, seed):
    return _core._calibrate_threshold(_spec(detector), n, p, q, family, alpha, trials, seed)


def estimate_risk(config):
    """Risk of the first adversary pair of an experiment config (dict)."""
    return json.loads(_core._estimate_risk(json.dumps(config)))


def run_experiment(config):
    """Returns (csv_text, summary_dict); writes files when config has "output"."""
    csv, summary = _core._run_experiment(json.dumps(config))
    return csv, json.loads(summary)


def regime_report(family, n, p, q, epsilon=0.1):
    return json.loads(_core._regime_report(family, n, p, q, epsilon))


def uniformity_audit(family, n, q, trials, seed):
    return json.loads(_core._uniformity_audit(family, n, q, trials, seed))

