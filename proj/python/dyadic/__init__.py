"""Bargaining dynamics on weighted graphs. Vertex ids are 1-based."""

import json

import numpy as np

from ._dyadic import (
    Graph,
    GraphError,
    ParseError,
    RunConfig,
    SizeError,
    _simulate,
    improvement_report,
    max_weight_matching,
    nash_oracle,
    predicates,
    read_graph,
    scenario_graph,
)

__all__ = [
    "Graph",
    "GraphError",
    "ParseError",
    "RunConfig",
    "SizeError",
    "config",
    "improvement_report",
    "max_weight_matching",
    "nash_oracle",
    "predicates",
    "read_graph",
    "scenario_graph",
    "simulate",
]


def config(**fields):
    """RunConfig with the given fields overriding the defaults."""
    c = RunConfig()
    for name, value in fields.items():
        if not hasattr(c, name):
            raise TypeError(f"unknown config field {name!r}")
        setattr(c, name, value)
    return c


def simulate(graph, mode, matching=None, **fields):
    """Run stable, balanced or nash dynamics.

    Returns the run summary as a dict; the sampled trajectory is under
    "trajectory" as {"columns": [...], "data": ndarray}.
    """
    text, (columns, rows) = _simulate(graph, mode, matching, config(**fields))
    summary = json.loads(text)
    data = np.asarray(rows, dtype=float).reshape(len(rows), len(columns))
    summary["trajectory"] = {"columns": list(columns), "data": data}
    return summary

