"""Exact reliability of message-forwarding protocols on two-terminal graphs.

Graphs, protocols and polynomials use the same JSON shapes as the ``relayopt``
command-line tool; here they are plain dicts and lists. Rationals are strings
such as ``"3/8"``. Omitting ``protocol`` means the complete forwarding protocol.
"""

import json
from fractions import Fraction

from . import _core
from ._core import RelayoptError

__all__ = [
    "RelayoptError",
    "validate", "fixture", "cfp", "paths", "is_finite", "spfp_reduce",
    "reliability", "evaluate", "rho_hat_at", "rho_hat_piecewise", "discrepancy",
    "min_discrepancy", "series", "parallel", "expand", "crossing_pair",
    "breakpoint_graph", "census", "near_zero", "near_one", "robustness", "simulate",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _opt(obj):
    return None if obj is None else _text(obj)


def _rational(x):
    return x if isinstance(x, str) else str(Fraction(x))


def validate(graph):
    return json.loads(_core.validate(_text(graph)))


def fixture(name, vertices=3):
    return json.loads(_core.fixture(name, vertices))


def cfp(graph):
    return json.loads(_core.cfp(_text(graph)))


def paths(graph, protocol=None):
    return json.loads(_core.paths(_text(graph), _opt(protocol)))


def is_finite(graph, protocol=None):
    return json.loads(_core.is_finite(_text(graph), _opt(protocol)))


def spfp_reduce(graph, protocol=None):
    return json.loads(_core.spfp_reduce(_text(graph), _opt(protocol)))


def reliability(graph, protocol=None, prime=False, threads=0, max_edges=24):
    return json.loads(_core.reliability(_text(graph), _opt(protocol), prime, threads, max_edges))


def evaluate(poly, x):
    """Exact value of a coefficient list at x, as a Fraction."""
    return Fraction(json.loads(_core.evaluate(_text(poly), _rational(x))))


def rho_hat_at(graph, p, threads=0, max_edges=24, max_candidates=1 << 20):
    return json.loads(_core.rho_hat_at(_text(graph), _rational(p), threads, max_edges, max_candidates))


def rho_hat_piecewise(graph, threads=0, max_edges=24, max_candidates=1 << 20):
    return json.loads(_core.rho_hat_piecewise(_text(graph), threads, max_edges, max_candidates))


def discrepancy(graph, removed, threads=0, max_edges=24):
    return json.loads(_core.discrepancy(_text(graph), _text(removed), threads, max_edges))


def min_discrepancy(graph, threads=0, max_edges=24, max_candidates=1 << 20):
    return json.loads(_core.min_discrepancy(_text(graph), threads, max_edges, max_candidates))


def series(g1, g2):
    return json.loads(_core.series(_text(g1), _text(g2)))


def parallel(g1, g2):
    return json.loads(_core.parallel(_text(g1), _text(g2)))


def expand(graph, u, v, with_graph):
    return json.loads(_core.expand(_text(graph), u, v, _text(with_graph)))


def crossing_pair(profile):
    return json.loads(_core.crossing_pair(list(profile)))


def breakpoint_graph(orders):
    return json.loads(_core.breakpoint_graph(list(orders)))


def census(graph, threads=0, max_edges=24):
    return json.loads(_core.census(_text(graph), threads, max_edges))


def near_zero(graph):
    return json.loads(_core.near_zero(_text(graph)))


def near_one(graph, threads=0, max_edges=24):
    return json.loads(_core.near_one(_text(graph), threads, max_edges))


def robustness(graph, protocol=None, threads=0, max_edges=24):
    return _core.robustness(_text(graph), _opt(protocol), threads, max_edges)


def simulate(graph, p, trials, seed, protocol=None, threads=0):
    return json.loads(_core.simulate(_text(graph), _rational(p), trials, seed, _opt(protocol), threads))
