"""Invariants of principal holomorphic torus bundles over complex tori.

Documents are the JSON objects read by the ``tbi`` command line tool; every
function accepts either a dict or a JSON string.
"""

import json

from . import _core
from ._core import DEFAULT_TOLERANCE, TbiError, catalog_names

__all__ = [
    "DEFAULT_TOLERANCE",
    "TbiError",
    "catalog",
    "catalog_names",
    "curve",
    "decompose",
    "group",
    "invariants",
    "sample",
    "validate",
]


def _text(document):
    return document if isinstance(document, str) else json.dumps(document)


def catalog(name):
    return json.loads(_core.catalog(name))


def validate(document, tol=None):
    """Returns {"exit_code", "messages", "riemann"}; exit_code 0 means valid."""
    return json.loads(_core.validate(_text(document), tol))


def invariants(document, tol=None):
    return json.loads(_core.invariants(_text(document), tol))


def decompose(document, tol=None):
    return json.loads(_core.decompose(_text(document), tol))


def sample(document, seed=0, count=1, max_attempts=100, tol=None):
    """Sampled documents in trial order; None marks an exhausted trial."""
    return json.loads(_core.sample(_text(document), seed, count, max_attempts, tol))


def group(document, g1, g2):
    return json.loads(_core.group(_text(document), g1, g2))


def curve(genus, fibre_dim, chern=None):
    return json.loads(_core.curve(genus, fibre_dim, chern))
