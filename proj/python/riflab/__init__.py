"""Rational inner functions p~/p and their Dirichlet-type space membership.

Functions with a JSON report form return plain dicts.
"""

import json as _json

from . import _riflab
from ._riflab import (
    RIF,
    Poly,
    RiflabError,
    blaschke_norm,
    build_rif,
    cs_from_ps,
    expand,
    lojasiewicz_threshold,
    onedim_ratio,
    partial_derivative,
    ps_from_cs,
    reflect,
    set_threads,
)

__version__ = _riflab.__version__


def _decoded(fn):
    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


classify = _decoded(_riflab.classify)
hp_norm = _decoded(_riflab.hp_norm)
omega = _decoded(_riflab.omega)
hp_threshold = _decoded(_riflab.hp_threshold)
hp_embed_feasible = _decoded(_riflab.hp_embed_feasible)
loja = _decoded(_riflab.loja)


def load_poly(path):
    """Reads a polynomial document ({"vars": n, "terms": [...]})."""
    with open(path, encoding="utf-8") as fh:
        return Poly.from_json(fh.read())


def report(p, **kwargs):
    """Runs the analysis pipeline; returns (report dict, exit code)."""
    text, code = _riflab.report(p, **kwargs)
    return _json.loads(text), code


__all__ = [
    "Poly",
    "RIF",
    "RiflabError",
    "blaschke_norm",
    "build_rif",
    "classify",
    "cs_from_ps",
    "expand",
    "hp_embed_feasible",
    "hp_norm",
    "hp_threshold",
    "load_poly",
    "loja",
    "lojasiewicz_threshold",
    "omega",
    "onedim_ratio",
    "partial_derivative",
    "ps_from_cs",
    "reflect",
    "report",
    "set_threads",
]
