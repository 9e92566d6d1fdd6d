"""Asymptotic kernel calculus with a finite-dimensional numerical lab.

The heavy lifting lives in the compiled extension ``fockbar._core``; this
package adds a small convenience layer working with plain dicts instead of
JSON strings.
"""

import json

from fockbar._core import schema_version  # noqa: F401
from fockbar import _core

__all__ = ["compose", "kernel_eval", "expand", "run", "schema_version"]


def compose(kind, a1, a2, n, m):
    """Compose two kernels (dicts in the serialized kernel format)."""
    out = _core.compose(kind, json.dumps(a1), json.dumps(a2), n, m)
    return json.loads(out)


def kernel_eval(kernel, left, right):
    """Evaluate a kernel dict at a point pair of complex coordinates."""
    return _core.kernel_eval(json.dumps(kernel), list(left), list(right))


def expand(jet, order):
    """Run the expansion engine on a geometry-jet dict."""
    return json.loads(_core.expand(json.dumps(jet), order))


def run(mode, config, out_dir):
    """Run one experiment mode; returns {"passed": bool, "summary": dict}."""
    res = _core.run(mode, json.dumps(config), str(out_dir))
    return {"passed": res["passed"], "summary": json.loads(res["summary"])}
