"""Charged condensate wave packets: split-step dynamics, radiation integrals, Fock-space checks."""

import json

from ._core import *  # noqa: F401,F403
from ._core import __version__, parse_config as _parse_config, run_oracle_suite as _run_oracle_suite


def parse_config(text):
    """Validate a JSON config string and return the resolved config as a dict."""
    return json.loads(_parse_config(text))


def run_oracle_suite(**kwargs):
    """Run the Fock-space oracle suite and return its residual report as a dict."""
    return json.loads(_run_oracle_suite(**kwargs))
