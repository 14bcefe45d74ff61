"""Wrapped sheaf categories on one-dimensional spaces, with exact integer homology.

Results are plain dicts decoded from the engine's JSON report format.
"""

import json
import os

from . import _core
from ._core import MicrowrapError, ScenarioError, WrapError

__all__ = [
    "MicrowrapError",
    "ScenarioError",
    "WrapError",
    "Scenario",
    "run_scenario",
    "parse_interval",
    "conventions",
    "conventions_hash",
    "__version__",
]

__version__ = _core.engine_version()


class Scenario:
    """A space, its stops and a named catalog of interval sheaves."""

    def __init__(self, raw):
        self._raw = raw

    @classmethod
    def from_json(cls, text):
        if not isinstance(text, str):
            text = json.dumps(text)
        return cls(_core.parse_scenario(text))

    @classmethod
    def load(cls, path):
        return cls(_core.load_scenario(os.fspath(path)))

    def to_json(self):
        return self._raw.to_json()

    @property
    def objects(self):
        return self._raw.object_names()

    def __eq__(self, other):
        return isinstance(other, Scenario) and self._raw == other._raw

    def run(self, trace=False, check=False):
        """The full report for the scenario's own queries."""
        return json.loads(self._raw.run(trace, check))

    def _query(self, op, trace=False, **fields):
        entry = json.loads(self._raw.run_query(op, trace=trace, **fields))
        if entry["status"] == "error":
            raise MicrowrapError(entry["error"])
        return entry

    def hom_wrapped(self, source, target):
        """Homology of rhom(source, wrap+ target)."""
        return self._query("homw", source=source, target=target)

    def comparison(self, source, target):
        """Homology of rhom(wrap+ source, wrap+ target), next to hom_wrapped."""
        return self._query("comparison", source=source, target=target)

    def wrap_plus(self, name, trace=False):
        return self._query("wrap+", object=name, trace=trace)

    def wrap_minus(self, name, trace=False):
        return self._query("wrap-", object=name, trace=trace)

    def microstalk(self, name, at, codirection):
        return self._query("microstalk", object=name, at=str(at), codirection=codirection)

    def singular_support(self, name):
        return self._query("ss", object=name)

    def verify_equivalence(self):
        return self._query("verify-equivalence")

    def corepresentability(self, at, codirection):
        return self._query("corepresentability", at=str(at), codirection=codirection)

    def disk_annihilation(self, at, codirection):
        return self._query("disk-annihilation", at=str(at), codirection=codirection)


def run_scenario(text, trace=False, check=False):
    """Parse a scenario (JSON text or dict) and return its report."""
    return Scenario.from_json(text).run(trace=trace, check=check)


def parse_interval(text):
    """Canonical form of an interval such as "(1/4,1/2]" or "[0,+inf)"."""
    return _core.parse_interval(text)


def conventions():
    return dict(_core.conventions())


def conventions_hash():
    return _core.conventions_hash()
