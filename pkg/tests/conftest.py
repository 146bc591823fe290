import json
import pathlib
from dataclasses import replace

import pytest

from spinfreeze.experiments import preset, run_scenario

GOLDENS_PATH = pathlib.Path(__file__).parent / "goldens.json"


@pytest.fixture(scope="session")
def goldens():
    return json.loads(GOLDENS_PATH.read_text())


class RunCache:
    """Runs each (preset, overrides) combination once per test session."""

    def __init__(self):
        self._runs = {}

    def get(self, name, **overrides):
        key = (name, tuple(sorted(overrides.items())))
        if key not in self._runs:
            cfg = preset(name)
            if overrides:
                cfg = replace(cfg, **overrides)
            self._runs[key] = run_scenario(cfg)
        return self._runs[key]


@pytest.fixture(scope="session")
def runs():
    return RunCache()
