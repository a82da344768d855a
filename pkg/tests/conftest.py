from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

DEMO_DIR = Path(__file__).resolve().parent.parent / "demo"


@pytest.fixture
def demo_dir() -> Path:
    return DEMO_DIR


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    # load_config reads .env from the working directory and ZEROGROWTH_* from the environment
    monkeypatch.chdir(tmp_path)
    for var in ("ZEROGROWTH_NODES", "ZEROGROWTH_TOL", "ZEROGROWTH_SEED", "ZEROGROWTH_FORMAT"):
        monkeypatch.delenv(var, raising=False)
