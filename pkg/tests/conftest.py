from __future__ import annotations

from pathlib import Path

import pytest

from idxminer import workload

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

WORKLOAD_PATH = FIXTURES / "tpcr_workload.sql"
SCHEMA_PATH = FIXTURES / "tpcr_schema.txt"
STATS_PATH = FIXTURES / "tpcr_stats.txt"


@pytest.fixture(scope="session")
def tpcr_schema() -> workload.SchemaMap:
    return workload.parse_schema(SCHEMA_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def tpcr_workload_text() -> str:
    return WORKLOAD_PATH.read_text(encoding="utf-8")


@pytest.fixture
def fixture_args(tmp_path):
    """Baseline CLI arguments for the committed fixture workload."""
    def build(*extra: str, out: Path | None = None) -> list[str]:
        out_dir = out if out is not None else tmp_path / "out"
        return [
            "--workload", str(WORKLOAD_PATH),
            "--schema", str(SCHEMA_PATH),
            "--stats", str(STATS_PATH),
            "--minsup", "0.25",
            "--out", str(out_dir),
            *extra,
        ]
    return build
