"""Tests for the markdown report over stored corpus results."""

import pytest

from singord.pack_loader import CaseConfig, PackConfig
from singord.reporting import generate_report
from singord.reporting.tables import (
    bound_checks_table,
    failing_cases_table,
    realizer_degrees_table,
    verdicts_by_pack_table,
)
from singord.runner import run_pack


@pytest.fixture
def db_path(tmp_path):
    path = str(tmp_path / "results.sqlite")
    pack = PackConfig(
        id="mixed",
        name="Mixed",
        description="",
        cases=[
            CaseConfig(id="cusp_bounds", op="degree_bounds", params={"type": "A2"}),
            CaseConfig(id="family", op="ak_family", params={"m": 2}),
            CaseConfig(id="broken", op="invariants", params={"germ": "0"}),
        ],
    )
    run_pack(pack, db_path=path)
    return path


class TestTables:
    def test_verdicts_by_pack(self, db_path):
        table = verdicts_by_pack_table(db_path)
        assert "mixed" in table
        assert "Not Pass" in table

    def test_failing_cases(self, db_path):
        table = failing_cases_table(db_path)
        assert "mixed/broken" in table
        assert "ERROR" in table
        assert "cusp_bounds" not in table

    def test_bound_checks(self, db_path):
        table = bound_checks_table(db_path)
        assert "e41" in table
        assert "z0-ak" in table

    def test_realizer_degrees(self, db_path):
        table = realizer_degrees_table(db_path)
        assert "mixed/family" in table
        assert "A7" in table


class TestGenerateReport:
    def test_writes_summary(self, db_path, tmp_path):
        md_path = generate_report(db_path, str(tmp_path / "out"))
        text = open(md_path).read()
        assert text.startswith("# Corpus Report")
        assert "## Verdicts by Pack" in text
        assert "## Earlier Bounds (not checked)" in text
        assert "e19" in text
