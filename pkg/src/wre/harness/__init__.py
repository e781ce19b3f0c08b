"""Experiment runner and ``wre`` command line."""

from wre.harness.records import SCHEMAS, RunRecord, Table

__all__ = ["SCHEMAS", "RunRecord", "Table"]
