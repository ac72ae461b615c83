"""Acceptance run: ``neighborly verify all --seed 42``, one test per criterion.

The report is produced by the installed command in a subprocess, exactly as
a user would run it. Each test prints and records a single pass/fail line.
"""

from __future__ import annotations

import re
import subprocess
import sys
import time
from dataclasses import dataclass

import pytest

import conftest

COMMAND = [sys.executable, "-m", "neighborly.cli", "verify", "all", "--seed", "42"]
TIME_LIMIT = 600.0
HEADER = re.compile(r"^\[(\d+)\] (.+): (PASS|FAIL)$")


@dataclass(frozen=True)
class Run:
    report: str
    returncode: int
    seconds: float


def _run() -> Run:
    start = time.monotonic()
    proc = subprocess.run(COMMAND, capture_output=True, text=True, check=False)
    elapsed = time.monotonic() - start
    if proc.returncode not in (0, 1):
        raise RuntimeError(f"verify crashed with exit {proc.returncode}:\n{proc.stderr}")
    return Run(proc.stdout, proc.returncode, elapsed)


def _blocks(report: str) -> dict[int, tuple[str, str, list[str]]]:
    blocks: dict[int, tuple[str, str, list[str]]] = {}
    current = None
    for line in report.splitlines():
        m = HEADER.match(line)
        if m:
            current = int(m.group(1))
            blocks[current] = (m.group(2), m.group(3), [])
        elif current is not None and line.startswith(" "):
            blocks[current][2].append(line)
    return blocks


@pytest.fixture(scope="module")
def first_run() -> Run:
    return _run()


def _record(line: str) -> None:
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.mark.parametrize("number", range(1, 8))
def test_criterion(first_run, number):
    blocks = _blocks(first_run.report)
    assert number in blocks, f"criterion {number} missing from report:\n{first_run.report}"
    title, verdict, details = blocks[number]
    _record(f"criterion {number} ({title}): {verdict}")
    assert verdict == "PASS", "\n".join(details)


def test_criterion_8_determinism(first_run):
    second = _run()
    same = second.report == first_run.report and second.returncode == first_run.returncode
    _record(f"criterion 8 (byte-identical reports for seed 42): {'PASS' if same else 'FAIL'}")
    assert same


def test_suite_runtime(first_run):
    ok = first_run.seconds < TIME_LIMIT
    _record(f"runtime: {'PASS' if ok else 'FAIL'} ({first_run.seconds:.0f}s, limit {TIME_LIMIT:.0f}s)")
    assert ok
