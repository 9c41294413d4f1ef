"""Prints one PASS/FAIL line per acceptance criterion after the run."""

import re

_CRITERIA = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = re.fullmatch(r"test_criterion_(\d+)", item.name)
        if m and item.module.__name__.endswith("test_acceptance"):
            doc = (item.function.__doc__ or "").strip().splitlines()
            _CRITERIA[item.nodeid] = {"n": int(m.group(1)), "text": doc[0] if doc else "", "ok": None, "props": []}


def pytest_runtest_logreport(report):
    entry = _CRITERIA.get(report.nodeid)
    if entry is None:
        return
    if report.failed:
        entry["ok"] = False
    elif report.when == "call" and entry["ok"] is None:
        entry["ok"] = report.passed
    entry["props"] = list(report.user_properties) or entry["props"]


def _fmt(v):
    return f"{v:.3g}" if isinstance(v, float) else str(v)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for entry in sorted(_CRITERIA.values(), key=lambda e: e["n"]):
        status = {True: "PASS", False: "FAIL", None: "NOT RUN"}[entry["ok"]]
        props = " ".join(f"{k}={_fmt(v)}" for k, v in entry["props"])
        tr.write_line(f"criterion {entry['n']}: {status}  {entry['text']}" + (f"  [{props}]" if props else ""))
