"""Suite execution and report emission."""
from __future__ import annotations

import csv
import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from .. import __version__, config
from ..errors import CapacityError, PreconditionError
from .checks import Check, build_suite, merge_config


@dataclass
class CheckResult:
    check_id: str
    params: dict
    expected: Any
    computed: Any
    status: str
    wall_time_ms: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def skipped(self) -> bool:
        return self.status.startswith("skipped")

    def to_json(self) -> dict:
        return asdict(self)


def _plain(x):
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _execute(check: Check, size_cap: int) -> CheckResult:
    if check.skip_reason:
        return CheckResult(check.check_id, check.params, None, None, f"skipped({check.skip_reason})", 0)
    old = config.set_limits(algebra_dim=size_cap)
    t0 = time.perf_counter()
    try:
        expected, computed = check.func(**check.kwargs)
        expected, computed = _plain(expected), _plain(computed)
        status = "pass" if expected == computed else "fail"
    except CapacityError as exc:
        expected, computed, status = None, None, f"skipped(capacity: {exc})"
    except Exception as exc:  # a single broken check must not abort the run
        expected, computed, status = None, f"error: {type(exc).__name__}: {exc}", "fail"
    finally:
        config.set_limits(**asdict(old))
    ms = int(round((time.perf_counter() - t0) * 1000.0))
    return CheckResult(check.check_id, check.params, expected, computed, status, ms)


def run_suite(name: str, cfg: dict | None = None, jobs: int = 1) -> list[CheckResult]:
    """Run every check of suite ``name``; results come back in suite order regardless of ``jobs``."""
    cfg = merge_config(cfg)
    checks = build_suite(name, cfg)
    cap = int(cfg["size_cap"])
    if jobs <= 1 or len(checks) <= 1:
        return [_execute(c, cap) for c in checks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_execute, checks, [cap] * len(checks)))


def config_digest(cfg: dict) -> str:
    blob = json.dumps(merge_config(cfg), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _flatten(params: dict) -> str:
    return ";".join(f"{k}={json.dumps(v, separators=(',', ':')) if not isinstance(v, str) else v}" for k, v in sorted(params.items()))


def emit_report(results: list[CheckResult], fmt: str, path: str | Path | None, cfg: dict | None = None) -> str:
    """Serialize ``results`` as json or csv; write to ``path`` when given and return the text."""
    if not results:
        raise PreconditionError("no results to report")
    if fmt == "json":
        doc = {
            "header": {"tool_version": __version__, "config_digest": config_digest(cfg)},
            "results": [r.to_json() for r in results],
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "params", "expected", "computed", "status", "wall_time_ms"])
        for r in results:
            w.writerow([r.check_id, _flatten(r.params), json.dumps(r.expected), json.dumps(r.computed), r.status, r.wall_time_ms])
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text


def exit_code(results: list[CheckResult]) -> int:
    return 0 if all(r.passed for r in results if not r.skipped) else 1
