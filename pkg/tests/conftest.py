from __future__ import annotations

import os
from functools import lru_cache

from hypothesis import HealthCheck, settings

from gbt_verify import report as rp
from gbt_verify.hypersurface import Family
from gbt_verify.field import parse_specialization

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled in by test_acceptance
ACCEPTANCE: dict = {}


@lru_cache(maxsize=None)
def family(kind: str, spec: str | None = None, convention=(1, 1, 1)) -> Family:
    return Family.make(kind, convention=convention, spec=parse_specialization(spec) if spec else None)


@lru_cache(maxsize=None)
def cached_report(name: str, *args):
    return getattr(rp, name)(*args)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
