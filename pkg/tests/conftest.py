from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bestworst.core import Profile, Rule

rationals01 = st.fractions(min_value=0, max_value=1, max_denominator=60)
weights = st.sampled_from([Fraction(k, 8) for k in range(0, 25)])


@st.composite
def rules_and_profiles(draw, min_m=2, max_m=7, c=weights):
    m = draw(st.integers(min_m, max_m))
    # draw from a small pool so co-location happens often
    pool = draw(st.lists(rationals01, min_size=1, max_size=5, unique=True))
    pos = draw(st.lists(st.sampled_from(pool), min_size=m, max_size=m))
    return Rule(draw(c), m), Profile(tuple(pos))


def pytest_terminal_summary(terminalreporter):
    reports = [
        r
        for key in ("passed", "failed")
        for r in terminalreporter.stats.get(key, [])
        if r.when == "call" and "test_acceptance.py" in r.nodeid
    ]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::", 1)[1]
        line = f"{'PASS' if r.passed else 'FAIL'}  {name}"
        if r.failed:
            msg = getattr(r.longrepr, "reprcrash", None)
            if msg is not None:
                line += "  (" + msg.message.splitlines()[0][:160] + ")"
        terminalreporter.write_line(line)
