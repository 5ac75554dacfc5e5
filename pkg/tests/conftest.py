"""Shared strategies and helpers for the test suite."""

from hypothesis import HealthCheck, settings, strategies as st

from dyncolor.graph import Graph

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    """One verdict line per acceptance criterion at the end of the run."""
    import re

    lines = {}
    for status, verdict in (("failed", "FAIL"), ("error", "FAIL"), ("passed", "PASS")):
        for rep in terminalreporter.stats.get(status, []):
            m = re.search(r"test_criterion_(\d+)", getattr(rep, "nodeid", "") or "")
            if m:
                lines.setdefault(int(m.group(1)), f"criterion {int(m.group(1))}: {verdict}")
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])


@st.composite
def small_graphs(draw, max_n: int = 7):
    """Arbitrary simple graphs on at most `max_n` vertices."""
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(range(n), edges)
