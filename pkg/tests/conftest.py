from __future__ import annotations

from strange_duality import quantum


def pytest_sessionfinish(session, exitstatus):
    stats = quantum.route_stats
    reporter = session.config.pluginmanager.getplugin("terminalreporter")
    line = (
        f"dual-route campaign: {stats.comparisons} comparisons, "
        f"{stats.disagreements} disagreements"
    )
    if reporter is not None:
        reporter.write_line(line)
    if stats.disagreements and exitstatus == 0:
        session.exitstatus = 1
