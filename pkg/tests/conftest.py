import sys

from hypothesis import HealthCheck, settings

from arboreal.generate import GenConfig, random_network

settings.register_profile("arboreal", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("arboreal")


def generated(seed: int, n: int | None = None, **kw):
    return random_network(GenConfig(n if n is not None else 3 + seed % 13, seed, **kw))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
