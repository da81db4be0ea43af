from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, seconds, limit, title = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number:>2}: {status}  {seconds:7.2f}s (limit {limit}s)  {title}")
