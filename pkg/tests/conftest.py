import hypothesis

hypothesis.settings.register_profile(
    "det",
    derandomize=True,
    max_examples=50,
    deadline=None,
)
hypothesis.settings.load_profile("det")

ACCEPTANCE_RESULTS = []


def record_acceptance(name: str, ok: bool, detail: str = ""):
    ACCEPTANCE_RESULTS.append((name, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        line = f"{status}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
