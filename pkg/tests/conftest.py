from hypothesis import strategies as st

from coinduct.syntax import Mu, Sum, Var

ACTIONS = ("a", "b")
BINDERS = ("X", "Y")

_report: list[tuple[str, bool, str]] = []


@st.composite
def processes(draw, max_depth=4, bound=(), max_summands=3):
    """Closed (when ``bound`` is empty) guarded expressions of bounded depth."""

    def gen_sum(depth, scope):
        if depth <= 1:
            return Sum()
        n = draw(st.integers(0, max_summands))
        return Sum(tuple((draw(st.sampled_from(ACTIONS)), gen(depth - 1, scope)) for _ in range(n)))

    def gen(depth, scope):
        options = ["sum"] + (["var"] if scope else []) + (["mu"] if depth >= 3 else [])
        kind = draw(st.sampled_from(options))
        if kind == "var":
            return Var(draw(st.sampled_from(scope)))
        if kind == "mu":
            x = draw(st.sampled_from(BINDERS))
            return Mu(x, gen_sum(depth - 1, scope + (x,)))
        return gen_sum(depth, scope)

    return gen(max_depth, tuple(bound))


def record(criterion: str, passed: bool, detail: str = "") -> None:
    line = f"{'PASS' if passed else 'FAIL'}  {criterion}" + (f"  [{detail}]" if detail else "")
    print(line)
    _report.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _report:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _report:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}" + (f"  [{detail}]" if detail else ""))
