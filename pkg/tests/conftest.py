import pytest

from repstab.labels import GlLabel, SpLabel
from repstab.partitions import partitions_of, partitions_up_to

import _dimaudit
from _acceptance_log import RESULTS

_dimaudit.install()


def gl_labels(max_size, n):
    """Every GL label of total size <= max_size valid at rank n."""
    out = []
    for s in range(max_size + 1):
        for a in range(s + 1):
            for p in partitions_of(a):
                for m in partitions_of(s - a):
                    if len(p) + len(m) <= n:
                        out.append(GlLabel(p, m))
    return out


def sp_labels(max_size, n):
    return [SpLabel(p) for p in partitions_up_to(max_size, n)]


@pytest.fixture(params=["numpy", "numba"])
def kernel_backend(request):
    from repstab import _kernels

    return _kernels.KERNELS[request.param]


def pytest_sessionfinish(session, exitstatus):
    # a dimension violation anywhere fails the run, even if no test noticed it
    if _dimaudit.STATS["violations"] and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
    terminalreporter.write_line(_dimaudit.summary_line())
    for name, args, got, want in _dimaudit.STATS["violations"][:10]:
        terminalreporter.write_line(f"  {name}{args!r}: dim {got} != {want}")
