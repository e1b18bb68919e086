import sys

import pytest

from fibtools import _accel

BACKENDS = ["numba", "numpy"] if _accel.HAVE_NUMBA else ["numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    with _accel.use_backend(request.param):
        yield request.param



def pytest_terminal_summary(terminalreporter):
    module = next(
        (m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance") and hasattr(m, "RESULTS")),
        None,
    )
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        ok, detail = module.RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}  {detail}")
