import numpy as np
import pytest

import coldprobe


def pytest_report_header(config):
    return (f"coldprobe {coldprobe.__version__} "
            f"(kernel backend: {coldprobe.backend_name}; "
            f"available: {', '.join(coldprobe.available_backends())})")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def probe():
    return coldprobe.ProbeSpec(1.0)
