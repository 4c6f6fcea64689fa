import pytest

from polerecovery import RecoveryConfig, catalog, recover, sample

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def f2():
    return catalog("f2")


@pytest.fixture(scope="session")
def f2_samples(f2):
    return sample(f2, 60)


@pytest.fixture(scope="session")
def f2_estimate(f2_samples):
    return recover(f2_samples)


@pytest.fixture(scope="session")
def f1q5_samples():
    return sample(catalog("f1", q=5), 60)


@pytest.fixture(scope="session")
def f3_samples():
    return sample(catalog("f3"), 60)


@pytest.fixture(scope="session")
def f4_config():
    return RecoveryConfig(w_p_percent=1e-2)
