import pytest

from taylorlab.tables import reproduction_dataset


@pytest.fixture(scope="session")
def us_data():
    return reproduction_dataset("us")


@pytest.fixture(scope="session")
def uk_data():
    return reproduction_dataset("uk")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose the call-phase outcome to fixtures (acceptance scoreboard)
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.rep_call = report
