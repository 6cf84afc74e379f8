import pytest

ACCEPTANCE_LINES = []


def record_criterion(line: str):
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def lambda_system():
    from permutile.lam.system import LambdaSystem

    return LambdaSystem()


@pytest.fixture(scope="session")
def lambda_engine(lambda_system):
    from permutile.engine.engine import Engine

    return Engine(lambda_system)


@pytest.fixture(scope="session")
def por_system():
    import corpus

    return corpus.make_por_system()


@pytest.fixture(scope="session")
def por_engine(por_system):
    from permutile.engine.engine import Engine

    return Engine(por_system)
