import pytest

import fixtures


@pytest.fixture
def path_graph():
    return fixtures.path()


@pytest.fixture
def triangle():
    return fixtures.triangle()


@pytest.fixture
def five_cycle():
    return fixtures.five_cycle()


@pytest.fixture
def nested():
    return fixtures.nested()


@pytest.fixture
def no_base():
    return fixtures.no_base()


@pytest.fixture
def two_paths():
    return fixtures.two_paths()


@pytest.fixture
def blossom_on_path():
    return fixtures.blossom_on_path()


@pytest.fixture
def graph_file(tmp_path):
    """Write text to a file under tmp_path and return its path as a string"""

    def write(text: str, name: str = 'graph.txt') -> str:
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)

    return write
