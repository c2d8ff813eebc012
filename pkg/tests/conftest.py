import os

from qsa.presentation import parse_presentation

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name + ".qsa")


def load_fixture(name):
    with open(fixture_path(name), encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def all_fixture_names():
    names = [f[:-4] for f in os.listdir(FIXTURES) if f.endswith(".qsa")]
    return sorted(names)
