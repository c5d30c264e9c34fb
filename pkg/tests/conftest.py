import json
import pathlib

import pytest

from heegaard2.diagram import parse_diagram

DATA = pathlib.Path(__file__).parent / "data"


def load_manifest():
    return json.loads((DATA / "manifest.json").read_text())


def load_diagram(name):
    return parse_diagram((DATA / name).read_text())


def corpus(kind=None):
    out = []
    for entry in load_manifest():
        if kind is None or entry["kind"] == kind:
            out.append((entry, load_diagram(entry["file"])))
    return out


@pytest.fixture(scope="session")
def manifest():
    return load_manifest()


@pytest.fixture(scope="session")
def all_corpus():
    return corpus()


@pytest.fixture(scope="session")
def minimal_corpus():
    return corpus("minimal")


@pytest.fixture(scope="session")
def wave_corpus():
    return corpus("planted_wave")


@pytest.fixture(scope="session")
def bigon_corpus():
    return corpus("planted_bigon")


@pytest.fixture(scope="session")
def pipeline_corpus():
    return corpus("pipeline")
