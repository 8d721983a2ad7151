"""Shared fixtures: an in-process HTTP client and a CLI runner."""

import warnings

import pytest
from click.testing import CliRunner

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from starlette.testclient import TestClient

from xtropy.service.app import create_app


@pytest.fixture(scope="session")
def client():
    with TestClient(create_app(), raise_server_exceptions=False) as tc:
        yield tc


@pytest.fixture()
def runner():
    return CliRunner()
