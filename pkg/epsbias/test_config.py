"""Test suite for config module."""
# pylint: skip-file
# pragma: no cover

import logging
from unittest.mock import patch

from config import (
    DEFAULT_CHUNK_SIZE,
    DEFAULT_MAX_ENUM,
    configure_logging,
    get_chunk_size,
    get_max_enum,
    get_workers,
)


def test_defaults_without_environment(monkeypatch):
    """Test the built-in defaults."""
    for name in ('EPSBIAS_MAX_ENUM', 'EPSBIAS_WORKERS', 'EPSBIAS_CHUNK_SIZE'):
        monkeypatch.delenv(name, raising=False)
    assert get_max_enum() == DEFAULT_MAX_ENUM
    assert get_workers() == 1
    assert get_chunk_size() == DEFAULT_CHUNK_SIZE


def test_environment_values(monkeypatch):
    """Test that environment variables are read at call time."""
    monkeypatch.setenv('EPSBIAS_MAX_ENUM', '1000')
    monkeypatch.setenv('EPSBIAS_WORKERS', '4')
    assert get_max_enum() == 1000
    assert get_workers() == 4


def test_override_beats_environment(monkeypatch):
    """Test that explicit arguments win over the environment."""
    monkeypatch.setenv('EPSBIAS_MAX_ENUM', '1000')
    assert get_max_enum(50) == 50
    assert get_workers(0) == 1


def test_bad_environment_value_warns(monkeypatch, caplog):
    """Test that unparsable values fall back to the default with a warning."""
    monkeypatch.setenv('EPSBIAS_CHUNK_SIZE', 'lots')
    with caplog.at_level(logging.WARNING):
        assert get_chunk_size() == DEFAULT_CHUNK_SIZE
    assert 'EPSBIAS_CHUNK_SIZE' in caplog.text


@patch('config.logging.basicConfig')
def test_configure_logging_uses_env_level(mock_basic_config, monkeypatch):
    """Test that EPSBIAS_LOG_LEVEL picks the level."""
    monkeypatch.setenv('EPSBIAS_LOG_LEVEL', 'debug')
    configure_logging()
    assert mock_basic_config.call_args[1]['level'] == logging.DEBUG


@patch('config.logging.basicConfig')
def test_configure_logging_explicit_level(mock_basic_config):
    """Test that an explicit level wins."""
    configure_logging('warning')
    assert mock_basic_config.call_args[1]['level'] == logging.WARNING
