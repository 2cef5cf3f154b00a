import logging

import pytest

from levymart import utils


def test_defaults_validate():
    assert utils.validate_config()


def test_invalid_settings_are_collected(monkeypatch):
    monkeypatch.setattr(utils, 'LEVEL', 1.5)
    monkeypatch.setattr(utils, 'THREADS', 0)
    with pytest.raises(ValueError) as info:
        utils.validate_config()
    message = str(info.value)
    assert 'LEVYMART_LEVEL' in message
    assert 'LEVYMART_THREADS' in message


def test_config_summary_sections():
    summary = utils.get_config_summary()
    assert set(summary) == {'quadrature', 'moments', 'classification', 'simulation', 'mtg_test', 'log_level', 'schema'}
    assert summary['schema'] == utils.REPORT_SCHEMA


def test_log_level_override():
    utils.configure_logging('debug')
    assert logging.getLogger('levymart').level == logging.DEBUG
    utils.configure_logging('warning')
    assert logging.getLogger('levymart').level == logging.WARNING


def test_harmless_warnings_are_filtered():
    record = logging.LogRecord('py.warnings', logging.WARNING, __file__, 1,
                               'RuntimeWarning: overflow encountered in exp', None, None)
    assert not utils.HarmlessWarningFilter().filter(record)
