"""Tests for quadfunc/config."""

import os

import pytest

from quadfunc.config import as_list, default_threads, load_config
from quadfunc.error import FileFormatError


def test_load_config(tmp_path, log):
    """Test a flat file with an unknown key."""
    path = tmp_path / 'study.toml'
    path.write_text('n = [1000, 10000]\nb = "0.2"\nseed = 7\ncolour = "red"\n', encoding='utf-8')
    config = load_config(str(path))
    assert {'n': [1000, 10000], 'b': '0.2', 'seed': 7} == config
    assert [m for m in log if m.startswith("load_config: Ignoring unknown config key 'colour'")]


@pytest.mark.parametrize('text,message', [
    ('[cell]\nn = 1\n', "nested table 'cell' not supported"),
    ('n = [\n', 'study.toml'),
])
def test_load_config_malformed(tmp_path, text, message):
    """Test nested tables and invalid TOML."""
    path = tmp_path / 'study.toml'
    path.write_text(text, encoding='utf-8')
    with pytest.raises(FileFormatError) as exc:
        load_config(str(path))
    assert message in str(exc.value)


def test_load_config_missing(tmp_path):
    """Test a missing file surfaces as OSError."""
    with pytest.raises(OSError):
        load_config(str(tmp_path / 'missing.toml'))


def test_default_threads(threads_env, log):
    """Test QUADFUNC_THREADS and its fallbacks."""
    fallback = os.cpu_count() or 1
    threads_env('3')
    assert 3 == default_threads()
    threads_env('')
    assert fallback == default_threads()
    threads_env('many')
    assert fallback == default_threads()
    assert [m for m in log if m.startswith("default_threads: Invalid value for QUADFUNC_THREADS: 'many'")]
    threads_env('-2')
    assert fallback == default_threads()


@pytest.mark.parametrize('value,expected', [
    ('1000, 10000', ['1000', '10000']),
    ([1000, 10000], ['1000', '10000']),
    (0.2, ['0.2']),
    ('q0,,q4,', ['q0', 'q4']),
])
def test_as_list(value, expected):
    """Test as_list()."""
    assert expected == as_list(value)
