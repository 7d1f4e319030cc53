"""Tests for quadfunc/csv_."""

import io

import numpy as np
import pytest

from quadfunc.csv_ import HEADER, load_pairs, load_rows, read_rows, save_rows, write_rows
from quadfunc.error import FileFormatError
from quadfunc.harness import make_sim_config, run_mse_experiment


def test_save_load_rows(tmp_path):
    """Test rows read back equal the rows written."""
    config = make_sim_config(n_values=(200, 400), epsilons=(0.3,), b_values=('log:1.5', 0.15), replications=3,
                             threads=1)
    rows = run_mse_experiment(config)
    path = str(tmp_path / 'rows.csv')
    save_rows(rows, path)
    assert rows == load_rows(path)
    with open(path, 'rb') as handle:
        content = handle.read()
    assert content.startswith(b'n,beta,epsilon,a,b,sigma,estimator,')
    assert b'\r' not in content
    assert b',log:1.5,' in content


def test_write_rows_empty():
    """Test an empty result still gets a header."""
    handle = io.StringIO()
    write_rows([], handle)
    assert ','.join(HEADER) + '\n' == handle.getvalue()
    assert [] == read_rows(io.StringIO(handle.getvalue()))


@pytest.mark.parametrize('text,message', [
    ('', 'unexpected header None'),
    ('n,beta\n1,2\n', 'unexpected header'),
    (','.join(HEADER) + '\n1,2,3\n', 'line 2: expected 13 fields, got 3'),
    (','.join(HEADER) + '\nten,0.45,0.3,0.1,0.1,1,Q4,5,1,0,0,0,0\n', 'line 2:'),
    (','.join(HEADER) + '\n10,0.45,0.3,strong,0.1,1,Q4,5,1,0,0,0,0\n', "line 2: invalid signal strength 'strong'"),
    (','.join(HEADER) + '\n10,0.45,0.3,0.1,0.1,1,Q4,5,1,0,0,0,0\n10,0.45,0.3,0.1,0.1,1,Q9,5,1,0,0,0,0\n',
     "line 3: unknown estimator 'Q9'"),
])
def test_read_rows_malformed(text, message):
    """Test malformed input raises FileFormatError."""
    with pytest.raises(FileFormatError) as exc:
        read_rows(io.StringIO(text))
    assert message in str(exc.value)


def test_load_pairs(tmp_path):
    """Test the x,y observation file."""
    path = tmp_path / 'pairs.csv'
    path.write_text('X, Y\n1.5,-2\n\n0,3e-1\n', encoding='utf-8')
    x, y = load_pairs(str(path))
    assert np.array_equal(np.array([1.5, 0.0]), x)
    assert np.array_equal(np.array([-2.0, 0.3]), y)


@pytest.mark.parametrize('text', ['a,b\n1,2\n', 'x,y\n1\n', 'x,y\n1,two\n'])
def test_load_pairs_malformed(tmp_path, text):
    """Test bad headers and bad lines."""
    path = tmp_path / 'pairs.csv'
    path.write_text(text, encoding='utf-8')
    with pytest.raises(FileFormatError):
        load_pairs(str(path))
