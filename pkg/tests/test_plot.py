"""Tests for quadfunc/plot."""

import pytest

from quadfunc.error import ConstraintViolation
from quadfunc.estimators import Q2, Q4
from quadfunc.harness import SimRow
from quadfunc.params import algebraic
from quadfunc.plot import plot_rows

ROWS = [SimRow(n, 0.45, 0.3, algebraic(0.2), algebraic(0.2), 1.0, kind, 10, mse, 0.0, 0.0, 0.0, 0)
        for kind in (Q2, Q4) for n, mse in ((1000, 0.1), (10000, 0.03), (100000, 0.01))]


@pytest.mark.parametrize('x,y', [('log-n', 'log-mse'), ('n', 'mse')])
def test_plot_rows(tmp_path, x, y):
    """Test an SVG file is written and is stable between runs."""
    first, second = tmp_path / 'first.svg', tmp_path / 'second.svg'
    plot_rows(ROWS, str(first), x=x, y=y)
    plot_rows(ROWS, str(second), x=x, y=y)
    content = first.read_text(encoding='utf-8')
    assert '<svg' in content
    assert content == second.read_text(encoding='utf-8')


def test_plot_rows_several_cells(tmp_path):
    """Test rows from several cells are drawn together."""
    rows = ROWS + [r._replace(epsilon=0.12) for r in ROWS]
    path = tmp_path / 'cells.svg'
    plot_rows(rows, str(path))
    assert path.stat().st_size > 0


@pytest.mark.parametrize('x,y', [('mse', 'log-mse'), ('log-n', 'n'), ('beta', 'mse')])
def test_plot_rows_bad_axes(tmp_path, x, y):
    """Test unsupported axes."""
    with pytest.raises(ConstraintViolation):
        plot_rows(ROWS, str(tmp_path / 'bad.svg'), x=x, y=y)
