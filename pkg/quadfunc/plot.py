"""Static SVG line charts of simulation rows."""

import logging
import math

import matplotlib

matplotlib.use('Agg')
matplotlib.rcParams['svg.hashsalt'] = 'quadfunc'  # Stable element ids between runs.

import matplotlib.pyplot as plt  # noqa: E402  pylint: disable=wrong-import-position

from quadfunc.error import ConstraintViolation  # noqa: E402
from quadfunc.harness import summarize  # noqa: E402
from quadfunc.params import format_strength  # noqa: E402

_LOGGER = logging.getLogger(__name__)

AXES = {
    'n': (lambda row: row.n, 'n'),
    'log-n': (lambda row: math.log10(row.n), 'log10 n'),
    'mse': (lambda row: row.mse, 'MSE'),
    'log-mse': (lambda row: math.log10(row.mse) if row.mse > 0 else float('nan'), 'log10 MSE'),
}


def plot_rows(rows, path, x='log-n', y='log-mse'):
    """Draw one line per (cell, estimator) and save as SVG.

    Positional arguments:
    rows -- iterable of SimRow.
    path -- output file path.

    Keyword arguments:
    x -- 'log-n' or 'n'.
    y -- 'log-mse' or 'mse'.
    """
    if x not in ('n', 'log-n') or y not in ('mse', 'log-mse'):
        raise ConstraintViolation('axes must be x in {{n, log-n}} and y in {{mse, log-mse}} (got {0!r}, {1!r})'.format(
            x, y))
    groups = summarize(rows)
    cells = set(key[:4] for key in groups)
    x_value, x_label = AXES[x]
    y_value, y_label = AXES[y]

    figure, axes = plt.subplots(figsize=(6, 4.5))
    for (beta, epsilon, a, b, name), members in groups.items():
        members = sorted(members, key=lambda r: r.n)
        label = name
        if len(cells) > 1:
            label = '{0} (beta={1:g} eps={2:g} a={3} b={4})'.format(name, beta, epsilon, format_strength(a),
                                                                   format_strength(b))
        axes.plot([x_value(r) for r in members], [y_value(r) for r in members], marker='o', label=label)
    axes.set_xlabel(x_label)
    axes.set_ylabel(y_label)
    axes.legend(fontsize='small')
    figure.tight_layout()
    figure.savefig(path, format='svg', metadata={'Date': None})
    plt.close(figure)
    _LOGGER.debug('wrote %d series to %s', len(groups), path)
