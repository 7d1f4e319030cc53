"""CSV persistence of simulation rows and ingestion of paired observations.

Floats are written with 17 significant digits so a row read back is bit-identical to the row written. Files are
UTF-8 with LF line endings.
"""

import csv
import logging

import numpy as np

from quadfunc.error import FileFormatError, QuadfuncError
from quadfunc.estimators import ESTIMATOR_NAMES, kind_from_name
from quadfunc.harness import SimRow
from quadfunc.params import format_strength, parse_strength

_LOGGER = logging.getLogger(__name__)

HEADER = ('n', 'beta', 'epsilon', 'a', 'b', 'sigma', 'estimator', 'replications', 'mse', 'mse_stderr',
          'mean_estimate', 'true_q', 'seed')
PAIRS_HEADER = ('x', 'y')


def _float(value):
    return format(float(value), '.17g')


def write_rows(rows, handle):
    """Write SimRows with a header line to an open text handle (opened with newline='')."""
    writer = csv.writer(handle, lineterminator='\n')
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow([
            str(row.n), _float(row.beta), _float(row.epsilon), format_strength(row.a), format_strength(row.b),
            _float(row.sigma), ESTIMATOR_NAMES[row.estimator], str(row.replications), _float(row.mse),
            _float(row.mse_stderr), _float(row.mean_estimate), _float(row.true_q), str(row.seed),
        ])


def save_rows(rows, path):
    """Write SimRows to a file path."""
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        write_rows(rows, handle)
    _LOGGER.debug('wrote %d rows to %s', len(rows), path)


def read_rows(handle):
    """Parse SimRows from an open text handle.

    Returns:
    List of SimRow namedtuples.
    """
    reader = csv.reader(handle)
    header = next(reader, None)
    if tuple(header or ()) != HEADER:
        raise FileFormatError('unexpected header {0!r}, expected {1}'.format(header, ','.join(HEADER)))
    rows = list()
    for line_number, fields in enumerate(reader, 2):
        if not fields:
            continue
        if len(fields) != len(HEADER):
            raise FileFormatError('line {0}: expected {1} fields, got {2}'.format(line_number, len(HEADER),
                                                                                  len(fields)))
        try:
            rows.append(SimRow(
                int(fields[0]), float(fields[1]), float(fields[2]), parse_strength(fields[3]),
                parse_strength(fields[4]), float(fields[5]), kind_from_name(fields[6]), int(fields[7]),
                float(fields[8]), float(fields[9]), float(fields[10]), float(fields[11]), int(fields[12]),
            ))
        except (ValueError, QuadfuncError) as exc:
            raise FileFormatError('line {0}: {1}'.format(line_number, exc))
    return rows


def load_rows(path):
    """Read SimRows from a file path."""
    with open(path, encoding='utf-8', newline='') as handle:
        return read_rows(handle)


def load_pairs(path):
    """Read an `x,y` CSV of paired observations (for example paired z-scores).

    Returns:
    Tuple of two numpy arrays.
    """
    with open(path, encoding='utf-8', newline='') as handle:
        reader = csv.reader(handle)
        header = tuple(h.strip().lower() for h in next(reader, None) or ())
        if header != PAIRS_HEADER:
            raise FileFormatError('{0}: header must be x,y (got {1!r})'.format(path, ','.join(header)))
        x, y = list(), list()
        for line_number, fields in enumerate(reader, 2):
            if not fields:
                continue
            try:
                x.append(float(fields[0]))
                y.append(float(fields[1]))
            except (IndexError, ValueError):
                raise FileFormatError('{0} line {1}: expected two numbers'.format(path, line_number))
    _LOGGER.debug('read %d pairs from %s', len(x), path)
    return np.array(x), np.array(y)
