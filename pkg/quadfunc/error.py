"""Error handling.

Messages for the numbers in quadfunc.errno_ and the exception hierarchy raised by the library.
"""

import quadfunc.errno_

errmsg = dict((i, '') for i in range(quadfunc.errno_.QFE_MAX + 1))
errmsg.update({
    quadfunc.errno_.QFE_SUCCESS: 'Success',
    quadfunc.errno_.QFE_FAILURE: 'Unspecific failure',
    quadfunc.errno_.QFE_CONSTRAINT: 'Parameter constraint violated',
    quadfunc.errno_.QFE_DEGENERATE: 'Vector length too small',
    quadfunc.errno_.QFE_INFEASIBLE: 'Pair configuration does not fit in the vector',
    quadfunc.errno_.QFE_DOMAIN: 'Argument outside the function domain',
    quadfunc.errno_.QFE_ARITY: 'Wrong number of sequences for estimator',
    quadfunc.errno_.QFE_LENGTH: 'Sequence lengths differ',
    quadfunc.errno_.QFE_EMPTY: 'Empty input',
    quadfunc.errno_.QFE_POINTS: 'Not enough distinct points',
    quadfunc.errno_.QFE_FILE: 'Unable to read or write file',
    quadfunc.errno_.QFE_PARSE: 'Unable to parse input',
})


class QuadfuncError(Exception):
    """Base class of every exception raised by the library.

    Instance variables:
    error -- error number from quadfunc.errno_.
    """

    error = quadfunc.errno_.QFE_FAILURE

    def __init__(self, message=None):
        """Constructor."""
        super(QuadfuncError, self).__init__(message or errmsg[self.error])

    def __repr__(self):
        """repr() handler."""
        return '<{0}.{1} error={2} message={3!r}>'.format(self.__module__, self.__class__.__name__, self.error,
                                                          str(self))


class ConstraintViolation(QuadfuncError):
    """Parameters violate an inequality of the model."""

    error = quadfunc.errno_.QFE_CONSTRAINT


class DegenerateSize(ConstraintViolation):
    """Vector length n < 2."""

    error = quadfunc.errno_.QFE_DEGENERATE


class DomainError(ConstraintViolation):
    """Argument outside the domain of a closed-form constant."""

    error = quadfunc.errno_.QFE_DOMAIN


class ConfigInfeasible(QuadfuncError):
    """Pair layout block sizes exceed n."""

    error = quadfunc.errno_.QFE_INFEASIBLE


class ArityMismatch(QuadfuncError):
    """One-sequence estimator given two sequences or pair estimator given one."""

    error = quadfunc.errno_.QFE_ARITY


class LengthMismatch(QuadfuncError):
    """Sequences of different lengths."""

    error = quadfunc.errno_.QFE_LENGTH


class EmptyInput(QuadfuncError):
    """No data."""

    error = quadfunc.errno_.QFE_EMPTY


class InsufficientPoints(QuadfuncError):
    """Fewer than two distinct abscissae for a fit."""

    error = quadfunc.errno_.QFE_POINTS


class FileFormatError(QuadfuncError):
    """Malformed CSV or config file."""

    error = quadfunc.errno_.QFE_PARSE
