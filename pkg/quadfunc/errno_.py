"""Error numbers.

Every failure the library can report has a number here and a message in quadfunc.error.errmsg. Exceptions carry the
number in their `error` attribute so callers (mainly the CLI) can map them to exit codes.
"""

QFE_SUCCESS = 0
QFE_FAILURE = 1
QFE_CONSTRAINT = 2
QFE_DEGENERATE = 3
QFE_INFEASIBLE = 4
QFE_DOMAIN = 5
QFE_ARITY = 6
QFE_LENGTH = 7
QFE_EMPTY = 8
QFE_POINTS = 9
QFE_FILE = 10
QFE_PARSE = 11
QFE_MAX = QFE_PARSE
