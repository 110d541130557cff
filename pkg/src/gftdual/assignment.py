"""Maximum-weight linear assignment on dense square score matrices.

The convention throughout is the one used by the alignment optimizers:
a permutation sigma scores sum_i s[sigma(i), i], picking exactly one
entry from each row and each column.
"""

import itertools

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import NonFiniteEntryError, NotSquareError, TooLargeError

BRUTEFORCE_LIMIT = 9


def _checked_scores(s):
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise NotSquareError("score matrix must be square, got shape %s" % (s.shape,))
    if s.size and not np.isfinite(s).all():
        raise NonFiniteEntryError("score matrix contains non-finite entries")
    return s


def _value(s, sigma):
    # summed in ascending i order so equal permutations give equal floats
    n = s.shape[0]
    return float(np.sum(s[sigma, np.arange(n)]))


def solve_assignment_max(s):
    """Return (sigma, value) maximizing sum_i s[sigma(i), i].

    sigma is returned as an index array; the matching permutation matrix
    is P[i, sigma(i)] = 1.  Deterministic: the same input always yields
    the same optimum.
    """
    s = _checked_scores(s)
    n = s.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.intp), 0.0
    # sum_i s[sigma(i), i] = sum_i s.T[i, sigma(i)]
    row_ind, col_ind = linear_sum_assignment(s.T, maximize=True)
    sigma = np.asarray(col_ind, dtype=np.intp)
    return sigma, _value(s, sigma)


def assignment_bruteforce(s):
    """Exhaustive-enumeration optimum of the same objective (test oracle)."""
    s = _checked_scores(s)
    n = s.shape[0]
    if n > BRUTEFORCE_LIMIT:
        raise TooLargeError(
            "bruteforce assignment limited to n <= %d, got n = %d"
            % (BRUTEFORCE_LIMIT, n))
    if n == 0:
        return np.zeros(0, dtype=np.intp), 0.0
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    values = s[perms, np.arange(n)].sum(axis=1)
    # argmax keeps the first maximum, the lexicographically least optimum
    best = int(np.argmax(values))
    sigma = perms[best]
    return sigma, _value(s, sigma)
