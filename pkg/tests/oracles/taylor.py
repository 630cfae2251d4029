"""Matrix exponential by scaling-and-squaring Taylor summation.

Independent of both numpy.linalg.eigh and scipy's Pade code, so it can
arbitrate if the two main routes ever disagree.
"""

import numpy as np


def expm_taylor(a, terms=30):
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a, np.inf)
    squarings = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0 else 0
    b = a / (2.0 ** squarings)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ b / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out
