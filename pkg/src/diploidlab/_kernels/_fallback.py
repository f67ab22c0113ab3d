"""Pure-Python implementations of the hot string kernels.

Same API as the compiled ``_speedups`` module; selected at import time when
the extension is unavailable (or when DIPLOIDLAB_PURE=1).
"""

import numpy as np

IS_COMPILED = False


def _prefix_function(t: bytes) -> list:
    n = len(t)
    pi = [0] * n
    for i in range(1, n):
        k = pi[i - 1]
        c = t[i]
        while k and t[k] != c:
            k = pi[k - 1]
        if t[k] == c:
            k += 1
        pi[i] = k
    return pi


def sp_overlap(x: bytes, y: bytes) -> int:
    """Longest l < min(|x|,|y|) with suffix of x equal to prefix of y."""
    pi = _prefix_function(y + b"\x00" + x)
    l = pi[-1]
    cap = min(len(x), len(y)) - 1
    while l > cap:
        l = pi[l - 1]
    return l


def sp_overlap_matrix(seqs: list) -> np.ndarray:
    """Ordered all-pairs suffix-prefix overlaps; diagonal set to 0."""
    n = len(seqs)
    out = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        for j in range(n):
            if i != j:
                out[i, j] = sp_overlap(seqs[i], seqs[j])
    return out


def sp_overlap_rows(s: bytes, seqs: list):
    """Overlaps of s against every sequence, both directions.

    Returns (out_row, in_col): out_row[j] = overlap(s, seqs[j]),
    in_col[j] = overlap(seqs[j], s).
    """
    n = len(seqs)
    out_row = np.zeros(n, dtype=np.int32)
    in_col = np.zeros(n, dtype=np.int32)
    for j in range(n):
        out_row[j] = sp_overlap(s, seqs[j])
        in_col[j] = sp_overlap(seqs[j], s)
    return out_row, in_col
