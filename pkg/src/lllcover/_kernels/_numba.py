import numba
import numpy as np

NAME = "numba"


@numba.njit(cache=True)
def _first_deficient(cells, q, t, combo, mask):
    k, n = cells.shape
    n_words = 1
    for _ in range(t):
        n_words *= q
    ops = 0
    while True:
        mask[:] = 0
        covered = 0
        for r in range(k):
            ops += 1
            w = 0
            for i in range(t):
                w = w * q + cells[r, combo[i]]
            slot = w >> 6
            bit = np.uint64(1) << np.uint64(w & 63)
            if (mask[slot] & bit) == 0:
                mask[slot] |= bit
                covered += 1
                if covered == n_words:
                    break
        if covered < n_words:
            return True, ops
        # advance to the next combination in lexicographic order
        i = t - 1
        while i >= 0 and combo[i] == n - t + i:
            i -= 1
        if i < 0:
            return False, ops
        combo[i] += 1
        for j in range(i + 1, t):
            combo[j] = combo[j - 1] + 1


def first_deficient(cells, q, t, combo, mask):
    """Scan t-subsets from ``combo`` onward; stop at the first deficient one.

    ``combo`` (int64, length t) is advanced in place and left on the
    deficient subset. ``mask`` (uint64) receives that subset's coverage bits,
    word ``w`` at bit ``w & 63`` of ``mask[w >> 6]``. Returns
    ``(found, rows_scanned)``.
    """
    found, ops = _first_deficient(cells, q, t, combo, mask)
    return bool(found), int(ops)


@numba.njit(cache=True)
def _count_missing(cols):
    trials, t, k = cols.shape
    missing = 0
    for s in range(trials):
        hit = False
        for r in range(k):
            full = True
            for c in range(t):
                if cols[s, c, r] != 1:
                    full = False
                    break
            if full:
                hit = True
                break
        if not hit:
            missing += 1
    return missing


def count_missing_all_ones(cols):
    """Number of trials (axis 0) whose t columns never read all ones in one row."""
    return int(_count_missing(cols))
