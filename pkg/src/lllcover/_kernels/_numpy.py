from itertools import islice

import numpy as np

NAME = "numpy"

# cap on the boolean coverage table built per chunk
_TABLE_CELLS = 1 << 22
_MAX_CHUNK = 4096


def _combinations_from(start, n):
    combo = list(start)
    t = len(combo)
    while True:
        yield tuple(combo)
        i = t - 1
        while i >= 0 and combo[i] == n - t + i:
            i -= 1
        if i < 0:
            return
        combo[i] += 1
        for j in range(i + 1, t):
            combo[j] = combo[j - 1] + 1


def first_deficient(cells, q, t, combo, mask):
    k, n = cells.shape
    n_words = q**t
    place = q ** np.arange(t - 1, -1, -1, dtype=np.int64)
    cap = max(1, min(_MAX_CHUNK, _TABLE_CELLS // n_words))
    chunk = min(16, cap)
    subsets = _combinations_from(combo.tolist(), n)
    ops = 0
    while True:
        block = list(islice(subsets, chunk))
        if not block:
            return False, ops
        cols = np.asarray(block, dtype=np.int64)
        words = cells[:, cols].astype(np.int64) @ place  # (k, chunk)
        seen = np.zeros((len(block), n_words), dtype=bool)
        seen[np.arange(len(block))[None, :], words] = True
        bad = ~seen.all(axis=1)
        if bad.any():
            pos = int(np.argmax(bad))
            ops += (pos + 1) * k
            combo[:] = cols[pos]
            bits = np.zeros(mask.shape[0] * 64, dtype=bool)
            bits[:n_words] = seen[pos]
            mask[:] = np.packbits(bits, bitorder="little").view("<u8")
            return True, ops
        ops += len(block) * k
        chunk = min(chunk * 2, cap)


def count_missing_all_ones(cols):
    return int(np.count_nonzero(~(cols == 1).all(axis=1).any(axis=1)))
