"""Pure-Python implementations of the compiled kernels (same signatures)."""

import numpy as np

BACKEND = "python"


def dimino(mul, base, gens):
    rows = mul.tolist() if isinstance(mul, np.ndarray) else mul
    n = len(rows)
    mask = bytearray(n)
    elems = []
    for z in (list(base) or [0]):
        if not mask[z]:
            mask[z] = 1
            elems.append(z)
    hsize = len(elems)
    H = elems[:hsize]
    gens = list(gens)
    reps = [0]
    for rep in reps:
        row = rows[rep]
        for s in gens:
            y = row[s]
            if not mask[y]:
                for h in H:
                    z = rows[h][y]
                    mask[z] = 1
                    elems.append(z)
                reps.append(y)
    return np.asarray(elems, dtype=np.int32), np.frombuffer(bytes(mask), dtype=np.uint8)


def conjugate_members(mul, inv, members, g):
    rows = mul.tolist() if isinstance(mul, np.ndarray) else mul
    gi = int(inv[g])
    mask = bytearray(len(rows))
    row_gi = rows[gi]
    for x in members:
        mask[rows[row_gi[x]][g]] = 1
    return np.frombuffer(bytes(mask), dtype=np.uint8)


def associativity_violation(mul):
    rows = mul.tolist() if isinstance(mul, np.ndarray) else mul
    n = len(rows)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return (a, b, c)
    return None
