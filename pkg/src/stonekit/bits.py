"""Bitmask primitives: subsets of range(n) are ints, relations are mask rows.

Bit j of rows[i] is set iff i relates to j.  Everything here is pure and
allocation-light; element counts stay small (desk scale, n <= ~20), so dense
masks beat any sparse structure.
"""


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


def bits(mask):
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def close_reflexive_transitive(n, rows):
    """Reflexive-transitive closure (bit-parallel Warshall)."""
    out = list(rows)
    for i in range(n):
        out[i] |= 1 << i
    for k in range(n):
        rk = out[k]
        for i in range(n):
            if out[i] >> k & 1:
                out[i] |= rk
    return tuple(out)


def transpose(n, rows):
    cols = [0] * n
    for i in range(n):
        for j in bits(rows[i]):
            cols[j] |= 1 << i
    return tuple(cols)


def antisymmetry_violation(n, rows):
    """Some pair (i, j) of distinct mutually related elements, or None."""
    for i in range(n):
        for j in bits(rows[i] & ~(1 << i)):
            if rows[j] >> i & 1:
                return (i, j)
    return None


def is_closed(n, rows):
    """True iff the relation is reflexive and transitive."""
    for i in range(n):
        if not rows[i] >> i & 1:
            return False
    for i in range(n):
        acc = rows[i]
        for j in bits(rows[i]):
            acc |= rows[j]
        if acc != rows[i]:
            return False
    return True
