"""Prime-field scans used as fast, non-authoritative pre-checks.

Only plain modular integer arithmetic is needed: evaluating a matrix of
linear forms at projective points over GF(p) and testing its rank.  Results
never upgrade to proofs; GF(p) emptiness does not imply emptiness over Q-bar.
"""

from __future__ import annotations

DEFAULT_PRIMES = (101, 32003)


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def gf_rank(rows, p):
    """Rank of an integer matrix mod p."""
    m = [[x % p for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], p - 2, p)
        for i in range(row + 1, nrows):
            if m[i][col]:
                f = m[i][col] * inv % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[row])]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def projective_points(nvars, p):
    """Iterate normalized representatives of P^{nvars-1}(GF(p)).

    First nonzero coordinate is 1.
    """
    for lead in range(nvars):
        point = [0] * nvars
        point[lead] = 1
        tail = nvars - lead - 1
        for code in range(p**tail):
            c = code
            for j in range(tail):
                point[lead + 1 + j] = c % p
                c //= p
            yield list(point)


def projective_count(nvars, p):
    return (p**nvars - 1) // (p - 1)
