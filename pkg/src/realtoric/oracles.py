"""Closed-form Betti numbers for the classical types, and Euler-number sequences.

Zigzag numbers ``a_r`` come from the Seidel-Entringer triangle.  Generalized
Euler (Springer) numbers ``b_r`` count type-B snakes
``0 < x_1 > x_2 < x_3 > ...`` on signed values; the triangle below tracks the
position of the last entry among the ``2r`` values ``+-x_i``.
"""

from __future__ import annotations

from math import comb

from .coxeter import coxeter_f_vector
from .rootsystem import parse_spec


def zigzag_numbers(limit: int) -> list:
    """``a_0 .. a_limit``: 1, 1, 1, 2, 5, 16, 61, ..."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    row = [1]
    out = [1]
    for n in range(1, limit + 1):
        new = [0]
        for k in range(1, n + 1):
            new.append(new[k - 1] + row[n - k])
        row = new
        out.append(row[-1])
    return out


def generalized_euler_numbers(limit: int) -> list:
    """``b_0 .. b_limit``: 1, 1, 3, 11, 57, 361, ..."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    out = [1]
    if limit == 0:
        return out
    # row[r] = snakes of length n whose last entry sits at position r (0-based)
    # among the 2n signed values; length 1 forces x_1 > 0
    row = [0, 1]
    out.append(1)
    for n in range(1, limit):
        m = 2 * n + 2
        descend = n % 2 == 1  # x_{n+1} < x_n after an odd number of entries
        new = [0] * m
        for q in range(m):
            mirror = m - 1 - q
            lo, hi = min(q, mirror), max(q, mirror)
            total = 0
            for r, c in enumerate(row):
                if not c:
                    continue
                # old position r lands after skipping the two new slots
                rp = r + (lo <= r) + (hi <= r + 1)
                if (q < rp) if descend else (q > rp):
                    total += c
            new[q] = total
        row = new
        out.append(sum(row))
    return out


def _seq(seq, i):
    return seq[i] if 0 <= i < len(seq) else 0


def _binom(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def closed_form_betti(spec, k: int) -> int:
    """``beta_k`` of the real toric variety for types A, B, C, D."""
    spec = parse_spec(spec)
    fam, n = spec.family, spec.rank
    if fam not in "ABCD":
        raise ValueError(f"no closed form for type {spec}")
    if k < 0:
        return 0
    a = zigzag_numbers(2 * k + 1)
    b = generalized_euler_numbers(2 * k + 1)
    if fam == "A":
        return _binom(n + 1, 2 * k) * _seq(a, 2 * k)
    if fam == "B":
        return _binom(n, 2 * k) * _seq(b, 2 * k) + _binom(n, 2 * k - 1) * _seq(b, 2 * k - 1)
    tail = _binom(n, 2 * k) * (2 * _seq(b, 2 * k) - 2 ** (2 * k) * _seq(a, 2 * k))
    if fam == "C":
        if 2 * k - 2 < 0:
            return tail
        return _binom(n, 2 * k - 2) * (2**n - 2 ** (2 * k - 2)) * _seq(a, 2 * k - 2) + tail
    head = 0
    if 2 * k - 4 >= 0:
        head = _binom(n, 2 * k - 4) * (2 ** (2 * k - 4) + (n - 2 * k + 2) * 2 ** (n - 1)) * _seq(a, 2 * k - 4)
    return head + tail


def closed_form_betti_vector(spec) -> list:
    """All ``beta_0 .. beta_rank`` from the closed forms (trailing zeros dropped)."""
    spec = parse_spec(spec)
    out = [closed_form_betti(spec, k) for k in range(spec.rank + 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def h_vector(f_aug) -> list:
    """h-vector from ``[f_{-1}, f_0, ..., f_{d-1}]``."""
    d = len(f_aug) - 1
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * f_aug[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


def z2_betti(spec) -> list:
    """Mod-2 Betti numbers of the real toric variety: the h-vector of ``K_R``."""
    return h_vector(coxeter_f_vector(spec))


def euler_characteristic(spec) -> int:
    """``chi`` of the real toric variety from face numbers of the fan."""
    h = z2_betti(spec)
    return sum((-1) ** k * x for k, x in enumerate(h))


def alternating_sum(values) -> int:
    return int(sum((-1) ** k * int(x) for k, x in enumerate(values)))


def euler_check(report) -> bool:
    """Alternating sum of the assembled Betti numbers against the fan's ``chi``."""
    lhs = alternating_sum(report.betti)
    rhs = euler_characteristic(report.spec)
    if lhs != rhs:
        raise AssertionError(f"Euler characteristic mismatch for {report.spec}: Betti sum {lhs}, expected {rhs}")
    return True


def assemble_betti(orbit_data) -> list:
    """``beta_0 = 1`` and ``beta_k = sum |orbit| * betti~_{k-1}(K_S)``.

    ``orbit_data`` is a sequence of ``(orbit_size, BettiVector-like)`` where
    the second item supports ``[k]`` for reduced degree ``k``.
    """
    top = 0
    for _, b in orbit_data:
        nz = b.nonzero() if hasattr(b, "nonzero") else {k: v for k, v in b.items() if v}
        if nz:
            top = max(top, max(nz) + 1)
    betti = [1] + [0] * top
    for size, b in orbit_data:
        for k in range(1, top + 1):
            betti[k] += int(size) * int(b[k - 1])
    return betti


__all__ = [
    "alternating_sum",
    "assemble_betti",
    "closed_form_betti",
    "closed_form_betti_vector",
    "euler_characteristic",
    "euler_check",
    "generalized_euler_numbers",
    "h_vector",
    "z2_betti",
    "zigzag_numbers",
]
