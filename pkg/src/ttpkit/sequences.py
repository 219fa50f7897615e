"""The coupled polynomial recurrences (e_n, f_n, g_n, h_n) at a point.

Starting from e_0 = f_0 = 1,
    e_n = u e_{n-1} + f_{n-1},    f_n = -t e_{n-1} + f_{n-1},
    g_n = (1-u) e_n - f_n,        h_n = -t e_n,
evaluated exactly at (t, u) = (a, b).  The nonvanishing of every f_n is
the decision kernel for the two-generator twisted tensor product test;
over a finite field the linear state recursion is eventually periodic, so
a scan that closes a cycle certifies the verdict for all n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import Scalar


@dataclass(frozen=True)
class SequenceQuad:
    n: int
    e: Scalar
    f: Scalar
    g: Scalar
    h: Scalar


def efgh(a, b, n):
    """Exact (e_n, f_n, g_n, h_n) at (a, b); n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    field = a.field
    e, f = field.one(), field.one()
    for _ in range(n):
        e, f = b * e + f, -a * e + f
    return SequenceQuad(n, e, f, (field.one() - b) * e - f, -a * e)


def efgh_table(a, b, n):
    """SequenceQuad rows for indices 0..n (single pass)."""
    field = a.field
    rows = []
    e, f = field.one(), field.one()
    one = field.one()
    for k in range(n + 1):
        rows.append(SequenceQuad(k, e, f, (one - b) * e - f, -a * e))
        e, f = b * e + f, -a * e + f
    return rows


@dataclass(frozen=True)
class NonvanishingReport:
    bound: int
    verdict: str  # "all_nonzero" or "zero_at"
    zero_index: int | None = None
    cycle_closed: bool = False  # the scan became unconditional: the (e, f)
    # orbit repeated (finite field) or the recursion degenerated (a = 0),
    # so the verdict holds for every n, not just n <= bound

    @property
    def all_nonzero(self):
        return self.verdict == "all_nonzero"

    def __repr__(self):
        if self.verdict == "zero_at":
            return f"ZeroAt({self.zero_index})"
        tag = "certified for all n" if self.cycle_closed else f"up to N={self.bound}"
        return f"AllNonzero({tag})"


def fn_nonvanishing(a, b, bound):
    """Scan f_n(a, b) for n = 1..bound; report the first zero if any.

    The state (e_n, f_n) evolves by a fixed linear map, so over a finite
    field a repeated state closes a cycle and upgrades the verdict to a
    certificate for all n.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    field = a.field
    if a.is_zero():
        # f_n = f_{n-1} when the first argument vanishes, so f_n = 1 for all n
        return NonvanishingReport(bound, "all_nonzero", cycle_closed=True)
    finite = field.characteristic() != 0
    seen = {(str(field.one()), str(field.one()))} if finite else None
    e, f = field.one(), field.one()
    for n in range(1, bound + 1):
        e, f = b * e + f, -a * e + f
        if f.is_zero():
            return NonvanishingReport(bound, "zero_at", n)
        if finite:
            state = (str(e), str(f))
            if state in seen:
                return NonvanishingReport(bound, "all_nonzero", cycle_closed=True)
            seen.add(state)
    return NonvanishingReport(bound, "all_nonzero")
