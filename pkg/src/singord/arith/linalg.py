"""Exact sparse linear algebra over sympy domains.

Vectors are ``{column: value}`` dicts without zero entries. Elimination is
delegated to ``DomainMatrix.rref`` (fraction-free over QQ).
"""
import heapq
import logging

from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

SparseRow = dict[int, object]


def row_reduce(rows: list[SparseRow], ncols: int, domain) -> list[SparseRow]:
    """Reduced row echelon basis of the span of ``rows``, sorted by pivot.

    Each returned row has leading coefficient 1 at its smallest column.
    """
    rows = [r for r in rows if r]
    if not rows or ncols == 0:
        return []
    matrix = DomainMatrix({i: dict(r) for i, r in enumerate(rows)}, (len(rows), ncols), domain)
    reduced, pivots = matrix.rref()
    dod = reduced.to_dod()
    out = [dod[i] for i in range(len(pivots)) if dod.get(i)]
    logger.debug("row_reduce: %d rows x %d cols -> rank %d", len(rows), ncols, len(out))
    return out


def rank(rows: list[SparseRow], ncols: int, domain) -> int:
    return len(row_reduce(rows, ncols, domain))


def nullspace(rows: list[SparseRow], ncols: int, domain) -> list[SparseRow]:
    """Basis of ``{v : r . v = 0 for all rows r}``."""
    reduced = row_reduce(rows, ncols, domain)
    pivot_of = {min(r): r for r in reduced}
    basis = []
    for j in range(ncols):
        if j in pivot_of:
            continue
        vec = {j: domain.one}
        for p, r in pivot_of.items():
            c = r.get(j)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def solve(rows: list[SparseRow], rhs: list, ncols: int, domain) -> SparseRow | None:
    """One solution of ``rows . v = rhs`` with free variables set to 0, or None."""
    augmented = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = b
        augmented.append(row)
    reduced = row_reduce(augmented, ncols + 1, domain)
    solution: SparseRow = {}
    for r in reduced:
        p = min(r)
        if p == ncols:
            return None
        value = r.get(ncols)
        if value:
            solution[p] = value
    return solution


def pivot_map(basis: list[SparseRow]) -> dict[int, SparseRow]:
    return {min(r): r for r in basis}


def reduce_vector(vector: SparseRow, pivots: dict[int, SparseRow]) -> SparseRow:
    """Subtract pivot multiples of an RREF basis, keyed by pivot, from ``vector``."""
    out = dict(vector)
    queue = [j for j in out if j in pivots]
    heapq.heapify(queue)
    while queue:
        p = heapq.heappop(queue)
        c = out.get(p)
        if not c:
            continue
        for j, v in pivots[p].items():
            if j not in out and j in pivots:
                heapq.heappush(queue, j)
            nv = out[j] - c * v if j in out else -c * v
            if nv:
                out[j] = nv
            else:
                out.pop(j, None)
    return out
