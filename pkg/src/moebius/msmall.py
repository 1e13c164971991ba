"""The sandwiched monoid M = <a, b | ab = ba, ab = b^3, a^K = a^(K-r)>,
its Green structure, generalized conjugacy for finite monoids given by
Cayley tables, and wreath products M wr S_lambda.

Elements of M are written a^i b^j with 0 <= i < K and 0 <= j <= 2;
|M| = 3K.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError, ResourceGuardError
from .params import MonoidParams, handle_reduce_monoid
from .repcount import partition_count

CONJUGACY_GUARD = 300
WREATH_BRUTE_LAMBDA = 2
WREATH_BRUTE_MSIZE = 6


# ---------------------------------------------------------------------------
# M itself
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class MElem:
    """a^i b^j: i handle dots, j crosscap dots on one strand."""

    i: int
    j: int

    def __str__(self):
        if self.i == 0 and self.j == 0:
            return "1"
        parts = []
        if self.i:
            parts.append("a" if self.i == 1 else f"a^{self.i}")
        if self.j:
            parts.append("b" if self.j == 1 else f"b^{self.j}")
        return "".join(parts)


M_IDENTITY = MElem(0, 0)


def m_mul(x: MElem, y: MElem, mp: MonoidParams) -> MElem:
    """Product in M: add exponents, rewrite b^3 = ab once, reduce a^K = a^(K-r)."""
    j = x.j + y.j
    carry = 0
    if j >= 3:  # sums are at most 4, so one rewrite suffices
        j -= 2
        carry = 1
    i = handle_reduce_monoid(x.i + y.i + carry, mp)
    return MElem(i, j)


def m_elements(mp: MonoidParams) -> list[MElem]:
    return [MElem(i, j) for i in range(mp.K) for j in range(3)]


# ---------------------------------------------------------------------------
# Cayley tables and Green's-style cells for arbitrary finite monoids
# ---------------------------------------------------------------------------


@dataclass
class CayleyMonoid:
    """Finite monoid as an index table; mul[i][j] = index of product ij."""

    elements: list
    mul: list[list[int]]
    identity: int | None = None

    @property
    def size(self) -> int:
        return len(self.elements)

    @classmethod
    def from_op(cls, elements, op) -> "CayleyMonoid":
        elements = list(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise PreconditionError("duplicate elements in Cayley construction")
        table = []
        for x in elements:
            row = []
            for y in elements:
                z = op(x, y)
                if z not in index:
                    raise PreconditionError("multiplication leaves the element list")
                row.append(index[z])
            table.append(row)
        ident = None
        for i in range(len(elements)):
            if all(table[i][j] == j == table[j][i] for j in range(len(elements))):
                ident = i
                break
        return cls(elements, table, ident)

    def spot_check_associative(self, samples: int = 200, seed: int = 0) -> bool:
        import random

        rng = random.Random(seed)
        n = self.size
        for _ in range(samples):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                return False
        return True


def cayley_of_m(mp: MonoidParams) -> CayleyMonoid:
    return CayleyMonoid.from_op(m_elements(mp), lambda x, y: m_mul(x, y, mp))


def symmetric_group_cayley(n: int) -> CayleyMonoid:
    perms = list(itertools.permutations(range(n)))
    return CayleyMonoid.from_op(perms, lambda p, q: tuple(p[q[i]] for i in range(n)))


def _sccs(n: int, out_edges) -> list[list[int]]:
    """Iterative Tarjan; out_edges(v) yields successors."""
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(out_edges(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(out_edges(w))))
                    advanced = True
                    break
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
    return sccs


@dataclass
class GreensCells:
    """Index partitions into L-, R-, J- and H-cells."""

    l_cells: list[list[int]]
    r_cells: list[list[int]]
    j_cells: list[list[int]]
    h_cells: list[list[int]]


def greens_cells_bruteforce(mono: CayleyMonoid) -> GreensCells:
    """Cells from the one/two-sided ideal preorders of the table.

    b lies below a on the left iff b = a or b = ca for some c; mutual
    reachability (a strongly connected component of the one-step graph)
    is the cell.
    """
    n = mono.size
    mul = mono.mul

    def left_edges(v):
        return {mul[c][v] for c in range(n)}

    def right_edges(v):
        return {mul[v][c] for c in range(n)}

    def two_sided_edges(v):
        return {mul[c][v] for c in range(n)} | {mul[v][c] for c in range(n)}

    l_cells = _sccs(n, left_edges)
    r_cells = _sccs(n, right_edges)
    j_cells = _sccs(n, two_sided_edges)
    l_of = _membership(l_cells, n)
    r_of = _membership(r_cells, n)
    h_map: dict[tuple[int, int], list[int]] = {}
    for v in range(n):
        h_map.setdefault((l_of[v], r_of[v]), []).append(v)
    h_cells = sorted(h_map.values())
    return GreensCells(sorted(l_cells), sorted(r_cells), sorted(j_cells), h_cells)


def _membership(cells: list[list[int]], n: int) -> list[int]:
    out = [0] * n
    for ci, cell in enumerate(cells):
        for v in cell:
            out[v] = ci
    return out


# ---------------------------------------------------------------------------
# the layered cell structure of M(K, r)
# ---------------------------------------------------------------------------


@dataclass
class MCellReport:
    K: int
    r: int
    degenerate: bool
    singleton_cells: list[str]
    jr_cell: list[str]
    j2r_cell: list[str]
    jr_idempotent: str
    j2r_idempotent: str
    jr_cyclic_order: int
    j2r_cyclic_order: int
    matches_prediction: bool


def m_cell_structure(mp: MonoidParams) -> MCellReport:
    """Brute-force the cells of M(K, r) and verify the layered picture:

    * a^i b^j for i < K - r are singleton J-cells,
    * J_r = {a^(K-r), ..., a^(K-1)} is a group isomorphic to Z/r,
    * J_2r = {a^i b^j : i >= K-r, j in {1,2}} is a group isomorphic to Z/2r,
    * the idempotents in those two cells are a^(K-r+rho) with
      rho = -K mod r and a^(K-r+rho') b^2 with rho' = -K-1 mod r.
    """
    K, r = mp.K, mp.r
    mono = cayley_of_m(mp)
    cells = greens_cells_bruteforce(mono)

    def product(x: MElem, y: MElem) -> MElem:
        return m_mul(x, y, mp)

    singletons_pred = sorted(
        [MElem(i, j) for i in range(K - r) for j in range(3)]
    )
    jr_pred = sorted(MElem(i, 0) for i in range(K - r, K))
    j2r_pred = sorted(MElem(i, j) for i in range(K - r, K) for j in (1, 2))

    actual = sorted(sorted(mono.elements[v] for v in cell) for cell in cells.j_cells)
    predicted = sorted([[e] for e in singletons_pred] + [jr_pred, j2r_pred])
    # the layered picture presumes K > r; for K = r the identity falls
    # into the predicted J_r row and the prediction is not applicable
    structure_ok = (not mp.degenerate) and actual == predicted

    rho = (-K) % r
    rho_p = (-K - 1) % r
    e_r = MElem(K - r + rho, 0)
    e_2r = MElem(K - r + rho_p, 2)
    idem_ok = product(e_r, e_r) == e_r and product(e_2r, e_2r) == e_2r

    # the predicted idempotents must be the only ones in their cells
    only_ok = all(
        (product(x, x) == x) == (x == e_r) for x in jr_pred
    ) and all((product(x, x) == x) == (x == e_2r) for x in j2r_pred)

    # generator of J_r is a^(K-r+rho+1) reduced into the window
    gen_r = MElem(K - r + ((rho + 1) % r), 0)
    cyc_r = _cyclic_order(jr_pred, e_r, gen_r, product)
    gen_2r = MElem(K - r + rho, 1)
    cyc_2r = _cyclic_order(j2r_pred, e_2r, gen_2r, product)

    return MCellReport(
        K=K,
        r=r,
        degenerate=mp.degenerate,
        singleton_cells=[str(e) for e in singletons_pred],
        jr_cell=[str(e) for e in jr_pred],
        j2r_cell=[str(e) for e in j2r_pred],
        jr_idempotent=str(e_r),
        j2r_idempotent=str(e_2r),
        jr_cyclic_order=cyc_r,
        j2r_cyclic_order=cyc_2r,
        matches_prediction=structure_ok and idem_ok and only_ok
        and cyc_r == r and cyc_2r == 2 * r,
    )


def _cyclic_order(cell: list[MElem], e: MElem, gen: MElem, product) -> int:
    """Order of gen in the group (cell, product, identity e); 0 if it does
    not generate the whole cell."""
    seen = [e]
    x = e
    for _ in range(len(cell) + 1):
        x = product(x, gen)
        if x == e:
            break
        seen.append(x)
    if sorted(seen) != sorted(cell):
        return 0
    return len(seen)


# ---------------------------------------------------------------------------
# omega powers and generalized conjugacy
# ---------------------------------------------------------------------------


def omega_power(x: int, mono: CayleyMonoid) -> int:
    """The unique idempotent power of x, via index/period of <x>."""
    seen: dict[int, int] = {}
    cur = x
    power = 1
    while cur not in seen:
        seen[cur] = power
        cur = mono.mul[cur][x]
        power += 1
    index = seen[cur]
    period = power - index
    m = index
    if m % period:
        m += period - (m % period)
    out = x
    for _ in range(m - 1):
        out = mono.mul[out][x]
    return out


def generalized_conjugacy_classes(mono: CayleyMonoid) -> list[list[int]]:
    """Classes of the relation: m ~ n iff there are x, x' with
    xx'x = x, x'xx' = x', x'x = m^w, xx' = n^w, x m^(w+1) x' = n^(w+1).

    Quadratic scan over witness pairs, bucketed by (x'x, xx').
    """
    n = mono.size
    if n > CONJUGACY_GUARD:
        raise ResourceGuardError(
            f"monoid of size {n} exceeds the conjugacy guard {CONJUGACY_GUARD}"
        )
    mul = mono.mul
    omega = [omega_power(v, mono) for v in range(n)]
    omega1 = [mul[omega[v]][v] for v in range(n)]

    buckets: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for x in range(n):
        for xp in range(n):
            if mul[mul[x][xp]][x] == x and mul[mul[xp][x]][xp] == xp:
                buckets.setdefault((mul[xp][x], mul[x][xp]), []).append((x, xp))

    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru

    for m in range(n):
        for nn in range(m + 1, n):
            if find(m) == find(nn):
                continue
            for x, xp in buckets.get((omega[m], omega[nn]), ()):
                if mul[mul[x][omega1[m]]][xp] == omega1[nn]:
                    union(m, nn)
                    break

    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(find(v), []).append(v)
    return sorted(classes.values())


# ---------------------------------------------------------------------------
# wreath products M wr S_lambda
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WreathElem:
    """(f; pi): strands[j] decorates the strand whose top endpoint is j+1,
    perm maps bottom position k+1 to top position perm[k] (1-based values).
    """

    strands: tuple[MElem, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.strands) + 1)):
            raise PreconditionError("perm must be a bijection on 1..lambda")


def wreath_identity(lam: int) -> WreathElem:
    return WreathElem(tuple(M_IDENTITY for _ in range(lam)), tuple(range(1, lam + 1)))


def wreath_mul(x: WreathElem, y: WreathElem, mp: MonoidParams) -> WreathElem:
    """(f; pi)(f'; pi') = (f f'_pi; pi pi') with f'_pi = f' o pi^(-1)."""
    lam = len(x.strands)
    if lam != len(y.strands):
        raise PreconditionError("wreath elements have different lengths")
    inv = [0] * lam
    for k in range(lam):
        inv[x.perm[k] - 1] = k + 1
    strands = tuple(
        m_mul(x.strands[i], y.strands[inv[i] - 1], mp) for i in range(lam)
    )
    perm = tuple(x.perm[y.perm[k] - 1] for k in range(lam))
    return WreathElem(strands, perm)


def wreath_elements(mp: MonoidParams, lam: int, planar: bool = False):
    """All of M^lam (planar) or M wr S_lam."""
    melems = m_elements(mp)
    perms = (
        [tuple(range(1, lam + 1))]
        if planar
        else [tuple(p) for p in itertools.permutations(range(1, lam + 1))]
    )
    for strands in itertools.product(melems, repeat=lam):
        for perm in perms:
            yield WreathElem(strands, perm)


def wreath_cayley(mp: MonoidParams, lam: int, planar: bool = False) -> CayleyMonoid:
    if not planar and (lam > WREATH_BRUTE_LAMBDA or 3 * mp.K > WREATH_BRUTE_MSIZE):
        raise ResourceGuardError(
            f"wreath Cayley tables are only materialized for lambda <= {WREATH_BRUTE_LAMBDA} "
            f"and |M| <= {WREATH_BRUTE_MSIZE}"
        )
    return CayleyMonoid.from_op(
        wreath_elements(mp, lam, planar), lambda x, y: wreath_mul(x, y, mp)
    )


def _cycles(perm: tuple[int, ...]) -> list[list[int]]:
    lam = len(perm)
    seen = [False] * lam
    cycles = []
    for start in range(1, lam + 1):
        if seen[start - 1]:
            continue
        cyc = []
        v = start
        while not seen[v - 1]:
            seen[v - 1] = True
            cyc.append(v)
            v = perm[v - 1]
        cycles.append(cyc)
    return cycles


def wreath_type(w: WreathElem, classes: list[list[MElem]], mp: MonoidParams) -> tuple[tuple[int, ...], ...]:
    """Type matrix a_{ik}: cycle products classified by generalized
    conjugacy class (rows) and cycle length (columns)."""
    lam = len(w.strands)
    class_of = {}
    for ci, cls in enumerate(classes):
        for e in cls:
            class_of[e] = ci
    inv = [0] * lam
    for k in range(lam):
        inv[w.perm[k] - 1] = k + 1

    def f(top: int) -> MElem:
        return w.strands[top - 1]

    matrix = [[0] * lam for _ in classes]
    for cyc in _cycles(w.perm):
        j = cyc[0]
        prod = f(j)
        v = j
        for _ in range(len(cyc) - 1):
            v = inv[v - 1]
            prod = m_mul(prod, f(v), mp)
        matrix[class_of[prod]][len(cyc) - 1] += 1
    return tuple(tuple(row) for row in matrix)


def m_conjugacy_classes(mp: MonoidParams) -> list[list[MElem]]:
    mono = cayley_of_m(mp)
    return [
        [mono.elements[v] for v in cls]
        for cls in generalized_conjugacy_classes(mono)
    ]


def count_types(lambda_ts: int, class_count: int) -> int:
    """Number of type matrices: sum over class_count-tuples with total
    lambda_ts of products of partition numbers."""
    if lambda_ts < 0 or class_count < 0:
        raise PreconditionError("arguments must be nonnegative")
    acc = [1] + [0] * lambda_ts
    base = [partition_count(j) for j in range(lambda_ts + 1)]
    for _ in range(class_count):
        nxt = [0] * (lambda_ts + 1)
        for i, av in enumerate(acc):
            if av:
                for j in range(lambda_ts + 1 - i):
                    nxt[i + j] += av * base[j]
        acc = nxt
    return acc[lambda_ts]
