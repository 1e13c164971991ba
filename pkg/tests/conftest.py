"""Shared fixtures: parameter sets, random diagram generators, and an
independent partition-composition oracle (BFS over an adjacency map, no
union-find) used to cross-check the production composition."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from moebius import Family, is_member, validate_params
from moebius.diagram import Diagram


@pytest.fixture
def ps_geometric_2():
    """Z_alpha = 2/(1-T), Z_beta = Z_gamma = 1/(1-T); K = 1."""
    return validate_params([2], [1], [1], [1, -1])


@pytest.fixture
def ps_ones():
    """All series coefficients equal to 1; K = 1."""
    return validate_params([1], [1], [1], [1, -1])


@pytest.fixture
def ps_zero():
    """Every evaluation vanishes; K = 1."""
    return validate_params([], [], [], [1, -1], allow_zero_alpha=True)


def random_paramsets(rng: random.Random, count: int, max_K: int = 3):
    """Parameter sets with 1 <= K <= max_K and small rational coefficients."""
    out = []
    while len(out) < count:
        m = rng.randint(1, max_K)
        q = [Fraction(1)] + [Fraction(rng.randint(-2, 2)) for _ in range(m)]
        if q[-1] == 0:
            continue
        n_deg = rng.randint(0, max_K - 1)
        p_alpha = [Fraction(rng.randint(-2, 2)) for _ in range(n_deg + 1)]
        if p_alpha[-1] == 0:
            p_alpha[-1] = Fraction(1)
        k = max(n_deg + 1, m)
        p_beta = [Fraction(rng.randint(-2, 2)) for _ in range(rng.randint(0, k))][:k]
        p_gamma = [Fraction(rng.randint(-2, 2)) for _ in range(rng.randint(0, k))][:k]
        out.append(validate_params(p_alpha, p_beta, p_gamma, q))
    return out


# ---------------------------------------------------------------------------
# random diagrams
# ---------------------------------------------------------------------------


def random_set_partition(rng: random.Random, items: list[int]) -> list[list[int]]:
    blocks: list[list[int]] = []
    for item in items:
        if blocks and rng.random() < 0.6:
            rng.choice(blocks).append(item)
        else:
            blocks.append([item])
    return blocks


def random_diagram(rng: random.Random, n: int, m: int, max_h: int = 2, max_mob: int = 4) -> Diagram:
    ids = list(range(1, n + 1)) + [-j for j in range(1, m + 1)]
    rng.shuffle(ids)
    blocks = [
        (tuple(b), rng.randint(0, max_h), rng.randint(0, max_mob))
        for b in random_set_partition(rng, ids)
    ]
    return Diagram.make(n, m, blocks)


def family_shapes(f: Family, n: int, m: int) -> list[Diagram]:
    """All undecorated family members from n to m."""
    ids = list(range(1, n + 1)) + [-j for j in range(1, m + 1)]
    shapes = []
    for part in _set_partitions(ids):
        d = Diagram.make(n, m, [(tuple(b), 0, 0) for b in part])
        if is_member(d, f):
            shapes.append(d)
    shapes.sort(key=Diagram.sort_key)
    return shapes


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def random_family_diagram(
    rng: random.Random, shapes: list[Diagram], max_h: int, max_mob: int
) -> Diagram:
    shape = rng.choice(shapes)
    blocks = [
        (nodes, rng.randint(0, max_h), rng.randint(0, max_mob))
        for nodes, _, _ in shape.blocks
    ]
    return Diagram.make(shape.n, shape.m, blocks)


# ---------------------------------------------------------------------------
# independent partition-composition oracle
# ---------------------------------------------------------------------------


def oracle_compose(f: Diagram, g: Diagram) -> tuple[Diagram, int]:
    """Classical partition composition of f o g via breadth-first search
    on a co-membership adjacency map.  Returns the undecorated result
    diagram and the number of removed internal components."""
    assert g.m == f.n
    adj: dict[tuple, set[tuple]] = {}

    def node_g(v):
        return ("b", v) if v > 0 else ("i", -v)

    def node_f(v):
        return ("i", v) if v > 0 else ("t", -v)

    def link(mapped):
        for u in mapped:
            adj.setdefault(u, set()).update(w for w in mapped if w != u)

    for nodes, _, _ in g.blocks:
        link([node_g(v) for v in nodes])
    for nodes, _, _ in f.blocks:
        link([node_f(v) for v in nodes])

    seen: set[tuple] = set()
    blocks = []
    closed = 0
    for start in sorted(adj):
        if start in seen:
            continue
        queue, component = [start], set()
        while queue:
            v = queue.pop()
            if v in component:
                continue
            component.add(v)
            queue.extend(adj[v] - component)
        seen |= component
        boundary = sorted(
            [v for kind, v in component if kind == "b"]
            + [-v for kind, v in component if kind == "t"]
        )
        if boundary:
            blocks.append((tuple(boundary), 0, 0))
        else:
            closed += 1
    return Diagram.make(g.n, f.m, blocks), closed
