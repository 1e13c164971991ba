"""Decorated partition diagrams.

A diagram from n to m is a set partition of the n bottom and m top
boundary nodes; every block carries a decoration (h, mob) counting
handle dots and crosscap (Moebius) dots.  Nodes are encoded as signed
integers: bottom i is +i, top j is -j.  Blocks are stored sorted by
their minimal node, bottom nodes before top nodes.

Diagram values are immutable; all operations return new diagrams.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, PreconditionError
from .families import Family
from .msmall import MElem, WreathElem
from .params import MonoidParams, handle_reduce_monoid


def node_key(v: int) -> tuple[int, int]:
    """Sort key putting bottom nodes (by index) before top nodes (by index)."""
    return (0, v) if v > 0 else (1, -v)


Block = tuple[tuple[int, ...], int, int]  # (sorted nodes, h, mob)


@dataclass(frozen=True)
class Diagram:
    n: int
    m: int
    blocks: tuple[Block, ...]

    @staticmethod
    def make(n: int, m: int, raw_blocks) -> "Diagram":
        """Canonicalize and validate: blocks cover each boundary node once."""
        if n < 0 or m < 0:
            raise PreconditionError("boundary sizes must be nonnegative")
        blocks = []
        seen: set[int] = set()
        for nodes, h, mob in raw_blocks:
            nodes = tuple(sorted(nodes, key=node_key))
            if not nodes:
                raise PreconditionError("blocks must be nonempty")
            if h < 0 or mob < 0:
                raise PreconditionError("decorations must be nonnegative")
            for v in nodes:
                if v in seen:
                    raise PreconditionError(f"node {_node_str(v)} appears twice")
                seen.add(v)
            blocks.append((nodes, h, mob))
        expected = {i for i in range(1, n + 1)} | {-j for j in range(1, m + 1)}
        if seen != expected:
            missing = sorted(expected - seen, key=node_key)
            extra = sorted(seen - expected, key=node_key)
            detail = []
            if missing:
                detail.append("missing " + ",".join(_node_str(v) for v in missing))
            if extra:
                detail.append("unexpected " + ",".join(_node_str(v) for v in extra))
            raise PreconditionError("bad node cover: " + "; ".join(detail))
        blocks.sort(key=lambda b: node_key(b[0][0]))
        return Diagram(n, m, tuple(blocks))

    def sort_key(self):
        return (
            self.n,
            self.m,
            tuple(
                (tuple(node_key(v) for v in nodes), h, mob)
                for nodes, h, mob in self.blocks
            ),
        )


def _node_str(v: int) -> str:
    return str(v) if v > 0 else f"{-v}'"


def identity(n: int) -> Diagram:
    return Diagram.make(n, n, [((i, -i), 0, 0) for i in range(1, n + 1)])


def empty() -> Diagram:
    return Diagram.make(0, 0, [])


# ---------------------------------------------------------------------------
# literal grammar:  n;m;{1,2'}[h,mob]|{...}[h,mob]|...
# ---------------------------------------------------------------------------

_BLOCK_RE = re.compile(r"\{([^{}]*)\}\[(\d+),(\d+)\]")


def parse_diagram(text: str) -> Diagram:
    """Parse the literal grammar; inverse of render_diagram."""
    s = re.sub(r"\s+", "", text)
    parts = s.split(";", 2)
    if len(parts) != 3:
        raise ParseError("diagram literal must have the form 'n;m;blocks'")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("boundary sizes must be integers") from None
    body = parts[2]
    blocks = []
    if body:
        for piece in body.split("|"):
            match = _BLOCK_RE.fullmatch(piece)
            if not match:
                raise ParseError(f"malformed block {piece!r}")
            nodes = []
            for tok in match.group(1).split(","):
                if not tok:
                    raise ParseError(f"empty node in block {piece!r}")
                if tok.endswith("'"):
                    nodes.append(-int(tok[:-1]))
                else:
                    nodes.append(int(tok))
            blocks.append((nodes, int(match.group(2)), int(match.group(3))))
    try:
        return Diagram.make(n, m, blocks)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def render_diagram(d: Diagram) -> str:
    body = "|".join(
        "{" + ",".join(_node_str(v) for v in nodes) + f"}}[{h},{mob}]"
        for nodes, h, mob in d.blocks
    )
    return f"{d.n};{d.m};{body}"


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------


def normalize_mob(d: Diagram) -> Diagram:
    """Reduce every block's crosscap count into {0, 1, 2} via the rewrite
    mob >= 3 -> (mob - 2, h + 1), applied to exhaustion."""
    return Diagram.make(
        d.n, d.m, [(nodes,) + reduce_mob_pair(h, mob) for nodes, h, mob in d.blocks]
    )


def reduce_mob_pair(h: int, mob: int) -> tuple[int, int]:
    if mob >= 3:
        steps = (mob - 1) // 2 if mob % 2 else (mob - 2) // 2
        h += steps
        mob -= 2 * steps
    return h, mob


def normalize_handles(d: Diagram, mp: MonoidParams) -> Diagram:
    """Reduce every block's handle count below K via h -> h - r (monoid mode)."""
    return Diagram.make(
        d.n,
        d.m,
        [(nodes, handle_reduce_monoid(h, mp), mob) for nodes, h, mob in d.blocks],
    )


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Horizontal juxtaposition: d2's nodes shift past d1's boundaries."""
    def shift(v: int) -> int:
        return v + d1.n if v > 0 else v - d1.m

    blocks = list(d1.blocks) + [
        (tuple(shift(v) for v in nodes), h, mob) for nodes, h, mob in d2.blocks
    ]
    return Diagram.make(d1.n + d2.n, d1.m + d2.m, blocks)


def star(d: Diagram) -> Diagram:
    """Reflect about the horizontal: bottom i <-> top i, decorations kept."""
    return Diagram.make(
        d.m, d.n, [(tuple(-v for v in nodes), h, mob) for nodes, h, mob in d.blocks]
    )


def through_strands(d: Diagram) -> int:
    return sum(
        1
        for nodes, _, _ in d.blocks
        if any(v > 0 for v in nodes) and any(v < 0 for v in nodes)
    )


# ---------------------------------------------------------------------------
# family membership
# ---------------------------------------------------------------------------


def _circular_positions(d: Diagram, nodes: tuple[int, ...]) -> list[int]:
    # traversal order: bottom 1..n, then top m..1
    return sorted(v - 1 if v > 0 else d.n + (d.m + v) for v in nodes)


def _blocks_cross(pos_a: list[int], pos_b: list[int]) -> bool:
    # merge the position lists and count label alternations; chords of a
    # circle cross iff the merged cyclic word alternates ABAB
    merged = sorted((p, 0) for p in pos_a) + sorted((p, 1) for p in pos_b)
    merged.sort()
    runs = 1
    for i in range(1, len(merged)):
        if merged[i][1] != merged[i - 1][1]:
            runs += 1
    return runs >= 4


def is_planar(d: Diagram) -> bool:
    """Non-crossing in the circular boundary order B1..Bn, Tm..T1."""
    pos = [_circular_positions(d, nodes) for nodes, _, _ in d.blocks]
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if _blocks_cross(pos[i], pos[j]):
                return False
    return True


def is_member(d: Diagram, f: Family) -> bool:
    """Family membership; decorations are ignored."""
    core = f.nonplanar_core
    for nodes, _, _ in d.blocks:
        size = len(nodes)
        bottoms = sum(1 for v in nodes if v > 0)
        tops = size - bottoms
        if core is Family.ROOK_BRAUER and size > 2:
            return False
        if core is Family.BRAUER and size != 2:
            return False
        if core is Family.ROOK and (size > 2 or bottoms > 1 or tops > 1):
            return False
        if core is Family.SYMMETRIC and (bottoms != 1 or tops != 1):
            return False
    if f.planar and not is_planar(d):
        return False
    return True


# ---------------------------------------------------------------------------
# top / middle / bottom factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """d = top o middle o bottom with bottom a merge diagram (n -> lambda),
    top a split diagram (lambda -> m) and middle in M wr S_lambda."""

    top: Diagram
    middle: WreathElem
    bottom: Diagram
    lambda_ts: int


def factorize(d: Diagram, mp: MonoidParams) -> Factorization:
    """Unique factorization of a normalized diagram.

    Through blocks are ordered by minimal bottom node on the bottom and by
    minimal top node on the top; their decorations move to the middle.
    Non-through decorations stay on their half.
    """
    for _, h, mob in d.blocks:
        if mob > 2:
            raise PreconditionError("factorize needs mob-normalized input")
        if h >= mp.K:
            raise PreconditionError("factorize needs handle counts below K")
    through = []
    bottom_blocks = []
    top_blocks = []
    for nodes, h, mob in d.blocks:
        bots = tuple(v for v in nodes if v > 0)
        tops = tuple(v for v in nodes if v < 0)
        if bots and tops:
            through.append((bots, tops, h, mob))
        elif bots:
            bottom_blocks.append((bots, h, mob))
        else:
            top_blocks.append((tops, h, mob))
    lam = len(through)
    by_bottom = sorted(range(lam), key=lambda t: through[t][0][0])
    by_top = sorted(range(lam), key=lambda t: -max(through[t][1]))
    bottom_rank = {t: i + 1 for i, t in enumerate(by_bottom)}
    top_rank = {t: j + 1 for j, t in enumerate(by_top)}

    for t in range(lam):
        bottom_blocks.append((through[t][0] + (-bottom_rank[t],), 0, 0))
        top_blocks.append(((top_rank[t],) + through[t][1], 0, 0))
    strands = [MElem(0, 0)] * lam
    perm = [0] * lam
    for t in range(lam):
        perm[bottom_rank[t] - 1] = top_rank[t]
        strands[top_rank[t] - 1] = MElem(through[t][2], through[t][3])
    return Factorization(
        top=Diagram.make(lam, d.m, top_blocks),
        middle=WreathElem(tuple(strands), tuple(perm)),
        bottom=Diagram.make(d.n, lam, bottom_blocks),
        lambda_ts=lam,
    )


def recompose(fact: Factorization) -> Diagram:
    """Inverse of factorize on canonical factorizations."""
    lam = fact.lambda_ts
    bottom_through = {}
    dead_bottom = []
    for nodes, h, mob in fact.bottom.blocks:
        tops = [v for v in nodes if v < 0]
        if tops:
            bottom_through[-tops[0]] = tuple(v for v in nodes if v > 0)
        else:
            dead_bottom.append((nodes, h, mob))
    top_through = {}
    dead_top = []
    for nodes, h, mob in fact.top.blocks:
        bots = [v for v in nodes if v > 0]
        if bots:
            top_through[bots[0]] = tuple(v for v in nodes if v < 0)
        else:
            dead_top.append((nodes, h, mob))
    blocks = list(dead_bottom) + list(dead_top)
    for i in range(1, lam + 1):
        j = fact.middle.perm[i - 1]
        dec = fact.middle.strands[j - 1]
        blocks.append((bottom_through[i] + top_through[j], dec.i, dec.j))
    return Diagram.make(fact.bottom.n, fact.top.m, blocks)


def wreath_to_diagram(w: WreathElem) -> Diagram:
    """The (lambda, lambda)-diagram of a wreath element: bottom k joins
    top perm(k), carrying the strand decoration."""
    lam = len(w.strands)
    blocks = []
    for k in range(1, lam + 1):
        j = w.perm[k - 1]
        dec = w.strands[j - 1]
        blocks.append(((k, -j), dec.i, dec.j))
    return Diagram.make(lam, lam, blocks)
