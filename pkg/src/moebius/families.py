"""The ten diagram families and their admissibility rules.

A family is a constraint on the underlying set partition of a diagram:
block sizes, per-side node limits, and planarity.  Decorations never
affect membership.
"""
from __future__ import annotations

import enum

from .errors import PreconditionError


class Family(enum.Enum):
    PARTITION = "partition"
    PLANAR_PARTITION = "planar-partition"
    ROOK_BRAUER = "rook-brauer"
    MOTZKIN = "motzkin"
    BRAUER = "brauer"
    TEMPERLEY_LIEB = "temperley-lieb"
    ROOK = "rook"
    PLANAR_ROOK = "planar-rook"
    SYMMETRIC = "symmetric"
    PLANAR_SYMMETRIC = "planar-symmetric"

    @property
    def planar(self) -> bool:
        return self in _PLANAR

    @property
    def nonplanar_core(self) -> "Family":
        """The family with the planarity constraint dropped."""
        return _CORE[self]


_PLANAR = {
    Family.PLANAR_PARTITION,
    Family.MOTZKIN,
    Family.TEMPERLEY_LIEB,
    Family.PLANAR_ROOK,
    Family.PLANAR_SYMMETRIC,
}

_CORE = {
    Family.PARTITION: Family.PARTITION,
    Family.PLANAR_PARTITION: Family.PARTITION,
    Family.ROOK_BRAUER: Family.ROOK_BRAUER,
    Family.MOTZKIN: Family.ROOK_BRAUER,
    Family.BRAUER: Family.BRAUER,
    Family.TEMPERLEY_LIEB: Family.BRAUER,
    Family.ROOK: Family.ROOK,
    Family.PLANAR_ROOK: Family.ROOK,
    Family.SYMMETRIC: Family.SYMMETRIC,
    Family.PLANAR_SYMMETRIC: Family.SYMMETRIC,
}

# accepted spellings on the CLI
ALIASES = {
    "partition": Family.PARTITION,
    "planar-partition": Family.PLANAR_PARTITION,
    "pp": Family.PLANAR_PARTITION,
    "rook-brauer": Family.ROOK_BRAUER,
    "robr": Family.ROOK_BRAUER,
    "motzkin": Family.MOTZKIN,
    "brauer": Family.BRAUER,
    "temperley-lieb": Family.TEMPERLEY_LIEB,
    "tl": Family.TEMPERLEY_LIEB,
    "rook": Family.ROOK,
    "planar-rook": Family.PLANAR_ROOK,
    "symmetric": Family.SYMMETRIC,
    "planar-symmetric": Family.PLANAR_SYMMETRIC,
}


def family_from_name(name: str) -> Family:
    try:
        return ALIASES[name.strip().lower()]
    except KeyError:
        raise PreconditionError(f"unknown family {name!r}") from None


def admissible_lambdas(f: Family, n: int) -> list[int]:
    """Through-strand counts that occur for (n, n)-diagrams of the family.

    Brauer-type families preserve the parity of n; the symmetric families
    only have bijective diagrams.
    """
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    if f in (Family.SYMMETRIC, Family.PLANAR_SYMMETRIC):
        return [n]
    if f in (Family.BRAUER, Family.TEMPERLEY_LIEB):
        return [lam for lam in range(n, -1, -1) if (n - lam) % 2 == 0]
    return list(range(n, -1, -1))


def check_lambda(f: Family, n: int, lam: int) -> None:
    if lam not in admissible_lambdas(f, n):
        raise PreconditionError(
            f"lambda={lam} is not admissible for {f.value} at n={n}"
        )
