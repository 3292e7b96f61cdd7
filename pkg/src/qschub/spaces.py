"""Descriptors for the homogeneous spaces handled by the package.

Text grammar::

    A:d,n | OG:n | LG:n | Q:m | E6P1 | E7P7 | C3P2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb


class SpaceParseError(ValueError):
    """Malformed space descriptor."""


class UnsupportedSpace(ValueError):
    """Well-formed descriptor outside the supported parameter range."""


_PATTERN = re.compile(
    r"^\s*(?:(A):(\d+),(\d+)|(OG):(\d+)|(LG):(\d+)|(Q):(\d+)|(E6P1)|(E7P7)|(C3P2))\s*$"
)


@dataclass(frozen=True)
class HomSpace:
    """A homogeneous space G/P identified by a family tag and parameters.

    ``OG:n`` is the spinor variety G_Q(n+1, 2n+2) (type D_{n+1}),
    ``LG:n`` the Lagrangian Grassmannian G_w(n, 2n) (type C_n),
    ``Q:m`` the even-dimensional quadric (m = 2n, type D_{n+1}),
    ``C3P2`` the symplectic Grassmannian G_w(2, 6).
    """

    tag: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        t, p = self.tag, self.params
        if t == "A":
            if len(p) != 2 or not 0 < p[0] < p[1]:
                raise UnsupportedSpace(f"A:d,n needs 0 < d < n, got {p}")
        elif t == "OG":
            if len(p) != 1 or p[0] < 2:
                raise UnsupportedSpace(f"OG:n needs n >= 2, got {p}")
        elif t == "LG":
            if len(p) != 1 or not 1 <= p[0] <= 5:
                raise UnsupportedSpace(f"LG:n needs 1 <= n <= 5, got {p}")
        elif t == "Q":
            if len(p) != 1 or p[0] < 4 or p[0] % 2:
                raise UnsupportedSpace(f"Q:m needs m even and m >= 4, got {p}")
        elif t in ("E6P1", "E7P7", "C3P2"):
            if p:
                raise UnsupportedSpace(f"{t} takes no parameters")
        else:
            raise UnsupportedSpace(f"unknown family {t!r}")

    @classmethod
    def parse(cls, text: str) -> "HomSpace":
        m = _PATTERN.match(text)
        if not m:
            raise SpaceParseError(f"cannot parse space descriptor {text!r}")
        g = m.groups()
        if g[0]:
            return cls("A", (int(g[1]), int(g[2])))
        for tag_i, val_i in ((3, 4), (5, 6), (7, 8)):
            if g[tag_i]:
                return cls(g[tag_i], (int(g[val_i]),))
        return cls(next(x for x in g[9:] if x))

    def __str__(self) -> str:
        if self.tag == "A":
            return f"A:{self.params[0]},{self.params[1]}"
        if self.params:
            return f"{self.tag}:{self.params[0]}"
        return self.tag

    @property
    def dimension(self) -> int:
        t, p = self.tag, self.params
        if t == "A":
            d, n = p
            return d * (n - d)
        if t == "OG":
            return p[0] * (p[0] + 1) // 2
        if t == "LG":
            return p[0] * (p[0] + 1) // 2
        if t == "Q":
            return p[0]
        return {"E6P1": 16, "E7P7": 27, "C3P2": 7}[t]

    @property
    def index(self) -> int:
        t, p = self.tag, self.params
        if t == "A":
            return p[1]
        if t == "OG":
            return 2 * p[0]
        if t == "LG":
            return p[0] + 1
        if t == "Q":
            return p[0]
        return {"E6P1": 12, "E7P7": 18, "C3P2": 5}[t]

    @property
    def rank_cohomology(self) -> int:
        t, p = self.tag, self.params
        if t == "A":
            return comb(p[1], p[0])
        if t in ("OG", "LG"):
            return 2 ** p[0]
        if t == "Q":
            return p[0] + 2
        return {"E6P1": 27, "E7P7": 56, "C3P2": 12}[t]

    @property
    def root_data(self) -> tuple[str, int, int] | None:
        """(family, rank, marked node) with Bourbaki numbering, 1-based node."""
        t, p = self.tag, self.params
        if t == "A":
            return ("A", p[1] - 1, p[0])
        if t == "OG":
            return ("D", p[0] + 1, p[0] + 1)
        if t == "LG":
            return ("C", p[0], p[0])
        if t == "Q":
            return ("D", p[0] // 2 + 1, 1)
        if t == "E6P1":
            return ("E6", 6, 1)
        if t == "E7P7":
            return ("E7", 7, 7)
        return None

    @property
    def marked_node(self) -> int | None:
        rd = self.root_data
        return rd[2] if rd else None

    @property
    def is_minuscule(self) -> bool:
        return self.tag in ("A", "OG", "Q", "E6P1", "E7P7")

    @property
    def is_cominuscule(self) -> bool:
        return self.tag != "C3P2"
