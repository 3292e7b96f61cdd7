"""Schubert classes as functions on spectrum points."""

from __future__ import annotations

import re

import numpy as np

from .spaces import HomSpace, UnsupportedSpace
from .spectrum import DualNumber, SpectrumPoint


class EvaluationMismatch(RuntimeError):
    """Two independent evaluation routes disagree."""


# --------------------------------------------------------------------------
# Labels


def parse_partition(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "0", "()", "∅", "empty"):
        return ()
    try:
        parts = tuple(int(x) for x in text.strip("()").split(","))
    except ValueError as exc:
        raise ValueError(f"bad partition {text!r}") from exc
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"bad partition {text!r}")
    return parts


def format_partition(parts) -> str:
    return ",".join(map(str, parts))


GW26_LABELS = (
    ("0|0", 0), ("1|0", 1), ("1|1", 2), ("2|0", 2), ("1|2", 3), ("2|1", 3),
    ("1|3", 4), ("2|2", 4), ("2|3", 5), ("2|21", 5), ("2|31", 6), ("2|32", 7),
)
GW26_ALIASES = {"0|2": "2|0"}

# Hasse diagram of G_w(2,6) entered from the figure (classical covers only).
GW26_EDGES = (
    ("0|0", "1|0", 1), ("1|0", "2|0", 1), ("1|0", "1|1", 1), ("2|0", "2|1", 1),
    ("1|1", "1|2", 1), ("1|1", "2|1", 1), ("1|2", "2|2", 1), ("2|1", "1|3", 1),
    ("1|2", "1|3", 2), ("2|1", "2|2", 2), ("2|2", "2|21", 1), ("2|2", "2|3", 1),
    ("1|3", "2|3", 1), ("2|21", "2|31", 1), ("2|3", "2|31", 1), ("2|31", "2|32", 1),
)


def gw26_hasse():
    from .rootsys import QuantumHasseDiagram

    names = [lab for lab, _ in GW26_LABELS]
    edges = [(names.index(a), names.index(b), c) for a, b, c in GW26_EDGES]
    return QuantumHasseDiagram(space="C3P2", vertices=list(GW26_LABELS), classical_edges=sorted(edges))


def labels(space: HomSpace) -> list[tuple[str, int]]:
    """Graded Schubert basis; the first entry is the fundamental class."""
    if space.tag == "C3P2":
        return list(GW26_LABELS)
    from .rootsys import minuscule_coset_poset

    return list(minuscule_coset_poset(space).vertices)


def canonical_label(space: HomSpace, text: str) -> str:
    """Normalise user input to the label used in ``labels(space)``."""
    text = text.strip()
    valid = [lab for lab, _ in labels(space)]
    if space.tag == "C3P2":
        text = re.sub(r"\s+", "", text.strip("()"))
        text = GW26_ALIASES.get(text, text)
    elif space.tag in ("A", "OG", "LG"):
        text = format_partition(parse_partition(text))
    elif space.tag == "Q":
        text = {"pt": str(space.params[0])}.get(text, text)
    if text not in valid:
        raise ValueError(f"{text!r} is not a Schubert label of {space}")
    return text


def point_label(space: HomSpace) -> str:
    labs = labels(space)
    return max(labs, key=lambda x: x[1])[0]


# --------------------------------------------------------------------------
# Elementary helpers


def elementary(xs) -> list:
    """e_0, ..., e_len(xs) of the values xs."""
    e = [1]
    for x in xs:
        new = [1]
        for k in range(1, len(e)):
            new.append(e[k] + x * e[k - 1])
        new.append(x * e[-1])
        e = new
    return e


def conjugate_partition(lam) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


# --------------------------------------------------------------------------
# Type A


def _bialternant(lam, x):
    d = len(x)
    lam = list(lam) + [0] * (d - len(lam))
    num = np.array([[xi ** (lam[j] + d - 1 - j) for j in range(d)] for xi in x], dtype=complex)
    den = np.array([[xi ** (d - 1 - j) for j in range(d)] for xi in x], dtype=complex)
    return np.linalg.det(num) / np.linalg.det(den), np.linalg.cond(den)


def _jacobi_trudi_e(lam, x):
    conj = conjugate_partition(lam)
    if not conj:
        return 1 + 0j
    e = elementary(x)

    def ek(k):
        return e[k] if 0 <= k < len(e) else 0

    m = len(conj)
    mat = np.array([[ek(conj[i] - i + j) for j in range(m)] for i in range(m)], dtype=complex)
    return complex(np.linalg.det(mat))


def schur_eval(lam, point: SpectrumPoint, d: int, n: int, tol: float = 1e-9) -> complex:
    """s_lambda of the first d coordinates (bialternant, checked against Jacobi-Trudi)."""
    lam = tuple(lam)
    if len(lam) > d or (lam and lam[0] > n - d):
        raise ValueError(f"{lam} does not fit in a {d}x{n - d} box")
    x = [complex(z) for z in point.coords[:d]]
    jt = _jacobi_trudi_e(lam, x)
    try:
        bi, cond = _bialternant(lam, x)
    except np.linalg.LinAlgError:
        return jt
    if cond > 1e8:
        return jt
    if abs(bi - jt) > tol * max(1.0, abs(jt)) * 10:
        raise EvaluationMismatch(f"bialternant {bi} vs Jacobi-Trudi {jt} for {lam}")
    return jt


# --------------------------------------------------------------------------
# Orthogonal Grassmannians


def og_special(k: int, point: SpectrumPoint) -> complex:
    e = elementary(point.coords)
    if k == 0:
        return 1 + 0j
    return e[k] / 2 if k < len(e) else 0j


def og_two_row(i: int, j: int, point: SpectrumPoint, n: int, variant: str = "classical") -> complex:
    """sigma(i, j) for n >= i > j >= 0.

    The default is the P-polynomial expansion
    sigma(i)sigma(j) + 2 sum_{k=1}^{j-1} (-1)^k sigma(i+k)sigma(j-k) + (-1)^j sigma(i+j)
    with sigma(m) = 0 for m > n (automatic on the spectrum, where one
    coordinate vanishes).  ``variant="alternative"`` evaluates, for i + j > n,
    the alternative expansion whose last term sigma(n)sigma(i+j-n) carries
    coefficient 1; it disagrees with the quantum Chevalley rule from n = 4 on
    and is kept for comparison only.
    """
    if not (n >= i > j >= 0):
        raise ValueError(f"need n >= i > j >= 0, got ({i}, {j})")

    def s(k):
        return og_special(k, point) if k <= n else 0j

    if j == 0:
        return s(i)
    if variant == "alternative" and i + j > n and i < n:
        total = s(i) * s(j)
        total += 2 * sum((-1) ** k * s(i + k) * s(j - k) for k in range(1, n - i))
        total += (-1) ** (n - i) * s(n) * s(i + j - n)
        return total
    if variant not in ("classical", "alternative"):
        raise ValueError(f"unknown variant {variant!r}")
    total = s(i) * s(j)
    total += 2 * sum((-1) ** k * s(i + k) * s(j - k) for k in range(1, j))
    total += (-1) ** j * s(i + j)
    return total


def pfaffian(mat):
    """Pfaffian by expansion along the first row (sizes up to 8 are cheap)."""
    m = len(mat)
    if m == 0:
        return 1
    if m % 2:
        return 0
    total = 0
    for j in range(1, m):
        if mat[0][j] == 0:
            continue
        rest = [k for k in range(1, m) if k != j]
        minor = [[mat[a][b] for b in rest] for a in rest]
        total += (-1) ** (j - 1) * mat[0][j] * pfaffian(minor)
    return total


def og_pfaffian(lam, point: SpectrumPoint, n: int, variant: str = "classical") -> complex:
    lam = tuple(lam)
    if any(p > n for p in lam) or any(a <= b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a strict partition with parts <= {n}")
    if not lam:
        return 1 + 0j
    parts = list(lam) + ([0] if len(lam) % 2 else [])
    m = len(parts)
    mat = [[0j] * m for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            v = og_two_row(parts[a], parts[b], point, n, variant)
            mat[a][b], mat[b][a] = v, -v
    return pfaffian(mat)


# --------------------------------------------------------------------------
# Quadrics


def quadric_eval(label: str, point: SpectrumPoint, n: int):
    """Schubert classes of Q^(2n) from the generators H, H^n, P."""
    cv = point.class_values
    h, hn, p = cv["H"], cv["Hn"], cv["P"]
    if label in ("+", "-"):
        sgn = 1 if label == "+" else -1
        if n % 2 == 0:
            return 0.5 * (hn + sgn * 1j * p)
        return 0.5 * (hn + sgn * p)
    k = int(label)
    if k < 0 or k > 2 * n or k == n:
        raise ValueError(f"invalid quadric label {label!r}")
    if k < n:
        return h**k
    if k < 2 * n:
        return h**k / 2
    # H^(2n) = 2 sigma_(2n) + 2q in the quantum ring
    return h**k / 2 - 1


# --------------------------------------------------------------------------
# G_w(2,6) and Lagrangian special classes


def gw26_eval(label: str, point: SpectrumPoint) -> DualNumber:
    label = GW26_ALIASES.get(label, label)
    v = point.class_values[label]
    return v if isinstance(v, DualNumber) else DualNumber(complex(v))


def lg_special(k: int, point: SpectrumPoint, n: int) -> complex:
    if not 1 <= k <= n:
        raise ValueError(f"special class index {k} outside 1..{n}")
    return elementary(point.coords)[k]


# --------------------------------------------------------------------------


def evaluate(space: HomSpace, label: str, point: SpectrumPoint):
    """Value of a Schubert class at a point (DualNumber for G_w(2,6))."""
    t = space.tag
    if t == "A":
        d, n = space.params
        return schur_eval(parse_partition(label), point, d, n)
    if t == "OG":
        return og_pfaffian(parse_partition(label), point, space.params[0])
    if t == "Q":
        return quadric_eval(label, point, space.params[0] // 2)
    if t == "C3P2":
        return gw26_eval(label, point)
    if t == "LG":
        lam = parse_partition(label)
        if len(lam) == 1:
            return lg_special(lam[0], point, space.params[0])
        if not lam:
            return 1 + 0j
        raise UnsupportedSpace("only special classes of LG are evaluated directly")
    raise UnsupportedSpace(f"no class evaluation for {space}")


def value_matrix(space: HomSpace, spectrum, basis=None):
    """Rows = labels, entries = values (DualNumber entries for G_w(2,6))."""
    basis = basis or [lab for lab, _ in labels(space)]
    return [[evaluate(space, lab, p) for p in spectrum.points] for lab in basis]


__all__ = [
    "labels", "canonical_label", "point_label", "schur_eval", "og_two_row", "og_pfaffian",
    "quadric_eval", "gw26_eval", "lg_special", "evaluate", "value_matrix", "pfaffian",
    "parse_partition", "format_partition", "conjugate_partition", "elementary", "gw26_hasse",
    "GW26_LABELS", "GW26_EDGES", "EvaluationMismatch",
]
