"""Gromov-Witten invariants from the trace formula, with an exact type A oracle.

The oracle multiplies Schur functions by Littlewood-Richardson tableaux and
reduces n-rim hooks (Bertram, Ciocan-Fontanine, Fulton); it shares no code
with the spectrum side.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from .qalg import AlgebraError, FunctionAlgebra, assemble
from .schubfun import canonical_label, labels
from .spaces import HomSpace


# --------------------------------------------------------------------------
# Littlewood-Richardson coefficients


def _partitions_containing(lam, size: int, max_rows: int, max_first: int):
    """Partitions of ``size`` containing lam with at most max_rows rows."""
    lam = list(lam) + [0] * (max_rows - len(lam))

    def rec(i, remaining, cap):
        if i == max_rows:
            if remaining == 0:
                yield ()
            return
        lo = lam[i]
        for part in range(min(cap, remaining), lo - 1, -1):
            for rest in rec(i + 1, remaining - part, part):
                yield (part,) + rest

    for nu in rec(0, size, max_first):
        yield tuple(p for p in nu if p > 0)


def lr_tableaux_count(nu, lam, mu) -> int:
    """Number of LR tableaux of shape nu/lam and content mu."""
    nu, lam, mu = tuple(nu), tuple(lam), tuple(mu)
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    lam_p = list(lam) + [0] * (len(nu) - len(lam))
    if len(lam) > len(nu) or any(a < b for a, b in zip(nu, lam_p)):
        return 0
    # cells in reading order: rows top to bottom, each row right to left
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, lam_p[r] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)

    def rec(k):
        if k == len(cells):
            return 1
        r, c = cells[k]
        total = 0
        hi = len(mu)
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        above = filling.get((r - 1, c))
        lo = 1 if above is None else above + 1
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            filling[(r, c)] = v
            counts[v] += 1
            total += rec(k + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


def lr_classical(lam, mu, nu, d: int | None = None, n: int | None = None) -> int:
    """c^nu_{lam mu}; zero when nu leaves the d x (n-d) box (if a box is given)."""
    if d is not None and n is not None:
        if len(nu) > d or (nu and nu[0] > n - d):
            return 0
    return lr_tableaux_count(nu, lam, mu)


@lru_cache(maxsize=None)
def schur_product(lam: tuple, mu: tuple, max_rows: int) -> dict:
    """s_lam * s_mu restricted to partitions with at most max_rows rows."""
    size = sum(lam) + sum(mu)
    max_first = (lam[0] if lam else 0) + (mu[0] if mu else 0)
    out = {}
    for nu in _partitions_containing(lam, size, max_rows, max_first):
        c = lr_tableaux_count(nu, lam, mu)
        if c:
            out[nu] = c
    return out


def rim_hook_reduce(nu, d: int, n: int):
    """Reduce a partition with at most d rows into the d x (n-d) box.

    Returns (sign, q_power, box partition) or None when the class vanishes.
    """
    beads = [p + d - 1 - i for i, p in enumerate(list(nu) + [0] * (d - len(nu)))]
    sign, qpow = 1, 0
    while beads and beads[0] >= n:
        new = beads[0] - n
        if new in beads[1:]:
            return None
        rest = beads[1:]
        jumped = sum(1 for b in rest if b > new)
        beads = sorted(rest + [new], reverse=True)
        sign *= (-1) ** (d - 1) * (-1) ** jumped
        qpow += 1
    part = tuple(b - (d - 1 - i) for i, b in enumerate(beads))
    return sign, qpow, tuple(p for p in part if p > 0)


@lru_cache(maxsize=None)
def quantum_product_oracle(lam: tuple, mu: tuple, d: int, n: int) -> dict:
    """sigma_lam * sigma_mu in QH*(G(d,n)) as {(q_power, partition): coefficient}."""
    out: dict = {}
    for nu, c in schur_product(lam, mu, d).items():
        red = rim_hook_reduce(nu, d, n)
        if red is None:
            continue
        sign, qpow, part = red
        key = (qpow, part)
        out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def box_complement(lam, d: int, n: int) -> tuple:
    lam = list(lam) + [0] * (d - len(lam))
    comp = [n - d - lam[d - 1 - i] for i in range(d)]
    return tuple(p for p in comp if p > 0)


def gw3_oracle(d: int, n: int, lam, mu, nu) -> tuple[int | None, int]:
    """Exact three-point invariant of G(d,n) from the rim-hook rule."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    dim = d * (n - d)
    total = sum(lam) + sum(mu) + sum(nu) - dim
    if total % n or total < 0:
        return None, 0
    deg = total // n
    prod = quantum_product_oracle(lam, mu, d, n)
    return deg, prod.get((deg, box_complement(nu, d, n)), 0)


# --------------------------------------------------------------------------
# Trace formula


def _parse_labels(space, triple):
    return tuple(canonical_label(space, t) for t in triple)


def degree_of(space: HomSpace, labs) -> int | None:
    degs = dict(labels(space))
    total = sum(degs[lab] for lab in labs) - space.dimension
    if total % space.index or total < 0:
        return None
    return total // space.index


def gw3(space: HomSpace, lam: str, mu: str, nu: str, alg: FunctionAlgebra | None = None,
        tol: float = 1e-6) -> dict:
    """Three-point genus-zero invariant sum_z s_lam s_mu s_nu / e."""
    labs = _parse_labels(space, (lam, mu, nu))
    deg = degree_of(space, labs)
    if deg is None:
        return {"space": str(space), "labels": list(labs), "genus": 0, "degree": None, "value": 0, "residual": 0.0}
    alg = alg or assemble(space)
    if not np.all(np.abs(alg.value_part(alg.euler)) > 1e-12):
        raise AlgebraError(f"{space}: the Euler class is not invertible, the trace formula does not apply")
    prod = alg.mul(alg.mul(alg.row(labs[0]), alg.row(labs[1])), alg.row(labs[2]))
    raw = alg.trace(alg.mul(prod, alg.inv(alg.euler)))
    val = round(raw.real)
    residual = abs(raw - val)
    if residual > tol * max(1.0, abs(raw)):
        raise AlgebraError(f"trace {raw} is not an integer")
    if val < 0:
        raise AlgebraError(f"negative genus-zero invariant {val}")
    return {"space": str(space), "labels": list(labs), "genus": 0, "degree": deg, "value": int(val),
            "residual": float(residual)}


def gw_genus(space: HomSpace, g: int, lam: str, mu: str, nu: str, alg: FunctionAlgebra | None = None) -> dict:
    """Genus-g invariant trace(e^(g-1) s_lam s_mu s_nu)."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    labs = _parse_labels(space, (lam, mu, nu))
    alg = alg or assemble(space)
    prod = alg.mul(alg.mul(alg.row(labs[0]), alg.row(labs[1])), alg.row(labs[2]))
    if g == 0 and not np.all(np.abs(alg.value_part(alg.euler)) > 1e-12):
        raise AlgebraError("genus zero needs an invertible Euler class")
    raw = alg.trace(alg.mul(prod, alg.power(alg.euler, g - 1)))
    return {"space": str(space), "labels": list(labs), "genus": g, "degree": None,
            "value": [raw.real, raw.imag], "residual": 0.0}


def gw_table(space: HomSpace, triples=None, threads: int = 1) -> list[dict]:
    """Invariants for many triples; output order is the input order for any thread count."""
    alg = assemble(space)
    if triples is None:
        labs = [lab for lab, _ in labels(space)]
        triples = list(itertools.combinations_with_replacement(labs, 3))

    def one(t):
        return gw3(space, *t, alg=alg)

    if threads <= 1:
        return [one(t) for t in triples]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, triples))


__all__ = [
    "lr_classical", "lr_tableaux_count", "schur_product", "rim_hook_reduce", "quantum_product_oracle",
    "gw3_oracle", "gw3", "gw_genus", "gw_table", "box_complement", "degree_of",
]
