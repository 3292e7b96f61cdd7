"""Finite spectra Z(G/P) of the quantum rings at q = 1.

Points carry Cartan coordinates where a root-theoretic model exists and
family-specific class values otherwise (quadric generators, the symplectic
Grassmannian G_w(2,6)).  The non-reduced point of G_w(2,6) is modelled with
dual numbers.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field, replace

import mpmath
import numpy as np

from .spaces import HomSpace, UnsupportedSpace


class SpectrumError(RuntimeError):
    """A spectrum could not be built or fails a structural check."""


@dataclass(frozen=True)
class DualNumber:
    """a + b*eps with eps^2 = 0."""

    value: complex
    eps: complex = 0j

    def _coerce(self, other):
        if isinstance(other, DualNumber):
            return other
        return DualNumber(complex(other), 0j)

    def __add__(self, other):
        o = self._coerce(other)
        return DualNumber(self.value + o.value, self.eps + o.eps)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.value, -self.eps)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return DualNumber(self.value * o.value, self.value * o.eps + self.eps * o.value)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("dual number with zero value part is not invertible")
        return DualNumber(1 / self.value, -self.eps / self.value**2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        out = DualNumber(1)
        for _ in range(k):
            out = out * self
        return out

    def __abs__(self):
        return abs(self.value)


@dataclass
class SpectrumPoint:
    coords: tuple[complex, ...] = ()
    class_values: dict | None = None
    multiplicity: int = 1
    nilpotent_direction: tuple | None = None
    kind: str = ""
    param: complex | None = None

    def to_json(self) -> dict:
        out = {
            "coords": [[z.real, z.imag] for z in map(complex, self.coords)],
            "multiplicity": self.multiplicity,
        }
        if self.kind:
            out["kind"] = self.kind
        if self.nilpotent_direction is not None:
            out["eps_direction"] = list(self.nilpotent_direction)
        if self.class_values:
            out["class_values"] = {
                k: ([v.value.real, v.value.imag, v.eps.real, v.eps.imag] if isinstance(v, DualNumber)
                    else [complex(v).real, complex(v).imag])
                for k, v in self.class_values.items()
            }
        return out


@dataclass
class Spectrum:
    space: HomSpace
    points: list[SpectrumPoint]
    convention: dict = field(default_factory=dict)

    @property
    def total_length(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def to_json(self) -> dict:
        conv = {}
        for k, v in self.convention.items():
            conv[k] = [v.real, v.imag] if isinstance(v, complex) else v
        return {"space": str(self.space), "convention": conv, "points": [p.to_json() for p in self.points]}


def _roots_of(c: complex, n: int, prec: int) -> list[complex]:
    """The n distinct n-th roots of c, ordered by argument in [0, 2pi)."""
    with mpmath.workprec(prec):
        c = mpmath.mpc(c)
        r = mpmath.root(abs(c), n)
        base = mpmath.arg(c) / n
        out = []
        for k in range(n):
            ang = base + 2 * mpmath.pi * k / n
            out.append(complex(r * mpmath.expjpi(ang / mpmath.pi)))
    return sorted(out, key=lambda z: (round(cmath.phase(z) % (2 * math.pi), 12), abs(z)))


def _sqrt(z: complex, prec: int) -> complex:
    with mpmath.workprec(prec):
        return complex(mpmath.sqrt(mpmath.mpc(z)))


# --------------------------------------------------------------------------
# Type A


def typeA_calibration(d: int, n: int) -> complex:
    """Root of unity t with t^n = (-1)^(n-d), moving the literal fiber to the standard one."""
    return cmath.exp(1j * math.pi * (n - d) / n)


# accepted names for the uncalibrated fiber
LITERAL_NAMES = ("literal", "paper")


def spectrum_typeA(d: int, n: int, convention: str = "calibrated", prec: int = 128) -> Spectrum:
    """d-subsets of the n-th roots of (-1)^(n-1), optionally rescaled.

    With the calibrated convention the coordinates are the n-th roots of
    (-1)^(d-1), which puts the H^2 = q relation of the projective line on
    the right sign and makes the trace formula reproduce the rim-hook
    structure constants.
    """
    space = HomSpace("A", (d, n))
    roots = _roots_of((-1) ** (n - 1), n, prec)
    pts = []
    for sub in itertools.combinations(range(n), d):
        rest = [j for j in range(n) if j not in sub]
        pts.append(SpectrumPoint(coords=tuple(roots[j] for j in sub) + tuple(roots[j] for j in rest)))
    spec = Spectrum(space, pts, {"name": "literal", "t": 1 + 0j, "q": 1 + 0j})
    if convention in LITERAL_NAMES:
        return spec
    if convention != "calibrated":
        raise ValueError(f"unknown convention {convention!r}")
    t = typeA_calibration(d, n)
    out = rescale_q(spec, t)
    # t^n = (-1)^(n-d) carries the relation e_n = +-q back to itself at q = 1
    out.convention = {"name": "calibrated", "t": t, "q": 1 + 0j}
    return out


# --------------------------------------------------------------------------
# Orthogonal Grassmannians and quadrics


def spectrum_og(n: int, c: float = 4.0, prec: int = 128) -> Spectrum:
    """Points (0, +-sqrt(r_1), ..., +-sqrt(r_n)), r_i the n-th roots of (-1)^(n-1) c."""
    space = HomSpace("OG", (n,))
    sq = [_sqrt(r, prec) for r in _roots_of((-1) ** (n - 1) * c, n, prec)]
    pts = []
    for signs in itertools.product((1, -1), repeat=n):
        pts.append(SpectrumPoint(coords=(0j,) + tuple(s * r for s, r in zip(signs, sq))))
    return Spectrum(space, pts, {"name": "default", "c": c, "q": 1 + 0j})


def spectrum_quadric(m: int, c: float = 4.0, prec: int = 128) -> Spectrum:
    """Orbits O(zeta) (zeta^(2n) = c) and O(+), O(-) of the parabolic Weyl group."""
    space = HomSpace("Q", (m,))
    n = m // 2
    sq_roots = _roots_of(c, n, prec)
    pts = []
    for zeta in _roots_of(c, 2 * n, prec):
        z2 = zeta * zeta
        others = [r for r in sq_roots if abs(r - z2) > 1e-9 * abs(z2)]
        if len(others) != n - 1:
            raise SpectrumError("root bookkeeping failed")
        coords = (zeta, 0j) + tuple(_sqrt(r, prec) for r in others)
        pts.append(SpectrumPoint(
            coords=coords,
            class_values={"H": zeta, "Hn": zeta**n, "P": 0j},
            kind="O(zeta)",
            param=zeta,
        ))
    base = [_sqrt(r, prec) for r in sq_roots]
    prod = complex(np.prod(base))
    for sign in (1, -1):
        t = list(base)
        # flip one sign so that the coordinate product has the requested sign
        if abs(prod - sign * abs(prod) * _unit_for_parity(n)) > 1e-9:
            t[0] = -t[0]
        coords = (0j,) + tuple(t)
        pcoord = complex(np.prod(t))
        pts.append(SpectrumPoint(
            coords=coords,
            class_values={"H": 0j, "Hn": 0j, "P": _pclass_from_coords(pcoord, n)},
            kind="O(+)" if sign > 0 else "O(-)",
        ))
    return Spectrum(space, pts, {"name": "default", "c": c, "q": 1 + 0j})


def _unit_for_parity(n: int) -> complex:
    # the product of the square roots of the n-th roots of 4 is 2 or 2i up to sign
    return 1 if n % 2 else 1j


def _pclass_from_coords(pcoord: complex, n: int) -> complex:
    """Real generator P (+-2) from the coordinate product (+-2 or +-2i)."""
    return pcoord / _unit_for_parity(n)


# --------------------------------------------------------------------------
# Lagrangian Grassmannians


LG_SIGNS = ("constant", "chevalley")


def _lg_sign(n: int, k: int, sign: str) -> int:
    if sign == "constant":
        return (-1) ** (2 * k - n - 1)
    if sign == "chevalley":
        return (-1) ** (n - k)
    raise ValueError(f"unknown LG sign convention {sign!r}")


def lg_relations(n: int, q: complex = 1, sign: str = "constant"):
    """Residual and Jacobian of R_k = E_k - s_k q e_(2k-n-1) in e_1..e_n.

    ``sign="constant"`` uses s_k = (-1)^(2k-n-1) = (-1)^(n+1); ``sign="chevalley"`` uses
    s_k = (-1)^(n-k), the sign under which the solutions are the spectrum of
    the quantum Chevalley operator.  The two agree for n <= 2 only up to a
    rescaling of q.
    """

    def e_at(e, a):
        if a == 0:
            return 1
        if a < 0 or a > n:
            return 0
        return e[a - 1]

    def residual(e):
        out = []
        for k in range(1, n + 1):
            s = sum((-1) ** b * e_at(e, 2 * k - b) * e_at(e, b) for b in range(0, 2 * k + 1))
            ek = (-1) ** k * s
            out.append(ek - _lg_sign(n, k, sign) * q * e_at(e, 2 * k - n - 1))
        return out

    def jacobian(e):
        jac = [[0] * n for _ in range(n)]
        for k in range(1, n + 1):
            for j in range(1, n + 1):
                v = (-1) ** k * 2 * (-1) ** j * e_at(e, 2 * k - j)
                if 2 * k - n - 1 == j:
                    v -= _lg_sign(n, k, sign) * q
                jac[k - 1][j - 1] = v
        return jac

    return residual, jacobian


def _track(start, n, target_f, target_j, gamma, max_steps=20000):
    """Follow one path of H(x,t) = (1-t) gamma (x^2 - 1) + t F(x) from t=0 to t=1."""
    x = np.array(start, dtype=complex)
    t, h = 0.0, 0.02

    def hfun(x, t):
        return (1 - t) * gamma * (x * x - 1) + t * np.array(target_f(x), dtype=complex)

    def hx(x, t):
        return (1 - t) * gamma * np.diag(2 * x) + t * np.array(target_j(x), dtype=complex)

    def ht(x):
        return np.array(target_f(x), dtype=complex) - gamma * (x * x - 1)

    steps = 0
    while t < 1.0 and steps < max_steps:
        steps += 1
        h = min(h, 1.0 - t)
        # Runge-Kutta style predictor (midpoint) on dx/dt = -Hx^{-1} Ht
        try:
            k1 = -np.linalg.solve(hx(x, t), ht(x))
            xm = x + 0.5 * h * k1
            k2 = -np.linalg.solve(hx(xm, t + 0.5 * h), ht(xm))
        except np.linalg.LinAlgError:
            h *= 0.5
            continue
        xp = x + h * k2
        tn = t + h
        ok = False
        for _ in range(6):
            try:
                dx = np.linalg.solve(hx(xp, tn), hfun(xp, tn))
            except np.linalg.LinAlgError:
                break
            xp = xp - dx
            if np.linalg.norm(dx) < 1e-11 * (1 + np.linalg.norm(xp)):
                ok = True
                break
        if ok and np.linalg.norm(xp - x) < 0.2 * (1 + np.linalg.norm(x)):
            x, t = xp, tn
            h = min(h * 1.6, 0.1)
        else:
            h *= 0.5
            if h < 1e-13:
                raise SpectrumError("homotopy path failed to converge")
    if t < 1.0:
        raise SpectrumError("homotopy step budget exhausted")
    return x


def _polish(e, n, prec, q=1, sign="constant"):
    residual, jacobian = lg_relations(n, q, sign)
    with mpmath.workprec(prec):
        x = mpmath.matrix([mpmath.mpc(v) for v in e])
        for _ in range(60):
            f = mpmath.matrix(residual([x[i] for i in range(n)]))
            jm = mpmath.matrix(jacobian([x[i] for i in range(n)]))
            try:
                dx = mpmath.lu_solve(jm, f)
            except ZeroDivisionError:
                break
            x = x - dx
            if mpmath.norm(dx) < mpmath.mpf(2) ** (-prec + 8):
                break
        res = max(abs(v) for v in residual([x[i] for i in range(n)]))
        return [complex(x[i]) for i in range(n)], float(res)


def lg_tuple_description(n: int, prec: int = 128) -> list[tuple[complex, ...]]:
    """Unordered (n+1)-tuples with product 1 whose squares are the (n+1)-th roots of (-1)^n."""
    sq = [_sqrt(r, prec) for r in _roots_of((-1) ** n, n + 1, prec)]
    out = []
    for signs in itertools.product((1, -1), repeat=n + 1):
        tup = tuple(s * r for s, r in zip(signs, sq))
        if abs(complex(np.prod(tup)) - 1) < 1e-9:
            out.append(tup)
    return out


def _elementary(xs) -> list[complex]:
    e = [1 + 0j]
    for x in xs:
        e = [a + (x * b if i else 0) for i, (a, b) in enumerate(zip(e + [0j], [0j] + e))]
    return e


def spectrum_lg(n: int, prec: int = 128, cluster_tol: float = 1e-8, residual_tol: float = 1e-9,
                seed: int = 20240917, sign: str = "constant") -> Spectrum:
    """Solve the LG relations numerically by a total-degree homotopy.

    Every relation is quadratic in e_1..e_n, so the Bezout count is 2^n; the
    start system is e_k^2 = 1.  Endpoints are polished with mpmath and
    clustered; a cluster of size m becomes a point of multiplicity m.
    """
    if not 1 <= n <= 5:
        raise UnsupportedSpace(f"LG:{n} outside 1..5")
    space = HomSpace("LG", (n,))
    residual, jacobian = lg_relations(n, 1, sign)
    rng = np.random.default_rng(seed)
    gamma = complex(np.exp(2j * math.pi * rng.random()))
    ends = []
    for start in itertools.product((1.0, -1.0), repeat=n):
        x = _track(start, n, lambda v: residual(list(v)), lambda v: jacobian(list(v)), gamma)
        ends.append(x)
    polished = []
    for x in ends:
        e, res = _polish(x, n, prec, 1, sign)
        if res > residual_tol:
            raise SpectrumError(f"LG:{n} endpoint residual {res:.2e} above tolerance")
        polished.append(e)
    clusters: list[list[list[complex]]] = []
    for e in polished:
        for cl in clusters:
            ref = cl[0]
            if max(abs(a - b) for a, b in zip(e, ref)) < cluster_tol * max(1.0, max(map(abs, ref))):
                cl.append(e)
                break
        else:
            clusters.append([e])
    pts = []
    for cl in sorted(clusters, key=lambda c: tuple((round(v.real, 9), round(v.imag, 9)) for v in c[0])):
        e = cl[0]
        coords = _coords_from_elementary(e, prec)
        pts.append(SpectrumPoint(coords=coords, multiplicity=len(cl),
                                 class_values={f"e{k + 1}": e[k] for k in range(n)}))
    spec = Spectrum(space, pts, {"name": f"{sign}-relations", "q": 1 + 0j, "bezout": 2**n})
    spec.convention["tuple_check"] = _compare_tuple_description(spec, prec)
    if spec.total_length != 2**n:
        raise SpectrumError(f"LG:{n}: total length {spec.total_length} differs from 2^{n}")
    return spec


def _coords_from_elementary(e, prec) -> tuple[complex, ...]:
    # coordinates may collide (the origin is a point), so no polishing here
    n = len(e)
    coeffs = [1] + [(-1) ** (k + 1) * e[k] for k in range(n)]
    roots = np.roots(np.array(coeffs, dtype=complex)) if any(abs(c) > 0 for c in coeffs[1:]) else np.zeros(n)
    return tuple(sorted((complex(r) for r in roots), key=lambda z: (round(z.real, 9), round(z.imag, 9))))


def _compare_tuple_description(spec: Spectrum, prec: int) -> dict:
    """Diagnostic only: does some coordinate deletion from a tuple hit a solved point?"""
    n = spec.space.params[0]
    tuples = lg_tuple_description(n, prec)
    solved = [[p.class_values[f"e{k + 1}"] for k in range(n)] for p in spec.points]
    hit = set()
    for tup in tuples:
        for drop in range(n + 1):
            rest = tup[:drop] + tup[drop + 1:]
            e = _elementary(rest)[1:]
            for i, s in enumerate(solved):
                if max(abs(a - b) for a, b in zip(e, s)) < 1e-7:
                    hit.add(i)
    return {"tuples": len(tuples), "solved_points": len(solved), "matched_points": len(hit),
            "agree": len(tuples) == len(solved) == len(hit)}


# --------------------------------------------------------------------------
# G_w(2,6)


# Column order of the value table.  The third column is often written with the
# label (0|2); by degree and the Hasse diagram it is the class (2|0).
GW26_COLUMNS = ("1|0", "1|1", "2|0", "2|1", "1|2", "2|2", "1|3", "2|3", "2|21", "2|31", "2|32")


def _gw26_row(kind: str, s: complex | None) -> dict:
    if kind == "Z0":
        e = DualNumber
        vals = [e(0), e(0, 1), e(0, -1), e(0), e(0), e(0), e(0), e(-1), e(1), e(0), e(0, -1)]
    elif kind == "Z1":
        vals = [s, 0, s**2, s**3, -s**3, s**4, -s**4, 0, -1, -s, -s**2]
    else:
        vals = [s, 2 * s**2 / 3, s**2 / 3, s**3 / 3, s**3 / 3, s**4 / 9, s**4 / 9, 2, 1, s, s**2 / 3]
    out = {"0|0": DualNumber(1) if kind == "Z0" else 1 + 0j}
    for lab, v in zip(GW26_COLUMNS, vals):
        out[lab] = v if isinstance(v, DualNumber) else complex(v)
    return out


def spectrum_gw26(prec: int = 128) -> Spectrum:
    space = HomSpace("C3P2")
    pts = [SpectrumPoint(class_values=_gw26_row("Z0", None), multiplicity=2,
                         nilpotent_direction=(0, 1), kind="Z0")]
    for kind, c in (("Z1", -1), ("Z2", 27)):
        for s in _roots_of(c, 5, prec):
            pts.append(SpectrumPoint(class_values=_gw26_row(kind, s), kind=kind, param=s))
    return Spectrum(space, pts, {"name": "table", "q": 1 + 0j})


# --------------------------------------------------------------------------


def build_spectrum(space: HomSpace, convention: str = "calibrated", prec: int = 128) -> Spectrum:
    t, p = space.tag, space.params
    if t == "A":
        return spectrum_typeA(p[0], p[1], convention, prec)
    if t == "OG":
        return spectrum_og(p[0], prec=prec)
    if t == "Q":
        return spectrum_quadric(p[0], prec=prec)
    if t == "LG":
        return spectrum_lg(p[0], prec=prec)
    if t == "C3P2":
        return spectrum_gw26(prec)
    raise UnsupportedSpace(f"no explicit spectrum for {space}")


def euler_values(spectrum: Spectrum) -> list:
    """Product of the roots of G/P at each point (Cartan route).

    G_w(2,6) has no Cartan model; its Euler element comes from the Frobenius
    structure (see qalg.euler_class).
    """
    space = spectrum.space
    if space.tag == "C3P2":
        from .qalg import assemble

        return list(assemble(space).euler)
    from .rootsys import phi_complement

    roots = phi_complement(space)
    out = []
    for p in spectrum.points:
        x = p.coords
        val = 1 + 0j
        for a in roots:
            val *= sum(c * xi for c, xi in zip(a, x))
        out.append(val)
    return out


def _point_key(space: HomSpace, coords):
    """Invariants of a point under the parabolic Weyl group."""
    t = space.tag
    if t == "A":
        d = space.params[0]
        return [sorted(coords[:d], key=_ckey), sorted(coords[d:], key=_ckey)]
    if t == "Q":
        rest = coords[1:]
        return [[coords[0]], sorted((z * z for z in rest), key=_ckey), [complex(np.prod(rest))]]
    return [sorted(coords, key=_ckey)]


def _ckey(z):
    return (round(z.real, 7), round(z.imag, 7))


def _multiset_dist(a, b) -> float:
    b = list(b)
    total = 0.0
    for z in a:
        j = min(range(len(b)), key=lambda i: abs(b[i] - z))
        total += abs(b[j] - z)
        b.pop(j)
    return total


def conj_permutation(spectrum: Spectrum, tol: float = 1e-8) -> list[int]:
    """Index permutation c with coords(c(z)) = conj(coords(z)) modulo W_P."""
    if any(p.multiplicity > 1 for p in spectrum.points) or not all(p.coords for p in spectrum.points):
        raise SpectrumError("conjugation permutation needs a reduced spectrum with Cartan coordinates")
    space = spectrum.space
    keys = [_point_key(space, p.coords) for p in spectrum.points]
    perm = []
    for p in spectrum.points:
        target = _point_key(space, tuple(z.conjugate() for z in p.coords))
        best, best_d = None, math.inf
        for j, k in enumerate(keys):
            dist = sum(_multiset_dist(a, b) for a, b in zip(target, k))
            if dist < best_d:
                best, best_d = j, dist
        if best_d > tol * max(1.0, max(abs(z) for z in p.coords)) * len(p.coords):
            raise SpectrumError(f"no conjugate partner within tolerance (distance {best_d:.2e})")
        perm.append(best)
    if sorted(perm) != list(range(len(perm))) or any(perm[perm[i]] != i for i in range(len(perm))):
        raise SpectrumError("conjugation is not an involutive permutation")
    return perm


def rescale_q(spectrum: Spectrum, t: complex) -> Spectrum:
    """Multiply Cartan coordinates by t; the fiber moves from q to t^index q."""
    if t == 0:
        raise ValueError("t must be nonzero")
    if spectrum.space.tag == "C3P2":
        raise UnsupportedSpace("rescaling needs Cartan coordinates")
    idx = spectrum.space.index
    pts = []
    for p in spectrum.points:
        cv = None
        if p.class_values is not None and spectrum.space.tag == "Q":
            n = spectrum.space.params[0] // 2
            cv = {"H": p.class_values["H"] * t, "Hn": p.class_values["Hn"] * t**n,
                  "P": p.class_values["P"] * t**n}
        pts.append(replace(p, coords=tuple(t * z for z in p.coords), class_values=cv or p.class_values,
                           param=None if p.param is None else p.param * t))
    conv = dict(spectrum.convention)
    conv["t"] = complex(conv.get("t", 1)) * t
    conv["q"] = complex(conv.get("q", 1)) * t**idx
    return Spectrum(spectrum.space, pts, conv)


def lift_j(point: SpectrumPoint, q: complex, index: int) -> tuple[SpectrumPoint, complex]:
    """j(x, q) = (conj(x) / |q|^(2/index), conj(q) / |q|^2) for degree-one coordinates."""
    if q == 0:
        raise ValueError("q must be nonzero")
    if not point.coords:
        raise UnsupportedSpace("lift_j needs Cartan coordinates")
    scale = abs(q) ** (2.0 / index)
    coords = tuple(z.conjugate() / scale for z in point.coords)
    return replace(point, coords=coords), q.conjugate() / abs(q) ** 2


def typeA_fiber_residual(point: SpectrumPoint, q: complex, d: int) -> float:
    """Residual of the calibrated fiber equations over q (e_1..e_(n-1) vanish, e_n fixed)."""
    x = point.coords
    n = len(x)
    e = _elementary(x)
    res = max(abs(v) for v in e[1:n]) if n > 1 else 0.0
    # calibrated fiber: prod of coordinates = (-1)^(n-1) * (-1)^(d-1) * q
    target = (-1) ** (n - 1) * (-1) ** (d - 1) * q
    return max(res, abs(e[n] - target))


__all__ = [
    "DualNumber", "SpectrumPoint", "Spectrum", "SpectrumError",
    "spectrum_typeA", "spectrum_og", "spectrum_lg", "spectrum_quadric", "spectrum_gw26",
    "build_spectrum", "euler_values", "conj_permutation", "rescale_q", "lift_j",
    "lg_relations", "lg_tuple_description", "typeA_calibration", "GW26_COLUMNS",
]
