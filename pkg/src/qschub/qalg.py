"""QH*(X) at q = 1 as an algebra of functions on the spectrum.

An element is a complex vector over "columns": one column per reduced
point, two columns (value, eps) per double point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .schubfun import labels, value_matrix
from .spaces import HomSpace, UnsupportedSpace
from .spectrum import DualNumber, Spectrum, build_spectrum, euler_values, spectrum_lg


class AlgebraError(RuntimeError):
    """Assembly or rounding failure (signals a formula or calibration bug)."""


@dataclass
class FunctionAlgebra:
    space: HomSpace
    basis: list[str]
    degrees: list[int]
    spectrum: Spectrum
    V: np.ndarray
    columns: list[tuple[int, str]]
    euler: np.ndarray | None = None
    condition: float = 0.0
    notes: dict = field(default_factory=dict)

    # -- pointwise arithmetic on column vectors -----------------------------

    def _pairs(self):
        out = []
        for c, (p, kind) in enumerate(self.columns):
            if kind == "v" and self.spectrum.points[p].multiplicity == 2:
                out.append((c, c + 1))
        return out

    def mul(self, u, v) -> np.ndarray:
        w = np.asarray(u, dtype=complex) * np.asarray(v, dtype=complex)
        for a, b in self._pairs():
            w[b] = u[a] * v[b] + u[b] * v[a]
        return w

    def inv(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=complex)
        if np.any(np.abs(self.value_part(u)) < 1e-12):
            raise ZeroDivisionError("element is not invertible")
        w = np.zeros_like(u)
        for c, (p, kind) in enumerate(self.columns):
            if kind == "v":
                w[c] = 1 / u[c]
        for a, b in self._pairs():
            w[b] = -u[b] / u[a] ** 2
        return w

    def power(self, u, k: int) -> np.ndarray:
        if k < 0:
            return self.power(self.inv(u), -k)
        w = self.one()
        for _ in range(k):
            w = self.mul(w, u)
        return w

    def one(self) -> np.ndarray:
        return np.array([1 if kind == "v" else 0 for _, kind in self.columns], dtype=complex)

    def value_part(self, u) -> np.ndarray:
        return np.array([u[c] for c, (_, k) in enumerate(self.columns) if k == "v"])

    def trace(self, u) -> complex:
        """Trace of multiplication by u; a double point contributes twice its value."""
        re_terms, im_terms = [], []
        for c, (p, kind) in enumerate(self.columns):
            if kind != "v":
                continue
            w = self.spectrum.points[p].multiplicity * complex(u[c])
            re_terms.append(w.real)
            im_terms.append(w.imag)
        return complex(math.fsum(re_terms), math.fsum(im_terms))

    # -- basis bookkeeping ---------------------------------------------------

    def row(self, label: str) -> np.ndarray:
        return self.V[self.basis.index(label)]

    def decompose(self, u) -> tuple[np.ndarray, float]:
        """Schubert coefficients x with x @ V = u, and the relative residual."""
        u = np.asarray(u, dtype=complex)
        x = np.linalg.solve(self.V.T, u)
        res = np.linalg.norm(x @ self.V - u) / max(1.0, np.linalg.norm(u))
        return x, float(res)

    @property
    def point_index(self) -> int:
        return int(np.argmax(self.degrees))


def _columns(spectrum: Spectrum) -> list[tuple[int, str]]:
    cols = []
    for i, p in enumerate(spectrum.points):
        cols.append((i, "v"))
        if p.multiplicity == 2:
            cols.append((i, "e"))
        elif p.multiplicity > 2:
            raise AlgebraError("points of multiplicity above two are not modelled")
    return cols


def _to_row(values, spectrum) -> list[complex]:
    row = []
    for v, p in zip(values, spectrum.points):
        if isinstance(v, DualNumber):
            row.append(v.value)
            if p.multiplicity == 2:
                row.append(v.eps)
        else:
            row.append(complex(v))
            if p.multiplicity == 2:
                row.append(0j)
    return row


def _lg_values(space: HomSpace, prec: int):
    """All Schubert classes of LG via left eigenvectors of the Chevalley operator.

    The points are the solutions of the relations with the sign under which
    they agree with the Chevalley spectrum; the special-class rows are then
    checked against e_k of the coordinates.
    """
    from .rootsys import quantum_chevalley

    n = space.params[0]
    spec = spectrum_lg(n, prec=prec, sign="chevalley")
    op = quantum_chevalley(space)
    m = np.array(op.at(1), dtype=float)
    evals, vecs = np.linalg.eig(m.T)
    values = []
    for p in spec.points:
        h = p.class_values["e1"]
        k = int(np.argmin(np.abs(evals - h)))
        if abs(evals[k] - h) > 1e-7 * max(1.0, abs(h)):
            raise AlgebraError(f"LG:{n}: no Chevalley eigenvalue at sigma_1 = {h}")
        w = vecs[:, k] / vecs[0, k]
        values.append(w)
    values = np.array(values).T
    for k in range(1, n + 1):
        row = values[op.labels.index(str(k))]
        want = np.array([p.class_values[f"e{k}"] for p in spec.points])
        if np.max(np.abs(row - want)) > 1e-7 * max(1.0, np.max(np.abs(want))):
            raise AlgebraError(f"LG:{n}: sigma({k}) differs from e_{k} on the spectrum")
    return spec, op.labels, op.degrees, values


@lru_cache(maxsize=64)
def assemble(space: HomSpace, convention: str = "calibrated", prec: int = 128) -> FunctionAlgebra:
    """Evaluate the whole Schubert basis on the spectrum and check invertibility."""
    if space.tag in ("E6P1", "E7P7"):
        raise UnsupportedSpace(f"{space} is handled through its Chevalley operator only")
    if space.tag == "LG":
        spec, basis, degrees, V = _lg_values(space, prec)
        V = np.asarray(V, dtype=complex)
    else:
        spec = build_spectrum(space, convention, prec)
        labs = labels(space)
        basis = [lab for lab, _ in labs]
        degrees = [d for _, d in labs]
        vals = value_matrix(space, spec, basis)
        V = np.array([_to_row(r, spec) for r in vals], dtype=complex)
    cols = _columns(spec)
    if V.shape[0] != V.shape[1]:
        raise AlgebraError(f"value matrix is {V.shape}, not square")
    cond = float(np.linalg.cond(V))
    if not np.isfinite(cond) or cond > 1e12:
        raise AlgebraError(f"value matrix of {space} is singular (condition {cond:.3e})")
    alg = FunctionAlgebra(space, basis, degrees, spec, V, cols, condition=cond)
    if space.tag in ("C3P2", "LG"):
        alg.euler = frobenius_euler(alg)
        alg.notes["euler_route"] = "frobenius"
    else:
        alg.euler = np.array(_to_row(euler_values(spec), spec), dtype=complex)
        alg.notes["euler_route"] = "roots"
    return alg


# --------------------------------------------------------------------------
# Structure constants


@dataclass
class StructureTensor:
    space: HomSpace
    basis: list[str]
    c: np.ndarray
    d: np.ndarray
    max_rounding_error: float

    def to_json(self) -> dict:
        n = len(self.basis)
        consts = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.c[i, j, k]:
                        consts.append({"i": i, "j": j, "k": k, "c": int(self.c[i, j, k]), "d": int(self.d[i, j, k])})
        return {"space": str(self.space), "basis": self.basis, "constants": consts}

    def product(self, i: int, j: int) -> dict:
        return {self.basis[k]: (int(self.c[i, j, k]), int(self.d[i, j, k]))
                for k in range(len(self.basis)) if self.c[i, j, k]}


def round_integer(x: complex, what: str = "value") -> int:
    if abs(x.imag) > 1e-6 * max(1.0, abs(x)):
        raise AlgebraError(f"{what} {x} is not real")
    r = round(x.real)
    if abs(x.real - r) >= 1e-6 * max(1.0, abs(x.real)):
        raise AlgebraError(f"{what} {x.real} is not integral")
    return int(r)


def structure_constants(alg: FunctionAlgebra, check_positive: bool = True) -> StructureTensor:
    n = len(alg.basis)
    c = np.zeros((n, n, n), dtype=np.int64)
    dd = np.zeros((n, n, n), dtype=np.int64)
    worst = 0.0
    index = alg.space.index
    for i in range(n):
        for j in range(i, n):
            x, _ = alg.decompose(alg.mul(alg.V[i], alg.V[j]))
            for k in range(n):
                v = round_integer(x[k], f"c[{alg.basis[i]},{alg.basis[j]},{alg.basis[k]}]")
                worst = max(worst, abs(x[k] - v))
                if v == 0:
                    continue
                shift = alg.degrees[i] + alg.degrees[j] - alg.degrees[k]
                if shift % index or shift < 0:
                    raise AlgebraError(f"degree relation fails for {alg.basis[i]}*{alg.basis[j]} -> {alg.basis[k]}")
                if check_positive and v < 0:
                    raise AlgebraError(f"negative structure constant {v} for {alg.basis[i]}*{alg.basis[j]}")
                c[i, j, k] = c[j, i, k] = v
                dd[i, j, k] = dd[j, i, k] = shift // index
    return StructureTensor(alg.space, alg.basis, c, dd, worst)


def is_associative(st: StructureTensor) -> bool:
    c = st.c.astype(object)
    left = np.einsum("ijm,mkl->ijkl", c, c)
    right = np.einsum("jkm,iml->ijkl", c, c)
    return bool(np.all(left == right))


# --------------------------------------------------------------------------
# Traces, Euler class, duality


def trace_op(alg: FunctionAlgebra, element) -> complex:
    """Trace of multiplication; element given as Schubert coefficients or column values."""
    element = np.asarray(element, dtype=complex)
    return alg.trace(element)


def coefficients_to_values(alg: FunctionAlgebra, coeffs) -> np.ndarray:
    return np.asarray(coeffs, dtype=complex) @ alg.V


def frobenius_euler(alg: FunctionAlgebra) -> np.ndarray:
    """e = sum_ij (B^-1)_ij sigma_i sigma_j with B_ij the point coefficient of sigma_i sigma_j."""
    st = structure_constants(alg, check_positive=False)
    pt = alg.point_index
    B = st.c[:, :, pt].astype(float)
    Binv = np.linalg.inv(B)
    n = len(alg.basis)
    e = np.zeros(alg.V.shape[1], dtype=complex)
    for i in range(n):
        for j in range(n):
            if abs(Binv[i, j]) > 1e-12:
                e = e + Binv[i, j] * alg.mul(alg.V[i], alg.V[j])
    return e


def euler_class(space: HomSpace, alg: FunctionAlgebra | None = None) -> dict:
    alg = alg or assemble(space)
    e = alg.euler
    coeffs, res = alg.decompose(e)
    values = alg.value_part(e)
    invertible = bool(np.all(np.abs(values) > 1e-9))
    pt = alg.V[alg.point_index]
    dev = None
    if invertible:
        dev = float(max(abs(abs(ev) * pv - ev) for ev, pv in zip(values, alg.value_part(pt))))
    return {
        "space": str(space),
        "route": alg.notes.get("euler_route"),
        "values": [[complex(v).real, complex(v).imag] for v in e],
        "coefficients": {lab: [c.real, c.imag] for lab, c in zip(alg.basis, coeffs) if abs(c) > 1e-9},
        "invertible": invertible,
        "conjecture_max_deviation": dev,
        "decomposition_residual": res,
    }


def semisimplicity(alg: FunctionAlgebra) -> dict:
    doubles = [i for i, p in enumerate(alg.spectrum.points) if p.multiplicity > 1]
    values = alg.value_part(alg.euler)
    zero_e = bool(np.any(np.abs(values) < 1e-9))
    if not doubles and not zero_e:
        return {"semisimple": True, "radical": []}
    radical = []
    for c, (p, kind) in enumerate(alg.columns):
        if kind == "e":
            u = np.zeros(alg.V.shape[1], dtype=complex)
            u[c] = 1
            x, _ = alg.decompose(u)
            radical.append(_integer_direction(x, alg.basis))
    return {"semisimple": False, "radical": radical}


def _integer_direction(x, basis) -> dict:
    from fractions import Fraction

    big = max(abs(v) for v in x)
    fr = [Fraction(float((v / big).real)).limit_denominator(1000) for v in x]
    den = 1
    for f in fr:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints] if g else ints
    return {lab: v for lab, v in zip(basis, ints) if v}


def pairing_matrix(alg: FunctionAlgebra) -> np.ndarray:
    """trace(sigma_i sigma_j / e) for all pairs."""
    einv = alg.inv(alg.euler)
    n = len(alg.basis)
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        vi = alg.mul(alg.V[i], einv)
        for j in range(i, n):
            out[i, j] = out[j, i] = alg.trace(alg.mul(vi, alg.V[j]))
    return out


def poincare_dual(space: HomSpace, label: str, alg: FunctionAlgebra | None = None, tol: float = 1e-7) -> str:
    alg = alg or assemble(space)
    i = alg.basis.index(label)
    einv = alg.inv(alg.euler)
    vi = alg.mul(alg.V[i], einv)
    vals = [alg.trace(alg.mul(vi, alg.V[j])) for j in range(len(alg.basis))]
    ones = [j for j, v in enumerate(vals) if abs(v - 1) < tol]
    rest_ok = all(abs(v) < tol for j, v in enumerate(vals) if j not in ones)
    if len(ones) != 1 or not rest_ok:
        raise AlgebraError(f"no unique Poincare dual for {label}")
    return alg.basis[ones[0]]


__all__ = [
    "FunctionAlgebra", "StructureTensor", "AlgebraError", "assemble", "structure_constants",
    "trace_op", "frobenius_euler", "euler_class", "semisimplicity", "poincare_dual",
    "pairing_matrix", "is_associative", "round_integer", "coefficients_to_values",
]
