"""Pinned verification suites shared by the command line and the tests.

Each suite returns a list of :class:`Check` records; a check passes when
its numeric or exact condition holds at its fixed tolerance.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import duality, vafa
from .qalg import assemble, euler_class, is_associative, semisimplicity, structure_constants
from .rootsys import (
    E7_BLOCK_ORDER,
    charpoly,
    degree_block,
    e6_invariant,
    e6_special_point,
    h_power,
    matrix_power,
    operator_product,
    point_class_op_e7,
    quantum_chevalley,
    shift_op_e6,
    unit_vector,
)
from .schubfun import labels, parse_partition, point_label
from .spaces import HomSpace
from .spectrum import conj_permutation, spectrum_lg


@dataclass
class Check:
    suite: str
    criterion: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def _check(suite, crit, name, passed, **detail) -> Check:
    return Check(suite, crit, name, bool(passed), _jsonable(detail))


def _vec(op, coeffs: dict) -> list:
    v = [0] * op.dimension
    for lab, c in coeffs.items():
        v[op.index_of(lab)] = c
    return v


def _as_list(v) -> list:
    return [int(x) for x in v]


def _nonzero(op, v) -> dict:
    return {op.labels[i]: int(x) for i, x in enumerate(v) if x}


# --------------------------------------------------------------------------
# Shared helpers


def chevalley_agreement(space: HomSpace, tol: float = 1e-7) -> float:
    """Max deviation between H * sigma in the function model and the Chevalley operator."""
    alg = assemble(space)
    op = quantum_chevalley(space)
    m = np.array(op.at(1), dtype=float)
    h = alg.row("1")
    worst = 0.0
    for j, lab in enumerate(alg.basis):
        x, _ = alg.decompose(alg.mul(h, alg.row(lab)))
        col = m[:, op.index_of(lab)]
        want = np.array([col[op.index_of(b)] for b in alg.basis])
        worst = max(worst, float(np.max(np.abs(x - want))))
    return worst


def combinatorial_dual(space: HomSpace, label: str) -> str:
    """Poincare dual label from the combinatorics of the family."""
    t = space.tag
    if t == "A":
        d, n = space.params
        return ",".join(map(str, vafa.box_complement(parse_partition(label), d, n)))
    if t in ("OG", "LG"):
        n = space.params[0]
        parts = set(parse_partition(label))
        return ",".join(str(k) for k in range(n, 0, -1) if k not in parts)
    if t == "Q":
        n = space.params[0] // 2
        if label in ("+", "-"):
            if n % 2 == 0:
                return label
            return "-" if label == "+" else "+"
        return str(2 * n - int(label))
    raise ValueError(f"no combinatorial duality for {space}")


def pairing_deviation(space: HomSpace) -> float:
    """max |trace(s_a s_b / e) - [b = p(a)]| over all pairs."""
    alg = assemble(space)
    einv = alg.inv(alg.euler)
    worst = 0.0
    for a in alg.basis:
        va = alg.mul(alg.row(a), einv)
        pa = combinatorial_dual(space, a)
        for b in alg.basis:
            t = alg.trace(alg.mul(va, alg.row(b)))
            worst = max(worst, abs(t - (1.0 if b == pa else 0.0)))
    return worst


def point_trace_deviation(space: HomSpace) -> float:
    """max |trace(s_a / e) - [a = pt]|."""
    alg = assemble(space)
    einv = alg.inv(alg.euler)
    pt = point_label(space)
    return max(abs(alg.trace(alg.mul(alg.row(a), einv)) - (1.0 if a == pt else 0.0)) for a in alg.basis)


# --------------------------------------------------------------------------
# Suites


def suite_e6() -> list[Check]:
    s = "e6"
    space = HomSpace("E6P1")
    op = quantum_chevalley(space)
    m = op.at(1)
    out = []
    pins = {
        13: {"s13": 78, "H": 57},
        25: {"s13": 21060, "H": 15417},
        11: {"s11'": 33, "s11''": 12},
        23: {"s11'": 8901, "s11''": 3258},
    }
    powers = {k: h_power(space, k, op=op) for k in pins}
    for k, want in pins.items():
        got = _as_list(powers[k])
        out.append(_check(s, 1, f"H^{k} expansion", got == _vec(op, want), got=_nonzero(op, got), want=want))
    m1, m13, m25 = m, matrix_power(m, 13), matrix_power(m, 25)
    ident = m25 - 270 * m13 - 27 * m1
    out.append(_check(s, 1, "M^25 - 270 M^13 - 27 M = 0", all(x == 0 for x in ident.flat)))
    lhs = [234 * x for x in _vec(op, {"s11''": 1})]
    rhs = [11 * a - 2967 * b for a, b in zip(_as_list(powers[23]), _as_list(powers[11]))]
    out.append(_check(s, 1, "234 s11'' = H^11 (11 H^12 - 2967)", lhs == rhs))

    rep = duality.e6_conj_identity()
    out.append(_check(s, 2, "eigenvalues: 0 (x3) and 24 roots with 12th powers 135 +- 78 sqrt3",
                      rep["charpoly_matches"] and rep["zero_multiplicity"] == 3
                      and rep["eigenvalue_match_max_dev"] < 1e-6,
                      zero_multiplicity=rep["zero_multiplicity"], match=rep["eigenvalue_match_max_dev"]))
    out.append(_check(s, 2, "(3 +- 2 sqrt3)^3 = 135 +- 78 sqrt3 exactly", rep["cube_identity"]))
    out.append(_check(s, 2, "234 z zbar = z^12 (11 z^12 - 2967) (nominal scalar)",
                      rep["nominal_identity_max_dev"] < 1e-8,
                      max_dev=rep["nominal_identity_max_dev"],
                      ratio_minus_12_quarter=rep["nominal_ratio_minus_12_quarter"],
                      scaled_identity_max_dev=rep["scaled_identity_max_dev"],
                      note="the nominal form is off by the factor 12^(1/4); "
                           "234 12^(1/4) z zbar = z^12 (11 z^12 - 2967) holds"))
    out.append(_check(s, 2, "234 12^(1/4) z zbar = z^12 (11 z^12 - 2967)",
                      rep["passed_scaled"], max_dev=rep["scaled_identity_max_dev"],
                      branch_values=rep["branch_values"]))

    pt = e6_special_point()
    inv = {k: abs(e6_invariant(k, pt)) for k in (2, 5, 6, 8, 9, 12)}
    # at points with x2 = -x1, x4 = -x3, x6 = -x5 and p1(s) = 0, where s = (x1^2, x3^2, x5^2, y^2),
    # I_8 = 140 p2(s)^2 - 240 p4(s); p4 vanishes at this point but p2 does not
    sq = [pt[0] ** 2, pt[2] ** 2, pt[4] ** 2, pt[6] ** 2]
    p2, p4 = sum(v**2 for v in sq), sum(v**4 for v in sq)
    out.append(_check(s, 3, "I_k vanish for k in 2,5,6,8,9",
                      all(inv[k] < 1e-10 for k in (2, 5, 6, 8, 9)), values=inv,
                      p2_squares=complex(p2), p4_squares=complex(p4),
                      i8_from_power_sums=abs(140 * p2**2 - 240 * p4)))
    out.append(_check(s, 3, "|I_12| > 0.1", inv[12] > 0.1, value=inv[12]))

    sh = shift_op_e6()
    ms = sh.at(1)
    cube = matrix_power(ms, 3)
    out.append(_check(s, 4, "M_s8^3 = Id", all(cube[i, j] == (1 if i == j else 0)
                                                 for i in range(27) for j in range(27))))
    two = ms @ (ms @ unit_vector(27))
    out.append(_check(s, 4, "M_s8^2 (1) = s16", _as_list(two) == _vec(op, {"s16": 1}),
                      got=_nonzero(op, two)))
    comm = ms @ m - m @ ms
    out.append(_check(s, 4, "[M_s8, M_H] = 0", all(x == 0 for x in comm.flat)))
    return out


E7_BLOCK = [[598, 1710, 1938], [3420, 9832, 11172], [5814, 16758, 19066]]


def suite_e7() -> list[Check]:
    s = "e7"
    space = HomSpace("E7P7")
    op = quantum_chevalley(space)
    m = op.at(1)
    out = []
    pins = {
        17: {"s17": 78, "s17'": 442, "s17''": 748},
        35: {"s17": 2252088, "s17'": 12969160, "s17''": 22121896},
        53: {"s17": 66396246672, "s17'": 382360744192, "s17''": 652206892048},
    }
    for k, want in pins.items():
        got = _as_list(h_power(space, k, op=op))
        out.append(_check(s, 5, f"H^{k} expansion", got == _vec(op, want), got=_nonzero(op, got)))
    labs, block, cp = degree_block(space, 18, 8, order=E7_BLOCK_ORDER)
    out.append(_check(s, 5, "degree-8 block of M_H^18", block == E7_BLOCK, basis=labs, block=block))
    want_cp = [-64, 401808, -29496, 1]
    out.append(_check(s, 5, "block charpoly = +-(64 - 401808T + 29496T^2 - T^3)",
                      [int(c) for c in cp] == want_cp or [-int(c) for c in cp] == want_cp,
                      charpoly=[str(c) for c in cp]))
    m18 = matrix_power(m, 18)
    p_of = 64 * np.eye(56, dtype=object) - 401808 * m18 + 29496 * (m18 @ m18) - m18 @ m18 @ m18
    zero = matrix_power(m, 8) @ p_of
    out.append(_check(s, 5, "M_H^8 P(M_H^18) = 0", all(x == 0 for x in zero.flat)))

    rep = duality.e7_conj_identity()
    out.append(_check(s, 6, "(T Q(T))^18 = (3456 T)^2 mod P", rep["fact_exact"],
                      tq2_matches_reference=rep["tq2_matches_reference"],
                      tq6_matches_reference=rep["tq6_matches_reference"]))
    out.append(_check(s, 6, "P has three positive real roots", rep["P_roots_real_positive"], roots=rep["P_roots"]))
    out.append(_check(s, 6, "conj(eta) = 3456^(1/9) eta^17 Q(eta^18) (nominal scalar)",
                      rep["nominal_identity_max_dev"] < 1e-8,
                      max_dev=rep["nominal_identity_max_dev"],
                      inverse_scalar_max_dev=rep["inverse_scalar_identity_max_dev"],
                      eigenvalue_match=rep["eigenvalue_match_max_dev"],
                      note="holds with 3456^(-1/9) in place of 3456^(1/9)"))
    out.append(_check(s, 6, "conj(eta) = 3456^(-1/9) eta^17 Q(eta^18)",
                      rep["passed_inverse_scalar"], max_dev=rep["inverse_scalar_identity_max_dev"]))
    out.append(_check(s, 6, "H^17 Q(H^18) 1 = s17 exactly", rep["sigma17_exact"]))
    pc = point_class_op_e7()
    sq = operator_product(pc, pc)
    ok = all(sq.entries.get((i, i)) == {3: 1} for i in range(56)) and all(
        i == j for (i, j) in sq.entries)
    out.append(_check(s, 6, "s27^2 = q^3", ok))
    return out


def suite_typeA(spaces=((2, 4), (2, 5), (3, 6))) -> list[Check]:
    s = "typeA"
    out = []
    for d, n in spaces:
        space = HomSpace("A", (d, n))
        alg = assemble(space)
        labs = alg.basis
        mism, worst_res, count = [], 0.0, 0
        for a, b, c in itertools.combinations_with_replacement(labs, 3):
            r = vafa.gw3(space, a, b, c, alg=alg)
            _, o = vafa.gw3_oracle(d, n, parse_partition(a), parse_partition(b), parse_partition(c))
            worst_res = max(worst_res, r["residual"])
            count += 1
            if r["value"] != o:
                mism.append([a, b, c, r["value"], o])
        out.append(_check(s, 7, f"A:{d},{n} gw3 = rim-hook oracle", not mism and worst_res < 1e-6,
                          triples=count, mismatches=mism[:10], max_residual=worst_res))
        rep = duality.check_involution(space, tol=1e-9)
        bad = [e.label for e in rep.entries if not e.ok]
        out.append(_check(s, 7, f"A:{d},{n} conj = iota with zeta = 1", rep.verdict, failures=bad,
                          max_dev=max(e.deviation for e in rep.entries)))
        dev = duality.typeA_composite(space)
        out.append(_check(s, 7, f"A:{d},{n} kappa(s) = s(pt)^-1 s(p(lam))", dev < 1e-9, max_dev=dev))
    return out


def suite_og(ns=(3, 4)) -> list[Check]:
    s = "og"
    out = []
    for n in ns:
        space = HomSpace("OG", (n,))
        alg = assemble(space)
        out.append(_check(s, 8, f"OG:{n} has 2^n points", len(alg.spectrum.points) == 2**n,
                          points=len(alg.spectrum.points)))
        out.append(_check(s, 8, f"OG:{n} value matrix invertible", alg.condition < 1e12, condition=alg.condition))
        dev = pairing_deviation(space)
        out.append(_check(s, 8, f"OG:{n} trace(s_a s_b / e) = [b = p(a)]", dev < 1e-7, max_dev=dev))
        rep = duality.check_involution(space, tol=1e-8)
        out.append(_check(s, 8, f"OG:{n} conj scalars 2^z", rep.verdict,
                          failures=[e.label for e in rep.entries if not e.ok],
                          max_dev=max(e.deviation for e in rep.entries)))
        top = alg.row(str(n))
        sq_dev = float(np.max(np.abs(alg.mul(top, top) - alg.one())))
        target, z = duality.zeta_scalar(space, str(n), alg)
        out.append(_check(s, 8, f"OG:{n} s(n)^2 = 1 and s(n) fixed",
                          sq_dev < 1e-9 and target == str(n) and abs(z - 1) < 1e-8,
                          square_dev=sq_dev, conj=[target, z]))
        cdev = chevalley_agreement(space)
        out.append(_check(s, 8, f"OG:{n} H-multiplication matches Chevalley", cdev < 1e-7, max_dev=cdev))
    return out


def suite_quadric(ms=(4, 6, 8)) -> list[Check]:
    s = "quadric"
    out = []
    for m in ms:
        space = HomSpace("Q", (m,))
        n = m // 2
        alg = assemble(space)
        spec = alg.spectrum
        table_ok = True
        for p in spec.points:
            cv = p.class_values
            if p.kind == "O(zeta)":
                z = p.param
                table_ok &= abs(z ** (2 * n) - 4) < 1e-9 and abs(cv["H"] - z) < 1e-9
                table_ok &= abs(cv["Hn"] - z**n) < 1e-9 and abs(cv["P"]) < 1e-12
            else:
                sgn = 1 if p.kind == "O(+)" else -1
                table_ok &= abs(cv["H"]) < 1e-12 and abs(cv["Hn"]) < 1e-12 and abs(cv["P"] - 2 * sgn) < 1e-9
        kinds = [p.kind for p in spec.points]
        table_ok &= kinds.count("O(zeta)") == 2 * n and kinds.count("O(+)") == 1 and kinds.count("O(-)") == 1
        out.append(_check(s, 9, f"Q:{m} value table", table_ok, points=len(spec.points)))
        # H^n = sigma_+ + sigma_- and the H column agree with the function model
        h = alg.row("1")
        hn_dev = float(np.max(np.abs(alg.power(h, n) - alg.row("+") - alg.row("-"))))
        cdev = chevalley_agreement(space)
        out.append(_check(s, 9, f"Q:{m} H^n = s+ + s- and Chevalley agreement", hn_dev < 1e-9 and cdev < 1e-7,
                          hn_dev=hn_dev, chevalley_dev=cdev))
        t_plus, z_plus = duality.zeta_scalar(space, "+", alg)
        t_minus, z_minus = duality.zeta_scalar(space, "-", alg)
        want = ("-", "+") if n % 2 == 0 else ("+", "-")
        ok = (t_plus, t_minus) == want and abs(z_plus - 1) < 1e-9 and abs(z_minus - 1) < 1e-9
        out.append(_check(s, 9, f"Q:{m} conj s+- = s-+ (n even) / s+- (n odd)", ok,
                          conj_plus=[t_plus, z_plus], conj_minus=[t_minus, z_minus]))
        hbar = duality.kappa(alg, h)
        rhs = 4 ** ((1 - n) / n) * alg.power(h, 2 * n - 1)
        dev = float(np.max(np.abs(hbar - rhs)))
        out.append(_check(s, 9, f"Q:{m} conj H = 4^((1-n)/n) H^(2n-1)", dev < 1e-9, max_dev=dev))
        ss = semisimplicity(alg)
        out.append(_check(s, 9, f"Q:{m} semisimple", ss["semisimple"]))
    return out


def suite_lg(ns=(2, 3)) -> list[Check]:
    s = "lg"
    out = []
    for n in ns:
        spec = spectrum_lg(n, sign="constant")
        rank = HomSpace("LG", (n,)).rank_cohomology
        out.append(_check(s, 10, f"LG:{n} constant-sign relations have total length 2^n",
                          spec.total_length == 2**n == rank, total_length=spec.total_length,
                          tuple_description=spec.convention.get("tuple_check")))
        space = HomSpace("LG", (n,))
        alg = assemble(space)
        perm = conj_permutation(alg.spectrum)
        recs = []
        ok = True
        for k in range(1, n + 1):
            target, z = duality.zeta_scalar(space, str(k), alg, perm=perm)
            good = target == str(n + 1 - k) and abs(z.imag) < 1e-8
            ok &= good
            recs.append({"k": k, "conj": target, "scalar": z.real})
        constant = duality.lg_special_conjugation(n, sign="constant")
        out.append(_check(s, 10, f"LG:{n} conj s(k) is a multiple of s(n+1-k)", ok, quantum_ring=recs,
                          constant_sign_points=[{"k": r["k"], "residual": r["residual"], "ok": r["ok"]}
                                               for r in constant]))
        cdev = chevalley_agreement(space)
        out.append(_check(s, 10, f"LG:{n} spectrum agrees with the Chevalley operator", cdev < 1e-7, max_dev=cdev))
    return out


def suite_gw26() -> list[Check]:
    s = "gw26"
    space = HomSpace("C3P2")
    alg = assemble(space)
    pts = alg.spectrum.points
    simple = sum(1 for p in pts if p.multiplicity == 1)
    double = sum(1 for p in pts if p.multiplicity == 2)
    out = [_check(s, 11, "10 simple points and 1 double point", simple == 10 and double == 1,
                  simple=simple, double=double)]
    out.append(_check(s, 11, "12x12 value matrix invertible", alg.V.shape == (12, 12) and alg.condition < 1e12,
                      condition=alg.condition))
    st = structure_constants(alg, check_positive=False)
    x = np.zeros(12, dtype=object)
    x[:] = 0
    for lab, c in (("2|32", 1), ("1|1", -1), ("2|0", 1)):
        x[alg.basis.index(lab)] += c
    sq = np.einsum("i,j,ijk->k", x, x, st.c.astype(object))
    out.append(_check(s, 11, "(s(2|32) - s(1|1) + s(0|2))^2 = 0", all(v == 0 for v in sq),
                      square=[int(v) for v in sq]))
    ss = semisimplicity(alg)
    out.append(_check(s, 11, "not semisimple", not ss["semisimple"], radical=ss["radical"]))
    eu = euler_class(space, alg)
    out.append(_check(s, 11, "Euler element not invertible", not eu["invertible"], coefficients=eu["coefficients"]))
    ob = duality.gw26_obstruction()
    out.append(_check(s, 11, "no degree-reversing lift", ob["no_lift"], witness=ob["witness"]))
    return out


EULER_SPACES = ("A:2,4", "A:2,5", "A:3,6", "Q:4", "Q:6")
SEMISIMPLE_SPACES = ("A:2,4", "A:2,5", "A:3,6", "OG:3", "OG:4", "Q:4", "Q:6", "Q:8", "LG:2", "LG:3")


def suite_euler() -> list[Check]:
    s = "euler"
    out = []
    for tag in EULER_SPACES:
        eu = euler_class(HomSpace.parse(tag))
        dev = eu["conjecture_max_deviation"]
        out.append(_check(s, 12, f"{tag} e = |e| s(pt)", dev is not None and dev < 1e-8, max_dev=dev))
    for tag in SEMISIMPLE_SPACES:
        dev = point_trace_deviation(HomSpace.parse(tag))
        out.append(_check(s, 12, f"{tag} trace(s / e) = [s = pt]", dev < 1e-7, max_dev=dev))
    return out


PROPERTY_SPACES = ("A:2,4", "A:3,6", "OG:4", "Q:6", "Q:8", "LG:3")


def suite_properties() -> list[Check]:
    s = "properties"
    out = []
    for tag in PROPERTY_SPACES:
        space = HomSpace.parse(tag)
        rep = duality.check_involution(space)
        out.append(_check(s, 13, f"{tag} kappa o kappa = id", rep.involution_max_dev < 1e-9,
                          max_dev=rep.involution_max_dev))
        out.append(_check(s, 13, f"{tag} iota o iota = id", rep.iota_involutive))
        st = structure_constants(assemble(space))
        out.append(_check(s, 13, f"{tag} structure tensor associative", is_associative(st)))
    st = structure_constants(assemble(HomSpace("C3P2")), check_positive=False)
    out.append(_check(s, 13, "C3P2 structure tensor associative", is_associative(st)))
    space = HomSpace("A", (2, 5))
    alg = assemble(space)
    asym = []
    for t in itertools.combinations_with_replacement(alg.basis, 3):
        vals = {vafa.gw3(space, *p, alg=alg)["value"] for p in set(itertools.permutations(t))}
        if len(vals) != 1:
            asym.append(list(t))
    out.append(_check(s, 13, "gw3 symmetric under permutations (A:2,5)", not asym, failures=asym))
    a = json.dumps([r for r in vafa.gw_table(HomSpace("A", (3, 6)), threads=1)], sort_keys=True)
    b = json.dumps([r for r in vafa.gw_table(HomSpace("A", (3, 6)), threads=4)], sort_keys=True)
    out.append(_check(s, 13, "gw table identical for 1 and 4 threads", a == b, bytes=len(a)))
    return out


SUITES = {
    "typeA": suite_typeA,
    "og": suite_og,
    "lg": suite_lg,
    "quadric": suite_quadric,
    "gw26": suite_gw26,
    "e6": suite_e6,
    "e7": suite_e7,
    "euler": suite_euler,
    "properties": suite_properties,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        out = []
        for fn in SUITES.values():
            out.extend(fn())
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name]()


def summarize(checks: list[Check]) -> dict:
    by_crit: dict[int, bool] = {}
    for c in checks:
        by_crit[c.criterion] = by_crit.get(c.criterion, True) and c.passed
    return {
        "passed": all(c.passed for c in checks),
        "criteria": {str(k): v for k, v in sorted(by_crit.items())},
        "failures": [c.to_json() for c in checks if not c.passed],
        "checks": [c.to_json() for c in checks],
    }


def timed_suite(name: str) -> tuple[list[Check], float]:
    t0 = time.perf_counter()
    checks = run_suite(name)
    return checks, time.perf_counter() - t0


__all__ = ["Check", "SUITES", "run_suite", "summarize", "chevalley_agreement", "pairing_deviation",
           "point_trace_deviation", "combinatorial_dual"]
