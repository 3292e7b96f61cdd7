"""Compare conj(eta) with 3456^(+1/9) and 3456^(-1/9) times eta^17 Q(eta^18) on E7/P7."""

from qschub.duality import e7_conj_identity

rep = e7_conj_identity()
print("roots of P            :", rep["P_roots"])
print("(TQ)^18 = (3456T)^2   :", rep["fact_exact"])
print("3456^(+1/9) deviation :", rep["nominal_identity_max_dev"])
print("3456^(-1/9) deviation :", rep["inverse_scalar_identity_max_dev"])
print("H^17 Q(H^18) = s17    :", rep["sigma17_exact"])
