# %% [markdown]
# Kähler differentials and lifting
#
# An algebra B is formally unramified when every map out of B has at most
# one lift along a square-zero extension. The computable test is whether the
# module of differentials vanishes. This script runs the test on a few small
# algebras and shows the two distinct lifts when it fails.

# %%
from beckdiff import AlgebraPresentation, GF, QQ, kahler, unramified_check
from beckdiff.oracles import derivation_dimension, hom_omega_dimension

qx2 = AlgebraPresentation.parse(QQ, ["x"], ["x^2"], "Q[x]/(x^2)")
omega = kahler(qx2)
print(omega.describe())
print("Omega is zero:", omega.is_zero, " dimension:", omega.dimension())

# %% [markdown]
# The relation 2x dx does not kill dx, so the dual numbers B + Omega carry
# two different lifts of the identity: x -> (x, 0) and x -> (x, dx).
# Both respect x^2 = 0 because (x, dx)^2 = (x^2, 2x dx) = (0, 0).

# %%
report = unramified_check(qx2)
w = report.to_json()["witness"]
print("unramified:", report.unramified)
print("s0(x) =", w["s0"][0], "  s1(x) =", w["s1"][0], "  verified:", w["verified"])

# %% [markdown]
# Over F5 the same shape of relation behaves differently. In F5[x]/(x^2 - 2)
# the element 2x is a unit, so dx = 0 and the certificate is its inverse.

# %%
f5 = AlgebraPresentation.parse(GF(5), ["x"], ["x^2-2"], "F5[x]/(x^2-2)")
r = unramified_check(f5)
(inverse,) = r.certificate.relation_coefficients(0)
print("unramified:", r.unramified, "  inverse of 2x:", inverse.to_text())
print("check:", f5.reduce(inverse * f5.poly("2*x")).to_text())

# %% [markdown]
# Derivations into B are the same as module maps out of Omega. The two sides
# are computed by separate linear systems and agree.

# %%
for B in (qx2, f5, AlgebraPresentation.parse(GF(2), ["x"], ["x^2"], "F2[x]/(x^2)")):
    print(f"{B.name:16s} Der(B,B) = {derivation_dimension(B)}   Hom(Omega,B) = {hom_omega_dimension(B)}")
