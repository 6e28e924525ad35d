# %% [markdown]
# Square-zero extensions as torsors
#
# A surjection of finite rings whose kernel squares to zero is acted on by
# its kernel, and the shear map (action, projection) is a bijection onto the
# kernel pair. Z/4 -> Z/2 is the smallest example without a section.

# %%
import numpy as np

from beckdiff import AlgebraPresentation, GF, ZZ, lift_check, torsor_fiber_bijection, verify_torsor
from beckdiff.corpus import beck_module_corpus, test_objects
from beckdiff.errors import KernelSquareNonzero
from beckdiff.fpalg import TableMap, integer_ring_mod

Z4, Z2, Z8 = integer_ring_mod(4), integer_ring_mod(2), integer_ring_mod(8)
T = verify_torsor(TableMap(Z4, Z2, np.arange(4) % 2), name="Z/4 -> Z/2")
print("kernel:", T.kernel.elements, " split:", T.split)
print("checks:", T.checks)
print("|M x_Y Z| =", T.fiber_product_size)

# %% [markdown]
# Z/8 -> Z/2 has kernel {0, 2, 4, 6} and 2 * 2 = 4 is not zero.

# %%
try:
    verify_torsor(TableMap(Z8, Z2, np.arange(8) % 2))
except KernelSquareNonzero as exc:
    print("rejected:", exc, " witness:", exc.witness)

# %% [markdown]
# Applying Hom(X, -) keeps the torsor structure. For each test object X the
# two fiber products over Hom(X, Y) are matched element by element.

# %%
for X in test_objects():
    r = torsor_fiber_bijection(X, T)
    print(f"{X!r:24s} {r.left_size:3d} = {r.right_size:3d}  bijective: {r.bijective}")

# %% [markdown]
# Lifting. F2[x]/(x^2) is ramified, and the Beck module F2 + F2 already
# detects it: both x -> 0 and x -> eps lie over x -> 0. The idempotent algebra
# F2[x]/(x^2 + x) has zero differentials and lifts uniquely everywhere.

# %%
modules = beck_module_corpus()
for rels in (["x^2"], ["x^2+x"]):
    B = AlgebraPresentation.parse(GF(2), ["x"], rels)
    results = [lift_check(B, E) for E in modules if E.base.characteristic == 2]
    print(f"{B!r:18s} bijective on {sum(r.bijective for r in results)} of {len(results)} Beck modules")

print("Z over Z/4 -> Z/2:", lift_check(AlgebraPresentation.parse(ZZ, [], []), T).to_json())
