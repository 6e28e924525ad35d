# %% [markdown]
# The same question for groups
#
# For finite groups the square-zero extensions are extensions with abelian
# kernel. A group H passes the lifting test when Hom(H, E) -> Hom(H, G) is
# injective for every such E -> G. Only the trivial group passes, which
# matches the rank |G| - 1 of the augmentation ideal.

# %%
from beckdiff import group_kahler_rank, group_lift_check
from beckdiff.corpus import group_torsor_corpus
from beckdiff.grpbeck import enumerate_group_homs, load_fixture_groups

groups = load_fixture_groups()
torsors = group_torsor_corpus()
print(len(groups), "groups,", len(torsors), "torsors")

# %%
Z2 = groups["Z2"]
print("Hom(Z2, Z4):", list(enumerate_group_homs(Z2, groups["Z4"])))
print("Hom(Z2, S3):", len(enumerate_group_homs(Z2, groups["S3"])), "homs")

# %%
by_name = {T.name: T for T in torsors}
for name in ("Z4 -> Z2", "S3 -> Z2"):
    r = group_lift_check(Z2, by_name[name])
    print(f"Z2 against {name}: injective {r.injective}, colliding pair {r.colliding_pair}")

# %%
for name, H in groups.items():
    ok = all(group_lift_check(H, T).injective for T in torsors)
    print(f"{name:10s} order {H.size}  rank {group_kahler_rank(H)}  lifts uniquely: {ok}")
