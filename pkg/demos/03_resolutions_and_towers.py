"""Minimal resolutions, Ext charts, and h0-tower counting.

Two independent routes to the same answer: counting stable generators in a
minimal free resolution versus classifying the Q0-localization.  Their
agreement is a strong consistency check on both implementations.
"""

from a1mod import ext_dims, f2, seagull, tensor
from a1mod.charts import towers_ascii
from a1mod.davismahowald import localized_ext
from a1mod.resolution import h0_tower_counts

print("Ext of F2 over the subalgebra generated by Sq1 (diagonal of towers):")
chart = ext_dims(f2(), algebra="a0", max_s=8, max_t=8)
for s in range(9):
    row = "".join("x" if chart.dim(s, t) else "." for t in range(9))
    print(f"  s={s} {row}")

print()
print("change of rings: Ext_{A(1)}(seagull(1)) equals Ext_{A(0)}(F2):")
a = ext_dims(seagull(1), algebra="a1", max_s=8, max_t=16)
b = ext_dims(f2(), algebra="a0", max_s=8, max_t=16)
match = {k: d for k, d in a.dims.items() if d} == \
    {k: d for k, d in b.dims.items() if d}
print(f"  grids agree: {match}")

print()
for name, m in [("F2", f2()), ("seagull(2)", seagull(2)),
                ("seagull(1) tensor seagull(1)",
                 tensor(seagull(1), seagull(1)))]:
    counts = h0_tower_counts(m, 8)
    stems = sorted(k for k, v in counts.items() if v)
    local = localized_ext(m, 8).tower_stems()
    print(f"{name}: resolution route {stems}, localization route {local}")
    print(towers_ascii({k: v for k, v in counts.items() if v}, 8))
