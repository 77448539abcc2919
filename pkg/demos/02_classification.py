"""Decompose Q0-local modules into flocks of seagulls.

classify() strips free summands and reports the unique decomposition of
what remains as a direct sum of degree-shifted seagulls.  The tensor square
of the smallest seagull is the classic example: two seagulls plus one free
summand.
"""

from a1mod import classify, seagull, tensor
from a1mod.a1core import direct_sum, free_module, suspend
from a1mod.structure import localize_q0

m = direct_sum(seagull(2), suspend(seagull(1), 9))
rep = classify(m)
print("seagull(2) + shifted seagull(1):")
for e in rep.descriptor.seagulls:
    print(f"  {e.describe()}")

print()
t = tensor(seagull(1), seagull(1))
rep = classify(t)
print("seagull(1) tensor seagull(1):")
for e in rep.descriptor.seagulls:
    print(f"  {e.describe()}")
print(f"  free summands: {rep.descriptor.free_rank_map()}")
dims = {k: t.space.dim(k) for k in t.space.degrees}
print(f"  dimension check: {dims} (total {sum(dims.values())} = 4 + 4 + 8)")

print()
noisy = direct_sum(seagull(3), free_module())
rep = classify(noisy)
print("seagull(3) + A(1):")
print(f"  seagulls {[e.describe() for e in rep.descriptor.seagulls]}, "
      f"free {rep.descriptor.free_rank_map()}")

print()
from a1mod.a1core import f2
rep = localize_q0(f2())
e = rep.descriptor.seagulls[0]
print("localization of F2 (not itself Q0-local):")
print(f"  {e.describe()} at cutoff {rep.descriptor.cutoff}")
print("  an open-ended seagull: the localization is the unbounded tower")
