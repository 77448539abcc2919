"""Build seagull modules and inspect their Margolis homology.

A length-n seagull stacks n linked wings, with generators in degrees
0, 4, ..., 4(n-1); its Q0-homology is one class at the bottom and one just
above the top, and its Q1-homology vanishes — the calling card of a
Q0-local module.
"""

from a1mod import free_module, margolis_homology, seagull, seagull_inf

for n in (1, 2, 3):
    m = seagull(n)
    dims = {k: m.space.dim(k) for k in m.space.degrees}
    print(f"seagull({n}): dims {dims}")
    for op in ("Q0", "Q1"):
        res = margolis_homology(m, op)
        print(f"  H(-;{op}) supported in degrees {res.nonzero_degrees()}")

print()
print("free module A(1):")
a1 = free_module()
for op in ("Q0", "Q1"):
    print(f"  H(-;{op}) = {margolis_homology(a1, op).nonzero_degrees()}"
          "  (free modules are acyclic)")

print()
trunc = seagull_inf(20)
res = margolis_homology(trunc, "Q0")
print("truncated unbounded seagull, cutoff 20:")
print(f"  Q0-homology degrees {res.nonzero_degrees()}, "
      f"reliable window {res.reliable}")
print("  (junk above the window comes from the truncation, not the module)")
