"""Points on random cubics over F_p: how big is the subgroup they generate
in Pic C / <O(1)>, and which small relations hold?

Run:  python3 demos/finite_field_cubics.py
"""
from divclass.curves import independence_experiment

for p in (7, 11, 101):
    for r in (1, 3, 6):
        e = independence_experiment(r, p, seed=1)
        print(f"p={p:>3} r={r}  |C(F_p)|={e['pic0_order']:>3}  Pic/<H> = {e['cone_group']:<12}"
              f" subgroup = {e['subgroup']:<12} index {e['index']:>3}"
              f"  relations(height<={e['height_bound']}) = {len(e['relations'])}"
              f"  oracle ok = {e['oracle_agrees']}")
