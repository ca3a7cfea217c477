"""When do h^1 and h^2 of O_X(k) vanish for all k > 0?

Run:  python3 demos/twisted_cohomology.py
"""
from divclass.cohomology import HypersurfaceSpec, cohomology_table, format_table

for n, d in ((2, 3), (2, 4), (2, 5), (3, 4), (3, 5)):
    print(format_table(cohomology_table(HypersurfaceSpec(n, d), range(-1, 5))))
    print()
