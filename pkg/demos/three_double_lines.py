"""Three double lines on a cubic cone: a local class group of order 9.

Run:  python3 demos/three_double_lines.py
"""
from divclass.curves import PlaneCurve, pt, line_section_divisor, verify_cone_relation
from divclass.pipelines import doublelines_pipeline

C = PlaneCurve.parse("x*y*z + x^2*y + x*z^2 + y^2*z")
P1, P2, P3 = pt(0, 0, 1), pt(0, 1, 0), pt(1, 0, 0)

print("line sections of the exceptional cubic")
for L in ("x", "y", "z"):
    print(f"  {L} = 0  ->  {line_section_divisor(C, C.ring(L))}")

# rewriting: x gives 2P1 + P2 ~ H, y gives P1 + 2P3 ~ H, z gives 2P2 + P3 ~ H
print("2*P1 + P2 ~ H :", verify_cone_relation(C, [P1, P2], [2, 1], 1))
print("9*P1 ~ 3*H    :", verify_cone_relation(C, [P1], [9], 3))
print("3*P1 ~ H      :", verify_cone_relation(C, [P1], [3], 1))
print("6*P1 ~ 2*H    :", verify_cone_relation(C, [P1], [6], 2))

rep = doublelines_pipeline()
print("\nclass group:", rep["group"]["group"])
print("images of the lines:", rep["images"])
for c in rep["certificates"]:
    print(f"  [{'ok' if c['holds'] else 'FAIL'}] {c['claim']}")
