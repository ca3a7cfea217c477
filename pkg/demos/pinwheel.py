"""r lines in a plane plus a transversal line: an A_{r-1} point.

Run:  python3 demos/pinwheel.py [r]
"""
import sys

from divclass.pipelines import pinwheel_pipeline

r = int(sys.argv[1]) if len(sys.argv) > 1 else 4
rep = pinwheel_pipeline(r, seed=r)
w = rep["witness"]
print("surface      :", w["surface"])
print("normal form  :", w["normal_form"], " residual:", w["residual"])
for s in w["substitutions"]:
    print("  x + h with h =", s["h"])
print("type         :", rep["ade_type"], " group:", rep["group"]["group"])
print("tangent cone :", " * ".join(f"({c})" for c in w["tangent_cone_components"]))
for name, v in zip(["L0"] + [f"L{j}" for j in range(1, r + 1)], rep["intersection_vectors"]):
    print(f"  {name}: meets the cone components {v}  ->  class {rep['images'][name]} in Z/{r}")
