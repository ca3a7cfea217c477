"""Machine-checkable identities carried by reports.

Each certificate is a plain dict: ``kind``, a short ``claim``, the data needed
to recompute it, and ``holds`` as evaluated when it was issued.
``recheck_certificate`` recomputes from the data alone.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .field import field_from_tag
from .fgab import group_from_presentation, parse_group
from .ideals import IdealPresentation, ideal_equal, intersect_all
from .poly import MPoly, PolyRing


def _ring(vars_, field_tag) -> PolyRing:
    return PolyRing(list(vars_), field_from_tag(field_tag))


def _cert(kind: str, claim: str, holds: bool, **data) -> dict:
    return {"kind": kind, "claim": claim, "holds": bool(holds), "data": data}


# builders


def ideal_identity(lhs: Sequence[IdealPresentation], rhs: IdealPresentation, claim: str) -> dict:
    """The intersection of ``lhs`` equals ``rhs``."""
    ring = rhs.ring
    ok = ideal_equal(intersect_all(list(lhs), ring), rhs)
    return _cert(
        "ideal_identity",
        claim,
        ok,
        vars=list(ring.names),
        field=ring.field.tag(),
        intersect=[[str(g) for g in i.gens] for i in lhs],
        equals=[str(g) for g in rhs.gens],
    )


def membership_cert(f: MPoly, ideal: IdealPresentation, claim: str, expect: bool = True) -> dict:
    ok = ideal.contains(f) == expect
    return _cert(
        "membership",
        claim,
        ok,
        vars=list(ideal.ring.names),
        field=ideal.ring.field.tag(),
        poly=str(f),
        ideal=[str(g) for g in ideal.gens],
        expect=expect,
    )


def smooth_curve_cert(F: MPoly, claim: str, expect: bool = True) -> dict:
    from .curves import PlaneCurve, is_smooth_plane_curve

    res = is_smooth_plane_curve(PlaneCurve(F))
    return _cert(
        "smooth_curve",
        claim,
        res.smooth == expect,
        vars=list(F.ring.names),
        field=F.field.tag(),
        poly=str(F),
        expect=expect,
        certificate=res.to_json(),
    )


def line_section_cert(F: MPoly, L: MPoly, expected: dict, claim: str) -> dict:
    from .curves import PlaneCurve, line_section_divisor

    got = line_section_divisor(PlaneCurve(F), L).to_json()
    return _cert(
        "line_section",
        claim,
        got == expected,
        vars=list(F.ring.names),
        field=F.field.tag(),
        curve=str(F),
        line=str(L),
        divisor=expected,
    )


def cone_relation_cert(F: MPoly, points, coeffs, m: int, base, expect: bool, claim: str) -> dict:
    from .curves import PlaneCurve, verify_cone_relation

    ok = verify_cone_relation(PlaneCurve(F), list(points), list(coeffs), m, base=base) == expect
    return _cert(
        "cone_relation",
        claim,
        ok,
        vars=list(F.ring.names),
        field=F.field.tag(),
        curve=str(F),
        points=[str(q) for q in points],
        coeffs=list(coeffs),
        m=m,
        base=str(base),
        expect=expect,
    )


def substitution_cert(f: MPoly, images: Sequence[MPoly], trunc: int | None, expected: MPoly, claim: str) -> dict:
    got = f.substitute(list(images), trunc=trunc)
    if trunc is not None:
        expected = expected.truncate(trunc)
    return _cert(
        "substitution",
        claim,
        got == expected,
        vars=list(f.ring.names),
        field=f.field.tag(),
        poly=str(f),
        images=[str(g) for g in images],
        trunc=trunc,
        expected=str(expected),
    )


def blowup_cert(F: MPoly, chart_ring: PolyRing, images: Sequence[MPoly], e: str, m: int, strict: MPoly, claim: str) -> dict:
    lhs = F.substitute(list(images))
    ok = lhs == strict * chart_ring.var(e) ** m and strict.var_power_dividing(e) == 0
    return _cert(
        "blowup",
        claim,
        ok,
        vars=list(F.ring.names),
        chart_vars=list(chart_ring.names),
        field=F.field.tag(),
        poly=str(F),
        images=[str(g) for g in images],
        exceptional=e,
        multiplicity=m,
        strict=str(strict),
    )


def group_cert(relations: list[list[int]], ngens: int, expected: str, claim: str) -> dict:
    g = group_from_presentation(relations, ngens) if relations else group_from_presentation([[0] * ngens], ngens)
    return _cert("group", claim, str(g) == expected, relations=relations, ngens=ngens, expected=expected)


def subgroup_cert(relations, ngens: int, elements: list[list[int]], index: int, claim: str) -> dict:
    from .fgab import subgroup_generated

    g = group_from_presentation(relations, ngens) if relations else group_from_presentation([[0] * ngens], ngens)
    _, idx = subgroup_generated(g, [g.element(x) for x in elements])
    return _cert("subgroup_index", claim, idx == index, relations=relations, ngens=ngens, elements=elements, index=index)


def numeric_cert(kind: str, claim: str, holds: bool, **data) -> dict:
    """Arithmetic facts rechecked by a registered function of ``data``."""
    return _cert(kind, claim, holds, **data)


# rechecking


def _re_ideal_identity(d):
    ring = _ring(d["vars"], d["field"])
    lhs = [IdealPresentation.of(ring, gens) for gens in d["intersect"]]
    return ideal_equal(intersect_all(lhs, ring), IdealPresentation.of(ring, d["equals"]))


def _re_membership(d):
    ring = _ring(d["vars"], d["field"])
    return IdealPresentation.of(ring, d["ideal"]).contains(ring(d["poly"])) == d["expect"]


def _re_smooth(d):
    from .curves import PlaneCurve, is_smooth_plane_curve

    ring = _ring(d["vars"], d["field"])
    return is_smooth_plane_curve(PlaneCurve(ring(d["poly"]))).smooth == d["expect"]


def _re_line_section(d):
    from .curves import PlaneCurve, line_section_divisor

    ring = _ring(d["vars"], d["field"])
    return line_section_divisor(PlaneCurve(ring(d["curve"])), ring(d["line"])).to_json() == d["divisor"]


def _re_cone_relation(d):
    from .curves import PlaneCurve, ProjPoint, verify_cone_relation

    ring = _ring(d["vars"], d["field"])
    fld = ring.field
    pts = [ProjPoint.parse(s, fld) for s in d["points"]]
    base = ProjPoint.parse(d["base"], fld)
    got = verify_cone_relation(PlaneCurve(ring(d["curve"])), pts, d["coeffs"], d["m"], base=base)
    return got == d["expect"]


def _re_substitution(d):
    ring = _ring(d["vars"], d["field"])
    got = ring(d["poly"]).substitute([ring(s) for s in d["images"]], trunc=d["trunc"])
    return got == ring(d["expected"])


def _re_blowup(d):
    ring = _ring(d["vars"], d["field"])
    chart = _ring(d["chart_vars"], d["field"])
    lhs = ring(d["poly"]).substitute([chart(s) for s in d["images"]])
    strict = chart(d["strict"])
    e = d["exceptional"]
    return lhs == strict * chart.var(e) ** d["multiplicity"] and strict.var_power_dividing(e) == 0


def _re_group(d):
    n = d["ngens"]
    rels = d["relations"] or [[0] * n]
    return str(group_from_presentation(rels, n)) == d["expected"]


def _re_subgroup(d):
    from .fgab import subgroup_generated

    n = d["ngens"]
    g = group_from_presentation(d["relations"] or [[0] * n], n)
    return subgroup_generated(g, [g.element(x) for x in d["elements"]])[1] == d["index"]


def _re_hasse(d):
    from .curves import in_hasse_interval

    return in_hasse_interval(d["count"], d["p"])


def _re_cohomology(d):
    from .cohomology import HypersurfaceSpec, twist_cohomology

    return twist_cohomology(HypersurfaceSpec(d["n"], d["d"]), d["k"]) == d["dims"]


def _re_parse_group(d):
    return parse_group(d["group"]) == (d["free_rank"], tuple(d["invariants"]))


RECHECKERS: dict[str, Callable[[dict], bool]] = {
    "ideal_identity": _re_ideal_identity,
    "membership": _re_membership,
    "smooth_curve": _re_smooth,
    "line_section": _re_line_section,
    "cone_relation": _re_cone_relation,
    "substitution": _re_substitution,
    "blowup": _re_blowup,
    "group": _re_group,
    "subgroup_index": _re_subgroup,
    "hasse": _re_hasse,
    "cohomology": _re_cohomology,
    "group_string": _re_parse_group,
}


def recheck_certificate(cert: dict) -> bool:
    """Recompute a certificate from its data.  Unknown kinds raise KeyError."""
    return bool(RECHECKERS[cert["kind"]](cert["data"]))


def all_hold(certs: Sequence[dict]) -> bool:
    return all(c["holds"] for c in certs)
