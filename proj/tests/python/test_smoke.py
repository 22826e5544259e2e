"""Smoke tests for the python module against tiny instances."""

import pytest

try:
    import cspix as cx
except ImportError:
    import _cspix as cx

NI_TEXT = "var X a b\nvar Y p q\ncon X Y : allow (a,p) (b,p)\n"


def test_parse_emit_roundtrip():
    inst = cx.Instance.parse(NI_TEXT)
    assert inst.variables() == ["X", "Y"]
    assert inst.domain("X") == ["a", "b"]
    assert cx.Instance.parse(inst.emit()).emit() == inst.emit()


def test_parse_error():
    with pytest.raises(cx.CspError):
        cx.Instance.parse("var X a a\n")


def test_semantic_checks():
    inst = cx.Instance.parse(NI_TEXT)
    assert cx.fi(inst, "X", "a", "b")["holds"]
    assert cx.sub(inst, "X", "a", "b")["holds"]
    assert cx.ctxdepi(inst, "X", "a", "b")["holds"]

    asym = cx.Instance.parse("var X a b\nvar Y p q\ncon X Y : allow (a,p) (a,q) (b,p)\n")
    result = cx.fi(asym, "X", "a", "b")
    assert not result["holds"]
    assert "X=a" in result["witness"] or "X=b" in result["witness"]
    assert cx.sub(asym, "X", "a", "b")["holds"]
    assert not cx.sub(asym, "X", "b", "a")["holds"]


def test_detectors():
    inst = cx.Instance.parse(NI_TEXT)
    assert cx.ni_classes(inst, "X") == [["a", "b"]]
    assert ("a", "b") in cx.nsub_pairs(inst, "X")
    assert ("a", "b") in cx.gnsub_pairs(inst, "X")
    entries = cx.nti_pairs(inst, "X")
    assert entries and entries[0]["S"] == ["X"]


def test_ns_closure_preserves_solvability():
    inst = cx.generate(seed=5, variables=4, domain=3, density=0.5, tightness=0.4)
    result = cx.ns_closure(inst)
    assert result["reduced"].solvable() == inst.solvable()


def test_solve_and_bundles():
    inst = cx.Instance.parse(NI_TEXT)
    plain = cx.solve(inst)
    bundled = cx.solve(inst, bundle=True)
    assert len(plain["solutions"]) == bundled["solutions"] == 2
    assert bundled["bundles"][0]["X"] == ["a", "b"]
    assert bundled["nodes"] <= plain["nodes"]


def test_solutions_match_solver():
    inst = cx.generate(seed=11, variables=4, domain=3, density=0.6, tightness=0.4)
    assert sorted(cx.solutions(inst)) == sorted(cx.solve(inst)["solutions"])


def test_taxonomy_surfaces():
    assert cx.verify_gallery() == []
    assert "G-FIG2" in cx.gallery_ids()
    assert cx.ni_classes(cx.gallery_instance("G-FIG2"), "X") == [["a", "b"]]
    assert "NI" in cx.lattice_text()
    assert "digraph" in cx.lattice_dot()
    assert cx.verify_random(2, seed=3) == []


def test_dynamic_and_conditional():
    inst = cx.Instance.parse(
        "var X a b\nvar Y p q\nvar Z r\n"
        "con X Y : allow (a,q) (b,p) (b,q)\n"
        "con X Z : allow (a,r) (b,r)\n"
        "con Y Z : allow (p,r)\n"
    )
    assert cx.dyn_ni(inst, "X", "a", "b", {"Y": "q"})
    assert cx.coni(inst, "X", "a", "b", "con X Y : allow (a,q) (b,q)\n")["holds"]
    assert not cx.fi(inst, "X", "a", "b")["holds"]
