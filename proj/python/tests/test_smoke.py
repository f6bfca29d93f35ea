"""Smoke tests for the qtcs extension module (run directly or via ctest)."""

import qtcs


def test_orbits():
    assert qtcs.orbit_of([1, 0]) == [1, 0]
    assert qtcs.orbit_of([7, 7]) == [0, 0]
    assert qtcs.orbit_of([3, 3, 5]) == [0, 0, 1]
    assert len(qtcs.weak_orders(3)) == 13
    assert qtcs.ordered_bell(4) == 75


def test_relations_and_preservation():
    leq = qtcs.relation_of("x <= y")
    assert len(leq) == 2
    assert qtcs.preserves("min", leq)["closed"]
    report = qtcs.preserves("mx", leq)
    assert not report["closed"]
    assert report["image"] is not None

    u = qtcs.relation_of("(x = y & y < z) | (x = z & z < y) | (x = y & y = z)")
    assert qtcs.preserves("min", u)["closed"]
    assert not qtcs.preserves("mx", u)["closed"]
    assert u.dualized().dualized() == u


def test_entailment():
    u = qtcs.relation_of("(x = y & y < z) | (x = z & z < y) | (x = y & y = z)")
    assert qtcs.entails(u, "y >= x", ["x", "y", "z"])
    assert not qtcs.entails(u, "x >= y", ["x", "y", "z"])


def test_normal_forms():
    u = qtcs.relation_of("(x = y & y < z) | (x = z & z < y) | (x = y & y = z)")
    form = qtcs.normal_form(u, "min", ["x", "y", "z"])
    assert form == "(x >= y | x >= z) & (y >= x) & (z >= x)"
    again = qtcs.relation_of(form, ["x", "y", "z"])
    assert again == u
    assert qtcs.normal_form(qtcs.relation_of("x != y"), "min", ["x", "y"]) is None


def test_solving():
    assert qtcs.solve("qcsp forall y exists x : x > y")["value"]
    assert not qtcs.solve("qcsp exists x forall y : x >= y")["value"]
    assert qtcs.solve("qcsp forall y exists x : x > y", engine="brute")["value"]

    result = qtcs.solve("csp a < b & b < c")
    assert result["value"]
    assert result["assignment"]["a"] == "0"
    assert result["assignment"]["c"] == "2"
    assert not qtcs.solve("csp a < b & b < a")["value"]


def test_fuzz():
    report = qtcs.fuzz("csp", seed=42, trials=20, engine="min")
    assert report["agree"] == report["trials"] == 20


def main():
    test_orbits()
    test_relations_and_preservation()
    test_entailment()
    test_normal_forms()
    test_solving()
    test_fuzz()
    print("smoke tests passed")


if __name__ == "__main__":
    main()
