import pytest
from hypothesis import given, settings, strategies as st

from mackeylab.groups import (
    BoundExceeded, GroupError, build_group, catalog_group, chain_length,
    conjugator, double_cosets, make_family, normalizer, parse_cayley_file,
    subgroup_classes_under, subgroups_of, sylow, weyl_group,
)


def sub_by_orders(G, *orders):
    return [s for s in G.all_subgroups() if s.order in orders]


def test_trivial_group():
    G = build_group("C1")
    assert G.order == 1
    assert len(G.conj_classes().classes) == 1


def test_s3_element_census():
    G = build_group("S3")
    orders = sorted(G.elt_order(a) for a in G.elements())
    assert orders.count(2) == 3
    assert orders.count(3) == 2
    assert orders.count(1) == 1


def test_q8_single_involution():
    G = build_group("Q8")
    assert G.order == 8
    assert sum(1 for a in G.elements() if G.elt_order(a) == 2) == 1


def test_product_and_cyclic():
    G = build_group("C2xC3")
    assert G.order == 6
    # C2xC3 is cyclic of order 6
    assert max(G.elt_order(a) for a in G.elements()) == 6


def test_invalid_table_rejected():
    with pytest.raises(GroupError):
        build_group("nosuch")
    # broken associativity: a 2x2 "table" that is not a group
    with pytest.raises(GroupError):
        parse = parse_cayley_file("2\n0 1\n1 1\n")
        from mackeylab.groups import FiniteGroup
        FiniteGroup(parse)


def test_cayley_file_roundtrip(tmp_path):
    G = build_group("S3")
    text = f"{G.order}\n" + "\n".join(
        " ".join(str(x) for x in row) for row in G.table)
    path = tmp_path / "s3.cayley"
    path.write_text(text)
    H = build_group(f"@{path}")
    assert H.table == G.table


def test_subgroup_classes_s3():
    G = build_group("S3")
    classes = G.conj_classes().classes
    assert len(classes) == 4
    assert sorted(c.rep.order for c in classes) == [1, 2, 3, 6]


def test_subgroup_classes_q8():
    G = build_group("Q8")
    classes = G.conj_classes().classes
    assert len(classes) == 6
    assert sorted(c.rep.order for c in classes) == [1, 2, 4, 4, 4, 8]


def test_subgroup_enumeration_brute_force_oracle():
    # independent oracle: closures of all <=2-element subsets
    G = build_group("S3")
    brute = set()
    for a in G.elements():
        for b in G.elements():
            brute.add(G.closure({a, b}))
    assert brute == {s.elements for s in G.all_subgroups()}


def test_bound_exceeded():
    G = build_group("C4")
    with pytest.raises(BoundExceeded):
        G.all_subgroups(bound=2)


def test_subconjugacy_matches_brute_force():
    G = build_group("D4")
    table = G.conj_classes()
    for H in table.reps():
        for K in table.reps():
            brute = any(H.conjugate(g) <= K for g in G.elements())
            assert table.subconjugate(H, K) == brute


def test_weyl_group_s3():
    G = build_group("S3")
    C3 = sub_by_orders(G, 3)[0]
    assert weyl_group(G, C3).group.order == 2
    C2 = sub_by_orders(G, 2)[0]
    assert weyl_group(G, C2).group.order == 1
    assert weyl_group(G, G.trivial_subgroup()).group.order == 6


def test_weyl_group_two_ways():
    G = build_group("D4")
    for H in G.conj_classes().reps():
        N1 = normalizer(G, H)
        # stabilizer of H under conjugation, computed directly
        N2 = [g for g in G.elements()
              if {G.conj_elt(x, g) for x in H.elements} == set(H.elements)]
        assert list(N1.elements) == sorted(N2)
        assert weyl_group(G, H).group.order == N1.order // H.order


def test_double_cosets_s3():
    G = build_group("S3")
    C2 = sub_by_orders(G, 2)[0]
    dc = double_cosets(G, C2, C2)
    assert len(dc.reps) == 2
    assert sorted(dc.sizes()) == [2, 4]


def test_double_cosets_trivial_cases():
    G = build_group("C2")
    full = G.full_subgroup()
    triv = G.trivial_subgroup()
    assert len(double_cosets(G, full, full).reps) == 1
    assert len(double_cosets(G, triv, triv).reps) == 2


@given(st.sampled_from(["C2", "C4", "C6", "S3", "D4", "Q8"]))
@settings(max_examples=6, deadline=None)
def test_double_coset_size_formula(name):
    # sum over cosets of |H||K|/|H n gKg^-1| = |G|
    G = catalog_group(name)
    reps = G.conj_classes().reps()
    for H in reps:
        for K in reps:
            dc = double_cosets(G, H, K)
            total = 0
            for g in dc.reps:
                Kg = K.conjugate(G.inverse(g))  # g K g^-1
                meet = set(H.elements) & set(Kg.elements)
                size = H.order * K.order // len(meet)
                assert size == len(dc.coset_elements(g))
                total += size
            assert total == G.order


def test_make_family_s3():
    G = build_group("S3")
    f2 = make_family(G, "p-subgroups(2)")
    assert sorted(r.order for r in f2.class_reps) == [1, 2]
    fpp = make_family(G, "prime-power")
    assert sorted(r.order for r in fpp.class_reps) == [1, 2, 3]
    ft = make_family(G, "trivial")
    assert [r.order for r in ft.class_reps] == [1]
    fall = make_family(G, "all")
    assert len(fall.class_reps) == 4 and fall.has_terminal_object()


def test_family_closure_fixed_point():
    G = build_group("D4")
    for kind in ("all", "prime-power", "p-subgroups(2)", "trivial"):
        fam = make_family(G, kind)
        table = G.conj_classes()
        # one more closure pass adds nothing
        for r in table.reps():
            below = any(table.subconjugate(r, c) for c in fam.class_reps)
            assert below == fam.contains(r) or not below


def test_family_generated_by():
    G = build_group("S3")
    C2 = sub_by_orders(G, 2)[0]
    fam = make_family(G, "generated-by", [C2])
    assert sorted(r.order for r in fam.class_reps) == [1, 2]


def test_sylow():
    G = build_group("C6")
    full = G.full_subgroup()
    assert sylow(G, full, 2).order == 2
    assert sylow(G, full, 3).order == 3
    assert sylow(G, full, 5).order == 1


def test_chain_length():
    C4 = build_group("C4")
    assert chain_length(C4, C4.full_subgroup()) == 2
    Q8 = build_group("Q8")
    assert chain_length(Q8, Q8.full_subgroup()) == 3
    assert chain_length(Q8, Q8.trivial_subgroup()) == 0


def test_conjugator_reaches_rep():
    G = build_group("S3")
    table = G.conj_classes()
    for s in G.all_subgroups():
        g = conjugator(G, s)
        assert s.conjugate(g) == table.rep_of(s)


def test_subgroup_classes_under():
    G = build_group("S3")
    full = G.full_subgroup()
    reps = subgroup_classes_under(G, full)
    assert len(reps) == 4
    C2 = sub_by_orders(G, 2)[0]
    assert len(subgroup_classes_under(G, C2)) == 2


@given(st.sampled_from(["C2", "C3", "C6", "S3", "D4", "Q8", "A4"]))
@settings(max_examples=7, deadline=None)
def test_lagrange(name):
    G = catalog_group(name)
    for s in G.all_subgroups():
        assert G.order % s.order == 0
