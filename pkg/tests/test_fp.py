import pytest

from cpgroups.errors import BudgetExhausted, PresentationSyntaxError
from cpgroups.fp import (CosetTable, Word, abelianization,
                         evaluate_word, kernel_coset_table,
                         parse_presentation, parse_word,
                         reidemeister_schreier, todd_coxeter, verify_hom)
from cpgroups.homalg import AbelianStructure, Z
from cpgroups.perm import Perm, parse_cycles

from oracles import mulclose


def w(names, text):
    return parse_word(tuple(names), text)


def test_parse_presentation_torus_relation():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    assert p.generators == ("a", "b")
    assert p.relators == (Word(((0, 3), (1, -2))),)


def test_parse_free_and_product_presentations():
    free = parse_presentation("< a | >")
    assert free.ngens == 1 and free.relators == ()
    zp = parse_presentation("< a, b | a^3, b^2 >")
    assert zp.relators == (Word(((0, 3),)), Word(((1, 2),)))
    with_ones = parse_presentation("< a, b | a^3 = 1, b^2 = 1 >")
    assert with_ones.relators == zp.relators


def test_parse_word_juxtaposition_and_one():
    names = ("a", "b")
    assert w(names, "abab").letters() == [(0, 1), (1, 1), (0, 1), (1, 1)]
    assert w(names, "a b^-2 a^2").syllables == ((0, 1), (1, -2), (0, 2))
    assert w(names, "a a^-1").is_empty
    assert w(names, "1").is_empty
    assert w(names, "a^0 b").syllables == ((1, 1),)


def test_parse_longest_name_wins():
    p = parse_presentation("< x, x1 | x x1, x1^2 >")
    assert p.relators[0].syllables == ((0, 1), (1, 1))


def test_parse_errors_carry_positions():
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("a, b | a^3 >")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("< a, b  a^3 >")
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("< a, b | a^3 = c >")
    assert info.value.position is not None
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("< a, a | >")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("< a | a^ >")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("< a | a = a = a >")


def test_presentation_round_trips_through_text():
    for text in ["< a, b | a^3 b^-2 >", "< a | >", "< a, b | a^2, b^2, a b a b a b >"]:
        p = parse_presentation(text)
        assert parse_presentation(str(p)) == p


def test_word_algebra():
    u = Word(((0, 2), (1, -1)))
    v = Word(((1, 1), (0, 1)))
    assert (u * v).syllables == ((0, 3),)
    assert (u * u.inverse()).is_empty
    assert (u ** 2).letter_count() == 6
    assert u.exponent_vector(2) == [2, -1]
    inverted = u.substitute([Word(((0, -1),)), Word(((1, -1),))])
    assert inverted.syllables == ((0, -2), (1, 1))


def test_todd_coxeter_cyclic():
    assert todd_coxeter(parse_presentation("< a | a^5 >")).index == 5


def test_todd_coxeter_s3_presentation():
    p = parse_presentation("< a, b | a^2, b^2, a b a b a b >")
    table = todd_coxeter(p)
    # oracle: the presented group is realized by (1 2), (2 3)
    perms = [parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)]
    assert verify_hom(p, perms)
    assert table.index == len(mulclose(perms)) == 6


def test_todd_coxeter_whole_group_subgroup():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    table = todd_coxeter(p, [p.word("a"), p.word("b")])
    assert table.index == 1


def test_todd_coxeter_against_realizations():
    # presentations with faithful permutation realizations, orders <= 48
    cases = [
        ("< a | a^12 >", ["(1 2 3 4 5 6 7 8 9 10 11 12)"]),
        ("< a, b | a^3, b^2, a b a b >", ["(1 2 3)", "(1 2)"]),
        ("< a, b | a^6, b^2, a b a b >",
         ["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"]),
        ("< a, b | a^4, b^2, a b a b a b >", ["(1 2 3 4)", "(1 2)"]),
        ("< a, b | a^3, b^3, a b a^-1 b^-1 >", ["(1 2 3)", "(4 5 6)"]),
        ("< a, b | a^12, b^2, a b a b >",
         ["(1 2 3 4 5 6 7 8 9 10 11 12)",
          "(1 12)(2 11)(3 10)(4 9)(5 8)(6 7)"]),
        ("< a, b | a^4, b^4, a b a^-1 b^-1 >", ["(1 2 3 4)", "(5 6 7 8)"]),
    ]
    for text, gens in cases:
        p = parse_presentation(text)
        perms = [parse_cycles(s) for s in gens]
        degree = max(x.degree for x in perms)
        perms = [x.extended(degree) for x in perms]
        assert verify_hom(p, perms), text
        order = len(mulclose(perms))
        word_lists = [[], ["a"], ["a^2"]]
        if p.ngens > 1:
            word_lists += [["b"], ["a b"], ["a", "b"]]
        for words in word_lists:
            ws = [p.word(t) for t in words]
            table = todd_coxeter(p, ws)
            image = mulclose([evaluate_word(x, perms) for x in ws]) if ws \
                else {tuple(range(degree))}
            assert table.index == order // len(image), (text, words)
            # post hoc: the coset action satisfies every relator
            action = table.generator_perms()
            for rel in p.relators:
                assert evaluate_word(rel, action).is_identity()


def test_todd_coxeter_fuzz_random_subgroup_words():
    # random subgroup generator words in faithful presentations; the index
    # must always be |G| / |image subgroup|, however ugly the coincidences
    import random
    rng = random.Random(1618)
    cases = [
        ("< a, b | a^4, b^2, a b a b >", ["(1 2 3 4)", "(1 3)"]),
        ("< a, b | a^2, b^2, a b a b a b >", ["(1 2)", "(2 3)"]),
        ("< a, b | a^6, b^2, a b a b >", ["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"]),
    ]
    for text, gens in cases:
        p = parse_presentation(text)
        perms = [parse_cycles(s) for s in gens]
        degree = max(x.degree for x in perms)
        perms = [x.extended(degree) for x in perms]
        order = len(mulclose(perms))
        for _ in range(12):
            words = []
            for _ in range(rng.randint(1, 3)):
                syls = tuple((rng.randrange(p.ngens), rng.choice([-2, -1, 1, 2, 3]))
                             for _ in range(rng.randint(1, 4)))
                words.append(Word(syls))
            table = todd_coxeter(p, words)
            image = mulclose([evaluate_word(w, perms) for w in words])
            assert table.index == order // len(image), (text, words)


def test_todd_coxeter_budget_is_an_explicit_outcome():
    free_product = parse_presentation("< a, b | a^2, b^2 >")  # infinite
    with pytest.raises(BudgetExhausted):
        todd_coxeter(free_product, max_cosets=100)


def test_todd_coxeter_deterministic():
    p = parse_presentation("< a, b | a^4, b^2, a b a b >")
    assert todd_coxeter(p).rows == todd_coxeter(p).rows


def test_coset_table_validation():
    p = parse_presentation("< a | a^2 >")
    with pytest.raises(ValueError):
        CosetTable(p, (), [[1, 1], [1, 1]])  # column not a bijection


def test_verify_hom():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    good = [parse_cycles("(1 2 3)"), parse_cycles("(1 2)", 3)]
    assert verify_hom(p, good) is True
    swapped = [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)")]
    assert verify_hom(p, swapped) is False
    assert verify_hom(p, [Perm.identity(4), Perm.identity(4)]) is True
    with pytest.raises(ValueError):
        verify_hom(p, [parse_cycles("(1 2)", 3)])


def test_kernel_coset_table_trefoil():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    images = [parse_cycles("(1 2 3)"), parse_cycles("(1 2)", 3)]
    table = kernel_coset_table(p, images)
    assert table.index == 6
    assert len(table.schreier_generators()) == 7


def test_kernel_coset_table_trivial_and_cyclic_images():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    trivial = kernel_coset_table(p, [Perm.identity(2), Perm.identity(2)])
    assert trivial.index == 1
    z6 = parse_presentation("< a | a^6 >")
    table = kernel_coset_table(z6, [parse_cycles("(1 2 3)")])
    assert table.index == 3


def test_kernel_coset_table_matches_translation_action():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    images = [parse_cycles("(1 2 3)"), parse_cycles("(1 2)", 3)]
    table = kernel_coset_table(p, images)
    elements = [Perm.identity(3)]
    index = {elements[0]: 0}
    rows = []
    qi = 0
    while qi < len(elements):
        x = elements[qi]
        qi += 1
        row = []
        for g in images:
            for image in (g, g.inverse()):
                y = x * image
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                row.append(index[y])
        rows.append(row)
    assert [list(r) for r in table.rows] == rows


def test_kernel_coset_table_rejects_non_homomorphism():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    with pytest.raises(ValueError):
        kernel_coset_table(p, [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)")])


def test_rs_free_group_subgroup_is_free():
    free = parse_presentation("< a | >")
    table = todd_coxeter(free, [free.word("a^3")])
    assert table.index == 3
    sub = reidemeister_schreier(free, table)
    assert sub.ngens == 1 and sub.relators == ()


def test_rs_sign_kernel_of_s3():
    p = parse_presentation("< a, b | a^2, b^2, a b a b a b >")
    table = kernel_coset_table(p, [parse_cycles("(1 2)"), parse_cycles("(1 2)")])
    assert table.index == 2
    sub = reidemeister_schreier(p, table)
    assert abelianization(sub) == AbelianStructure(torsion=(3,))


def test_rs_trefoil_double_cover():
    # independent oracle: the knot's polynomial t^2 - t + 1 evaluated at -1
    # gives |torsion| = 3 for the double branched cover, so the index-2
    # subgroup of the knot group abelianizes to Z + Z_3
    p = parse_presentation("< a, b | a^3 = b^2 >")
    table = kernel_coset_table(p, [Perm.identity(2), parse_cycles("(1 2)")])
    assert table.index == 2
    sub = reidemeister_schreier(p, table)
    assert abelianization(sub) == AbelianStructure(free_rank=1, torsion=(3,))


def test_rs_nielsen_schreier_rank():
    free2 = parse_presentation("< a, b | >")
    cases = [
        (["a^2", "b", "a b a^-1"], 2),
        (["a^3", "b", "a b a^-1", "a^2 b a^-2"], 3),
    ]
    for words, index in cases:
        table = todd_coxeter(free2, [free2.word(t) for t in words])
        assert table.index == index
        assert len(table.schreier_generators()) == index * 2 - index + 1
        sub = reidemeister_schreier(free2, table)
        assert abelianization(sub) == AbelianStructure(free_rank=index + 1)
    free3 = parse_presentation("< a, b, c | >")
    words = ["a^2", "b", "c", "a b a^-1", "a c a^-1"]
    table = todd_coxeter(free3, [free3.word(t) for t in words])
    assert table.index == 2
    sub = reidemeister_schreier(free3, table)
    assert abelianization(sub) == AbelianStructure(free_rank=2 * (3 - 1) + 1)


def test_abelianization_examples():
    assert abelianization(parse_presentation("< a, b | a^3 = b^2 >")) == Z
    assert abelianization(parse_presentation("< a, b | a^3, b^2 >")) == \
        AbelianStructure(torsion=(6,))
    assert abelianization(parse_presentation("< a, b | >")) == \
        AbelianStructure(free_rank=2)


def test_todd_coxeter_subgroup_word_edge_cases():
    z5 = parse_presentation("< a | a^5 >")
    assert todd_coxeter(z5, [z5.word("a")]).index == 1
    # a^5 is trivial in the group, so the subgroup it generates is too
    assert todd_coxeter(z5, [z5.word("a^5")]).index == 5
    assert todd_coxeter(z5, [z5.word("a^2")]).index == 1  # gcd(2, 5) = 1


def test_todd_coxeter_regular_representation_presentations():
    # gens = all elements, relators = the whole multiplication table; the
    # enumeration must recover the group order despite massive redundancy
    from cpgroups.fp import FpPresentation
    from cpgroups.perm import cyclic_group, klein_four_group, symmetric_group
    for group in [cyclic_group(6), symmetric_group(3), klein_four_group()]:
        elements = group.elements()
        index = {x: i for i, x in enumerate(elements)}
        names = tuple(f"g{i}" for i in range(len(elements)))
        relators = []
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                relators.append(Word(((i, 1), (j, 1), (index[x * y], -1))))
        presentation = FpPresentation(names, tuple(relators))
        assert todd_coxeter(presentation).index == group.order()


def test_schreier_generator_words_generate_the_kernel():
    p = parse_presentation("< a, b | a^3 = b^2 >")
    images = [parse_cycles("(1 2 3)"), parse_cycles("(1 2)", 3)]
    table = kernel_coset_table(p, images)
    for _, _, word in table.schreier_generators():
        assert evaluate_word(word, images).is_identity()
