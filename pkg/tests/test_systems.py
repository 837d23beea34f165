import math
import random

import pytest

from excover.arith import CapExceeded, Fraction
from excover.systems import (
    CongruenceClass,
    CoveringSystem,
    ModuliProfile,
    NotSingleRepeated,
    classes_disjoint,
    density,
    double_system,
    first_common,
    format_moduli,
    format_system,
    parse_moduli,
    parse_system,
    profile_of,
    trivial_power_system,
    verify,
    verify_bruteforce,
)


def brute_disjoint(c1, c2):
    """Oracle: scan one full common period for a shared point."""
    l = c1.modulus * c2.modulus // math.gcd(c1.modulus, c2.modulus)
    return not any(c1.covers(x) and c2.covers(x) for x in range(l))


def system(*pairs):
    return CoveringSystem(CongruenceClass(a, m) for a, m in pairs)


class TestCongruenceClass:
    def test_residue_canonicalized(self):
        assert CongruenceClass(7, 3) == CongruenceClass(1, 3)
        assert CongruenceClass(-1, 4).residue == 3

    def test_modulus_positive(self):
        with pytest.raises(ValueError):
            CongruenceClass(0, 0)

    def test_covers(self):
        c = CongruenceClass(2, 5)
        assert c.covers(7) and c.covers(2) and not c.covers(8)


class TestDisjointness:
    def test_examples(self):
        assert classes_disjoint(CongruenceClass(0, 3), CongruenceClass(1, 6))
        assert not classes_disjoint(CongruenceClass(0, 3), CongruenceClass(3, 6))
        assert classes_disjoint(CongruenceClass(0, 2), CongruenceClass(1, 2))

    def test_exhaustive_against_bruteforce(self):
        for m1 in range(1, 13):
            for m2 in range(1, 13):
                for a1 in range(m1):
                    for a2 in range(m2):
                        c1, c2 = CongruenceClass(a1, m1), CongruenceClass(a2, m2)
                        assert classes_disjoint(c1, c2) == brute_disjoint(c1, c2)

    def test_first_common(self):
        c1, c2 = CongruenceClass(0, 2), CongruenceClass(1, 3)
        assert first_common(c1, c2) == 4
        assert first_common(CongruenceClass(0, 3), CongruenceClass(1, 6)) is None


class TestCoveringSystem:
    def test_sorted_canonically(self):
        s = system((5, 6), (0, 3), (1, 6))
        assert [(c.residue, c.modulus) for c in s.classes] == [(0, 3), (1, 6), (5, 6)]

    def test_rejects_duplicates_and_empty(self):
        with pytest.raises(ValueError):
            system((0, 3), (3, 3))
        with pytest.raises(ValueError):
            CoveringSystem([])

    def test_order_insensitive_equality(self):
        assert system((0, 2), (1, 2)) == system((1, 2), (0, 2))


class TestDensity:
    def test_examples(self):
        assert density(system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6))) == Fraction(1)
        assert density(system((0, 2))) == Fraction(1, 2)
        assert density(system((0, 2), (1, 4))) == Fraction(3, 4)


class TestVerify:
    def test_catalog_witness_valid(self):
        report = verify(system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6)))
        assert report.valid and report.density == Fraction(1)
        assert report.first_conflict is None and report.first_gap is None

    def test_parity_partition_valid(self):
        assert verify(system((0, 2), (1, 2))).valid

    def test_density_one_with_conflict_invalid(self):
        s = system((0, 2), (1, 3), (5, 6))
        report = verify(s)
        assert not report.valid
        assert report.density == Fraction(1)
        assert report.first_conflict == (0, 1)
        i, j = report.first_conflict
        assert first_common(s.classes[i], s.classes[j]) == 4

    def test_low_density_invalid(self):
        assert not verify(system((0, 3))).valid


class TestVerifyBruteforce:
    def test_valid_example(self):
        report = verify_bruteforce(
            system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6)), lcm_cap=10**6
        )
        assert report.valid

    def test_gap_and_conflict_reported(self):
        report = verify_bruteforce(system((0, 2), (0, 4)))
        assert not report.valid
        assert report.first_conflict == (0, 1)
        assert report.first_gap == 1

    def test_cap_exceeded(self):
        with pytest.raises(CapExceeded):
            verify_bruteforce(system((0, 2), (1, 3), (5, 6)), lcm_cap=5)

    def test_agreement_with_verify_on_small_systems(self):
        rng = random.Random(7)
        for _ in range(200):
            k = rng.randrange(1, 5)
            pairs = set()
            while len(pairs) < k:
                m = rng.randrange(1, 13)
                pairs.add((rng.randrange(m), m))
            s = system(*pairs)
            assert verify(s).valid == verify_bruteforce(s).valid


class TestConstructions:
    def test_tower_r3_exact_classes(self):
        assert trivial_power_system(3) == system((0, 2), (1, 4), (3, 8), (7, 8))

    def test_tower_r1_is_parity_partition(self):
        assert trivial_power_system(1) == system((0, 2), (1, 2))

    def test_tower_valid_with_top_repeated_twice(self):
        for r in range(1, 21):
            s = trivial_power_system(r)
            assert verify(s).valid
            mods = s.moduli()
            assert mods.count(max(mods)) == 2

    def test_tower_rejects_r_below_one(self):
        with pytest.raises(ValueError):
            trivial_power_system(0)

    def test_double_parity_partition(self):
        assert double_system(system((0, 2), (1, 2))) == system((0, 2), (1, 4), (3, 4))

    def test_double_catalog_witness(self):
        s = system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6))
        d = double_system(s)
        assert verify(d).valid
        assert sorted(d.moduli()) == [2, 6, 12, 12, 12, 12]
        assert profile_of(d).repeats == profile_of(s).repeats

    def test_double_tower_keeps_two_repeats(self):
        for r in range(1, 8):
            d = double_system(trivial_power_system(r))
            assert verify(d).valid
            assert profile_of(d).repeats == 2

    def test_double_rejects_invalid_input(self):
        with pytest.raises(ValueError):
            double_system(system((0, 3)))


class TestProfile:
    def test_catalog_example(self):
        p = profile_of(system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6)))
        assert (p.base, p.top, p.repeats) == ((3,), 6, 4)

    def test_parity_partition_profile(self):
        p = profile_of(system((0, 2), (1, 2)))
        assert (p.base, p.top, p.repeats) == ((), 2, 2)

    def test_two_repeated_values_rejected(self):
        s = system((0, 3), (0, 4), (1, 4), (0, 6), (1, 6))
        with pytest.raises(NotSingleRepeated):
            profile_of(s)

    def test_all_distinct_rejected(self):
        with pytest.raises(NotSingleRepeated):
            profile_of(system((0, 2), (1, 4)))

    def test_profile_invariants_enforced(self):
        with pytest.raises(ValueError):
            ModuliProfile(base=(3,), top=6, repeats=3)  # density 5/6
        with pytest.raises(ValueError):
            ModuliProfile(base=(6,), top=6, repeats=2)  # base not below top
        with pytest.raises(ValueError):
            ModuliProfile(base=(), top=2, repeats=1)  # top must repeat

    def test_profile_invariant_under_residue_shift(self):
        a = system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6))
        b = system((1, 3), (0, 6), (2, 6), (3, 6), (5, 6))
        assert verify(b).valid
        assert profile_of(a) == profile_of(b)

    def test_moduli_expansion(self):
        p = ModuliProfile(base=(3,), top=6, repeats=4)
        assert p.moduli() == [3, 6, 6, 6, 6]


class TestGrammar:
    def test_system_roundtrip(self):
        s = system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6))
        text = format_system(s)
        assert text == "0 mod 3, 1 mod 6, 2 mod 6, 4 mod 6, 5 mod 6"
        assert parse_system(text) == s

    def test_system_parse_tolerates_whitespace(self):
        assert parse_system(" 0 mod 2 ,1 mod 2") == system((0, 2), (1, 2))

    def test_system_parse_errors(self):
        for bad in ("0 mod", "mod 3", "0 mod 3, ", "a mod 3", ""):
            with pytest.raises(ValueError):
                parse_system(bad)

    def test_moduli_grammar(self):
        assert parse_moduli("3 6^4") == [3, 6, 6, 6, 6]
        assert parse_moduli("2 3 6") == [2, 3, 6]
        assert format_moduli([3, 6, 6, 6, 6]) == "3 6^4"
        assert format_moduli([2, 3, 6]) == "2 3 6"
        assert parse_moduli(format_moduli([4, 6, 12, 12])) == [4, 6, 12, 12]

    def test_moduli_parse_errors(self):
        for bad in ("", "3 x", "3^", "0", "3^0"):
            with pytest.raises(ValueError):
                parse_moduli(bad)


def test_mndr_two_largest_moduli_equal_on_valid_systems():
    # structural sanity on every valid system generated here
    witnesses = [
        trivial_power_system(r) for r in range(1, 12)
    ] + [
        system((0, 3), (1, 6), (2, 6), (4, 6), (5, 6)),
        system((0, 2), (1, 2)),
    ]
    for s in witnesses:
        assert verify(s).valid
        mods = sorted(s.moduli())
        assert len(mods) >= 2 and mods[-1] == mods[-2]
