import itertools
from fractions import Fraction

import pytest

from fractalarrays.coarray import lag_set
from fractalarrays.geometry import (InvalidParameterError, SensorArray,
                                    gen_nested, gen_ula, make_sfa)
from fractalarrays.robustness import (essential_sensors, fragility_profile,
                                      k_fragility, robustness_report,
                                      write_fragility_csv)


@pytest.fixture(scope="module")
def nfa():
    return make_sfa("nested", {"n": 6}, 1)


@pytest.fixture(scope="module")
def cfa():
    return make_sfa("coprime", {"m": 2, "n": 3}, 1)


@pytest.fixture(scope="module")
def auggen1():
    return make_sfa("ana1", {"n": 6}, 1)


def test_cfa_essential_partition(cfa):
    report = essential_sensors(cfa)
    assert report.essential == (0, 2, 4, 9, 17, 22)
    assert report.inessential == (3, 6, 13, 15, 16, 19)


def test_nfa_essential_set(nfa):
    assert essential_sensors(nfa).essential == (1, 2, 3, 4, 17, 21, 25)


def test_partition_covers_array(cfa):
    report = essential_sensors(cfa)
    merged = sorted(report.essential + report.inessential)
    assert tuple(merged) == cfa.positions
    assert not set(report.essential) & set(report.inessential)


@pytest.mark.parametrize("n", [4, 7, 12])
def test_ula_essential_is_endpoints(n):
    report = essential_sensors(gen_ula(n))
    assert report.essential == (0, n - 1)


def test_two_sensor_array_all_essential():
    assert essential_sensors(SensorArray((0, 1))).essential == (0, 1)


def test_essential_needs_two_sensors():
    with pytest.raises(InvalidParameterError):
        essential_sensors(SensorArray((5,)))


def test_cfa_fragility_k1(cfa):
    r = k_fragility(cfa, 1)
    assert (r.essential_subset_count, r.total_subsets) == (6, 12)
    assert r.fragility == Fraction(1, 2)


def test_nfa_fragility_counts(nfa):
    r2 = k_fragility(nfa, 2)
    r3 = k_fragility(nfa, 3)
    assert (r2.essential_subset_count, r2.total_subsets) == (58, 66)
    assert (r3.essential_subset_count, r3.total_subsets) == (218, 220)


def test_auggen1_fragility(auggen1):
    r = k_fragility(auggen1, 2)
    assert (r.essential_subset_count, r.total_subsets) == (55, 55)
    assert r.fragility == 1


def test_profile_matches_pointwise(nfa):
    profile = fragility_profile(nfa, 3)
    assert [r.rounded() for r in profile] == [0.5833, 0.8788, 0.9909]


def test_nested12_fully_fragile():
    assert k_fragility(gen_nested(12), 1).fragility == 1


def test_ula12_k1():
    r = k_fragility(gen_ula(12), 1)
    assert r.fragility == Fraction(2, 12)


def test_k1_matches_essential_count(cfa, nfa, auggen1):
    for arr in (cfa, nfa, auggen1):
        r = k_fragility(arr, 1)
        assert r.essential_subset_count == \
            len(essential_sensors(arr).essential)


def test_fragility_monotone_in_k(nfa, cfa, auggen1):
    for arr in (nfa, cfa, auggen1):
        profile = fragility_profile(arr, 3)
        for a, b in zip(profile, profile[1:]):
            assert b.fragility >= a.fragility


def test_essential_subsets_shrink_strictly(cfa):
    full = lag_set(cfa)
    for removed in itertools.combinations(cfa.positions, 2):
        kept = lag_set(cfa.remove(removed))
        assert kept <= full
        if kept != full:
            assert kept < full


def test_endpoints_always_essential():
    import random
    rng = random.Random(5)
    for _ in range(40):
        size = rng.randint(2, 10)
        arr = SensorArray(tuple(sorted(rng.sample(range(50), size))))
        ess = set(essential_sensors(arr).essential)
        assert arr.positions[0] in ess and arr.positions[-1] in ess


def test_parameter_validation(cfa):
    with pytest.raises(InvalidParameterError):
        k_fragility(cfa, 0)
    with pytest.raises(InvalidParameterError):
        k_fragility(cfa, len(cfa))
    with pytest.raises(InvalidParameterError):
        fragility_profile(cfa, len(cfa))


def test_enumeration_guard():
    big = SensorArray(tuple(range(40)))
    with pytest.raises(InvalidParameterError, match="enumeration limit"):
        k_fragility(big, 8)


def test_report_json(cfa):
    d = robustness_report(cfa, 2)
    assert d["essential"] == [0, 2, 4, 9, 17, 22]
    assert d["fragility"][0] == {"k": 1, "count": 6, "total": 12,
                                 "value": 0.5}
    assert set(d) == {"label", "essential", "inessential", "fragility"}


def test_fragility_csv(tmp_path, cfa):
    path = tmp_path / "frag.csv"
    write_fragility_csv(path, [("CFA", fragility_profile(cfa, 2))])
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "label,k,F_k"
    assert lines[1] == "CFA,1,0.5000"
    assert lines[2] == "CFA,2,0.8182"
