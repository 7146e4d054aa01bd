"""Decomposition engine: frozen examples, failure modes, and invariants."""
from __future__ import annotations

from fractions import Fraction as Q
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski import (
    DimensionMismatchError,
    NotPseudoEffectiveError,
    OracleUniquenessError,
    UnknownPrimeError,
    brute_force_decompose,
    chamber_of,
    cone_model,
    decompose,
    enumerate_exceptional_families,
    is_big,
    is_exceptional_family,
    negative_part,
    verify_certificate,
    volume,
    zariski_projection,
)
from zariski.exact import as_vector, vec_add, vec_scale


# -- frozen worked examples ------------------------------------------------


def test_rank2_single_prime_example(s1):
    d = decompose(s1, [1, 2])
    assert d.alpha == as_vector([1, 2])
    assert d.positive_part == as_vector([1, 0])
    assert d.negative_coeffs == {"E": Q(2)}
    assert d.support == ("E",)
    assert d.iterations == 1
    assert d.certificate.all_passed
    assert d.negative_vector(s1) == as_vector([0, 2])


def test_rank3_chain_example_grows_twice(s2):
    d = decompose(s2, [1, 2, 1])
    assert d.positive_part == as_vector([1, 0, 0])
    assert d.negative_coeffs == {"c1": Q(2), "c2": Q(1)}
    assert d.support == ("c1", "c2")
    assert d.iterations == 2
    assert d.certificate.all_passed


def test_dual_nef_input_is_its_own_positive_part(s1):
    for alpha in ([1, 0], [1, -1], [0, 0]):
        d = decompose(s1, alpha)
        assert d.positive_part == as_vector(alpha)
        assert d.negative_coeffs == {}
        assert d.support == ()
        assert d.iterations == 1


def test_boundary_class_decomposes(s1):
    d = decompose(s1, [1, 1])
    assert d.positive_part == as_vector([1, 0])
    assert d.negative_coeffs == {"E": Q(1)}


def test_not_pseudo_effective_outside_positive_cone(s1):
    with pytest.raises(NotPseudoEffectiveError) as err:
        decompose(s1, [-1, 0])
    assert err.value.reason == "positive-cone-closure"
    assert err.value.detail == {"q_self": Q(1), "q_h": Q(-1)}


def test_not_pseudo_effective_degenerate_gram():
    model = cone_model([[1, 0], [0, -1]], {"F": [1, 1]}, [1, 0])
    assert model.validate().ok
    with pytest.raises(NotPseudoEffectiveError) as err:
        decompose(model, [0, 1])
    assert err.value.reason == "gram-not-negative-definite"
    assert err.value.detail == {"subset": ("F",)}


def test_dimension_mismatch_rejected(s1):
    with pytest.raises(DimensionMismatchError):
        decompose(s1, [1, 2, 3])


# -- wrappers ----------------------------------------------------------------


def test_wrappers_agree_with_decompose(s2):
    alpha = [1, 2, 1]
    d = decompose(s2, alpha)
    assert zariski_projection(s2, alpha) == d.positive_part
    assert negative_part(s2, alpha) == dict(d.negative_coeffs)
    assert chamber_of(s2, alpha) == d.support


def test_volume_examples(s1, s2):
    assert volume(s2, [1, 0, 0]) == Q(2)
    assert volume(s2, [1, 2, 1]) == Q(2)
    assert volume(s1, [1, 2]) == Q(1)
    assert volume(s1, [0, 1]) == Q(0)  # positive part collapses to zero


def test_volume_uses_exponent():
    model = cone_model(
        [[2, 0, 0], [0, -2, 1], [0, 1, -2]],
        [("c1", [0, 1, 0]), ("c2", [0, 0, 1])],
        [1, 0, 0],
        m=2,
    )
    assert volume(model, [1, 2, 1]) == Q(4)


def test_is_big_examples(s1):
    assert is_big(s1, [1, 2])
    assert not is_big(s1, [0, 1])  # positive part is zero
    assert not is_big(s1, [1, -1])  # positive part is isotropic


# -- exceptional families ----------------------------------------------------


def test_exceptional_family_membership(s2, affine_a2):
    assert is_exceptional_family(s2, [])
    assert is_exceptional_family(s2, ["c1"])
    assert is_exceptional_family(s2, ["c1", "c2"])
    assert is_exceptional_family(affine_a2, ["c1", "c3"])
    assert not is_exceptional_family(affine_a2, ["c1", "c2", "c3"])
    with pytest.raises(UnknownPrimeError):
        is_exceptional_family(s2, ["zz"])


def test_enumerate_families_rank3_chain(s2):
    assert enumerate_exceptional_families(s2) == [
        (),
        ("c1",),
        ("c1", "c2"),
        ("c2",),
    ]


def test_enumerate_families_cyclic_triple_excluded(affine_a2):
    fams = enumerate_exceptional_families(affine_a2)
    assert len(fams) == 7
    assert ("c1", "c2", "c3") not in fams
    assert ("c1", "c3") in fams and ("c2", "c3") in fams


def test_enumerate_families_max_size_clamps(affine_a2):
    assert enumerate_exceptional_families(affine_a2, max_size=0) == [()]
    singles = enumerate_exceptional_families(affine_a2, max_size=1)
    assert singles == [(), ("c1",), ("c2",), ("c3",)]
    assert enumerate_exceptional_families(
        affine_a2, max_size=99
    ) == enumerate_exceptional_families(affine_a2)


def test_enumerate_families_matches_naive_filter(ten_primes):
    pruned = enumerate_exceptional_families(ten_primes)
    names = ten_primes.prime_names()
    naive = [()]
    for size in range(1, ten_primes.rank + 1):
        for subset in combinations(names, size):
            if is_exceptional_family(ten_primes, subset):
                naive.append(subset)
    assert sorted(pruned) == sorted(naive)
    assert len(pruned) == 27  # 1 empty + 6 singletons + 12 pairs + 8 triples


# -- verification of externally supplied data --------------------------------


def test_verify_certificate_flags_tampered_orthogonality(s1):
    cert, violations = verify_certificate(
        s1, as_vector([1, 2]), as_vector([1, 1]), {"E": Q(1)}
    )
    assert not cert.orthogonality_checked
    assert not cert.all_passed
    assert any("orthogonality violated" in v for v in violations)


def test_verify_certificate_flags_negative_coefficient(s1):
    cert, violations = verify_certificate(
        s1, as_vector([1, -1]), as_vector([1, 0]), {"E": Q(-1)}
    )
    assert not cert.effectivity_checked
    assert any("negative coefficients" in v for v in violations)


def test_verify_certificate_flags_unknown_prime(s1):
    _, violations = verify_certificate(
        s1, as_vector([1, 0]), as_vector([1, 0]), {"ghost": Q(1)}
    )
    assert any("unknown prime" in v for v in violations)


def test_verify_certificate_clean_result_has_no_violations(s2):
    d = decompose(s2, [1, 2, 1])
    cert, violations = verify_certificate(
        s2, d.alpha, d.positive_part, d.negative_coeffs
    )
    assert cert.all_passed
    assert violations == []


# -- exhaustive oracle ---------------------------------------------------------


def test_oracle_matches_engine_on_examples(s1, s2):
    for model, alpha in ((s1, [1, 2]), (s1, [3, 1]), (s2, [1, 2, 1]), (s2, [2, 1, 0])):
        d = decompose(model, alpha)
        b = brute_force_decompose(model, alpha)
        assert b.positive_part == d.positive_part
        assert {n: c for n, c in b.negative_coeffs.items() if c > 0} == {
            n: c for n, c in d.negative_coeffs.items() if c > 0
        }


def test_oracle_rejects_non_pseudo_effective(s1):
    with pytest.raises(NotPseudoEffectiveError) as err:
        brute_force_decompose(s1, [-1, 0])
    assert err.value.reason == "exhaustive-no-candidate"


def test_oracle_refuses_oversized_models():
    primes = [(f"p{i}", [0, 1]) for i in range(17)]
    model = cone_model([[1, 0], [0, -1]], primes, [1, 0])
    with pytest.raises(ValueError, match="limited to 16"):
        brute_force_decompose(model, [1, 0])


def test_oracle_uniqueness_error_is_assertion():
    assert issubclass(OracleUniquenessError, AssertionError)


# -- properties on the generated pool -----------------------------------------


def test_pool_decompositions_satisfy_all_invariants(pool_decompositions):
    for model, alpha, d in pool_decompositions:
        assert d.certificate.all_passed
        reconstructed = d.positive_part
        for name, coeff in d.negative_coeffs.items():
            vec = model.primes[model.prime_index(name)].vec
            reconstructed = vec_add(reconstructed, vec_scale(coeff, vec))
        assert reconstructed == alpha
        # every active prime ends with a strictly positive coefficient
        assert d.support == tuple(d.negative_coeffs)
        assert all(c > 0 for c in d.negative_coeffs.values())
        assert 1 <= d.iterations <= max(1, len(model.primes))
        assert model.is_dual_nef(d.positive_part)


def test_pool_support_is_exceptional_family(pool_decompositions):
    for model, _, d in pool_decompositions:
        assert is_exceptional_family(model, d.support)


def test_pool_oracle_equivalence_sample(pool_decompositions):
    for model, alpha, d in pool_decompositions[:100]:
        b = brute_force_decompose(model, alpha)
        assert b.positive_part == d.positive_part
        assert dict(b.negative_coeffs) == dict(d.negative_coeffs)


def test_negative_part_translation_fixes_positive_part(pool_decompositions):
    """Adding support primes moves only the negative part, linearly."""
    checked = 0
    for model, alpha, d in pool_decompositions:
        if not d.support:
            continue
        shifted = alpha
        for name in d.support:
            vec = model.primes[model.prime_index(name)].vec
            shifted = vec_add(shifted, vec_scale(Q(1, 2), vec))
        d2 = decompose(model, shifted)
        assert d2.positive_part == d.positive_part
        assert d2.support == d.support
        for name in d.support:
            assert d2.negative_coeffs[name] == d.negative_coeffs[name] + Q(1, 2)
        checked += 1
        if checked >= 150:
            break
    assert checked >= 100


def test_prime_order_does_not_change_result(pool_decompositions):
    checked = 0
    for model, alpha, d in pool_decompositions:
        if len(model.primes) < 2:
            continue
        reordered = cone_model(
            model.form.rows(),
            [(p.name, p.vec) for p in reversed(model.primes)],
            model.h,
            model.m,
        )
        d2 = decompose(reordered, alpha)
        assert d2.positive_part == d.positive_part
        assert dict(d2.negative_coeffs) == dict(d.negative_coeffs)
        assert sorted(d2.support) == sorted(d.support)
        checked += 1
        if checked >= 150:
            break
    assert checked >= 100


def test_scaling_equivariance(pool_decompositions):
    for model, alpha, d in pool_decompositions[:100]:
        d2 = decompose(model, vec_scale(Q(3), alpha))
        assert d2.positive_part == vec_scale(Q(3), d.positive_part)
        assert dict(d2.negative_coeffs) == {
            n: 3 * c for n, c in d.negative_coeffs.items()
        }


def test_volume_positive_iff_big(pool_decompositions):
    for model, alpha, d in pool_decompositions[:200]:
        v = volume(model, alpha)
        assert v >= 0
        assert (v > 0) == is_big(model, alpha)


# -- closed-form oracle for the rank-2 single-prime model ---------------------

_fracs = st.fractions(min_value=-8, max_value=8, max_denominator=12)


@settings(max_examples=300, deadline=None)
@given(a1=_fracs, a2=_fracs)
def test_rank2_closed_form(s1, a1, a2):
    """On the rank-2 model, pseudo-effectivity and the splitting are explicit:
    a prime joins exactly when a2 > 0, and the projected class (a1, 0) must
    lie in the closed positive cone."""
    pe = (a2 > 0 and a1 >= 0) or (a2 <= 0 and a1 >= -a2)
    if not pe:
        with pytest.raises(NotPseudoEffectiveError):
            decompose(s1, [a1, a2])
        return
    d = decompose(s1, [a1, a2])
    if a2 > 0:
        assert d.positive_part == as_vector([a1, 0])
        assert d.negative_coeffs == {"E": a2}
    else:
        assert d.positive_part == as_vector([a1, a2])
        assert d.negative_coeffs == {}
