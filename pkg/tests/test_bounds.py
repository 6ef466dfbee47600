import math
import random
from fractions import Fraction

import pytest

from sumprod.bounds import (
    ProbeConfig,
    _verdict,
    extract_permissible,
    fiber_bound_constants,
    h_min_formula,
    image_bound_constants,
    min_q_for_delta,
    probe_factorization,
    probe_growth,
    verify_fiber_bound,
    verify_image_lower_bound,
    verify_level_pair_bound,
    verify_shift_overlap_bound,
)
from sumprod.errors import DuplicateY, NotRequired, ZeroShift
from sumprod.field import make_prime
from sumprod.poly import UniPoly, is_permissible, is_required, parse_bipoly
from sumprod.setops import value_set
from sumprod.subgroup import coset_of, is_admitted, subgroup_of_order

P13 = make_prime(13)
G3 = subgroup_of_order(P13, 3)


def smallest_admitted_prime(d):
    """Smallest p = 1 (mod d) with 9 d^2 < p, by direct search."""
    p = 9 * d * d + 1
    p += (1 - p) % d
    while True:
        try:
            return make_prime(p)
        except Exception:
            p += d


# --- constants ---------------------------------------------------------------


def test_image_constants():
    c = image_bound_constants(1)
    assert c.c1 == 24
    assert c.c2 == Fraction(1, 64000)
    assert c.c == pytest.approx(1 / 64000, rel=1e-15)
    assert image_bound_constants(2).c1 == 384
    with pytest.raises(ValueError):
        image_bound_constants(0)


def test_image_constant_min_branch():
    for n in range(1, 11):
        c = image_bound_constants(n)
        assert 0 < c.c <= float(c.c2)
        assert isinstance(c.c1, int)


def test_fiber_constants():
    c = fiber_bound_constants((1, 1), 2)
    assert c.c1 == 16
    assert c.c2 == pytest.approx(3 ** (-4 / 5), rel=1e-15)
    assert c.c3 == pytest.approx(24.0, rel=1e-15)
    assert fiber_bound_constants((2, 2), 2).c1 == 4096
    with pytest.raises(ValueError):
        fiber_bound_constants((1,), 1)
    with pytest.raises(ValueError):
        fiber_bound_constants((0, 1), 2)


def test_fiber_c1_monotone_and_integer():
    prev = 0
    for top in range(1, 7):
        c1 = fiber_bound_constants((top, 1), 2).c1
        assert c1 > prev
        prev = c1
    for n in range(2, 7):
        for m in range(1, 7):
            assert isinstance(fiber_bound_constants((m,) * n, n).c1, int)


# --- verdict engine ----------------------------------------------------------


def test_verdict_borderline_flag():
    v = _verdict("t2", "", 10**6, 10**6 + 1e-10, ">", 1.0)
    assert v.borderline and v.holds is False
    v = _verdict("t2", "", 10**6, 10**6 + 10.0, ">", 1.0)
    assert not v.borderline and v.holds is False
    v = _verdict("t2", "because", 5, 1.0, ">", 1.0)
    assert v.holds is None and v.premise_reason == "because"


def test_image_lower_bound_small_group_not_admitted():
    v = verify_image_lower_bound(parse_bipoly("x+y", P13), G3)
    assert v.inequality == "t2"
    assert not v.premise_ok and v.premise_reason == "not-admitted"
    assert v.holds is None
    assert v.lhs == 6  # still computed: |__(G,G) image__|


def test_image_lower_bound_not_good():
    v = verify_image_lower_bound(parse_bipoly("(x+y)^2", P13), G3)
    assert not v.premise_ok and v.premise_reason.startswith("not-good")


def test_image_lower_bound_admitted_holds():
    d = 101
    prime = smallest_admitted_prime(d)
    G = subgroup_of_order(prime, d)
    assert is_admitted(G, 1)
    v = verify_image_lower_bound(parse_bipoly("x+y", prime), G)
    assert v.premise_ok and v.holds is True
    assert v.ratio == v.lhs / d**1.5
    assert v.ratio > float(image_bound_constants(1).c2)


def test_level_pair_bound_premises():
    P = parse_bipoly("x+y", P13)
    v = verify_level_pair_bound(P, G3, value_set(P13, [2]))
    assert v.inequality == "vm"
    assert not v.premise_ok and v.premise_reason == "not-admitted"
    assert v.lhs == 1  # the pair (1,1)


def test_level_pair_bound_h_window():
    # at |G|=101 even h=1 violates h * 40^3 * n^9 < |G|^2 (64000 >= 10201),
    # so the h-clause fires only after admissibility already passed
    d = 101
    prime = smallest_admitted_prime(d)
    G = subgroup_of_order(prime, d)
    v = verify_level_pair_bound(parse_bipoly("x+y", prime), G, value_set(prime, [2]))
    assert not v.premise_ok and v.premise_reason == "level-count-bound"


def test_level_pair_bound_met_instance():
    # |G| = 300: 100 < 300, and h=1 gives 64000 < 90000 -> whole premise holds
    d = 300
    prime = smallest_admitted_prime(d)
    G = subgroup_of_order(prime, d)
    v = verify_level_pair_bound(parse_bipoly("x+y", prime), G, value_set(prime, [2]))
    assert v.premise_ok and v.holds is True
    assert v.rhs == pytest.approx(24 * d ** (2 / 3), rel=1e-12)


def test_shift_overlap_examples():
    v = verify_shift_overlap_bound(G3, 1)
    assert v.inequality == "gv"
    assert v.premise_ok and v.lhs == 0 and v.holds is True
    assert v.rhs == pytest.approx(4 * 3 ** (2 / 3), rel=1e-12)
    full = subgroup_of_order(P13, 12)
    v = verify_shift_overlap_bound(full, 1)
    assert not v.premise_ok and v.premise_reason == "size-window"
    with pytest.raises(ZeroShift):
        verify_shift_overlap_bound(G3, 0)


def test_shift_overlap_exhaustive_tiny():
    for p in (5, 7, 13, 31):
        prime = make_prime(p)
        for d in [d for d in range(1, p) if (p - 1) % d == 0]:
            G = subgroup_of_order(prime, d)
            for mu in range(1, p):
                v = verify_shift_overlap_bound(G, mu)
                if v.premise_ok:
                    assert v.holds is True, (p, d, mu)


def test_fiber_bound_small_group():
    f1 = UniPoly.from_list(13, [1, 1])
    f2 = UniPoly.from_list(13, [12, 1])
    c = coset_of(1, G3)
    v = verify_fiber_bound([f1, f2], [c, c], G3)
    assert v.inequality == "thmap"
    assert not v.premise_ok and v.premise_reason == "subgroup-too-small"
    assert v.lhs == 1  # fiber {2}


def test_fiber_bound_not_permissible():
    f1 = UniPoly.from_list(13, [1, 1])
    c = coset_of(1, G3)
    v = verify_fiber_bound([f1, f1], [c, c], G3)
    assert not v.premise_ok
    assert v.premise_reason.startswith("not-permissible:")
    assert "[0]" in v.premise_reason or "[1]" in v.premise_reason


# --- growth and extraction ----------------------------------------------------


def test_growth_example():
    r = probe_growth(G3)
    assert r.sum_size == 6 and r.diff_size == 7
    assert r.sum_over_pow43 == pytest.approx(6 / 3 ** (4 / 3), rel=1e-12)
    assert r.sum_over_pow43 == pytest.approx(1.3867225487012695, rel=1e-12)
    for val in (
        r.sum_over_pow43,
        r.diff_over_pow43,
        r.sum_log_over_pow53,
        r.diff_log_over_pow53,
        r.sum_over_pow32,
        r.diff_over_pow32,
    ):
        assert val > 0


def test_growth_rejects_trivial_group():
    with pytest.raises(ValueError):
        probe_growth(subgroup_of_order(P13, 1))


def test_extract_all_kept():
    P = parse_bipoly("x+y", P13)
    kept, cert = extract_permissible(P, [1, 2, 3, 4, 5])
    assert kept == (0, 1, 2, 3, 4)
    assert cert.guarantee == 3
    assert cert.h == 5 and cert.k == 1 and cert.l == 1
    assert cert.dropped_leading == () and cert.dropped_constant == ()


def test_extract_collapsing_pair():
    # y=1 and y=12 square to the same thing: the two slices are equal
    P = parse_bipoly("x^2+y^2", P13)
    kept, cert = extract_permissible(P, [1, 12])
    assert len(kept) == 1
    assert cert.guarantee == 0  # floor((2-4)/4) < 0 -> vacuous


def test_extract_drops_constant_root():
    P = parse_bipoly("x+y", P13)  # free coefficient p_0(y) = y
    kept, cert = extract_permissible(P, [0, 1, 2])
    assert cert.dropped_constant == (0,)
    assert kept == (1, 2)


def test_extract_errors():
    with pytest.raises(NotRequired):
        extract_permissible(parse_bipoly("x*y+x", P13), [1, 2])
    with pytest.raises(DuplicateY):
        extract_permissible(parse_bipoly("x+y", P13), [1, 14])
    with pytest.raises(NotRequired):
        # univariate input is its own single-variable factor
        extract_permissible(parse_bipoly("x+1", P13), [1, 2])


def test_extract_randomized_certificates():
    rng = random.Random(99)
    texts = [
        "x+y",
        "x^2+y^2",
        "x*y+1",
        "x^2+x*y+y^2",
        "x^3+y^2+1",
        "x^2*y^2+x+y",
        "x^2+3*y^3+2",
    ]
    trials = 0
    while trials < 30:
        p = rng.choice([13, 31, 101])
        prime = make_prime(p)
        P = parse_bipoly(rng.choice(texts), prime)
        if not (P.deg_x >= 1 and P.deg_y >= 1 and is_required(P)):
            continue
        h = rng.randint(2, min(20, p - 1))
        ys = rng.sample(range(p), h)
        kept, cert = extract_permissible(P, ys)
        trials += 1
        assert len(kept) >= cert.guarantee
        assert cert.guarantee == max(0, (h - 2 * cert.l) // (cert.k * cert.l))
        fs = [P.subst_y(ys[i]) for i in kept]
        if fs:
            assert is_permissible(fs).ok, (p, P.to_text(), ys, kept)


def test_h_min_formula():
    assert h_min_formula(3, 1, 1) == 5
    assert h_min_formula(1, 1, 1) == 3
    assert h_min_formula(2, 3, 4) == 32
    for base in ((2, 2, 2),):
        v0 = h_min_formula(*base)
        for i in range(3):
            bumped = list(base)
            bumped[i] += 1
            assert h_min_formula(*bumped) > v0
    with pytest.raises(ValueError):
        h_min_formula(0, 1, 1)


# --- factorization probe --------------------------------------------------------


def test_min_q_for_delta():
    assert min_q_for_delta(0.5) == 2
    assert min_q_for_delta(0.25) == 2
    assert min_q_for_delta(0.125) == 4
    # binary 0.2 is a hair above 1/5, so 1/delta < 5 and q=2 suffices
    assert min_q_for_delta(0.2) == 2
    with pytest.raises(ValueError):
        min_q_for_delta(0.0)
    with pytest.raises(ValueError):
        min_q_for_delta(1.0)


def test_probe_config_validation():
    ProbeConfig(delta=0.5, epsilon=0.1)
    with pytest.raises(ValueError):
        ProbeConfig(delta=0.0, epsilon=0.1)
    with pytest.raises(ValueError):
        ProbeConfig(delta=0.5, epsilon=1.0)


def test_probe_factorization_representation():
    G = subgroup_of_order(P13, 12)
    A = value_set(P13, [1, 2, 3, 4])
    B = value_set(P13, [0, 4, 8])
    r = probe_factorization(parse_bipoly("x+y", P13), A, B, G, ProbeConfig(0.5, 0.2))
    assert r.is_representation
    assert r.image_size == 12
    assert r.exponent_a == pytest.approx(math.log(4) / math.log(12), rel=1e-12)
    assert r.exponent_b == pytest.approx(math.log(3) / math.log(12), rel=1e-12)
    assert r.min_q == 2
    # 12^{0.3} = 2.1, 12^{0.7} = 5.7: both 4 and 3 inside the band
    assert r.in_band


def test_probe_factorization_not_representation():
    G = subgroup_of_order(P13, 12)
    A = value_set(P13, [1, 2])
    B = value_set(P13, [1, 2])
    r = probe_factorization(parse_bipoly("x+y", P13), A, B, G, ProbeConfig(0.5, 0.2))
    assert not r.is_representation
    assert r.image_size == 3


def test_probe_factorization_preconditions():
    G = subgroup_of_order(P13, 12)
    small = value_set(P13, [1])
    ok = value_set(P13, [1, 2])
    with pytest.raises(ValueError):
        probe_factorization(parse_bipoly("x+y", P13), small, ok, G, ProbeConfig(0.5, 0.2))
    with pytest.raises(NotRequired):
        probe_factorization(parse_bipoly("x*y+x", P13), ok, ok, G, ProbeConfig(0.5, 0.2))
    with pytest.raises(ValueError):
        probe_factorization(
            parse_bipoly("x+y", P13), ok, ok, subgroup_of_order(P13, 1), ProbeConfig(0.5, 0.2)
        )
