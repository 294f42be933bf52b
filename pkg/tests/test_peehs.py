import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from silverink import peehs
from silverink.errors import BadMagic, BorderPixel, CapacityExceeded, HeaderOverflow, MalformedMap
from silverink.peehs import (
    capacity,
    choose_threshold,
    embed,
    embed_record,
    expand_error,
    extract,
    extract_record,
    predict,
    read_header,
    recover_error,
)
from silverink.synthetic import gradient, noise, smooth, texture

from oracles import brute_capacity, brute_embed


def cross(left, below, right, above):
    p = np.zeros((3, 3), np.uint8)
    p[1, 0], p[2, 1], p[1, 2], p[0, 1] = left, below, right, above
    return p


@pytest.mark.parametrize(
    "nbrs, expected", [((10, 20, 30, 41), 25), ((0, 0, 0, 0), 0), ((255, 255, 255, 255), 255)]
)
def test_predict(nbrs, expected):
    assert predict(cross(*nbrs), 1, 1) == expected


@pytest.mark.parametrize("m, n", [(0, 1), (1, 0), (2, 1), (1, 2)])
def test_predict_border(m, n):
    with pytest.raises(BorderPixel):
        predict(np.zeros((3, 3), np.uint8), m, n)


def test_expand_examples():
    assert expand_error(3, 1, 5) == 7
    assert expand_error(7, 0, 5) == 12
    assert expand_error(-6, 1, 5) == -11


def test_recover_examples():
    assert recover_error(7, 5) == (3, 1)
    assert recover_error(12, 5) == (7, None)
    assert recover_error(-11, 5) == (-6, None)


def test_recover_floors_negative_odd():
    # -3 // 2 must be -2 (toward -inf), giving w = 1
    assert recover_error(-3, 5) == (-2, 1)
    assert recover_error(-1, 1) == (-1, 1)
    assert recover_error(-2, 1) == (-1, 0)


def test_expand_recover_exhaustive():
    for T in range(1, 9):
        for d in range(-128, 128):
            for w in (0, 1):
                got = recover_error(expand_error(d, w, T), T)
                expected = (d, w) if -T <= d < T else (d, None)
                assert got == expected, (d, w, T)


def test_capacity_constant_plane():
    plane = np.full((10, 12), 100, np.uint8)
    assert capacity(plane, 1) == 8 * 10


def test_capacity_large_T_counts_all():
    plane = smooth(20, 20, np.random.default_rng(3))
    assert capacity(plane, 120) <= 18 * 18
    assert capacity(plane, 60) == brute_capacity(plane, 60)


def test_capacity_noise_matches_brute_force(rng):
    plane = rng.integers(0, 256, (16, 16)).astype(np.uint8)
    for T in (1, 2, 5):
        assert capacity(plane, T) == brute_capacity(plane, T)


def test_capacity_monotone(rng):
    plane = noise(40, 40, rng, sigma=20)
    caps = [capacity(plane, T) for T in range(1, 40)]
    assert caps == sorted(caps)


def test_choose_threshold_empty_payload():
    assert choose_threshold(gradient(64, 128), 0) == 1


def test_choose_threshold_too_much():
    plane = gradient(32, 96)
    with pytest.raises(CapacityExceeded):
        choose_threshold(plane, 30 * 94 + 1)


@pytest.mark.parametrize(
    "make, bpp, expect_above_one",
    [
        (lambda r: smooth(256, 256, r), 0.05, False),
        (lambda r: noise(256, 256, r, sigma=20), 0.05, True),
        (lambda r: texture(256, 256, r), 0.7, True),
    ],
    ids=["smooth", "noise20", "texture"],
)
def test_choose_threshold_minimal(rng, make, bpp, expect_above_one):
    plane = make(rng)
    payload = int(bpp * 256 * 256)
    T = choose_threshold(plane, payload)

    def needed(t):
        over = peehs._static_pass_stats(plane, t)[1]
        return payload + peehs.header_size(over)

    assert needed(T) <= capacity(plane, T)
    assert (T > 1) == expect_above_one
    if T > 1:
        assert capacity(plane, T - 1) < needed(T - 1)


# --- toy scale, record based ---------------------------------------------

def toy_planes():
    rng = np.random.default_rng(7)
    yield np.full((6, 6), 128, np.uint8)
    yield gradient(6, 6)
    yield np.array([[0, 255] * 3, [255, 0] * 3] * 3, np.uint8)
    for _ in range(6):
        yield noise(6, 6, rng, sigma=2)
    for _ in range(3):
        yield rng.integers(0, 256, (6, 6)).astype(np.uint8)


def all_payloads(max_len=4):
    for n in range(max_len + 1):
        yield from itertools.product((0, 1), repeat=n)


@pytest.mark.parametrize("T", [1, 2])
def test_toy_exhaustive_against_oracle(T):
    checked = 0
    for plane in toy_planes():
        for bits in all_payloads():
            try:
                expected, expected_map = brute_embed(plane, bits, T)
            except CapacityExceeded:
                with pytest.raises(CapacityExceeded):
                    embed_record(plane, bits, T)
                continue
            marked, record = embed_record(plane, bits, T)
            assert marked.tolist() == expected
            assert list(record.location_map) == expected_map
            got_bits, restored = extract_record(marked, record)
            assert got_bits.tolist() == list(bits)
            assert np.array_equal(restored, plane)
            checked += 1
    assert checked > 100


# --- self-describing embedding ---------------------------------------------

def test_empty_payload_constant_plane():
    plane = np.full((16, 128), 128, np.uint8)
    marked = embed(plane, [])
    assert read_header(marked).threshold == 1
    assert np.abs(marked.astype(int) - plane).max() <= 1
    payload, restored = extract(marked)
    assert payload.size == 0
    assert np.array_equal(restored, plane)


@pytest.mark.parametrize(
    "make",
    [
        lambda r: noise(40, 100, r, sigma=3),
        lambda r: noise(33, 97, r, sigma=25),
        lambda r: smooth(64, 96, r),
        lambda r: texture(48, 120, r),
        lambda r: gradient(30, 200, lo=20, hi=230),
    ],
    ids=["noise3", "noise25", "smooth", "texture", "gradient"],
)
@pytest.mark.parametrize("fraction", [0.0, 0.3, 0.6, 0.9])
def test_round_trip(rng, make, fraction):
    plane = make(rng)
    T0 = 8
    n = int(fraction * (capacity(plane, T0) - peehs.header_size(0)))
    bits = rng.integers(0, 2, max(n, 0))
    marked = embed(plane, bits)
    payload, restored = extract(marked)
    assert np.array_equal(payload, bits)
    assert np.array_equal(restored, plane)


def _marked_with_state(plane, bits, T):
    """Embed, then reconstruct which interior pixels were skipped."""
    marked = embed(plane, bits, T)
    header = read_header(marked)
    return marked, header


def test_bounded_distortion_and_skips(rng):
    plane = noise(60, 300, rng, sigma=3, mean=128)
    # isolated extremes whose shifted values would leave [0, 255]
    for m, n, v in [(1, 11, 255), (1, 41, 0), (2, 100, 255), (3, 7, 0), (3, 201, 255)]:
        plane[m, n] = v
    bits = rng.integers(0, 2, 1500)
    T = 6
    marked, header = _marked_with_state(plane, bits, T)
    diff = np.abs(marked.astype(int) - plane.astype(int))
    interior = diff[1:-1, 1:-1]
    assert interior.max() <= T
    h, w = plane.shape
    for idx in header.location_map:
        m, n = divmod(idx, w)
        assert marked[m, n] == plane[m, n]
    assert len(header.location_map) > 0
    # only LSBs change in row 0; other borders never change
    assert (diff[0] <= 1).all()
    assert not diff[-1].any() and not diff[:, 0].any() and not diff[:, -1].any()
    payload, restored = extract(marked)
    assert np.array_equal(payload, bits)
    assert np.array_equal(restored, plane)


def test_saturated_plane_has_no_capacity():
    with pytest.raises(CapacityExceeded):
        embed(np.full((20, 100), 255, np.uint8), [1, 0, 1])


def test_narrow_plane_header_overflow():
    with pytest.raises(HeaderOverflow):
        embed(np.full((40, 40), 100, np.uint8), [1])


def test_too_much_payload(rng):
    plane = noise(20, 100, rng)
    with pytest.raises(CapacityExceeded):
        embed(plane, np.zeros(18 * 98 + 1, np.uint8))


def test_explicit_threshold(rng):
    plane = noise(30, 100, rng, sigma=5)
    bits = rng.integers(0, 2, 300)
    marked = embed(plane, bits, T=9)
    assert read_header(marked).threshold == 9
    payload, restored = extract(marked)
    assert np.array_equal(payload, bits) and np.array_equal(restored, plane)


def test_bad_magic(rng):
    with pytest.raises(BadMagic):
        extract(noise(20, 100, rng) & 0xFE)


def test_header_too_narrow():
    with pytest.raises(BadMagic):
        read_header(np.zeros((10, 50), np.uint8))


def test_malformed_map(rng):
    plane = noise(20, 200, rng, sigma=3)
    marked = embed(plane, [1, 1, 0])
    # claim one map entry pointing at the border pixel 0
    bits = peehs._header_bits(1, 3, (0,))
    bad = marked.copy()
    bad[0, : bits.size] = (bad[0, : bits.size] & 0xFE) | bits
    with pytest.raises(MalformedMap):
        extract(bad)


def test_header_layout(rng):
    plane = noise(20, 100, rng, sigma=3)
    marked = embed(plane, np.ones(37, np.uint8), T=3)
    lsb = (marked[0] & 1).tolist()
    word = lambda a, b: int("".join(map(str, lsb[a:b])), 2)
    assert word(0, 16) == 0xA5C3
    assert word(16, 20) == 1
    assert word(20, 27) == 3
    assert word(27, 59) == 37
    assert word(59, 75) == 0
    # everything after the header keeps its original value
    assert np.array_equal(marked[0, 75:], plane[0, 75:])


@settings(max_examples=25, deadline=None)
@given(
    st.integers(3, 24),
    st.integers(75, 110),
    st.integers(0, 2**32 - 1),
    st.floats(0, 0.9),
    st.sampled_from([2.0, 8.0, 40.0]),
)
def test_reversibility_property(h, w, seed, fraction, sigma):
    r = np.random.default_rng(seed)
    plane = noise(h, w, r, sigma=sigma)
    n = int(fraction * max(capacity(plane, 4) - 75, 0))
    bits = r.integers(0, 2, n)
    try:
        marked = embed(plane, bits)
    except (CapacityExceeded, HeaderOverflow):
        return
    payload, restored = extract(marked)
    assert np.array_equal(payload, bits)
    assert np.array_equal(restored, plane)
