import numpy as np
import pytest
from hypothesis import given, settings
from PIL import Image

from qimg.neqr import (ImageFormatError, NeqrImage, UnsupportedBitDepthError, bitplane_cover,
                       bitplane_covers, ideal_map, load_image, position_index, save_pnm)

from strategies import images

# 194 = 11000010, so the MSB plane is set at 00, 01 and 10.
SMALL = [[193, 194], [255, 0]]


@pytest.fixture
def small():
    return NeqrImage.from_array(SMALL)


def write(path, text):
    path.write_bytes(text if isinstance(text, bytes) else text.encode())
    return path


# -- loading -------------------------------------------------------------------

def test_load_plain_pgm(tmp_path, small):
    img = load_image(write(tmp_path / "a.pgm", "P2\n# comment\n2 2\n255\n193 194\n255 0\n"))
    assert (img.h, img.w, img.q, img.channels) == (1, 1, 8, 1)
    np.testing.assert_array_equal(img.pixels, small.pixels)


def test_load_raw_pgm(tmp_path):
    img = load_image(write(tmp_path / "a.pgm", b"P5\n2 2\n255\n" + bytes([193, 194, 255, 0])))
    assert img.pixels[:, :, 0].tolist() == SMALL


def test_load_plain_and_raw_ppm(tmp_path):
    plain = load_image(write(tmp_path / "a.ppm", "P3 1 1 255 1 2 3"))
    raw = load_image(write(tmp_path / "b.ppm", b"P6\n1 1\n255\n\x01\x02\x03"))
    assert plain.channels == raw.channels == 3
    assert plain.pixels[0, 0].tolist() == raw.pixels[0, 0].tolist() == [1, 2, 3]


def test_load_png_gray_and_rgb(tmp_path):
    gray = np.arange(6, dtype=np.uint8).reshape(2, 3)
    Image.fromarray(gray).save(tmp_path / "g.png")
    img = load_image(tmp_path / "g.png")
    assert (img.h, img.w) == (1, 2)
    assert img.pixels[:2, :3, 0].tolist() == gray.tolist()
    rgb = np.zeros((2, 2, 3), dtype=np.uint8)
    rgb[1, 1] = (9, 8, 7)
    Image.fromarray(rgb).save(tmp_path / "c.png")
    assert load_image(tmp_path / "c.png").pixels[1, 1].tolist() == [9, 8, 7]


def test_load_128_square(tmp_path):
    arr = np.random.default_rng(0).integers(0, 256, (128, 128), dtype=np.uint8)
    save_pnm(tmp_path / "x.pgm", NeqrImage.from_array(arr))
    img = load_image(tmp_path / "x.pgm")
    assert (img.h, img.w, img.q) == (7, 7, 8)


def test_padding_three_by_two(tmp_path):
    img = load_image(write(tmp_path / "p.pgm", "P2 2 3 255 1 2 3 4 5 6"))
    assert (img.h, img.w) == (2, 1)
    assert img.pixels[:, :, 0].tolist() == [[1, 2], [3, 4], [5, 6], [0, 0]]


def test_rejects_16_bit(tmp_path):
    with pytest.raises(UnsupportedBitDepthError):
        load_image(write(tmp_path / "d.pgm", "P2 1 1 65535 7"))
    with pytest.raises(UnsupportedBitDepthError):
        load_image(write(tmp_path / "e.pgm", "P2 1 1 15 7"))


def test_rejects_16_bit_png(tmp_path):
    Image.fromarray(np.zeros((2, 2), dtype=np.uint16)).save(tmp_path / "w.png")
    with pytest.raises(UnsupportedBitDepthError):
        load_image(tmp_path / "w.png")


def test_rejects_zero_size(tmp_path):
    with pytest.raises(ImageFormatError):
        load_image(write(tmp_path / "z.pgm", b"P5\n0 0\n255\n"))


def test_rejects_garbage_and_truncation(tmp_path):
    with pytest.raises(ImageFormatError):
        load_image(write(tmp_path / "g.pgm", "hello"))
    with pytest.raises(ImageFormatError):
        load_image(write(tmp_path / "t.pgm", b"P5\n2 2\n255\n\x00"))
    with pytest.raises(ImageFormatError):
        load_image(write(tmp_path / "u.pgm", "P2 2 2 255 1 2"))


def test_missing_file():
    with pytest.raises(OSError):
        load_image("/nonexistent/file.pgm")


def test_image_invariants():
    with pytest.raises(ValueError):
        NeqrImage.from_array([[256]])
    with pytest.raises(ValueError):
        NeqrImage.from_array(np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        NeqrImage(1, 1, 8, 1, np.zeros((2, 3, 1)))


# -- covers ----------------------------------------------------------------------

def test_msb_cover_of_small_image(small):
    assert bitplane_cover(small, 0, 0).cover.cubes == ("00", "01", "10")


def test_all_zero_image_has_empty_covers():
    img = NeqrImage.from_array(np.zeros((4, 4), dtype=int))
    assert all(len(c.cover) == 0 for c in bitplane_covers(img))


def test_constant_255_gives_every_minterm():
    img = NeqrImage.from_array(np.full((2, 4), 255))
    for c in bitplane_covers(img):
        assert c.cover.cubes == ("000", "001", "010", "011", "100", "101", "110", "111")


def test_cover_bit_range(small):
    with pytest.raises(ValueError):
        bitplane_cover(small, 0, 8)


def test_minterm_order_is_y_then_x():
    img = NeqrImage.from_array(np.array([[0, 0, 0, 0], [0, 0, 1, 0]]), q=1)
    # y=1 (one bit), x=2 (two bits)
    assert bitplane_cover(img, 0, 0).cover.cubes == ("110",)


def test_ideal_map(small):
    values = ideal_map(small)
    assert values[position_index(small, 0, 0), 0] == 193
    assert values[position_index(small, 1, 1), 0] == 0
    padded = NeqrImage.from_array([[5, 6, 7]])
    assert ideal_map(padded)[position_index(padded, 0, 3), 0] == 0


@settings(max_examples=60, deadline=None)
@given(images(channels=(1, 3)))
def test_bitplanes_reconstruct_pixels(arr):
    img = NeqrImage.from_array(arr)
    rebuilt = np.zeros((1 << img.num_position_bits, img.channels), dtype=np.int64)
    for lc in bitplane_covers(img):
        assert all("-" not in c for c in lc.cover.cubes)
        for cube in lc.cover.cubes:
            rebuilt[int(cube, 2) if cube else 0, lc.channel] += 1 << (img.q - 1 - lc.bit)
    np.testing.assert_array_equal(rebuilt, ideal_map(img))
    total = sum(len(lc.cover) for lc in bitplane_covers(img))
    assert total == sum(bin(int(v)).count("1") for v in img.pixels.ravel())


def test_random_image_minterm_count_is_about_half_the_bits():
    img = NeqrImage.from_array(np.random.default_rng(11).integers(0, 256, (64, 64)))
    total = sum(len(c.cover) for c in bitplane_covers(img))
    expected = 4 * 64 * 64
    # binomial(8 * 4096, 1/2): sd ~ 90
    assert abs(total - expected) < 6 * 90
