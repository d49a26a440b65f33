"""Rendering tests: exact CSV rows, SVG geometry, PGM and text grids.

Everything rendered must be byte-deterministic, so most assertions here are
golden strings; the SVG checks additionally parse the geometry back out and
verify the proportionality contracts (stem height to |amplitude|, disc area
to intensity).
"""

import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from limitper import render
from limitper.dyadic import Dyadic, DyadicPoint2
from limitper.subst import PatternWindow


def _peak(k, amplitude):
    return render.Peak(k=k, amplitude=amplitude, intensity=abs(amplitude) ** 2)


class TestCsv:
    def test_chain_schema_and_rows(self):
        peaks = [
            _peak(Dyadic(0), 1 / 3 + 0j),
            _peak(Dyadic(1, 1), 2 / 3 + 0j),
        ]
        text = render.peaks_csv(peaks, 1)
        lines = text.splitlines()
        assert lines[0] == "k_num,k_log2den,amp_re,amp_im,intensity"
        assert lines[1].startswith("0,0,0.3333333333333333,0.0,")
        assert lines[2].startswith("1,1,0.6666666666666666,0.0,")
        assert text.endswith("\n")

    def test_plane_schema(self):
        peaks = [_peak(DyadicPoint2(1, -1, 2), 0.25j)]
        text = render.peaks_csv(peaks, 2)
        assert text.splitlines()[0] == "kx_num,ky_num,k_log2den,amp_re,amp_im,intensity"
        assert text.splitlines()[1] == "1,-1,2,0.0,0.25,0.0625"

    def test_negative_zero_is_flushed(self):
        peaks = [_peak(Dyadic(1, 1), complex(-0.0, -0.0))]
        text = render.peaks_csv(peaks, 1)
        assert "-0.0" not in text

    def test_floats_round_trip(self):
        # repr() floats reconstruct the amplitude exactly.
        amplitude = -0.123456789012345 + 0.987654321098765j
        row = render.peaks_csv([_peak(Dyadic(3, 2), amplitude)], 1).splitlines()[1]
        _, _, re_part, im_part, _ = row.split(",")
        assert complex(float(re_part), float(im_part)) == amplitude

    def test_module_csv(self):
        text = render.module_csv([Dyadic(0), Dyadic(1, 2)], 1)
        assert text == "k_num,k_log2den\n0,0\n1,2\n"
        text = render.module_csv([DyadicPoint2(1, 1, 1)], 2)
        assert text == "kx_num,ky_num,k_log2den\n1,1,1\n"

    def test_unsupported_dimension(self):
        with pytest.raises(ValueError):
            render.peaks_csv([], 3)
        with pytest.raises(ValueError):
            render.module_csv([], 0)


class TestStemSvg:
    def test_structure_and_heights(self):
        peaks = [
            _peak(Dyadic(0), 0.5 + 0j),
            _peak(Dyadic(1, 1), 0.25 + 0j),
        ]
        svg = render.stem_svg(peaks, 0, 1)
        root = ET.fromstring(svg)
        lines = [el for el in root if el.tag.endswith("line")]
        # Baseline plus one stem per peak.
        assert len(lines) == 3
        stems = lines[1:]
        heights = [float(s.get("y1")) - float(s.get("y2")) for s in stems]
        assert heights[0] == pytest.approx(400 - 2 * 40)
        assert heights[1] == pytest.approx(heights[0] / 2)
        xs = [float(s.get("x1")) for s in stems]
        assert xs[0] == pytest.approx(40.0)
        assert xs[1] == pytest.approx(40.0 + 0.5 * (800 - 80))

    def test_zero_peaks_render_no_stems(self):
        svg = render.stem_svg([_peak(Dyadic(0), 0j)], 0, 1)
        root = ET.fromstring(svg)
        assert len([el for el in root if el.tag.endswith("line")]) == 1

    def test_empty_range_rejected(self):
        with pytest.raises(ValueError):
            render.stem_svg([], 1, 1)

    def test_determinism(self):
        peaks = [_peak(Dyadic(m, 3), complex(m) / 10) for m in range(1, 8, 2)]
        assert render.stem_svg(peaks, 0, 1) == render.stem_svg(peaks, 0, 1)


class TestDiscSvg:
    def test_areas_proportional_to_intensity(self):
        peaks = [
            render.Peak(k=DyadicPoint2(0, 0, 0), amplitude=1 + 0j, intensity=1.0),
            render.Peak(k=DyadicPoint2(1, 1, 1), amplitude=0.5 + 0j, intensity=0.25),
            render.Peak(k=DyadicPoint2(1, 0, 1), amplitude=0.1 + 0j, intensity=0.01),
        ]
        svg = render.disc_svg(peaks, (-1, 1))
        root = ET.fromstring(svg)
        circles = [el for el in root if el.tag.endswith("circle")]
        assert len(circles) == 3
        radii = [float(c.get("r")) for c in circles]
        intensities = [float(c.get("data-intensity")) for c in circles]
        assert intensities == [1.0, 0.25, 0.01]
        assert radii[0] == pytest.approx(16.0)
        for radius, intensity in zip(radii, intensities):
            assert radius**2 / radii[0] ** 2 == pytest.approx(intensity, rel=1e-12)

    def test_positions_follow_the_region(self):
        peaks = [render.Peak(k=DyadicPoint2(1, 1, 0), amplitude=1 + 0j, intensity=1.0)]
        svg = render.disc_svg(peaks, (-1, 1), (0, 2))
        circle = next(
            el for el in ET.fromstring(svg) if el.tag.endswith("circle")
        )
        # x: 1 is the right edge of [-1, 1]; y: 1 sits mid [0, 2], axis up.
        assert float(circle.get("cx")) == pytest.approx(40 + 720)
        assert float(circle.get("cy")) == pytest.approx(800 - 40 - 0.5 * 720)

    def test_zero_intensity_peaks_are_dropped(self):
        peaks = [render.Peak(k=DyadicPoint2(0, 0, 0), amplitude=0j, intensity=0.0)]
        svg = render.disc_svg(peaks, (-1, 1))
        assert "circle" not in svg

    def test_empty_region_rejected(self):
        with pytest.raises(ValueError):
            render.disc_svg([], (0, 0))


class TestWindowRendering:
    def test_chain_text_with_origin_bar(self):
        window = PatternWindow((-4,), np.array([0, 1, 0, 0, 0, 1, 0, 0], dtype=np.uint8))
        assert render.window_text(window, ("a", "b")) == "abaa|abaa\n"

    def test_chain_text_without_origin(self):
        window = PatternWindow((2,), np.array([0, 1], dtype=np.uint8))
        assert render.window_text(window, ("a", "b")) == "ab\n"
        window = PatternWindow((0,), np.array([0, 1], dtype=np.uint8))
        assert render.window_text(window, ("a", "b")) == "ab\n"

    def test_block_text_prints_top_row_first(self):
        labels = np.array([[2, 1], [3, 0]], dtype=np.uint8)
        window = PatternWindow((-1, -1), labels)
        assert render.window_text(window, "0123") == "3 0\n2 1\n"

    def test_pgm_grid(self):
        labels = np.array([[2, 1], [3, 0]], dtype=np.uint8)
        window = PatternWindow((-1, -1), labels)
        assert render.window_pgm(window, 4) == "P2\n2 2\n255\n255 0\n170 85\n"

    def test_pgm_single_letter(self):
        window = PatternWindow((0, 0), np.zeros((1, 2), dtype=np.uint8))
        assert render.window_pgm(window, 1) == "P2\n2 1\n255\n0 0\n"

    def test_pgm_validation(self):
        chain = PatternWindow((0,), np.zeros(3, dtype=np.uint8))
        with pytest.raises(ValueError):
            render.window_pgm(chain, 2)
        plane = PatternWindow((0, 0), np.zeros((2, 2), dtype=np.uint8))
        with pytest.raises(ValueError):
            render.window_pgm(plane, 0)


class TestFormatting:
    def test_fmt_shortest_round_trip(self):
        assert render._fmt(0.1) == "0.1"
        assert render._fmt(1 / 3) == "0.3333333333333333"
        assert render._fmt(-0.0) == "0.0"
        assert render._fmt(2.0) == "2.0"

    def test_svg_headers_match(self):
        stem = render.stem_svg([], 0, 1)
        disc = render.disc_svg([], (0, 1))
        assert stem.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
        assert disc.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
        assert re.search(r'width="800" height="400"', stem)
        assert re.search(r'width="800" height="800"', disc)
