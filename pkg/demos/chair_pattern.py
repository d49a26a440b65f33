"""
The chair coloring and its symmetries
=====================================

Grow the four-color block fixed point, read isolated cells by halving
coordinates, render a patch, and verify the eightfold color symmetry.
"""

from pathlib import Path

from limitper import chair
from limitper.render import window_pgm, window_text
from limitper.subst import PatternWindow

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

# Two iterations of the block rule on the legal seed fill [-4, 4)^2.
window = chair.pattern_window(2)
print("central 8x8 block (top row first):")
print(window_text(window, chair.system().alphabet), end="")

# Single cells come from repeatedly halving the coordinates; no patch is
# grown.  The two routes agree everywhere.
print("label at (10**9, -10**9):", chair.label((10**9, -10**9)))
grid = chair.label_grid(-4, 4, -4, 4)
assert (grid == window.labels).all()

# Each color occupies a quarter of the plane in density.
big = chair.label_grid(-512, 512, -512, 512)
for colour in range(4):
    share = (big == colour).mean()
    print(f"color {colour} share in a 1024^2 box: {share:.4f}")

# A greyscale image makes the limit-periodic structure visible.
patch = PatternWindow((-64, -64), chair.label_grid(-64, 64, -64, 64))
(OUT / "chair_patch.pgm").write_text(window_pgm(patch, 4))
print(f"wrote {OUT / 'chair_patch.pgm'}")

# The coloring is fixed by the full symmetry group of the square once each
# motion is followed by its matching permutation of the colors.
centred = PatternWindow((-128, -128), chair.label_grid(-128, 128, -128, 128))
for element in chair.d4_elements():
    assert chair.apply_d4(element, centred) == centred
    print(f"{element.name:5s} fixes the window (colors permuted {element.color_perm})")
