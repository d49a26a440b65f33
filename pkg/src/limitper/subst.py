"""Constant-length substitution systems on words and on square blocks.

A system replaces every cell of a labelled pattern by a fixed image: a word
of length b in one dimension, a b x b block in two.  Iterating a system on a
legal two-cell (or 2 x 2) seed straddling the origin grows nested centred
windows of its bi-infinite fixed point.  The engine is generic over the
alphabet; the built-in rule files ship as package data under ``rules/``.

Coordinate convention for blocks: the pattern assigns a label to each cell
of Z^2, arrays are indexed ``labels[iy, ix]`` with both indices increasing
with the coordinate, and a rule file lists block rows top line first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

__all__ = [
    "RuleError",
    "RuleSyntaxError",
    "RuleSemanticError",
    "SubstitutionSystem",
    "PatternWindow",
    "parse_rules",
    "render_rules",
    "load_rules",
    "bundled_system",
    "bundled_names",
    "word_seed",
    "block_seed",
    "substitute",
    "check_seed_legal",
    "fixed_point_window",
    "natural_frequencies",
]


class RuleError(ValueError):
    """A substitution rule file or rule set is unusable."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RuleSyntaxError(RuleError):
    """Malformed rule text (unreadable line, bad header)."""


class RuleSemanticError(RuleError):
    """Readable text describing an inconsistent system."""


@dataclass(frozen=True, eq=False)
class SubstitutionSystem:
    """A constant-length substitution rule set.

    ``images[i]`` is the image of letter i: a (factor,) array of letter
    indices for a word system, a (factor, factor) array for a block system
    with row index increasing with the y coordinate.
    """

    alphabet: tuple[str, ...]
    kind: str
    factor: int
    images: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("word", "block"):
            raise RuleSemanticError(f"unknown kind: {self.kind!r}")
        if self.factor < 2:
            raise RuleSemanticError(f"expansion factor must be >= 2, got {self.factor}")
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise RuleSemanticError("alphabet letters must be distinct and non-empty")
        if len(self.images) != len(self.alphabet):
            raise RuleSemanticError("one image per letter required")
        shape = (self.factor,) if self.kind == "word" else (self.factor, self.factor)
        for letter, img in zip(self.alphabet, self.images):
            if img.shape != shape:
                raise RuleSemanticError(
                    f"rule {letter!r}: image shape {img.shape} does not match factor {self.factor}"
                )
            if img.min() < 0 or img.max() >= len(self.alphabet):
                raise RuleSemanticError(f"rule {letter!r}: image uses an unknown letter index")
            img.setflags(write=False)

    @property
    def dim(self) -> int:
        return 1 if self.kind == "word" else 2

    def index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise KeyError(f"letter {letter!r} is not in the alphabet") from None

    def image_lut(self) -> np.ndarray:
        """All images stacked: shape (letters, factor) or (letters, factor, factor)."""
        return np.stack(self.images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubstitutionSystem):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.kind == other.kind
            and self.factor == other.factor
            and all(np.array_equal(a, b) for a, b in zip(self.images, other.images))
        )

    def power(self, exponent: int) -> "SubstitutionSystem":
        """The substitution applied `exponent` times as a single rule set."""
        if exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {exponent}")
        images = []
        for img in self.images:
            out = img
            for _ in range(exponent - 1):
                out = _expand_labels(self, out)
            images.append(out)
        return SubstitutionSystem(
            alphabet=self.alphabet,
            kind=self.kind,
            factor=self.factor**exponent,
            images=tuple(images),
        )

    def count_matrix(self) -> list[list[int]]:
        """M[i][j] = number of cells carrying letter i in the image of letter j."""
        k = len(self.alphabet)
        mat = [[0] * k for _ in range(k)]
        for j, img in enumerate(self.images):
            counts = np.bincount(img.ravel(), minlength=k)
            for i in range(k):
                mat[i][j] = int(counts[i])
        return mat

    def is_primitive(self) -> bool:
        """True iff some power of the count matrix is strictly positive."""
        k = len(self.alphabet)
        adj = np.array(self.count_matrix(), dtype=bool)
        power = adj.copy()
        # Wielandt bound: a primitive k x k matrix is positive by power (k-1)^2 + 1.
        for _ in range((k - 1) ** 2 + 1):
            if power.all():
                return True
            power = power @ adj
        return bool(power.all())


@dataclass(frozen=True, eq=False)
class PatternWindow:
    """A finite labelled patch of Z or Z^2.

    ``labels`` is 1D (n,) or 2D (ny, nx); entry [iy, ix] belongs to the cell
    (origin[0] + ix, origin[1] + iy).
    """

    origin: tuple[int, ...]
    labels: np.ndarray

    def __post_init__(self) -> None:
        if self.labels.ndim != len(self.origin) or self.labels.ndim not in (1, 2):
            raise ValueError(
                f"origin {self.origin} does not match a {self.labels.ndim}-dimensional label array"
            )
        self.labels.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.labels.ndim

    @property
    def extent(self) -> tuple[int, ...]:
        if self.dim == 1:
            return (self.labels.shape[0],)
        ny, nx = self.labels.shape
        return (nx, ny)

    def label_at(self, pos) -> int:
        if self.dim == 1:
            x = pos if isinstance(pos, int) else pos[0]
            return int(self.labels[x - self.origin[0]])
        x, y = pos
        return int(self.labels[y - self.origin[1], x - self.origin[0]])

    def subwindow(self, origin: tuple[int, ...], extent: tuple[int, ...]) -> "PatternWindow":
        """The sub-patch with the given origin and per-axis extent."""
        if self.dim == 1:
            i0 = origin[0] - self.origin[0]
            if i0 < 0 or i0 + extent[0] > self.labels.shape[0]:
                raise ValueError("subwindow reaches outside the patch")
            return PatternWindow(origin, self.labels[i0 : i0 + extent[0]])
        ix = origin[0] - self.origin[0]
        iy = origin[1] - self.origin[1]
        nx, ny = extent
        if ix < 0 or iy < 0 or iy + ny > self.labels.shape[0] or ix + nx > self.labels.shape[1]:
            raise ValueError("subwindow reaches outside the patch")
        return PatternWindow(origin, self.labels[iy : iy + ny, ix : ix + nx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PatternWindow):
            return NotImplemented
        return self.origin == other.origin and np.array_equal(self.labels, other.labels)


def _expand_labels(system: SubstitutionSystem, arr: np.ndarray) -> np.ndarray:
    """Replace every cell of `arr` by its rule image (no origin bookkeeping)."""
    b = system.factor
    lut = system.image_lut()
    if arr.ndim == 1:
        out = np.empty(arr.shape[0] * b, dtype=arr.dtype)
        for dx in range(b):
            out[dx::b] = lut[arr, dx]
        return out
    ny, nx = arr.shape
    out = np.empty((ny * b, nx * b), dtype=arr.dtype)
    for dy in range(b):
        for dx in range(b):
            out[dy::b, dx::b] = lut[arr, dy, dx]
    return out


def substitute(system: SubstitutionSystem, patch: PatternWindow) -> PatternWindow:
    """Apply the rule once: the cell at p maps to its image at factor * p + offsets."""
    if patch.dim != system.dim:
        raise ValueError(f"{system.kind} system cannot act on a {patch.dim}-dimensional patch")
    if patch.labels.size and int(patch.labels.max()) >= len(system.alphabet):
        raise ValueError("patch uses a letter index outside the system alphabet")
    origin = tuple(system.factor * o for o in patch.origin)
    if patch.labels.size == 0:
        return PatternWindow(origin, patch.labels.copy())
    return PatternWindow(origin, _expand_labels(system, patch.labels))


def word_seed(system: SubstitutionSystem, left: str, right: str) -> PatternWindow:
    """The two-letter seed left|right occupying cells -1 and 0."""
    if system.dim != 1:
        raise ValueError("word seeds belong to word systems")
    labels = np.array([system.index(left), system.index(right)], dtype=np.uint8)
    return PatternWindow((-1,), labels)


def block_seed(system: SubstitutionSystem, rows_top_down) -> PatternWindow:
    """The 2 x 2 seed on {-1, 0}^2, given as ((top-left, top-right), (bottom-left, bottom-right))."""
    if system.dim != 2:
        raise ValueError("block seeds belong to block systems")
    (tl, tr), (bl, br) = rows_top_down
    labels = np.array(
        [[system.index(bl), system.index(br)], [system.index(tl), system.index(tr)]],
        dtype=np.uint8,
    )
    return PatternWindow((-1, -1), labels)


def _require_seed_shape(seed: PatternWindow) -> None:
    if seed.extent != (2,) * seed.dim or seed.origin != (-1,) * seed.dim:
        raise ValueError("a seed is a 2-cell-per-axis patch centred on the origin")


def check_seed_legal(system: SubstitutionSystem, seed: PatternWindow) -> bool:
    """True iff substituting the seed reproduces it on the central cells.

    That nesting is exactly what makes repeated substitution converge to a
    two-sided fixed point: each pass extends the previous window outward
    without rewriting it.
    """
    _require_seed_shape(seed)
    image = substitute(system, seed)
    central = image.subwindow((-1,) * seed.dim, (2,) * seed.dim)
    return central == seed


def fixed_point_window(
    system: SubstitutionSystem, seed: PatternWindow, iterations: int
) -> PatternWindow:
    """The window [-b^n, b^n)^d of the fixed point grown from a legal seed."""
    if iterations < 0:
        raise ValueError(f"negative iteration count: {iterations}")
    if not check_seed_legal(system, seed):
        raise ValueError("seed is not legal for this system (no fixed point through it)")
    window = seed
    for _ in range(iterations):
        window = substitute(system, window)
    return window


def _nullspace_vector(rows: list[list[Fraction]]) -> list[Fraction]:
    """One non-zero kernel vector of a square matrix with 1-dimensional kernel."""
    n = len(rows)
    mat = [row[:] for row in rows]
    pivots: list[tuple[int, int]] = []
    rank_row = 0
    for col in range(n):
        pivot = next((r for r in range(rank_row, n) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank_row], mat[pivot] = mat[pivot], mat[rank_row]
        inv = mat[rank_row][col]
        mat[rank_row] = [v / inv for v in mat[rank_row]]
        for r in range(n):
            if r != rank_row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [v - factor * w for v, w in zip(mat[r], mat[rank_row])]
        pivots.append((rank_row, col))
        rank_row += 1
    pivot_cols = {col for _, col in pivots}
    free_cols = [c for c in range(n) if c not in pivot_cols]
    if not free_cols:
        raise ValueError("matrix has trivial kernel")
    vec = [Fraction(0)] * n
    vec[free_cols[0]] = Fraction(1)
    for row, col in pivots:
        vec[col] = -mat[row][free_cols[0]]
    return vec


def natural_frequencies(system: SubstitutionSystem) -> dict[str, Fraction]:
    """Exact per-letter cell frequencies of any fixed point of the system.

    For a constant-length rule the dominant eigenvalue of the count matrix is
    the cell count factor^dim, so the frequency vector solves an exact linear
    system over the rationals.  Requires a primitive rule set.
    """
    if not system.is_primitive():
        raise ValueError("substitution is not primitive; letter frequencies are not unique")
    lam = system.factor**system.dim
    counts = system.count_matrix()
    k = len(system.alphabet)
    rows = [
        [Fraction(counts[i][j] - (lam if i == j else 0)) for j in range(k)] for i in range(k)
    ]
    vec = _nullspace_vector(rows)
    total = sum(vec)
    if total == 0:
        raise ValueError("degenerate frequency vector")
    vec = [v / total for v in vec]
    if any(v <= 0 for v in vec):
        raise ValueError("frequency vector is not strictly positive")
    return dict(zip(system.alphabet, vec))


_HEADER_KEYS = ("kind", "factor", "alphabet")


def parse_rules(text: str) -> SubstitutionSystem:
    """Parse the rule DSL.

    Format: header lines ``kind = word | block``, ``factor = b`` and
    ``alphabet = l1 l2 ...`` in any order, then one rule per letter.  A word
    rule is ``l -> l1 l2 ... lb`` on one line; a block rule is ``l ->``
    followed by b indented lines of b labels, top row first.  Lines starting
    with ``#`` and blank lines are ignored.
    """
    kind: str | None = None
    factor: int | None = None
    alphabet: tuple[str, ...] | None = None
    rule_rows: dict[str, list[list[str]]] = {}
    rule_lines: dict[str, int] = {}

    lines = text.splitlines()
    pos = 0
    seen_rule = False
    while pos < len(lines):
        raw = lines[pos]
        lineno = pos + 1
        pos += 1
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line and "=" in line:
            key, _, value = (part.strip() for part in line.partition("="))
            if key not in _HEADER_KEYS:
                raise RuleSyntaxError(f"unknown header key {key!r}", lineno)
            if seen_rule:
                raise RuleSyntaxError("header line after the first rule", lineno)
            if key == "kind":
                if value not in ("word", "block"):
                    raise RuleSyntaxError(f"kind must be 'word' or 'block', got {value!r}", lineno)
                kind = value
            elif key == "factor":
                try:
                    factor = int(value)
                except ValueError:
                    raise RuleSyntaxError(f"factor must be an integer, got {value!r}", lineno) from None
                if factor < 2:
                    raise RuleSemanticError(f"factor must be >= 2, got {factor}", lineno)
            else:
                letters = tuple(value.split())
                if not letters:
                    raise RuleSyntaxError("empty alphabet", lineno)
                if len(set(letters)) != len(letters):
                    raise RuleSemanticError("alphabet letters must be distinct", lineno)
                alphabet = letters
            continue
        if "->" in line:
            if kind is None or factor is None or alphabet is None:
                raise RuleSyntaxError("rule before a complete header (kind, factor, alphabet)", lineno)
            seen_rule = True
            lhs, _, rhs = (part.strip() for part in line.partition("->"))
            if len(lhs.split()) != 1:
                raise RuleSyntaxError(f"rule left side must be a single letter, got {lhs!r}", lineno)
            if lhs not in alphabet:
                raise RuleSemanticError(f"rule for unknown letter {lhs!r}", lineno)
            if lhs in rule_rows:
                raise RuleSemanticError(f"duplicate rule for letter {lhs!r}", lineno)
            if kind == "word":
                tokens = rhs.split()
                if len(tokens) != factor:
                    raise RuleSemanticError(
                        f"rule {lhs!r}: non-constant length (expected {factor} letters, got {len(tokens)})",
                        lineno,
                    )
                rule_rows[lhs] = [tokens]
            else:
                if rhs:
                    raise RuleSyntaxError(
                        f"rule {lhs!r}: block rows belong on the following indented lines", lineno
                    )
                rows: list[list[str]] = []
                while len(rows) < factor:
                    if pos >= len(lines):
                        raise RuleSemanticError(
                            f"rule {lhs!r}: expected {factor} block rows, file ended after {len(rows)}",
                            lineno,
                        )
                    row_raw = lines[pos]
                    row_lineno = pos + 1
                    pos += 1
                    if not row_raw.strip() or row_raw.strip().startswith("#"):
                        continue
                    if not row_raw[0].isspace():
                        raise RuleSemanticError(
                            f"rule {lhs!r}: expected {factor} indented block rows, got {len(rows)}",
                            row_lineno,
                        )
                    tokens = row_raw.split()
                    if len(tokens) != factor:
                        raise RuleSemanticError(
                            f"rule {lhs!r}: block row has {len(tokens)} labels, expected {factor}",
                            row_lineno,
                        )
                    rows.append(tokens)
                rule_rows[lhs] = rows
            rule_lines[lhs] = lineno
            continue
        raise RuleSyntaxError(f"unrecognised line: {line!r}", lineno)

    if kind is None or factor is None or alphabet is None:
        raise RuleSyntaxError("missing header line(s): kind, factor and alphabet are required")
    missing = [letter for letter in alphabet if letter not in rule_rows]
    if missing:
        raise RuleSemanticError(f"no rule for letter(s): {', '.join(repr(m) for m in missing)}")

    index = {letter: i for i, letter in enumerate(alphabet)}
    images = []
    for letter in alphabet:
        rows = rule_rows[letter]
        for token in (t for row in rows for t in row):
            if token not in index:
                raise RuleSemanticError(
                    f"rule {letter!r} uses unknown letter {token!r}", rule_lines[letter]
                )
        if kind == "word":
            images.append(np.array([index[t] for t in rows[0]], dtype=np.uint8))
        else:
            # Text lists the top row first; the array stores low y first.
            images.append(np.array([[index[t] for t in row] for row in reversed(rows)], dtype=np.uint8))
    return SubstitutionSystem(alphabet=alphabet, kind=kind, factor=factor, images=tuple(images))


def render_rules(system: SubstitutionSystem) -> str:
    """Canonical rule text; parse_rules(render_rules(s)) == s."""
    out = [
        f"kind = {system.kind}",
        f"factor = {system.factor}",
        f"alphabet = {' '.join(system.alphabet)}",
    ]
    for letter, img in zip(system.alphabet, system.images):
        if system.kind == "word":
            out.append(f"{letter} -> {' '.join(system.alphabet[i] for i in img)}")
        else:
            out.append(f"{letter} ->")
            for row in img[::-1]:
                out.append("  " + " ".join(system.alphabet[i] for i in row))
    return "\n".join(out) + "\n"


def load_rules(path) -> SubstitutionSystem:
    """Parse a rule file from disk."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_rules(handle.read())


_BUNDLED = ("period_doubling", "chair")


def bundled_names() -> tuple[str, ...]:
    return _BUNDLED


def bundled_system(name: str) -> SubstitutionSystem:
    """One of the rule sets shipped with the package."""
    if name not in _BUNDLED:
        raise ValueError(f"unknown bundled system {name!r}; available: {', '.join(_BUNDLED)}")
    text = resources.files(__package__).joinpath(f"rules/{name}.sub").read_text(encoding="utf-8")
    return parse_rules(text)
