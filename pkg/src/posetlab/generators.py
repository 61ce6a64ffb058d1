"""Deterministic constructors for the built-in test families.

Everything here is reproducible: identical parameters give identical
instances, element identifiers included, so emitted JSON is byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import SimplicialComplex
from .errors import SizeLimitError, UnsupportedKindError
from .poset import FinitePoset

_MASK64 = (1 << 64) - 1


class XorShift64Star:
    """xorshift64* stream: x ^= x>>12; x ^= x<<25; x ^= x>>27; out = x * 2685821657736338717.

    Seeded by adding the splitmix64 increment 0x9E3779B97F4A7C15 so seed 0 is
    usable; the update constants are fixed so instances are portable.
    """

    MULTIPLIER = 2685821657736338717
    SEED_OFFSET = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = (int(seed) + self.SEED_OFFSET) & _MASK64 or self.SEED_OFFSET

    def next_word(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULTIPLIER) & _MASK64

    def next_bit(self) -> int:
        return self.next_word() >> 63


def _subset_id(subset):
    return "".join(str(i) for i in sorted(subset)) or "e"


def boolean_lattice(n: int) -> FinitePoset:
    """Subsets of {1..n}; identifiers are digit strings, 'e' for the empty set."""
    if not 0 <= n <= 6:
        raise SizeLimitError("Boolean lattice order", 6)
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    elements = [_subset_id(s) for s in subsets]
    covers = []
    for s in subsets:
        for extra in range(1, n + 1):
            if extra not in s:
                covers.append((_subset_id(s), _subset_id(s | {extra})))
    return FinitePoset.from_covers(elements, covers, name=f"boolean-{n}")


def _cube_face_id(word: str) -> str:
    return word if word else "c"


def cube_face_lattice(n: int) -> FinitePoset:
    """Faces of the n-cube as words over {0,1,x}, plus the empty face 'e'.

    The empty face is the minimum; the all-x word (the cube itself) is the
    maximum, so the lattice has 3^n + 1 elements and rank n + 1.
    """
    if not 0 <= n <= 6:
        raise SizeLimitError("cube dimension", 6)
    words = [""]
    for _ in range(n):
        words = [w + c for w in words for c in "01x"]
    elements = ["e"] + [_cube_face_id(w) for w in sorted(words)]
    covers = []
    for w in words:
        if "x" not in w:
            covers.append(("e", _cube_face_id(w)))
        for i, ch in enumerate(w):
            if ch == "x":
                for fixed in "01":
                    covers.append(
                        (_cube_face_id(w[:i] + fixed + w[i + 1 :]), _cube_face_id(w))
                    )
    return FinitePoset.from_covers(elements, covers, name=f"cube-lattice-{n}")


def _face_id(face) -> str:
    return ",".join(sorted(face)) or "e"


def face_poset_of_complex(delta: SimplicialComplex, name=None) -> FinitePoset:
    """Faces ordered by inclusion, with the empty face as minimum."""
    faces = delta.faces()
    elements = [_face_id(f) for f in faces]
    face_set = set(faces)
    covers = []
    for f in faces:
        if len(f) == 0:
            continue
        for pos in range(len(f)):
            sub = f[:pos] + f[pos + 1 :]
            if sub in face_set:
                covers.append((_face_id(sub), _face_id(f)))
    return FinitePoset.from_covers(
        elements, covers, name=name or f"faces({delta.name})"
    )


def simplex_boundary_complex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex on vertices s0..sn."""
    if not 1 <= n <= 6:
        raise SizeLimitError("simplex dimension", 6)
    verts = [f"s{i}" for i in range(n + 1)]
    return SimplicialComplex(
        list(combinations(verts, n)), name=f"simplex-boundary-{n}"
    )


def full_simplex_complex(n: int) -> SimplicialComplex:
    if not 0 <= n <= 6:
        raise SizeLimitError("simplex dimension", 6)
    verts = [f"s{i}" for i in range(n + 1)]
    return SimplicialComplex([tuple(verts)], name=f"simplex-{n}")


def cubical_complex_poset(kind: str, *params) -> FinitePoset:
    """Cubical face posets: 'cube-boundary n', 'grid a b', 'cycle n'."""
    if kind == "cube-boundary":
        (n,) = params
        if not 1 <= n <= 6:
            raise SizeLimitError("cube dimension", 6)
        lattice = cube_face_lattice(n)
        top = lattice.maximal_elements()[0]
        proper = [e for e in lattice.elements if e != top]
        poset = lattice.induced(proper, name=f"cube-boundary-{n}")
        return poset
    if kind == "grid":
        a, b = params
        if not (1 <= a <= 4 and 1 <= b <= 4):
            raise SizeLimitError("grid side", 4)
        return _grid_poset(a, b)
    if kind == "cycle":
        (n,) = params
        if not 3 <= n <= 64:
            raise SizeLimitError("cycle length", 64)
        return _cycle_poset(n)
    raise UnsupportedKindError(kind)


def _grid_poset(a: int, b: int) -> FinitePoset:
    def v(i, j):
        return f"v{i}.{j}"

    def edge(p, q):
        return "|".join(sorted([p, q]))

    def square(i, j):
        corners = sorted([v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)])
        return "|".join(corners)

    elements = ["e"]
    covers = []
    for i in range(a + 1):
        for j in range(b + 1):
            elements.append(v(i, j))
            covers.append(("e", v(i, j)))
    for i in range(a + 1):
        for j in range(b):
            e = edge(v(i, j), v(i, j + 1))
            elements.append(e)
            covers += [(v(i, j), e), (v(i, j + 1), e)]
    for i in range(a):
        for j in range(b + 1):
            e = edge(v(i, j), v(i + 1, j))
            elements.append(e)
            covers += [(v(i, j), e), (v(i + 1, j), e)]
    for i in range(a):
        for j in range(b):
            s = square(i, j)
            elements.append(s)
            covers += [
                (edge(v(i, j), v(i, j + 1)), s),
                (edge(v(i + 1, j), v(i + 1, j + 1)), s),
                (edge(v(i, j), v(i + 1, j)), s),
                (edge(v(i, j + 1), v(i + 1, j + 1)), s),
            ]
    return FinitePoset.from_covers(elements, covers, name=f"grid-{a}x{b}")


def _cycle_poset(n: int) -> FinitePoset:
    verts = [f"v{i}" for i in range(n)]
    elements = ["e"] + verts
    covers = [("e", v) for v in verts]
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        e = "|".join(sorted([a, b]))
        elements.append(e)
        covers += [(a, e), (b, e)]
    return FinitePoset.from_covers(elements, covers, name=f"cycle-{n}")


def simplicial_poset_glue(kind: str, n: int) -> FinitePoset:
    """Simplicial posets that are not face posets of complexes.

    'two-facets-shared-boundary n' glues two n-simplices along their entire
    boundary, leaving two maximal elements over one shared boundary sphere.
    """
    if kind != "two-facets-shared-boundary":
        raise UnsupportedKindError(kind)
    if not 1 <= n <= 5:
        raise SizeLimitError("glued simplex dimension", 5)
    verts = [f"g{i}" for i in range(n + 1)]
    proper = [c for k in range(n + 1) for c in combinations(verts, k)]
    elements = [_face_id(f) for f in proper] + ["A", "B"]
    covers = []
    for f in proper:
        if f:
            for pos in range(len(f)):
                covers.append((_face_id(f[:pos] + f[pos + 1 :]), _face_id(f)))
    for facet in combinations(verts, n):
        covers.append((_face_id(facet), "A"))
        covers.append((_face_id(facet), "B"))
    return FinitePoset.from_covers(elements, covers, name=f"glued-{n}")


def random_pure_subcomplex(n: int, d: int, seed: int) -> SimplicialComplex:
    """A pure d-dimensional facet selection from the (n-1)-simplex.

    Candidate facets are scanned in lexicographic order and kept on a PRNG
    bit; an empty draw falls back to the first candidate.
    """
    if not 1 <= n <= 8:
        raise SizeLimitError("vertex count", 8)
    if not 0 <= d < n:
        raise UnsupportedKindError(f"dimension {d} with {n} vertices")
    verts = [f"r{i}" for i in range(n)]
    rng = XorShift64Star(seed)
    chosen = [f for f in combinations(verts, d + 1) if rng.next_bit()]
    if not chosen:
        chosen = [tuple(verts[: d + 1])]
    return SimplicialComplex(chosen, name=f"random-{n}-{d}-s{seed}")


def path_complex(k: int) -> SimplicialComplex:
    """A path of k edges."""
    if not 1 <= k <= 32:
        raise SizeLimitError("path length", 32)
    return SimplicialComplex(
        [(f"p{i}", f"p{i+1}") for i in range(k)], name=f"path-{k}"
    )


def points_complex(k: int) -> SimplicialComplex:
    if not 1 <= k <= 64:
        raise SizeLimitError("point count", 64)
    return SimplicialComplex([(f"p{i}",) for i in range(k)], name=f"points-{k}")


@dataclass(frozen=True)
class FamilySpec:
    """Name plus parameters; equal specs build identical instances."""

    family: str
    params: tuple = ()

    def build(self):
        return make_family(self.family, *self.params)


def make_family(family: str, *params):
    """Dispatch a family name to its constructor; returns a poset or complex."""
    if family == "boolean":
        return boolean_lattice(*params)
    if family == "cube-lattice":
        return cube_face_lattice(*params)
    if family in ("cube-boundary", "grid", "cycle"):
        return cubical_complex_poset(family, *params)
    if family == "simplex-boundary":
        return face_poset_of_complex(
            simplex_boundary_complex(*params), name=f"simplex-boundary-{params[0]}"
        )
    if family == "glued":
        return simplicial_poset_glue("two-facets-shared-boundary", *params)
    if family == "random":
        return random_pure_subcomplex(*params)
    if family == "random-poset":
        c = random_pure_subcomplex(*params)
        return face_poset_of_complex(c, name=c.name)
    if family == "path":
        return face_poset_of_complex(path_complex(*params), name=f"path-{params[0]}")
    if family == "points":
        return face_poset_of_complex(
            points_complex(*params), name=f"points-{params[0]}"
        )
    if family == "interval":
        base = make_family(*params)
        if not isinstance(base, FinitePoset):
            raise UnsupportedKindError(f"interval over non-poset family {params[0]!r}")
        inner = base.remove_min().interval_poset()
        result = inner.attach_min()
        result.name = f"interval-{base.name}"
        return result
    raise UnsupportedKindError(family)


_SUITE_SPECS = (
    FamilySpec("boolean", (1,)),
    FamilySpec("boolean", (2,)),
    FamilySpec("boolean", (3,)),
    FamilySpec("boolean", (4,)),
    FamilySpec("boolean", (5,)),
    FamilySpec("cube-lattice", (1,)),
    FamilySpec("cube-lattice", (2,)),
    FamilySpec("cube-lattice", (3,)),
    FamilySpec("simplex-boundary", (2,)),
    FamilySpec("simplex-boundary", (3,)),
    FamilySpec("simplex-boundary", (4,)),
    FamilySpec("path", (2,)),
    FamilySpec("points", (3,)),
    FamilySpec("cycle", (3,)),
    FamilySpec("cycle", (4,)),
    FamilySpec("cycle", (5,)),
    FamilySpec("cycle", (6,)),
    FamilySpec("grid", (1, 2)),
    FamilySpec("grid", (2, 2)),
    FamilySpec("grid", (2, 3)),
    FamilySpec("grid", (3, 3)),
    FamilySpec("cube-boundary", (3,)),
    FamilySpec("cube-boundary", (4,)),
    FamilySpec("glued", (2,)),
    FamilySpec("glued", (3,)),
    FamilySpec("random-poset", (5, 2, 1)),
    FamilySpec("random-poset", (6, 2, 2)),
    FamilySpec("random-poset", (6, 3, 3)),
    FamilySpec("interval", ("boolean", 3)),
    FamilySpec("interval", ("cycle", 4)),
    FamilySpec("interval", ("simplex-boundary", 2)),
)


def suite():
    """The built-in poset suite: deterministic (name, poset) pairs."""
    out = []
    for spec in _SUITE_SPECS:
        poset = spec.build()
        out.append((poset.name, poset))
    return out
