"""Serial categories: linear quivers A_n and tubes U_n.

Indecomposables are arcs, written (top, length).  Composition factors of
an arc, read from the top down to the socle, are the simples
``top, top-1, ..., top-length+1`` (cyclically for a tube).  For a line
category the arc (top=j, length=l) is the interval module supported on
vertices ``j-l+1 .. j``; under the right-module convention its top simple
sits at the *larger* vertex index j.  The translate tau decreases tops by
one; tau^n = id on a rank-n tube.

Hom dimensions between arcs have a closed form (count of admissible
landing positions of the top basis vector); Ext^1 in a tube is Serre-dual
to a Hom, and on a line it is the Euler defect.  The matrix-level oracle
for all of this lives in :mod:`wpcalc.nilrep` via :func:`realize`.

Thick subcategories are enumerated by the perpendicular recursion: every
non-zero thick subcategory is generated by an indecomposable E together
with a thick subcategory of the perpendicular of E, translated through
the explicit embedding of the perpendicular's factors.  Signatures (the
member arcs of length <= rank) are computed by double orthogonality,
which is valid because every thick subcategory here is admissible.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import nilrep
from .errors import (
    BoundExceeded,
    CategoryMismatch,
    InvalidArc,
    NoTranslationForLine,
    ParseError,
)
from .quiver import Quiver

MAX_CYCLE_RANK = 6
MAX_LINE_RANK = 8


@dataclass(frozen=True)
class SerialCat:
    kind: str  # "line" | "cycle"
    rank: int

    def __post_init__(self):
        if self.kind not in ("line", "cycle"):
            raise InvalidArc(f"unknown serial kind {self.kind!r}")
        if self.kind == "line" and self.rank < 0:
            raise InvalidArc("line rank must be >= 0")
        if self.kind == "cycle" and self.rank < 1:
            raise InvalidArc("cycle rank must be >= 1")

    def __str__(self):
        return ("U(%d)" if self.kind == "cycle" else "A(%d)") % self.rank


def line(n: int) -> SerialCat:
    return SerialCat("line", n)


def cycle(n: int) -> SerialCat:
    return SerialCat("cycle", n)


@dataclass(frozen=True, order=True)
class Arc:
    cat: SerialCat
    top: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise InvalidArc("arc length must be >= 1")
        if self.cat.kind == "cycle":
            object.__setattr__(self, "top", self.top % self.cat.rank)
        else:
            if not 1 <= self.top <= self.cat.rank:
                raise InvalidArc(f"line top {self.top} out of 1..{self.cat.rank}")
            if self.length > self.top:
                raise InvalidArc(
                    f"interval would leave the quiver: top {self.top}, length {self.length}"
                )

    def socle(self) -> int:
        """Index of the bottom composition factor."""
        if self.cat.kind == "cycle":
            return (self.top - self.length + 1) % self.cat.rank
        return self.top - self.length + 1

    def interval(self):
        """(low, high) vertex span; line arcs only."""
        if self.cat.kind != "line":
            raise InvalidArc("interval() is for line arcs")
        return (self.top - self.length + 1, self.top)

    def __str__(self):
        if self.cat.kind == "cycle":
            return f"{self.cat}:arc({self.top},{self.length})"
        lo, hi = self.interval()
        return f"{self.cat}:arc({lo},{hi})"


def line_arc(n: int, i: int, j: int) -> Arc:
    """The interval module on vertices i..j of A_n (i <= j)."""
    if i > j:
        raise InvalidArc(f"empty interval [{i},{j}]")
    return Arc(line(n), j, j - i + 1)


class ArcClass(Enum):
    EXCEPTIONAL = "exceptional"
    SPHERE_LIKE = "sphere_like"
    NEITHER = "neither"


class HomExt(NamedTuple):
    hom: int
    ext1: int


def tau(a: Arc) -> Arc:
    """Translate on a tube: same length, top decremented by one (mod n)."""
    if a.cat.kind != "cycle":
        raise NoTranslationForLine("tau is only defined on tube arcs")
    return Arc(a.cat, (a.top - 1) % a.cat.rank, a.length)


def tau_inv(a: Arc) -> Arc:
    if a.cat.kind != "cycle":
        raise NoTranslationForLine("tau is only defined on tube arcs")
    return Arc(a.cat, (a.top + 1) % a.cat.rank, a.length)


def _count_congruent(lo: int, hi: int, residue: int, n: int) -> int:
    """#{ j in [lo, hi] : j = residue mod n }."""
    if hi < lo:
        return 0
    return (hi - residue) // n - (lo - 1 - residue) // n


@lru_cache(maxsize=65536)
def _hom(x: Arc, y: Arc) -> int:
    """dim Hom(x, y).

    A map is determined by the image of the top basis vector of x, which
    must live in the fiber of y at x.top and die after length(x) shifts.
    """
    if x.cat.kind == "cycle":
        n = x.cat.rank
        lo = max(0, y.length - x.length)
        return _count_congruent(lo, y.length - 1, (y.top - x.top) % n, n)
    a, b = x.interval()
    c, d = y.interval()
    return 1 if a <= c <= b <= d else 0


def _line_euler(x: Arc, y: Arc) -> int:
    a, b = x.interval()
    c, d = y.interval()

    def overlap(lo1, hi1, lo2, hi2):
        return max(0, min(hi1, hi2) - max(lo1, lo2) + 1)

    return overlap(a, b, c, d) - overlap(a, b, c + 1, d + 1)


def dims(x: Arc, y: Arc) -> HomExt:
    """(dim Hom(x,y), dim Ext^1(x,y)) in the serial category."""
    if x.cat != y.cat:
        raise CategoryMismatch(f"arcs live in different categories: {x.cat} vs {y.cat}")
    hom = _hom(x, y)
    if x.cat.kind == "cycle":
        ext1 = _hom(y, tau(x))  # Serre duality in the tube
    else:
        ext1 = hom - _line_euler(x, y)
        assert ext1 >= 0, "line Euler defect went negative"
    return HomExt(hom, ext1)


def classify_arc(a: Arc) -> ArcClass:
    """Exceptional / sphere-like / neither, by length against the rank."""
    if a.cat.kind == "line":
        return ArcClass.EXCEPTIONAL
    n = a.cat.rank
    if a.length < n:
        return ArcClass.EXCEPTIONAL
    if a.length == n:
        return ArcClass.SPHERE_LIKE
    return ArcClass.NEITHER


# -- matrix realization -------------------------------------------------------


@lru_cache(maxsize=None)
def cycle_quiver(n: int) -> Quiver:
    """Oriented cycle Z_n on vertices 0..n-1, arrows i -> i+1 (mod n)."""
    return Quiver(range(n), [(i, (i + 1) % n) for i in range(n)])


@lru_cache(maxsize=None)
def line_quiver(n: int) -> Quiver:
    """Linear quiver A_n on vertices 1..n, arrows i -> i+1."""
    return Quiver(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def realize(a: Arc) -> nilrep.Rep:
    """The arc as a concrete nilpotent representation (shift matrices).

    Basis vector e_k (k = 0..length-1) sits at vertex top-k; the total
    action sends e_k to e_{k+1}.  The matrix of arrow (u, u+1) maps the
    fiber at u+1 into the fiber at u, per the right-module convention.
    """
    if a.cat.kind == "cycle":
        n = a.cat.rank
        q = cycle_quiver(n)
        vertex_of = [(a.top - k) % n for k in range(a.length)]
    else:
        n = a.cat.rank
        q = line_quiver(n)
        vertex_of = [a.top - k for k in range(a.length)]
    fiber = {v: [] for v in q.vertices}
    for k, v in enumerate(vertex_of):
        fiber[v].append(k)
    dims = {v: len(ks) for v, ks in fiber.items()}
    mats = []
    for (u, v) in q.arrows:
        if dims[u] == 0 or dims[v] == 0:
            mats.append([])
            continue
        m = [[Fraction(0)] * dims[v] for _ in range(dims[u])]
        for col, k in enumerate(fiber[v]):
            if k + 1 < a.length and vertex_of[k + 1] == u:
                m[fiber[u].index(k + 1)][col] = Fraction(1)
        mats.append(m)
    return nilrep.Rep(q, dims, mats)


# -- perpendicular categories and embeddings ----------------------------------


@dataclass(frozen=True)
class EmbeddedFactor:
    """One factor of a perpendicular category, with its ambient simples.

    ``simple_images[k]`` is the ambient arc standing for the abstract
    simple: residue k for a cycle factor, vertex k+1 for a line factor.
    The images are consecutive: the block for the abstract simple tau(s)
    sits directly below the block for s.
    """

    cat: SerialCat
    simple_images: tuple  # of Arc

    def embed(self, a: Arc) -> Arc:
        """Ambient arc of an abstract arc of this factor (block concatenation)."""
        if a.cat != self.cat:
            raise CategoryMismatch(f"arc {a} is not in factor {self.cat}")
        imgs = self.simple_images
        s = len(imgs)
        if self.cat.kind == "cycle":
            blocks = [imgs[(a.top - i) % s] for i in range(a.length)]
        else:
            blocks = [imgs[a.top - 1 - i] for i in range(a.length)]
        top_block = blocks[0]
        return Arc(top_block.cat, top_block.top, sum(b.length for b in blocks))


@dataclass(frozen=True)
class Embedding:
    ambient: SerialCat
    factors: tuple  # of EmbeddedFactor

    def mapped_simples(self):
        return [img for f in self.factors for img in f.simple_images]


def perp_arc(e: Arc) -> Embedding:
    """Right perpendicular of an indecomposable, with explicit generators.

    For a tube arc of length m < n the perpendicular is a rank n-m tube
    times A_{m-1}; the tube factor's simples are the later simples
    ``top+1, ..., top+n-m-1`` together with the length m+1 arc over the
    same top, the line factor's simples are the earlier simples
    ``top-m+1, ..., top-1``.  For m = n only the line factor survives.
    Line categories decompose analogously, with the interval one step
    below the removed one extended to its top.
    """
    cat = e.cat
    if cat.kind == "cycle":
        n, m, s = cat.rank, e.length, e.top
        if m > n:
            raise InvalidArc(
                f"perp_arc needs an exceptional or sphere-like arc; length {m} > rank {n}"
            )
        factors = []
        if m < n:
            images = [Arc(cat, s, m + 1)]
            images += [Arc(cat, s + a, 1) for a in range(1, n - m)]
            factors.append(EmbeddedFactor(cycle(n - m), tuple(images)))
        chain = tuple(Arc(cat, s - m + i, 1) for i in range(1, m))
        factors.append(EmbeddedFactor(line(m - 1), chain))
        return Embedding(cat, tuple(factors))

    n, m = cat.rank, e.length
    p, q = e.interval()
    images = []
    if p >= 2:
        images += [Arc(cat, i, 1) for i in range(1, p - 1)]
        images.append(line_arc(n, p - 1, q))
    images += [Arc(cat, i, 1) for i in range(q + 1, n + 1)]
    chain = tuple(Arc(cat, i, 1) for i in range(p, q))
    return Embedding(
        cat,
        (
            EmbeddedFactor(line(n - m), tuple(images)),
            EmbeddedFactor(line(m - 1), chain),
        ),
    )


# -- thick subcategories -------------------------------------------------------


@dataclass(frozen=True)
class ThickDesc:
    """A thick subcategory: member signature, factor shape, generators.

    ``signature`` lists the member arcs of length <= rank (sorted); it
    determines the subcategory.  ``embedding`` organizes the relative
    simples into at most one cycle factor plus line factors.
    ``left_orthogonal`` generates the left perpendicular and drives the
    membership test.
    """

    cat: SerialCat
    signature: tuple  # of Arc, sorted
    shape: tuple  # of SerialCat, cycle factor first
    embedding: Embedding
    left_orthogonal: tuple  # of Arc

    def relative_simples(self):
        return self.embedding.mapped_simples()


def all_arcs(cat: SerialCat, max_length=None):
    """Every arc of length <= max_length (default: the rank)."""
    cap = cat.rank if max_length is None else max_length
    if cat.kind == "cycle":
        return [Arc(cat, t, l) for t in range(cat.rank) for l in range(1, cap + 1)]
    return [
        line_arc(cat.rank, i, j)
        for i in range(1, cat.rank + 1)
        for j in range(i, min(cat.rank, i + cap - 1) + 1)
    ]


def _proper_subarcs(a: Arc):
    for j in range(1, a.length):
        if a.cat.kind == "cycle":
            yield Arc(a.cat, (a.top - a.length + j) % a.cat.rank, j)
        else:
            yield Arc(a.cat, a.top - a.length + j, j)


def _minimal_members(sig: frozenset):
    """Members with no proper member subobject: the relative simples."""
    return sorted(a for a in sig if not any(s in sig for s in _proper_subarcs(a)))


def _right_orthogonal_signature(cat: SerialCat, gens) -> frozenset:
    return frozenset(
        y for y in all_arcs(cat) if all(dims(g, y) == (0, 0) for g in gens)
    )


def _left_orthogonal_signature(cat: SerialCat, gens) -> frozenset:
    return _left_orthogonal_cached(cat, tuple(gens))


@lru_cache(maxsize=None)
def _left_orthogonal_cached(cat: SerialCat, gens: tuple) -> frozenset:
    return frozenset(
        y for y in all_arcs(cat) if all(dims(y, g) == (0, 0) for g in gens)
    )


def _closure_signature(cat: SerialCat, gens) -> frozenset:
    """Members (length <= rank) of the thick closure of ``gens``.

    Double orthogonality: the closure T is admissible, so it is recovered
    from its right orthogonal as T = perp(T^perp): first collect the arcs
    right-orthogonal to the generators, reduce them to their relative
    simples, then collect everything left-orthogonal to those.
    """
    right = _minimal_members(_right_orthogonal_signature(cat, gens))
    return _left_orthogonal_signature(cat, right)


def _block_structure(cat: SerialCat, rel) -> Embedding:
    """Organize relative simples into cycle/line factors by adjacency.

    Block A sits directly below block B when A's top is one step below
    B's socle.  Within an orthogonal family tops are distinct, so the
    below/above maps are partial bijections; their orbits are one tiling
    cycle (at most) and disjoint chains.
    """
    n = cat.rank
    by_top = {a.top: a for a in rel}
    assert len(by_top) == len(rel), "relative simples must have distinct tops"

    def below(a):
        if cat.kind == "cycle":
            return by_top.get((a.top - a.length) % n)
        return by_top.get(a.top - a.length)

    above = {}
    for a in rel:
        b = below(a)
        if b is not None:
            assert b not in above, "two blocks directly above one block"
            above[b] = a

    unassigned = set(rel)
    cycle_factor = None
    chains = []
    for start in sorted(rel):
        if start not in unassigned:
            continue
        # walk down from start; either we loop back (cycle) or hit a bottom
        walk = [start]
        seen = {start}
        current = start
        looped = False
        while True:
            nxt = below(current)
            if nxt is None:
                break
            if nxt in seen:
                looped = True
                break
            walk.append(nxt)
            seen.add(nxt)
            current = nxt
        if looped:
            assert cycle_factor is None, "two cycle factors cannot coexist"
            # walk is B_a, B_{a-1}, ...; reverse so images[k-1] is below images[k]
            images = tuple(reversed(walk))
            cycle_factor = EmbeddedFactor(cycle(len(images)), images)
            unassigned -= seen
        else:
            # extend upward to the true chain top, then record bottom-to-top
            top_end = start
            while top_end in above:
                top_end = above[top_end]
                walk.insert(0, top_end)
            chain = tuple(reversed(walk))
            chains.append(EmbeddedFactor(line(len(chain)), chain))
            unassigned -= set(walk)
    chains.sort(key=lambda f: (-f.cat.rank, f.simple_images))
    factors = ([cycle_factor] if cycle_factor else []) + chains
    return Embedding(cat, tuple(factors))


def _build_desc(cat: SerialCat, sig: frozenset) -> ThickDesc:
    rel = _minimal_members(sig)
    embedding = _block_structure(cat, rel)
    left = _minimal_members(_left_orthogonal_signature(cat, rel))
    return ThickDesc(
        cat=cat,
        signature=tuple(sorted(sig)),
        shape=tuple(f.cat for f in embedding.factors),
        embedding=embedding,
        left_orthogonal=tuple(left),
    )


def thick_closure(cat: SerialCat, gens) -> ThickDesc:
    """The thick subcategory generated by the given arcs."""
    gens = list(gens)
    for g in gens:
        if g.cat != cat:
            raise CategoryMismatch(f"generator {g} is not in {cat}")
    return _build_desc(cat, _closure_signature(cat, gens))


@lru_cache(maxsize=None)
def _enumerate_signatures(cat: SerialCat):
    """All thick-subcategory signatures, via the perpendicular recursion."""
    out = {frozenset()}
    for e in all_arcs(cat):
        emb = perp_arc(e)
        factor_sigs = [sorted(_enumerate_signatures(f.cat)) for f in emb.factors]
        # abstract relative simples per signature, precomputed
        factor_rels = [
            [(_minimal_members(sig)) for sig in sigs] for sigs in factor_sigs
        ]
        combos = [[]]
        for f, rels in zip(emb.factors, factor_rels):
            combos = [
                prev + [f.embed(s) for s in rel] for prev in combos for rel in rels
            ]
        for translated in combos:
            out.add(_closure_signature(cat, [e] + translated))
    return frozenset(out)


def membership(t: ThickDesc, x: Arc) -> bool:
    """Does the arc belong to the thick subcategory?

    Double-orthogonal test: Hom and Ext^1 from every stored generator of
    the left perpendicular must vanish on x.  Valid for arcs of any
    length because the subcategory is admissible.
    """
    if x.cat != t.cat:
        raise CategoryMismatch(f"arc {x} is not in {t.cat}")
    return all(dims(g, x) == (0, 0) for g in t.left_orthogonal)


def enumerate_thick(cat: SerialCat):
    """All thick subcategories of the serial category, canonically sorted."""
    if cat.kind == "cycle" and cat.rank > MAX_CYCLE_RANK:
        raise BoundExceeded(f"tube enumeration capped at rank {MAX_CYCLE_RANK}")
    if cat.kind == "line" and cat.rank > MAX_LINE_RANK:
        raise BoundExceeded(f"line enumeration capped at rank {MAX_LINE_RANK}")
    sigs = sorted(_enumerate_signatures(cat), key=lambda s: (len(s), tuple(sorted(s))))
    return [_build_desc(cat, sig) for sig in sigs]


def shape_of_thick(t: ThickDesc):
    """(has cycle factor, line factor lengths in sorted order)."""
    has_cycle = any(f.kind == "cycle" for f in t.shape)
    lengths = sorted(f.rank for f in t.shape if f.kind == "line" and f.rank > 0)
    return has_cycle, lengths


# -- CLI literals --------------------------------------------------------------


def parse_arc(text: str) -> Arc:
    """Parse ``U(n):arc(top,len)`` or ``A(n):arc(i,j)`` literals."""
    m = re.fullmatch(r"\s*([UA])\((\d+)\):arc\((-?\d+),(-?\d+)\)\s*", text)
    if not m:
        raise ParseError(f"bad arc literal {text!r}")
    kind, n, first, second = m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))
    try:
        if kind == "U":
            return Arc(cycle(n), first, second)
        return line_arc(n, first, second)
    except InvalidArc as exc:
        raise ParseError(f"bad arc literal {text!r}: {exc}") from exc
