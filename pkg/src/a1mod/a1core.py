"""The 8-dimensional subalgebra generated by Sq1 and Sq2, and graded modules
over it.

A module is a collection of finite-dimensional GF(2) vector spaces, one per
integer degree, with degree +1 and +2 operators satisfying

    (1) Sq1 Sq1 = 0
    (2) Sq2 Sq2 = Sq1 Sq2 Sq1

Words are written with the rightmost factor acting first, so ``Sq1Sq2``
applied to v is Sq1(Sq2(v)).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from .errors import NotBoundedBelow, RelationViolation, ShapeMismatch
from .f2linalg import BitMatrix, Subspace, solve

__all__ = [
    "WORDS", "WORD_DEGREE", "LMUL", "A1Basis",
    "GradedSpace", "GradedMap", "A1Module", "DualModule",
    "module", "validate", "f2", "free_module", "zero_module",
    "direct_sum", "suspend", "truncate", "tensor", "dualize", "act_right",
    "apply_word", "linear_map_from_generators", "submodule_closure",
]

# Additive basis: admissible words, indexed by composition (rightmost first).
WORDS: Tuple[str, ...] = (
    "1", "Sq1", "Sq2", "Sq1Sq2", "Sq2Sq1",
    "Sq1Sq2Sq1", "Sq2Sq1Sq2", "Sq2Sq1Sq2Sq1",
)

WORD_DEGREE: Dict[str, int] = {
    "1": 0, "Sq1": 1, "Sq2": 2, "Sq1Sq2": 3, "Sq2Sq1": 3,
    "Sq1Sq2Sq1": 4, "Sq2Sq1Sq2": 5, "Sq2Sq1Sq2Sq1": 6,
}

# Left multiplication by the generators, reduced by relations (1)-(2).
# None means the product is zero.
LMUL: Dict[str, Dict[str, Optional[str]]] = {
    "Sq1": {
        "1": "Sq1", "Sq1": None, "Sq2": "Sq1Sq2", "Sq1Sq2": None,
        "Sq2Sq1": "Sq1Sq2Sq1", "Sq1Sq2Sq1": None,
        "Sq2Sq1Sq2": "Sq2Sq1Sq2Sq1", "Sq2Sq1Sq2Sq1": None,
    },
    "Sq2": {
        "1": "Sq2", "Sq1": "Sq2Sq1", "Sq2": "Sq1Sq2Sq1",
        "Sq1Sq2": "Sq2Sq1Sq2", "Sq2Sq1": None,
        "Sq1Sq2Sq1": "Sq2Sq1Sq2Sq1", "Sq2Sq1Sq2": None, "Sq2Sq1Sq2Sq1": None,
    },
}


@dataclass(frozen=True)
class A1Basis:
    """Bundled additive-basis data, mostly a convenience for callers."""

    words: Tuple[str, ...] = WORDS
    degrees: Tuple[int, ...] = tuple(WORD_DEGREE[w] for w in WORDS)

    def degree(self, word: str) -> int:
        return WORD_DEGREE[word]


class GradedSpace:
    """A degreewise finite-dimensional GF(2) space with basis labels."""

    def __init__(self, labels: Dict[int, List[str]]):
        self.labels: Dict[int, Tuple[str, ...]] = {
            k: tuple(v) for k, v in labels.items() if v
        }

    def dim(self, k: int) -> int:
        return len(self.labels.get(k, ()))

    @property
    def degrees(self) -> List[int]:
        return sorted(self.labels)

    @property
    def lo(self) -> Optional[int]:
        ds = self.degrees
        return ds[0] if ds else None

    @property
    def hi(self) -> Optional[int]:
        ds = self.degrees
        return ds[-1] if ds else None

    def total_dim(self) -> int:
        return sum(len(v) for v in self.labels.values())

    def dims(self) -> Dict[int, int]:
        return {k: len(v) for k, v in sorted(self.labels.items())}

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.labels == other.labels

    def __repr__(self):
        return f"GradedSpace({self.dims()})"


class GradedMap:
    """A degree-``shift`` linear map between graded spaces.

    ``mats[k]`` sends degree k of the source to degree k + shift of the
    target; missing degrees mean the zero map.
    """

    def __init__(self, source: GradedSpace, target: GradedSpace, shift: int,
                 mats: Dict[int, BitMatrix]):
        self.source = source
        self.target = target
        self.shift = shift
        self.mats: Dict[int, BitMatrix] = {}
        for k, m in mats.items():
            if m.rows != target.dim(k + shift) or m.cols != source.dim(k):
                raise ShapeMismatch(
                    f"map at degree {k}: got {m.rows}x{m.cols}, expected "
                    f"{target.dim(k + shift)}x{source.dim(k)}")
            self.mats[k] = m

    def mat(self, k: int) -> BitMatrix:
        if k in self.mats:
            return self.mats[k]
        return BitMatrix.zeros(self.target.dim(k + self.shift), self.source.dim(k))

    def apply(self, k: int, v: int) -> int:
        return self.mat(k).apply(v)

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """self after inner."""
        mats = {}
        for k in inner.source.degrees:
            mats[k] = self.mat(k + inner.shift).mul(inner.mat(k))
        return GradedMap(inner.source, self.target, self.shift + inner.shift, mats)

    def add(self, other: "GradedMap") -> "GradedMap":
        if self.shift != other.shift:
            raise ShapeMismatch("sum of maps of different degrees")
        mats = {}
        for k in set(self.mats) | set(other.mats):
            mats[k] = self.mat(k).add(other.mat(k))
        return GradedMap(self.source, self.target, self.shift, mats)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())


@dataclass
class A1Module:
    """A graded module given by explicit Sq1 and Sq2 matrices.

    ``truncated_above`` records that degrees above the cutoff were discarded;
    action values landing there are simply absent, and consumers must respect
    the reduced reliable range.
    """

    space: GradedSpace
    sq1: GradedMap
    sq2: GradedMap
    truncated_above: Optional[int] = None
    truncated_below: Optional[int] = None
    name: str = ""

    @property
    def lo(self) -> Optional[int]:
        return self.space.lo

    @property
    def hi(self) -> Optional[int]:
        return self.space.hi

    def dim(self, k: int) -> int:
        return self.space.dim(k)

    def degree_present(self, k: int) -> bool:
        """True if degree k carries complete information."""
        if self.truncated_above is not None and k > self.truncated_above:
            return False
        if self.truncated_below is not None and k < self.truncated_below:
            return False
        return True

    def dims(self) -> Dict[int, int]:
        return self.space.dims()


class DualModule(A1Module):
    """The degreewise dual, graded so that degree k is the dual of source
    degree -k, with the transposed (right) action."""


def module(labels: Dict[int, List[str]],
           sq1: Dict[int, BitMatrix],
           sq2: Dict[int, BitMatrix],
           truncated_above: Optional[int] = None,
           name: str = "",
           check: bool = True) -> A1Module:
    space = GradedSpace(labels)
    m = A1Module(space,
                 GradedMap(space, space, 1, {k: v for k, v in sq1.items()
                                             if space.dim(k) and space.dim(k + 1)}),
                 GradedMap(space, space, 2, {k: v for k, v in sq2.items()
                                             if space.dim(k) and space.dim(k + 2)}),
                 truncated_above=truncated_above, name=name)
    if check:
        validate(m)
    return m


def validate(m: A1Module) -> None:
    """Check shapes and the two defining relations on every checkable degree."""
    if m.space.degrees and m.space.lo is None:
        raise NotBoundedBelow("module has no bottom degree")
    for k in m.space.degrees:
        if m.truncated_above is None or k + 2 <= m.truncated_above:
            if not m.sq1.compose(m.sq1).mat(k).is_zero():
                raise RelationViolation(k, "Sq1 Sq1 = 0")
        if m.truncated_above is None or k + 4 <= m.truncated_above:
            lhs = m.sq2.compose(m.sq2).mat(k)
            rhs = m.sq1.compose(m.sq2).compose(m.sq1).mat(k)
            if not lhs.add(rhs).is_zero():
                raise RelationViolation(k, "Sq2 Sq2 = Sq1 Sq2 Sq1")


def apply_word(m: A1Module, word: str, k: int, v: int) -> Tuple[int, int]:
    """Apply a composite word (rightmost factor first) to v in degree k.

    Returns (degree, vector).  Factors falling above a truncation cutoff
    yield the zero vector in the nominal degree.
    """
    if word == "1":
        return k, v
    ops = []
    i = 0
    while i < len(word):
        ops.append(word[i:i + 3])
        i += 3
    deg, vec = k, v
    for op in reversed(ops):  # rightmost acts first
        step = 1 if op == "Sq1" else 2
        gmap = m.sq1 if op == "Sq1" else m.sq2
        vec = gmap.apply(deg, vec)
        deg += step
    return deg, vec


def f2(degree: int = 0) -> A1Module:
    """The one-dimensional trivial module concentrated in one degree."""
    return module({degree: ["1"]}, {}, {}, name="F2")


def zero_module() -> A1Module:
    return module({}, {}, {}, name="0")


def free_module(degree: int = 0, label: str = "g") -> A1Module:
    """The free module on one generator in the given degree."""
    labels: Dict[int, List[str]] = {}
    index: Dict[str, Tuple[int, int]] = {}
    for w in WORDS:
        d = degree + WORD_DEGREE[w]
        labels.setdefault(d, [])
        index[w] = (d, len(labels[d]))
        labels[d].append(f"{w}*{label}" if w != "1" else label)
    space = GradedSpace(labels)
    mats1: Dict[int, BitMatrix] = {}
    mats2: Dict[int, BitMatrix] = {}
    for sq, shift, mats in (("Sq1", 1, mats1), ("Sq2", 2, mats2)):
        for k in space.degrees:
            if space.dim(k + shift) == 0:
                continue
            cols = []
            for w in WORDS:
                if index[w][0] != k:
                    continue
                tgt = LMUL[sq][w]
                if tgt is None:
                    cols.append((index[w][1], 0))
                else:
                    td, ti = index[tgt]
                    cols.append((index[w][1], 1 << ti))
            mat_cols = [0] * space.dim(k)
            for ci, vec in cols:
                mat_cols[ci] = vec
            data = []
            for i in range(space.dim(k + shift)):
                r = 0
                for j in range(space.dim(k)):
                    r |= ((mat_cols[j] >> i) & 1) << j
                data.append(r)
            mats[k] = BitMatrix(space.dim(k + shift), space.dim(k), tuple(data))
    return module(labels, mats1, mats2, name=f"A(1){{{label}}}")


def direct_sum(a: A1Module, b: A1Module) -> A1Module:
    cut = None
    for t in (a.truncated_above, b.truncated_above):
        if t is not None:
            cut = t if cut is None else min(cut, t)
    labels: Dict[int, List[str]] = {}
    offs_a: Dict[int, int] = {}
    offs_b: Dict[int, int] = {}
    for k in sorted(set(a.space.degrees) | set(b.space.degrees)):
        if cut is not None and k > cut:
            continue
        labels[k] = []
        offs_a[k] = 0
        for s in a.space.labels.get(k, ()):
            labels[k].append(f"L.{s}")
        offs_b[k] = len(labels[k])
        for s in b.space.labels.get(k, ()):
            labels[k].append(f"R.{s}")
    space = GradedSpace(labels)

    def block(shift, ga, gb):
        mats = {}
        for k in space.degrees:
            if space.dim(k + shift) == 0:
                continue
            rows = [0] * space.dim(k + shift)
            am = ga.mat(k)
            for i in range(am.rows):
                rows[offs_a.get(k + shift, 0) + i] |= am.data[i] << offs_a.get(k, 0)
            bm = gb.mat(k)
            for i in range(bm.rows):
                rows[offs_b.get(k + shift, 0) + i] |= bm.data[i] << offs_b.get(k, 0)
            mats[k] = BitMatrix(space.dim(k + shift), space.dim(k), tuple(rows))
        return mats

    return module(labels, block(1, a.sq1, b.sq1), block(2, a.sq2, b.sq2),
                  truncated_above=cut,
                  name=f"{a.name}+{b.name}" if a.name and b.name else "")


def suspend(m: A1Module, t: int) -> A1Module:
    labels = {k + t: list(v) for k, v in m.space.labels.items()}
    sq1 = {k + t: mat for k, mat in m.sq1.mats.items()}
    sq2 = {k + t: mat for k, mat in m.sq2.mats.items()}
    cut = None if m.truncated_above is None else m.truncated_above + t
    return module(labels, sq1, sq2, truncated_above=cut,
                  name=f"S^{t}{m.name}" if m.name else "")


def truncate(m: A1Module, cutoff: int) -> A1Module:
    labels = {k: list(v) for k, v in m.space.labels.items() if k <= cutoff}
    sq1 = {k: mat for k, mat in m.sq1.mats.items() if k + 1 <= cutoff}
    sq2 = {k: mat for k, mat in m.sq2.mats.items() if k + 2 <= cutoff}
    cut = cutoff
    if m.truncated_above is not None:
        cut = min(cut, m.truncated_above)
    return module(labels, sq1, sq2, truncated_above=cut, name=m.name)


def tensor(a: A1Module, b: A1Module) -> A1Module:
    """Tensor product with the diagonal action.

    Sq1(x (x) y) = Sq1 x (x) y + x (x) Sq1 y
    Sq2(x (x) y) = Sq2 x (x) y + Sq1 x (x) Sq1 y + x (x) Sq2 y

    Basis order in each degree: source degrees of the left factor ascending,
    then (left index, right index) lexicographic.
    """
    if a.lo is None or b.lo is None:
        return zero_module()
    cut = None
    if a.truncated_above is not None:
        cut = a.truncated_above + b.lo
    if b.truncated_above is not None:
        c2 = b.truncated_above + a.lo
        cut = c2 if cut is None else min(cut, c2)

    # index[(p, i, q, j)] -> position in degree p+q
    labels: Dict[int, List[str]] = {}
    index: Dict[Tuple[int, int, int, int], int] = {}
    for p in a.space.degrees:
        for q in b.space.degrees:
            k = p + q
            if cut is not None and k > cut:
                continue
            labels.setdefault(k, [])
    for k in sorted(labels):
        pos = 0
        for p in a.space.degrees:
            q = k - p
            for i, la in enumerate(a.space.labels.get(p, ())):
                for j, lb in enumerate(b.space.labels.get(q, ())):
                    index[(p, i, q, j)] = pos
                    labels[k].append(f"{la}(x){lb}")
                    pos += 1
    space = GradedSpace(labels)

    def build(shift: int) -> Dict[int, BitMatrix]:
        mats = {}
        for k in space.degrees:
            kt = k + shift
            if space.dim(kt) == 0 or (cut is not None and kt > cut):
                continue
            cols: List[int] = []
            for p in a.space.degrees:
                q = k - p
                for i in range(a.dim(p)):
                    for j in range(b.dim(q)):
                        out = 0
                        terms: List[Tuple[int, int, int, int]] = []
                        if shift == 1:
                            terms = [(p + 1, a.sq1.apply(p, 1 << i), q, 1 << j),
                                     (p, 1 << i, q + 1, b.sq1.apply(q, 1 << j))]
                        else:
                            terms = [(p + 2, a.sq2.apply(p, 1 << i), q, 1 << j),
                                     (p + 1, a.sq1.apply(p, 1 << i),
                                      q + 1, b.sq1.apply(q, 1 << j)),
                                     (p, 1 << i, q + 2, b.sq2.apply(q, 1 << j))]
                        for (pp, va, qq, vb) in terms:
                            if va == 0 or vb == 0:
                                continue
                            for ii in range(a.dim(pp)):
                                if not (va >> ii) & 1:
                                    continue
                                for jj in range(b.dim(qq)):
                                    if (vb >> jj) & 1:
                                        out ^= 1 << index[(pp, ii, qq, jj)]
                        cols.append(out)
            data = []
            for r in range(space.dim(kt)):
                row = 0
                for c, v in enumerate(cols):
                    row |= ((v >> r) & 1) << c
                data.append(row)
            mats[k] = BitMatrix(space.dim(kt), space.dim(k), tuple(data))
        return mats

    name = f"{a.name}(x){b.name}" if a.name and b.name else ""
    return module(labels, build(1), build(2), truncated_above=cut, name=name)


def dualize(m: A1Module) -> DualModule:
    """Degreewise dual: degree k of the dual is the dual of degree -k.

    The right action by precomposition transposes the structure matrices,
    and satisfies the same two relations, so the dual is again a valid
    module presentation.
    """
    labels = {-k: [f"{s}*" for s in v] for k, v in m.space.labels.items()}
    space = GradedSpace(labels)
    sq1 = {}
    sq2 = {}
    for k in space.degrees:
        src = -k
        if space.dim(k + 1):
            sq1[k] = m.sq1.mat(src - 1).transpose()
        if space.dim(k + 2):
            sq2[k] = m.sq2.mat(src - 2).transpose()
    d = DualModule(space,
                   GradedMap(space, space, 1, sq1),
                   GradedMap(space, space, 2, sq2),
                   name=f"({m.name})*" if m.name else "")
    if m.truncated_above is not None:
        d.truncated_below = -m.truncated_above
    if m.truncated_below is not None:
        d.truncated_above = -m.truncated_below
    validate(d)
    return d


def act_right(dual: A1Module, word: str, k: int, v: int) -> Tuple[int, int]:
    """Right action of a word on a functional, via the transposed matrices."""
    return apply_word(dual, word, k, v)


def linear_map_from_generators(source: A1Module, target: A1Module,
                               gens: List[Tuple[int, int]],
                               values: List[Tuple[int, int]],
                               shift: int = 0) -> GradedMap:
    """The action-preserving degree-``shift`` map with prescribed generator
    values, found by linear solve.

    ``gens`` are (degree, vector) in the source; ``values`` the matching
    (degree, vector) in the target (degree must be gen degree + shift).
    Raises if no such map exists; if the generators generate the source the
    solution is unique.
    """
    degs = source.space.degrees
    # unknowns: entries of the matrix at each source degree
    offsets: Dict[int, int] = {}
    n_unknown = 0
    for k in degs:
        offsets[k] = n_unknown
        n_unknown += source.dim(k) * target.dim(k + shift)

    def entry(k: int, row: int, col: int) -> int:
        return offsets[k] + row * source.dim(k) + col

    eq_rows: List[int] = []
    eq_rhs: List[int] = []

    def add_equation(coeffs: List[int], rhs: int) -> None:
        r = 0
        for c in coeffs:
            r ^= 1 << c
        eq_rows.append(r)
        eq_rhs.append(rhs)

    # commute with sq1 and sq2 wherever both sides are defined
    for sq_shift, s_map, t_map in ((1, source.sq1, target.sq1),
                                   (2, source.sq2, target.sq2)):
        for k in degs:
            tk = k + shift
            out_deg = k + sq_shift
            if source.dim(k) == 0:
                continue
            rows_out = target.dim(out_deg + shift)
            if rows_out == 0 and source.dim(out_deg) == 0:
                continue
            if not (target.degree_present(out_deg + shift)
                    and source.degree_present(out_deg)):
                continue
            smat = s_map.mat(k)          # source k -> source k+ss
            tmat = t_map.mat(tk)         # target tk -> target tk+ss
            for r in range(rows_out):
                for c in range(source.dim(k)):
                    coeffs = []
                    # (F o sq)_rc = sum_j F[out_deg]_{r j} smat_{j c}
                    for j in range(source.dim(out_deg)):
                        if smat.get(j, c):
                            coeffs.append(entry(out_deg, r, j))
                    # (sq o F)_rc = sum_j tmat_{r j} F[k]_{j c}
                    for j in range(target.dim(tk)):
                        if tmat.get(r, j):
                            coeffs.append(entry(k, j, c))
                    add_equation(coeffs, 0)

    # generator values
    for (gk, gv), (vk, vv) in zip(gens, values):
        if vk != gk + shift:
            raise ShapeMismatch("generator value in the wrong degree")
        for r in range(target.dim(vk)):
            coeffs = []
            for c in range(source.dim(gk)):
                if (gv >> c) & 1:
                    coeffs.append(entry(gk, r, c))
            add_equation(coeffs, (vv >> r) & 1)

    a = BitMatrix(len(eq_rows), n_unknown, tuple(eq_rows))
    b = 0
    for i, bit in enumerate(eq_rhs):
        b |= bit << i
    x = solve(a, b)
    if x is None:
        raise ShapeMismatch("no action-preserving map with the given values")

    mats = {}
    for k in degs:
        rows = []
        for r in range(target.dim(k + shift)):
            row = 0
            for c in range(source.dim(k)):
                row |= ((x >> entry(k, r, c)) & 1) << c
            rows.append(row)
        mats[k] = BitMatrix(target.dim(k + shift), source.dim(k), tuple(rows))
    return GradedMap(source.space, target.space, shift, mats)


def submodule_closure(m: A1Module, seeds: Dict[int, List[int]]) -> Dict[int, Subspace]:
    """Degreewise span of the submodule generated by the seed vectors."""
    out: Dict[int, Subspace] = {k: Subspace.zero(m.dim(k)) for k in m.space.degrees}
    if not m.space.degrees:
        return out
    pending: Dict[int, List[int]] = {k: list(v) for k, v in seeds.items()}
    for k in m.space.degrees:
        vecs = pending.get(k, [])
        if not vecs:
            continue
        out[k] = out[k].add(Subspace.span(vecs, m.dim(k)))
        for shift, gmap in ((1, m.sq1), (2, m.sq2)):
            kt = k + shift
            if m.dim(kt) == 0:
                continue
            imgs = [gmap.apply(k, b) for b in out[k].basis]
            imgs = [v for v in imgs if v]
            if imgs:
                pending.setdefault(kt, []).extend(imgs)
    return out
