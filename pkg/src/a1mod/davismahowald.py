"""A polynomial coefficient family, two explicit exact complexes, and the
localized algebraic spectral sequence built from them: its first page, the
closed-form first differential, and detectors for whether a Q0-local module
is the localization of an honest bounded-below module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .a1core import (LMUL, WORD_DEGREE, WORDS, A1Module, GradedMap, apply_word,
                     dualize, f2, linear_map_from_generators, module,
                     submodule_closure, tensor)
from .errors import ShapeMismatch, TruncationTooTight
from .f2linalg import BitMatrix, Subspace, image, kernel, solve
from .margolis import is_q0_local, margolis_homology
from .structure import DecompositionReport, default_cutoff, localize_q0, seagull

__all__ = [
    "NSigma", "DMComplexStage", "InjectiveStage",
    "LocalizedE1", "D2Data", "E3Page", "LocalizedExt", "LiftVerdict", "Sq4Result",
    "build_N", "build_dm_complex", "check_dm_exactness",
    "build_injective", "check_injective_exactness",
    "e1_page", "d2", "e3_page",
    "seagull_localized_ext", "localized_ext", "lift_check", "sq4_solver",
]


# ---------------------------------------------------------------------------
# the coefficient family: polynomial generators in degrees 2 and 3


def _mono_label(i: int, j: int) -> str:
    return f"x2^{i}x3^{j}"


@dataclass
class NSigma:
    sigma: int
    module: A1Module
    monomials: List[Tuple[int, int]]   # (i, j) with i + j = sigma

    def vector(self, i: int, j: int) -> Tuple[int, int]:
        """(degree, basis vector) of a monomial."""
        d = 2 * i + 3 * j
        lbl = _mono_label(i, j)
        idx = self.module.space.labels[d].index(lbl)
        return d, 1 << idx


def build_N(sigma: int) -> NSigma:
    """Degree-sigma polynomials in generators of internal degrees 2 and 3.

    Sq1 x2^i x3^j = x2^{i-1} x3^{j+1}   when i > 0 and j is even,
    Sq2 x2^i x3^j = x2^{i-2} x3^{j+2}   when i > 1 and j = 0 or 1 mod 4,
    both zero otherwise.
    """
    if sigma < 0:
        raise ValueError("negative polynomial degree")
    monomials = [(sigma - j, j) for j in range(sigma + 1)]
    labels: Dict[int, List[str]] = {}
    pos: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for (i, j) in monomials:
        d = 2 * i + 3 * j
        labels.setdefault(d, [])
        pos[(i, j)] = (d, len(labels[d]))
        labels[d].append(_mono_label(i, j))
    dims = {d: len(v) for d, v in labels.items()}

    def build(step: int, rule) -> Dict[int, BitMatrix]:
        cols: Dict[int, List[int]] = {d: [0] * dims[d] for d in dims}
        for (i, j) in monomials:
            tgt = rule(i, j)
            if tgt is None:
                continue
            sd, si = pos[(i, j)]
            td, ti = pos[tgt]
            cols[sd][si] |= 1 << ti
        mats = {}
        for d, cv in cols.items():
            if dims.get(d + step, 0) == 0:
                continue
            data = []
            for r in range(dims[d + step]):
                row = 0
                for c, v in enumerate(cv):
                    row |= ((v >> r) & 1) << c
                data.append(row)
            mats[d] = BitMatrix(dims[d + step], dims[d], tuple(data))
        return mats

    sq1 = build(1, lambda i, j: (i - 1, j + 1) if i > 0 and j % 2 == 0 else None)
    sq2 = build(2, lambda i, j: (i - 2, j + 2) if i > 1 and j % 4 in (0, 1) else None)
    return NSigma(sigma, module(labels, sq1, sq2, name=f"N({sigma})"), monomials)


# ---------------------------------------------------------------------------
# the Koszul-style exact complex


@dataclass
class DMComplexStage:
    sigma: int
    module: A1Module
    a_gens: List[Tuple[str, int, int]]   # (label, degree, vector)
    b_gens: List[Tuple[str, int, int]]
    boundary: Optional[GradedMap]        # to the previous stage (or F2 at 0)


def _tensor_vector(t: A1Module, left_label: str, left_deg: int,
                   right_label: str, right_deg: int) -> Tuple[int, int]:
    d = left_deg + right_deg
    lbl = f"{left_label}(x){right_label}"
    idx = t.space.labels[d].index(lbl)
    return d, 1 << idx


def _gen_split(sigma: int) -> Tuple[List[int], List[int]]:
    """Exponents i of the generators 1 (x) x2^i x3^(sigma-i), split into the
    free block and the block carrying the interesting part."""
    a = [sigma - 2 * j for j in range(2 * (sigma // 4))]
    b: List[int] = []
    r = sigma % 4
    if r == 0:
        b = [0]
    elif r == 1:
        b = [1]
    elif r == 2:
        b = [2, 0]
    else:
        a = a + [1]
        b = [3]
    return a, b


def build_dm_complex(max_sigma: int) -> List[DMComplexStage]:
    """Stages T (x) N(sigma) of the exact complex augmenting the length-one
    seagull T, with explicit boundaries defined on the listed generators and
    extended action-linearly."""
    wing = seagull(1)
    bottom_label = wing.space.labels[0][0]
    stages: List[DMComplexStage] = []
    # stage 0: the seagull itself, augmented to F2
    aug = linear_map_from_generators(wing, f2(), [(0, 1)], [(0, 1)], shift=0)
    stages.append(DMComplexStage(0, wing, [], [(bottom_label, 0, 1)], aug))
    prev = wing
    prev_n: Optional[NSigma] = None

    def gen_vec(stage_mod: A1Module, n: Optional[NSigma], i: int, j: int):
        if n is None:  # stage 0: no polynomial factor
            return 0, 1
        d = 2 * i + 3 * j
        return _tensor_vector(stage_mod, bottom_label, 0, _mono_label(i, j), d)

    for sigma in range(1, max_sigma + 1):
        n = build_N(sigma)
        mod = tensor(wing, n.module)
        a_exp, b_exp = _gen_split(sigma)
        gens: List[Tuple[int, int]] = []
        values: List[Tuple[int, int]] = []
        a_gens: List[Tuple[str, int, int]] = []
        b_gens: List[Tuple[str, int, int]] = []

        def target_word(word: str, i: int, j: int) -> Tuple[int, int]:
            d, v = gen_vec(prev, prev_n, i, j)
            return apply_word(prev, word, d, v)

        for i in a_exp:
            j = sigma - i
            d, v = gen_vec(mod, n, i, j)
            a_gens.append((_mono_label(i, j), d, v))
            gens.append((d, v))
            if i % 4 == sigma % 4:
                values.append(gen_vec(prev, prev_n, i - 3, j + 2))
            else:
                values.append((d, 0))
        r = sigma % 4
        for i in b_exp:
            j = sigma - i
            d, v = gen_vec(mod, n, i, j)
            b_gens.append((_mono_label(i, j), d, v))
            gens.append((d, v))
            if r == 0:
                values.append(target_word("Sq1Sq2Sq1Sq2", 3, sigma - 4))
            elif r == 1:
                values.append(target_word("Sq2", 0, sigma - 1))
            elif r == 2:
                if i == 2:
                    values.append(target_word("Sq2", 1, sigma - 2))
                else:
                    values.append(target_word("Sq2Sq2", 1, sigma - 2))
            else:
                td, tv = target_word("Sq2", 2, sigma - 3)
                ed, ev = gen_vec(prev, prev_n, 0, sigma - 1)
                if ed != td:
                    raise ShapeMismatch("boundary terms in different degrees")
                values.append((td, tv ^ ev))
        boundary = linear_map_from_generators(mod, prev, gens, values, shift=0)
        stages.append(DMComplexStage(sigma, mod, a_gens, b_gens, boundary))
        prev, prev_n = mod, n
    return stages


def check_dm_exactness(stages: List[DMComplexStage], max_t: int) -> Dict[str, bool]:
    """Verify the complex property and exactness at every position that has
    an incoming stage, through internal degree max_t."""
    ok_complex = True
    ok_exact = True
    for s in range(1, len(stages)):
        comp = stages[s - 1].boundary.compose(stages[s].boundary)
        if not comp.is_zero():
            ok_complex = False
    # exactness at position s needs stage s+1
    for s in range(0, len(stages) - 1):
        stage = stages[s]
        nxt = stages[s + 1]
        for k in stage.module.space.degrees:
            if k > max_t:
                continue
            ker = kernel(stage.boundary.mat(k))
            im = image(nxt.boundary.mat(k))
            if ker != im:
                ok_exact = False
    # the augmentation is onto
    onto = image(stages[0].boundary.mat(0)).dim == 1
    return {"complex": ok_complex, "exact": ok_exact, "onto": onto}


# ---------------------------------------------------------------------------
# the injective (free) resolution with generators in negative degrees


@dataclass
class InjectiveStage:
    s: int
    module: A1Module
    gens: Dict[int, Tuple[int, int]]     # gen degree -> (degree, vector)
    f: Optional[GradedMap]               # map from the previous stage
    r: Tuple[int, int]                   # distinguished element r_s
    t: Tuple[int, int]                   # t_s = Sq1 r_s


def _free_on(gen_degrees: List[int]) -> Tuple[A1Module, Dict[int, Tuple[int, int]]]:
    """Free module on one generator per listed degree (degrees distinct)."""
    labels: Dict[int, List[str]] = {}
    index: Dict[Tuple[int, str], Tuple[int, int]] = {}
    for gd in gen_degrees:
        for w in WORDS:
            d = gd + WORD_DEGREE[w]
            labels.setdefault(d, [])
            index[(gd, w)] = (d, len(labels[d]))
            labels[d].append(f"{w}*e[{gd}]" if w != "1" else f"e[{gd}]")
    dims = {d: len(v) for d, v in labels.items()}

    def build(sq: str, step: int) -> Dict[int, BitMatrix]:
        mats = {}
        for d in dims:
            if dims.get(d + step, 0) == 0:
                continue
            rows = [0] * dims[d + step]
            for gd in gen_degrees:
                for w in WORDS:
                    if index.get((gd, w), (None,))[0] != d:
                        continue
                    tgt = LMUL[sq][w]
                    if tgt is None:
                        continue
                    si = index[(gd, w)][1]
                    ti = index[(gd, tgt)][1]
                    rows[ti] |= 1 << si
            mats[d] = BitMatrix(dims[d + step], dims[d], tuple(rows))
        return mats

    m = module(labels, build("Sq1", 1), build("Sq2", 2))
    gens = {gd: (gd, 1 << index[(gd, "1")][1]) for gd in gen_degrees}
    return m, gens


def _injective_gen_degrees(s: int) -> List[int]:
    r = s % 4
    if r == 0:
        js = range(s // 2 + 1)
        extra: List[int] = []
    elif r == 1:
        js = range((s - 1) // 2 + 1)
        extra = [-5 - 3 * s]
    elif r == 2:
        js = range((s - 2) // 2 + 1)
        extra = [-4 - 3 * s]
    else:
        js = range((s - 1) // 2 + 1)
        extra = []
    return sorted([-s - 4 * j - 6 for j in js] + extra, reverse=True)


def build_injective(max_s: int) -> List[InjectiveStage]:
    """The free resolution that feeds the localized spectral sequence; stage
    s generators sit in negative degrees -s-4j-6 with boundary-pattern
    extras, and the structure maps are

        f_s(e[k]) = Sq1 e[k-1] + Sq2 e[k-2] + Sq2Sq1 e[k-3] + Sq2Sq1Sq2 e[k-5]

    omitting any absent generators."""
    stages: List[InjectiveStage] = []
    prev: Optional[InjectiveStage] = None
    for s in range(max_s + 1):
        degs = _injective_gen_degrees(s)
        mod, gens = _free_on(degs)
        r_vec = apply_word(mod, "Sq2Sq1Sq2", *gens[-s - 6])
        t_vec = apply_word(mod, "Sq1", *r_vec)
        fmap = None
        if prev is not None:
            gvals: List[Tuple[int, int]] = []
            gsrcs: List[Tuple[int, int]] = []
            for k, gv in prev.gens.items():
                acc_deg, acc = k, 0
                for word, off in (("Sq1", 1), ("Sq2", 2),
                                  ("Sq2Sq1", 3), ("Sq2Sq1Sq2", 5)):
                    if k - off in gens:
                        d, v = apply_word(mod, word, *gens[k - off])
                        if d != k:
                            raise ShapeMismatch("structure map degree error")
                        acc ^= v
                gsrcs.append(gv)
                gvals.append((k, acc))
            # source is free, so the map extends freely; solve for it
            fmap = linear_map_from_generators(prev.module, mod, gsrcs, gvals,
                                              shift=0)
        stages.append(InjectiveStage(s, mod, gens, fmap, r_vec, t_vec))
        prev = stages[-1]
    return stages


def check_injective_exactness(stages: List[InjectiveStage]) -> Dict[str, bool]:
    """f o f = 0, exactness at every stage with an outgoing map, the
    augmentation 1 -> t_0 embedding onto ker f_1, and f_s(t_{s-1}) = r_s."""
    ok_complex = True
    ok_exact = True
    ok_rt = True
    for s in range(2, len(stages)):
        if not stages[s].f.compose(stages[s - 1].f).is_zero():
            ok_complex = False
    for s in range(0, len(stages) - 1):
        mod = stages[s].module
        nxt = stages[s + 1]
        for k in mod.space.degrees:
            ker = kernel(nxt.f.mat(k))
            im = (image(stages[s].f.mat(k)) if s > 0
                  else Subspace.span([stages[s].t[1]] if stages[s].t[0] == k else [],
                                     mod.dim(k)))
            if ker != im:
                ok_exact = False
    for s in range(1, len(stages)):
        rd, rv = stages[s - 1].r
        fd = stages[s].f.apply(rd, rv)
        td, tv = stages[s].t
        if (rd, fd) != (td, tv):
            ok_rt = False
    return {"complex": ok_complex, "exact": ok_exact, "r_t": ok_rt}


# ---------------------------------------------------------------------------
# the localized spectral sequence: first page, first differential, third page


@dataclass
class LocalizedE1:
    """Columns repeat the dual Q0-homology at every even filtration; each
    class contributes an h0-tower in stem 2*sigma + (original degree)."""

    classes: List[Tuple[int, str]]            # (dual degree, label)
    records: List[Tuple[int, int, str]]       # (sigma, stem, class label)
    reliable: Tuple[Optional[int], Optional[int]]


@dataclass
class D2Data:
    classes: List[Tuple[int, str]]
    mats: Dict[int, BitMatrix]                # dual degree -> matrix into degree+5
    pairs: List[Tuple[str, str]]              # nonzero pairings (source, target)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())


@dataclass
class E3Page:
    # families at the first column (no incoming differential) and at the
    # generic even column
    first_column: List[Tuple[int, int]]       # (stem, dim) for sigma = 0
    generic: List[Tuple[int, int]]            # (dual degree, dim) for sigma >= 2

    def families(self, max_sigma: int) -> List[Tuple[int, int, int]]:
        out = [(0, stem, d) for stem, d in self.first_column if d]
        for sigma in range(2, max_sigma + 1, 2):
            for delta, d in self.generic:
                if d:
                    out.append((sigma, 2 * sigma - delta, d))
        return sorted(out)


def _dual_homology(m: A1Module):
    h = margolis_homology(m, "Q0", side="dual")
    classes: List[Tuple[int, str]] = []
    for k in sorted(h.reps):
        for i in range(len(h.reps[k])):
            classes.append((k, f"d{-k}.{i}*"))
    return h, classes


def e1_page(m: A1Module, max_sigma: int) -> LocalizedE1:
    h, classes = _dual_homology(m)
    records: List[Tuple[int, int, str]] = []
    for sigma in range(0, max_sigma + 1, 2):
        for (delta, label) in classes:
            records.append((sigma, 2 * sigma - delta, label))
    return LocalizedE1(classes, records, h.reliable)


def d2(m: A1Module) -> D2Data:
    """The closed-form first differential: right multiplication by Sq2Sq1Sq2
    on dual Q0-homology, dropping one stem and raising filtration by two."""
    h, classes = _dual_homology(m)
    dual = dualize(m)
    mats: Dict[int, BitMatrix] = {}
    pairs: List[Tuple[str, str]] = []
    label_at = {}
    for (delta, lbl) in classes:
        label_at.setdefault(delta, []).append(lbl)
    for delta in sorted(h.reps):
        src_reps = h.reps[delta]
        tgt_delta = delta + 5
        tgt_reps = h.reps.get(tgt_delta, [])
        rows = len(tgt_reps)
        cols_out = [0] * len(src_reps)
        if rows:
            im = image(dual.sq1.mat(tgt_delta - 1))
            basis_cols = list(tgt_reps) + list(im.basis)
            amb = dual.dim(tgt_delta)
            mat = BitMatrix(amb, len(basis_cols),
                            tuple(sum(((v >> r) & 1) << c
                                      for c, v in enumerate(basis_cols))
                                  for r in range(amb)))
            for ci, rep in enumerate(src_reps):
                _, img = apply_word(dual, "Sq2Sq1Sq2", delta, rep)
                if img == 0:
                    continue
                x = solve(mat, img)
                if x is None:
                    raise ShapeMismatch("differential image is not a cycle")
                cols_out[ci] = x & ((1 << rows) - 1)
        data = [0] * rows
        for c, v in enumerate(cols_out):
            for r in range(rows):
                if (v >> r) & 1:
                    data[r] |= 1 << c
                    pairs.append((label_at[delta][c], label_at[tgt_delta][r]))
        mats[delta] = BitMatrix(rows, len(src_reps), tuple(data))
    return D2Data(classes, mats, sorted(set(pairs)))


def e3_page(m: A1Module) -> E3Page:
    data = d2(m)
    h, _ = _dual_homology(m)
    first: List[Tuple[int, int]] = []
    generic: List[Tuple[int, int]] = []
    for delta in sorted(h.reps):
        ker_dim = kernel(data.mats[delta]).dim
        src = data.mats.get(delta - 5)  # maps classes at delta-5 into delta
        im_dim = image(src).dim if src is not None and src.rows else 0
        first.append((-delta, ker_dim))
        generic.append((delta, ker_dim - im_dim))
    return E3Page(first, generic)


# ---------------------------------------------------------------------------
# localized Ext answers and lifting detectors


@dataclass
class LocalizedExt:
    stems: Dict[int, int]          # stem -> number of towers
    open_ended: bool               # an unbounded seagull contributed
    cutoff: Optional[int]

    def tower_stems(self) -> List[int]:
        return sorted(k for k, v in self.stems.items() if v)


def seagull_localized_ext(n: Optional[int], shift: int = 0,
                          max_stem: Optional[int] = None) -> List[int]:
    """Stems carrying h0-towers for a length-n seagull (n=None: unbounded)."""
    if n is None:
        if max_stem is None:
            raise ValueError("unbounded seagull needs a stem bound")
        return [shift + 4 * k for k in range(max_stem // 4 + 1)
                if shift + 4 * k <= max_stem]
    return [shift + 4 * k for k in range(n)]


def localized_ext(m: A1Module, max_stem: int,
                  cutoff: Optional[int] = None) -> LocalizedExt:
    """Tower stems of the localized Ext, via classification of the
    localization."""
    if cutoff is None:
        lo = m.lo or 0
        cutoff = max(default_cutoff(m), lo + max_stem + 12)
    report = localize_q0(m, cutoff)
    stems: Dict[int, int] = {}
    open_ended = False
    for e in report.descriptor.seagulls:
        if not e.exact:
            open_ended = True
        for stem in seagull_localized_ext(e.length, e.shift):
            if stem <= max_stem:
                stems[stem] = stems.get(stem, 0) + 1
    return LocalizedExt(stems, open_ended, report.descriptor.cutoff)


@dataclass
class LiftVerdict:
    outcome: str                   # "no_lift" | "lifts" | "inconclusive"
    evidence: List[str]


def lift_check(m: A1Module, cutoff: Optional[int] = None) -> LiftVerdict:
    """Can this module be the localization of a bounded-below module whose
    localized spectral sequence collapses onto it?  Detectors in order:
    a nonzero closed-form differential, a finite seagull in the localized
    flock, an all-open flock for a local module, then the degree-4 operator
    obstruction."""
    evidence: List[str] = []
    data = d2(m)
    if not data.is_zero():
        src, tgt = data.pairs[0]
        evidence.append(f"nonzero differential: {src} -> {tgt}")
        return LiftVerdict("no_lift", evidence)
    evidence.append("closed-form differential vanishes")
    report = localize_q0(m, cutoff)
    finite = [e for e in report.descriptor.seagulls if e.exact]
    if finite:
        evidence.append(f"localization contains a finite summand: "
                        f"{finite[0].describe()}")
        return LiftVerdict("no_lift", evidence)
    evidence.append("no finite seagull in the localized flock")
    if is_q0_local(m).local:
        evidence.append("module is Q0-local with an open flock")
        return LiftVerdict("lifts", evidence)
    sq4 = sq4_solver(m)
    if not sq4.feasible:
        evidence.append("no degree-4 operator satisfies the commutator equation")
        return LiftVerdict("no_lift", evidence)
    evidence.append("degree-4 operator exists; no obstruction found")
    return LiftVerdict("inconclusive", evidence)


@dataclass
class Sq4Result:
    feasible: bool
    mats: Optional[Dict[int, BitMatrix]]   # degree k -> matrix into k+4


def sq4_solver(m: A1Module) -> Sq4Result:
    """Look for degreewise maps S: M_k -> M_{k+4} with

        Sq1 S + S Sq1 = Sq2 Sq1 Sq2

    across every degree whose target is reliable.  Infeasibility certifies
    that no lift exists."""
    degs = m.space.degrees
    offsets: Dict[int, int] = {}
    n = 0
    for k in degs:
        if m.dim(k + 4):
            offsets[k] = n
            n += m.dim(k) * m.dim(k + 4)

    def entry(k: int, r: int, c: int) -> int:
        return offsets[k] + r * m.dim(k) + c

    wing = {k: (m.sq2.mat(k + 3).mul(m.sq1.mat(k + 2)).mul(m.sq2.mat(k)))
            for k in degs}
    rows: List[int] = []
    rhs_bits: List[int] = []
    for k in degs:
        if m.truncated_above is not None and k + 5 > m.truncated_above:
            continue
        if m.dim(k + 5) == 0:
            continue
        sq1_hi = m.sq1.mat(k + 4)
        sq1_lo = m.sq1.mat(k)
        for r in range(m.dim(k + 5)):
            for c in range(m.dim(k)):
                bits = 0
                if k in offsets:
                    for j in range(m.dim(k + 4)):
                        if sq1_hi.get(r, j):
                            bits ^= 1 << entry(k, j, c)
                if (k + 1) in offsets:
                    for j in range(m.dim(k + 1)):
                        if sq1_lo.get(j, c):
                            bits ^= 1 << entry(k + 1, r, j)
                rows.append(bits)
                rhs_bits.append(wing[k].get(r, c))
    a = BitMatrix(len(rows), n, tuple(rows))
    b = 0
    for i, bit in enumerate(rhs_bits):
        b |= bit << i
    x = solve(a, b)
    if x is None:
        return Sq4Result(False, None)
    mats: Dict[int, BitMatrix] = {}
    for k, off in offsets.items():
        data = []
        for r in range(m.dim(k + 4)):
            row = 0
            for c in range(m.dim(k)):
                row |= ((x >> entry(k, r, c)) & 1) << c
            data.append(row)
        mats[k] = BitMatrix(m.dim(k + 4), m.dim(k), tuple(data))
    return Sq4Result(True, mats)
