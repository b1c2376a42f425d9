"""Bounded cochain complexes of finitely presented torsion modules.

Sign conventions, fixed once and regression-locked against the worked
mod-2 example where every choice is invisible:

* ``cone(f)``: cone^i = source^{i+1} (+) target^i with differential
  (a, b) -> (-d a, f(a) + d b);
* ``shift(c, k)``: degrees move by k, differentials pick up (-1)^k;
* ``total_two_rows``: Tot^s = row0^s (+) row1^{s-1} with differential
  (a, b) -> (d a, vert(a) - d b).

Cohomology groups come with explicit representative lifts via
:func:`curvecoh.zlinalg.subquotient`.
"""

from __future__ import annotations

from .zlinalg import (
    FpModule,
    ModuleMap,
    from_columns,
    hstack,
    identity,
    mat_copy,
    mat_neg,
    shape,
    subquotient,
    zeros,
)


class SquareNotCommuting(ValueError):
    """A two-row totalization whose vertical maps do not commute."""


def zero_module(modulus):
    return FpModule(modulus, 0)


class CochainComplex:
    """A bounded complex: consecutive terms with d o d = 0 (checked)."""

    __slots__ = ("modulus", "lowest", "terms", "diffs")

    def __init__(self, modulus, lowest, terms, diffs, check=True):
        if len(diffs) != max(len(terms) - 1, 0):
            raise ValueError("need one differential per consecutive pair")
        self.modulus = modulus
        self.lowest = lowest
        self.terms = list(terms)
        self.diffs = list(diffs)
        if check:
            for i, d in enumerate(self.diffs):
                if d.source is not self.terms[i] or d.target is not self.terms[i + 1]:
                    raise ValueError("differential endpoints do not match terms")
            for i in range(len(self.diffs) - 1):
                if not self.diffs[i + 1].compose(self.diffs[i]).is_zero():
                    raise ValueError("differentials do not square to zero")

    @property
    def highest(self):
        return self.lowest + len(self.terms) - 1

    def degrees(self):
        return range(self.lowest, self.lowest + len(self.terms))

    def term(self, degree):
        i = degree - self.lowest
        if 0 <= i < len(self.terms):
            return self.terms[i]
        return zero_module(self.modulus)

    def differential(self, degree):
        i = degree - self.lowest
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        return ModuleMap.zero_map(self.term(degree), self.term(degree + 1))

    def trimmed(self):
        """Drop zero-rank terms at both ends (degrees adjust accordingly)."""
        lo, hi = 0, len(self.terms)
        while lo < hi and self.terms[lo].ngens == 0:
            lo += 1
        while hi > lo and self.terms[hi - 1].ngens == 0:
            hi -= 1
        if lo == hi:
            return CochainComplex(self.modulus, 0, [zero_module(self.modulus)], [],
                                  check=False)
        return CochainComplex(self.modulus, self.lowest + lo,
                              self.terms[lo:hi], self.diffs[lo:hi - 1], check=False)

    def __repr__(self):
        ranks = " -> ".join(str(list(t.invariant_factors())) for t in self.terms)
        return f"CochainComplex(deg {self.lowest}: {ranks})"


class ComplexMorphism:
    """A degreewise map of complexes commuting with differentials (checked)."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source, target, maps, check=True):
        self.source = source
        self.target = target
        self.maps = dict(maps)
        if check:
            self._check()

    def _check(self):
        src, tgt = self.source, self.target
        lo = min(src.lowest, tgt.lowest)
        hi = max(src.highest, tgt.highest)
        for deg in range(lo, hi + 1):
            f_here = self.map_at(deg)
            f_next = self.map_at(deg + 1)
            left = f_next.compose(src.differential(deg))
            right = tgt.differential(deg).compose(f_here)
            if not left.sub(right).is_zero():
                raise ValueError(f"morphism does not commute with d at degree {deg}")

    def map_at(self, degree):
        if degree in self.maps:
            return self.maps[degree]
        return ModuleMap.zero_map(self.source.term(degree), self.target.term(degree))


def direct_sum(complexes):
    """Degreewise direct sum; returns (complex, offsets per degree).

    offsets[degree] is the list of starting coordinates of each summand in
    the concatenated term.
    """
    modulus = complexes[0].modulus
    lo = min(c.lowest for c in complexes)
    hi = max(c.highest for c in complexes)
    terms = []
    offsets = {}
    for deg in range(lo, hi + 1):
        offs = []
        pos = 0
        for c in complexes:
            offs.append(pos)
            pos += c.term(deg).ngens
        offsets[deg] = offs
        total = FpModule(modulus, pos, _blockdiag(
            [c.term(deg).relations for c in complexes], pos))
        terms.append(total)
    diffs = []
    for deg in range(lo, hi):
        mat = zeros(terms[deg - lo + 1].ngens, terms[deg - lo].ngens)
        for ci, c in enumerate(complexes):
            block = c.differential(deg).matrix
            r0 = offsets[deg + 1][ci]
            c0 = offsets[deg][ci]
            for r, row in enumerate(block):
                for cc, v in enumerate(row):
                    mat[r0 + r][c0 + cc] = v
        diffs.append(ModuleMap(terms[deg - lo], terms[deg - lo + 1], mat, check=False))
    return CochainComplex(modulus, lo, terms, diffs), offsets


def _blockdiag(rel_blocks, total):
    width = sum(shape(b)[1] for b in rel_blocks)
    rows = [[0] * width for _ in range(total)]
    r0 = 0
    c0 = 0
    for b in rel_blocks:
        br, bc = shape(b)
        for i in range(br):
            for j in range(bc):
                rows[r0 + i][c0 + j] = b[i][j]
        r0 += br
        c0 += bc
    return rows


def cone(f):
    """Mapping cone of a morphism: cone^i = src^{i+1} (+) tgt^i.

    The differential is (a, b) -> (-d a, f(a) + d b); d o d = 0 is checked
    on construction like for every complex.
    """
    src, tgt = f.source, f.target
    modulus = src.modulus
    lo = min(src.lowest - 1, tgt.lowest)
    hi = max(src.highest - 1, tgt.highest)
    terms = []
    for deg in range(lo, hi + 1):
        a = src.term(deg + 1)
        b = tgt.term(deg)
        total = FpModule(modulus, a.ngens + b.ngens,
                         _blockdiag([a.relations, b.relations], a.ngens + b.ngens))
        terms.append(total)
    diffs = []
    for deg in range(lo, hi):
        a = src.term(deg + 1)
        b = tgt.term(deg)
        a_next = src.term(deg + 2)
        b_next = tgt.term(deg + 1)
        mat = zeros(a_next.ngens + b_next.ngens, a.ngens + b.ngens)
        _paste(mat, mat_neg(src.differential(deg + 1).matrix), 0, 0)
        _paste(mat, f.map_at(deg + 1).matrix, a_next.ngens, 0)
        _paste(mat, tgt.differential(deg).matrix, a_next.ngens, a.ngens)
        diffs.append(ModuleMap(terms[deg - lo], terms[deg - lo + 1], mat, check=False))
    return CochainComplex(modulus, lo, terms, diffs)


def _paste(mat, block, r0, c0):
    for r, row in enumerate(block):
        for c, v in enumerate(row):
            mat[r0 + r][c0 + c] = v


def shift(c, k):
    """The shifted complex c[k]: term i is c^{i+k}, d multiplied by (-1)^k."""
    if k == 0:
        return c
    sign = -1 if k % 2 else 1
    diffs = []
    for d in c.diffs:
        m = mat_neg(d.matrix) if sign < 0 else mat_copy(d.matrix)
        diffs.append(ModuleMap(d.source, d.target, m, check=False))
    return CochainComplex(c.modulus, c.lowest - k, c.terms, diffs, check=False)


def total_two_rows(row0, row1, vertical):
    """Totalization of a two-row double complex.

    ``vertical`` maps degree s of row0 to degree s of row1 (dict
    degree -> ModuleMap); the squares vert o d = d o vert are verified.
    Tot^s = row0^s (+) row1^{s-1}, differential (a, b) -> (d a, vert(a) - d b).
    """
    modulus = row0.modulus
    for deg in range(min(row0.lowest, row1.lowest) - 1,
                     max(row0.highest, row1.highest) + 1):
        v_here = vertical.get(deg)
        v_next = vertical.get(deg + 1)
        vh = v_here if v_here is not None else \
            ModuleMap.zero_map(row0.term(deg), row1.term(deg))
        vn = v_next if v_next is not None else \
            ModuleMap.zero_map(row0.term(deg + 1), row1.term(deg + 1))
        left = vn.compose(row0.differential(deg))
        right = row1.differential(deg).compose(vh)
        if not left.sub(right).is_zero():
            raise SquareNotCommuting(f"vertical square at degree {deg}")
    lo = min(row0.lowest, row1.lowest + 1)
    hi = max(row0.highest, row1.highest + 1)
    terms = []
    for deg in range(lo, hi + 1):
        a = row0.term(deg)
        b = row1.term(deg - 1)
        terms.append(FpModule(modulus, a.ngens + b.ngens,
                              _blockdiag([a.relations, b.relations],
                                         a.ngens + b.ngens)))
    diffs = []
    for deg in range(lo, hi):
        a = row0.term(deg)
        b = row1.term(deg - 1)
        a_next = row0.term(deg + 1)
        b_next = row1.term(deg)
        mat = zeros(a_next.ngens + b_next.ngens, a.ngens + b.ngens)
        _paste(mat, row0.differential(deg).matrix, 0, 0)
        vh = vertical.get(deg)
        if vh is not None:
            _paste(mat, vh.matrix, a_next.ngens, 0)
        _paste(mat, mat_neg(row1.differential(deg - 1).matrix), a_next.ngens, a.ngens)
        diffs.append(ModuleMap(terms[deg - lo], terms[deg - lo + 1], mat, check=False))
    return CochainComplex(modulus, lo, terms, diffs)


class CohomologyGroup:
    """H^i of a complex, canonical, with representative lifts.

    ``representative`` and ``class_of`` work in the coordinates of the
    complex term at this degree.
    """

    __slots__ = ("degree", "module", "_sq", "_to", "_frm")

    def __init__(self, degree, sq, to_canon=None, from_canon=None):
        self.degree = degree
        self.module = sq.module
        self._sq = sq
        self._to = to_canon
        self._frm = from_canon

    def representative(self, coords):
        vec = self._sq.lift(coords)
        return self._frm(vec) if self._frm is not None else vec

    def class_of(self, vec):
        if self._to is not None:
            vec = self._to(vec)
        return list(self._sq.project(vec))


def cohomology(c):
    """All cohomology groups, as a list of CohomologyGroup.

    H^i = ker d^i / im d^{i-1}, computed by integer subquotients; each
    group carries representative cocycle lifts.  Terms whose presentation
    is not a product of cyclics are canonicalized internally; lifts and
    classes are still expressed in the term's own coordinates.
    """
    from .gcohom import coordinate_moduli

    out = []
    for deg in c.degrees():
        term = c.term(deg)
        d_out = c.differential(deg)
        d_in = c.differential(deg - 1)
        kg = d_out.kernel_gens()
        img = d_in.matrix if d_in.source.ngens else [[] for _ in range(term.ngens)]
        try:
            moduli = coordinate_moduli(term)
        except ValueError:
            moduli = None
        if moduli is not None:
            sq = subquotient(term.ngens, kg, img, c.modulus, ambient_moduli=moduli)
            out.append(CohomologyGroup(deg, sq))
        else:
            canon, to, frm = term.canonicalize()
            from .zlinalg import columns as _cols

            kg2 = from_columns([to(col) for col in _cols(kg)], canon.ngens)
            img2 = from_columns([to(col) for col in _cols(img)], canon.ngens)
            sq = subquotient(canon.ngens, kg2, img2, c.modulus,
                             ambient_moduli=list(canon.invariant_factors()))
            out.append(CohomologyGroup(deg, sq, to, frm))
    return out


def cohomology_orders(c):
    return {h.degree: h.module.order() for h in cohomology(c)}


if __name__ == "__main__":
    import doctest

    doctest.testmod()
