"""Group cohomology in degrees 0 and 1 for finite groups on torsion modules.

A :class:`GModule` is a finite group acting on an :class:`FpModule` whose
presentation is a direct product of cyclics (canonical presentations and
their direct sums qualify); the action is given on designated generators
and extended along the multiplication table, with the full
(element, generator) consistency check performed at construction.

Crossed homomorphisms f(gh) = f(g) + g*f(h) are solved for as generator
value tuples: f is determined by its values on the designated generators,
and the conditions f(g*s) = f(g) + g*f(s) for all g and generating s imply
the full cocycle identity.  This keeps the linear system at
|G|*|gens| block rows while giving coordinates that are literally the
values on the designated generators, which is also what makes the emitted
matrices human-checkable.

Every cohomology object carries explicit representatives: classes can be
lifted to cocycles and cocycles mapped to classes.
"""

from __future__ import annotations

from math import gcd

from .fingroup import FiniteGroup, Subgroup, cyclic_generator, quotient
from .zlinalg import (
    FpModule,
    ModuleMap,
    Subquotient,
    columns,
    from_columns,
    hstack,
    identity,
    kernel_mod,
    mat_mul,
    mat_sub,
    mat_vec,
    shape,
    subquotient,
    zeros,
)


class WildOrderNotInvertible(ValueError):
    """The wild inertia order shares a factor with the torsion order."""


class NormNotZero(ValueError):
    """The cyclic norm operator does not annihilate the module."""


class NotCyclic(ValueError):
    """A tame quotient that should be cyclic is not."""


def coordinate_moduli(module):
    """Per-generator cyclic orders when the presentation is a cyclic product.

    Returns the list [m_1, ..., m_g] such that x = 0 in the module iff
    x_i = 0 mod m_i, or raises if the relation lattice is not of that shape.
    Canonical presentations, free presentations and their concatenations all
    qualify.
    """
    n, g = module.modulus, module.ngens
    moduli = []
    for i in range(g):
        unit = [0] * g
        unit[i] = 1
        coords = module.canonical_coords(unit)
        facs = module.invariant_factors()
        o = 1
        for cj, dj in zip(coords, facs):
            oj = dj // gcd(cj, dj)
            o = o * oj // gcd(o, oj)
        moduli.append(o)
    total = 1
    for m in moduli:
        total *= m
    if total != module.order():
        raise ValueError(
            "module presentation is not a direct product of cyclic factors; "
            "canonicalize it first")
    return moduli


class GModule:
    """A finite group acting on a finitely presented n-torsion module."""

    __slots__ = ("group", "module", "gen_action", "moduli", "_act")

    def __init__(self, group, module, gen_action, check=True):
        self.group = group
        self.module = module
        self.gen_action = {g: [list(r) for r in m] for g, m in gen_action.items()}
        self.moduli = coordinate_moduli(module)
        if set(self.gen_action) != set(group.generators):
            raise ValueError("need exactly one action matrix per generator")
        self._act = self._extend()
        if check:
            self._check()

    def _extend(self):
        g = self.group
        dim = self.module.ngens
        act = [None] * g.order
        act[0] = identity(dim)
        frontier = [0]
        n = self.module.modulus
        while frontier:
            nxt = []
            for e in frontier:
                for s in g.generators:
                    v = g.table[s][e]
                    if act[v] is None:
                        act[v] = [[x % n for x in row]
                                  for row in mat_mul(self.gen_action[s], act[e])]
                        nxt.append(v)
            frontier = nxt
        if any(a is None for a in act):
            raise ValueError("generators do not generate the group")
        return act

    def _check(self):
        grp, mod = self.group, self.module
        lattice = mod.relation_lattice()
        for s in grp.generators:
            mat = self.gen_action[s]
            for col in columns(lattice):
                image = mat_vec(mat, col)
                if any(v % m for v, m in zip(image, self.moduli)):
                    raise ValueError("action matrix does not respect relations")
        for g in grp.elements():
            for s in grp.generators:
                prod = grp.table[g][s]
                diff = mat_sub(self._act[prod], mat_mul(self._act[g], self.gen_action[s]))
                for col in columns(diff):
                    if any(v % m for v, m in zip(col, self.moduli)):
                        raise ValueError("action is not multiplicative")

    def action(self, g):
        """The matrix of g on module generators."""
        return self._act[g]

    def act(self, g, vec):
        n = self.module.modulus
        return [v % n for v in mat_vec(self._act[g], vec)]

    def restrict(self, sub):
        """(GModule over the subgroup as its own group, to_parent ids)."""
        grp, to_parent, _ = sub.as_group()
        gen_action = {s: self._act[to_parent[s]] for s in grp.generators}
        return GModule(grp, self.module, gen_action, check=False), to_parent

    @staticmethod
    def trivial(group, module):
        dim = module.ngens
        return GModule(group, module,
                       {s: identity(dim) for s in group.generators}, check=False)


# ---------------------------------------------------------------------------
# degree zero
# ---------------------------------------------------------------------------

class SubmoduleResult:
    """A submodule with canonical presentation and inclusion/projection."""

    __slots__ = ("module", "inclusion", "_sq")

    def __init__(self, sq, ambient_module):
        self.module = sq.module
        self.inclusion = ModuleMap(sq.module, ambient_module, sq.lift_matrix(),
                                   check=False)
        self._sq = sq

    def project(self, vec):
        """Coordinates of an ambient vector known to lie in the submodule."""
        return list(self._sq.project(vec))


class QuotientResult:
    """A quotient module with canonical presentation and projection."""

    __slots__ = ("module", "projection", "_sq")

    def __init__(self, sq, ambient_module):
        self.module = sq.module
        self.projection = ModuleMap(ambient_module, sq.module,
                                    sq.project_matrix(), check=False)
        self._sq = sq

    def lift(self, coords):
        return self._sq.lift(coords)


def invariants(gm):
    """The fixed submodule M^G with its inclusion.

    >>> g = FiniteGroup.cyclic(2)
    >>> M = FpModule(2, 2)
    >>> swap = GModule(g, M, {1: [[0, 1], [1, 0]]})
    >>> inv = invariants(swap)
    >>> inv.module.invariant_factors()
    (2,)
    """
    mod = gm.module
    n = mod.modulus
    dim = mod.ngens
    gens = gm.group.generators
    if not gens or dim == 0:
        sq = subquotient(dim, identity(dim), [], n, ambient_moduli=gm.moduli)
        return SubmoduleResult(sq, mod)
    stacked = []
    moduli_rows = []
    for s in gens:
        diff = mat_sub(gm.gen_action[s], identity(dim))
        stacked.extend(diff)
        moduli_rows.extend(gm.moduli)
    kg = kernel_mod(stacked, n, row_moduli=moduli_rows)
    sq = subquotient(dim, kg, [], n, ambient_moduli=gm.moduli)
    return SubmoduleResult(sq, mod)


def coinvariants(gm):
    """The quotient M_G = M / <g*m - m> with its projection."""
    mod = gm.module
    n = mod.modulus
    dim = mod.ngens
    img_cols = []
    for s in gm.group.generators:
        diff = mat_sub(gm.gen_action[s], identity(dim))
        img_cols.extend(columns(diff))
    img = from_columns(img_cols, dim)
    sq = subquotient(dim, identity(dim), img, n, ambient_moduli=gm.moduli)
    return QuotientResult(sq, mod)


# ---------------------------------------------------------------------------
# crossed homomorphisms
# ---------------------------------------------------------------------------

class CrossedHom:
    """A crossed homomorphism as a full value table, one value per element."""

    __slots__ = ("gmodule", "values")

    def __init__(self, gmodule, values):
        if len(values) != gmodule.group.order:
            raise ValueError("need one value per group element")
        self.gmodule = gmodule
        self.values = [list(v) for v in values]

    def value(self, g):
        return self.values[g]

    def is_valid(self):
        """Full pairwise cocycle check (quadratic in the group order)."""
        gm = self.gmodule
        grp = gm.group
        if any(v % m for v, m in zip(self.values[0], gm.moduli)):
            return False
        for g in grp.elements():
            gv = self.values[g]
            act_g = gm.action(g)
            for h in grp.elements():
                lhs = self.values[grp.table[g][h]]
                rhs = [a + b for a, b in zip(gv, mat_vec(act_g, self.values[h]))]
                if any((x - y) % m for x, y, m in zip(lhs, rhs, gm.moduli)):
                    return False
        return True

    def add(self, other):
        n = self.gmodule.module.modulus
        return CrossedHom(self.gmodule,
                          [[(a + b) % n for a, b in zip(u, v)]
                           for u, v in zip(self.values, other.values)])

    def sub(self, other):
        n = self.gmodule.module.modulus
        return CrossedHom(self.gmodule,
                          [[(a - b) % n for a, b in zip(u, v)]
                           for u, v in zip(self.values, other.values)])

    def same_as(self, other):
        gm = self.gmodule
        return all(
            not any((x - y) % m for x, y, m in zip(u, v, gm.moduli))
            for u, v in zip(self.values, other.values))


def principal_hom(gm, vec):
    """The principal crossed hom g -> g*m - m."""
    n = gm.module.modulus
    values = []
    for g in gm.group.elements():
        gv = gm.act(g, vec)
        values.append([(a - b) % n for a, b in zip(gv, vec)])
    return CrossedHom(gm, values)


class CrossedHomModule:
    """The module Z^1(G, M) with generator-value coordinates.

    ``module`` is the canonical presentation; ``decode`` produces the full
    value table of a coordinate vector and ``encode`` the coordinates of a
    crossed hom (raising ContainmentViolation when the input is not one).
    """

    __slots__ = ("gmodule", "gen_ids", "module", "_syms", "_sq", "_dim")

    def __init__(self, gmodule):
        gm = gmodule
        grp = gm.group
        dim = gm.module.ngens
        gens = grp.generators
        k = len(gens)
        n = gm.module.modulus
        self.gmodule = gm
        self.gen_ids = list(gens)
        self._dim = dim
        # symbolic values: f(element) = sym[element] * (stacked generator values)
        K = k * dim
        base = {}
        for i, s in enumerate(gens):
            m = zeros(dim, K)
            for r in range(dim):
                m[r][i * dim + r] = 1
            base[s] = m
        syms = [None] * grp.order
        syms[0] = zeros(dim, K)
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for s in gens:
                    v = grp.table[s][e]
                    if syms[v] is None:
                        acted = mat_mul(gm.gen_action[s], syms[e])
                        syms[v] = [[(x + y) % n for x, y in zip(ra, rb)]
                                   for ra, rb in zip(base[s], acted)]
                        nxt.append(v)
            frontier = nxt
        self._syms = syms
        # constraints: f(g*s) - f(g) - g*f(s) = 0 in M, for all g and gens s
        rows = []
        row_moduli = []
        for g in grp.elements():
            act_g = gm.action(g)
            for s in gens:
                prod = grp.table[g][s]
                expr = mat_sub(mat_sub(syms[prod], syms[g]),
                               mat_mul(act_g, base[s]))
                rows.extend(expr)
                row_moduli.extend(gm.moduli)
        ambient_moduli = list(gm.moduli) * k
        if rows:
            zgens = kernel_mod(rows, n, row_moduli=row_moduli)
        else:
            zgens = identity(K)
        self._sq = subquotient(K, zgens, [], n, ambient_moduli=ambient_moduli)
        self.module = self._sq.module

    def decode(self, coords):
        flat = self._sq.lift(coords)
        return self._from_flat(flat)

    def _from_flat(self, flat):
        n = self.gmodule.module.modulus
        values = [[v % n for v in mat_vec(sym, flat)] for sym in self._syms]
        return CrossedHom(self.gmodule, values)

    def gen_values_flat(self, hom):
        flat = []
        for s in self.gen_ids:
            flat.extend(hom.values[s])
        return flat

    def encode(self, hom):
        """Coordinates of a crossed hom (checks it lies in Z^1)."""
        return list(self._sq.project(self.gen_values_flat(hom)))

    def encode_gen_values(self, flat):
        return list(self._sq.project(list(flat)))

    def principal_matrix(self):
        """Matrix sending module generator coordinates to Z^1 coordinates."""
        gm = self.gmodule
        dim = self._dim
        cols = []
        for j in range(dim):
            unit = [0] * dim
            unit[j] = 1
            flat = []
            for s in self.gen_ids:
                flat.extend(gm.act(s, unit))
            flat = [a - b for a, b in zip(flat, unit * len(self.gen_ids))]
            cols.append(self.encode_gen_values(flat))
        return from_columns(cols, self.module.ngens)

    def postcompose_matrix(self, target_chm, mmap):
        """Matrix of f -> mmap o f from this Z^1 into target_chm's Z^1.

        mmap must be equivariant for the two module structures over the
        same group with the same designated generators.
        """
        cols = []
        for j in range(self.module.ngens):
            unit = [0] * self.module.ngens
            unit[j] = 1
            hom = self.decode(unit)
            flat = []
            for s in target_chm.gen_ids:
                flat.extend(mmap(hom.values[s]))
            cols.append(target_chm.encode_gen_values(flat))
        return from_columns(cols, target_chm.module.ngens)


def crossed_homs(gm):
    """The module of crossed homomorphisms with its decoder.

    >>> g = FiniteGroup.cyclic(4)
    >>> M = FpModule(2, 2)
    >>> swap = GModule(g, M, {1: [[0, 1], [1, 0]]})
    >>> crossed_homs(swap).module.invariant_factors()
    (2, 2)
    """
    return CrossedHomModule(gm)


class H1Module:
    """H^1(G, M) with a class map and explicit representatives."""

    __slots__ = ("gmodule", "zmodule", "module", "_sq")

    def __init__(self, gm, zmodule=None):
        self.gmodule = gm
        self.zmodule = zmodule if zmodule is not None else CrossedHomModule(gm)
        z = self.zmodule
        dim = gm.module.ngens
        n = gm.module.modulus
        bcols = []
        for j in range(dim):
            unit = [0] * dim
            unit[j] = 1
            flat = []
            for s in z.gen_ids:
                flat.extend(gm.act(s, unit))
            bcols.append([a - b for a, b in zip(flat, unit * len(z.gen_ids))])
        K = len(z.gen_ids) * dim
        self._sq = subquotient(K, z._sq.kernel, from_columns(bcols, K), n,
                               ambient_moduli=list(gm.moduli) * len(z.gen_ids))
        self.module = self._sq.module

    def class_of(self, hom):
        return list(self._sq.project(self.zmodule.gen_values_flat(hom)))

    def class_of_gen_values(self, flat):
        return list(self._sq.project(list(flat)))

    def representative(self, coords):
        return self.zmodule._from_flat(self._sq.lift(coords))

    def class_matrix(self):
        """Matrix from Z^1 coordinates to H^1 coordinates."""
        cols = []
        for j in range(self.zmodule.module.ngens):
            unit = [0] * self.zmodule.module.ngens
            unit[j] = 1
            cols.append(list(self._sq.project(self.zmodule._sq.lift(unit))))
        return from_columns(cols, self.module.ngens)


def h1(gm, zmodule=None):
    """H^1(G, M) = crossed homs modulo principal ones.

    >>> g = FiniteGroup.cyclic(4)
    >>> M = FpModule(2, 2)
    >>> swap = GModule(g, M, {1: [[0, 1], [1, 0]]})
    >>> h1(swap).module.invariant_factors()
    (2,)
    """
    return H1Module(gm, zmodule=zmodule)


def restrict(hom, sub):
    """Restrict a crossed hom to a subgroup (over the restricted GModule)."""
    gm = hom.gmodule
    rgm, to_parent = gm.restrict(sub)
    return CrossedHom(rgm, [hom.values[p] for p in to_parent])


# ---------------------------------------------------------------------------
# tame quotient section and inertia cohomology
# ---------------------------------------------------------------------------

class TameLocalData:
    """Everything attached to one inertia group: I, P, I/P, M^P, section.

    ``section`` maps a crossed hom on I to the crossed hom on I/P with
    values in M^P obtained by averaging over P (the inverse of the
    invariants-to-coinvariants comparison, which exists because |P| is
    invertible mod n).
    """

    __slots__ = ("gmodule", "wild", "tame_group", "projection", "reps",
                 "invariants", "tame_gmodule", "averaging", "_tame_chm")

    def __init__(self, gmodule, wild):
        gm = gmodule
        grp = gm.group
        n = gm.module.modulus
        if gcd(wild.order, n) != 1:
            raise WildOrderNotInvertible(
                f"wild inertia order {wild.order} is not invertible mod {n}")
        if not wild.is_normal():
            raise ValueError("wild inertia subgroup must be normal")
        self.gmodule = gm
        self.wild = wild
        q, proj = quotient(grp, wild)
        self.tame_group = q
        self.projection = proj
        reps = [None] * q.order
        for g in grp.elements():
            im = proj(g)
            if reps[im] is None or g < reps[im]:
                reps[im] = g
        self.reps = reps
        pgm, _ = gm.restrict(wild)
        self.invariants = invariants(pgm)
        dim = gm.module.ngens
        inv_p = pow(wild.order, -1, n)
        av = zeros(dim, dim)
        for p in wild.members:
            av = [[(x + y) for x, y in zip(ra, rb)] for ra, rb in zip(av, gm.action(p))]
        self.averaging = [[(inv_p * x) % n for x in row] for row in av]
        gen_action = {}
        inc = self.invariants.inclusion
        for s in q.generators:
            rep = reps[s]
            mat = mat_mul(gm.action(rep), inc.matrix)
            gen_action[s] = from_columns(
                [self.invariants.project(col) for col in columns(mat)],
                self.invariants.module.ngens)
        self.tame_gmodule = GModule(q, self.invariants.module, gen_action,
                                    check=False)
        self._tame_chm = None

    def tame_crossed_homs(self):
        if self._tame_chm is None:
            self._tame_chm = CrossedHomModule(self.tame_gmodule)
        return self._tame_chm

    def average_to_invariants(self, vec):
        """Average an M-vector over P and express it in M^P coordinates."""
        return self.invariants.project(
            [v % self.gmodule.module.modulus for v in mat_vec(self.averaging, vec)])

    def section(self, hom):
        """The tame crossed hom with values in M^P induced by ``hom``."""
        values = []
        for qid in range(self.tame_group.order):
            values.append(self.average_to_invariants(hom.values[self.reps[qid]]))
        return CrossedHom(self.tame_gmodule, values)

    def inflate(self, tame_hom):
        """Compose a tame crossed hom with projection and inclusion."""
        inc = self.invariants.inclusion
        values = [inc(tame_hom.values[self.projection(g)])
                  for g in self.gmodule.group.elements()]
        return CrossedHom(self.gmodule, values)


def tame_section(hom, wild):
    """Spec-shaped wrapper: section of a crossed hom along the wild subgroup."""
    data = TameLocalData(hom.gmodule, wild)
    return data.section(hom)


class InertiaH1:
    """H^1 of a cyclic tame quotient: M^P / (sigma - 1) with class maps."""

    __slots__ = ("gmodule", "generator", "module", "_sq")

    def __init__(self, tame_gm, require_torsion_divides=True):
        grp = tame_gm.group
        mod = tame_gm.module
        n = mod.modulus
        gen = None
        if grp.generators and len(grp.generators) == 1 \
                and grp.element_order(grp.generators[0]) == grp.order:
            gen = grp.generators[0]
        else:
            gen = cyclic_generator(grp)
        if gen is None and grp.order > 1:
            raise NotCyclic("tame quotient is not cyclic")
        if gen is None:
            gen = 0
        e = grp.order
        if require_torsion_divides and e % n:
            raise ValueError(
                f"tame quotient order {e} is not divisible by the torsion order {n}")
        dim = mod.ngens
        norm = zeros(dim, dim)
        for g in grp.elements():
            norm = [[x + y for x, y in zip(ra, rb)]
                    for ra, rb in zip(norm, tame_gm.action(g))]
        for col in columns(norm):
            if any(v % m for v, m in zip(col, tame_gm.moduli)):
                raise NormNotZero("the norm operator does not annihilate the module")
        self.gmodule = tame_gm
        self.generator = gen
        diff = mat_sub(tame_gm.action(gen), identity(dim))
        self._sq = subquotient(dim, identity(dim), diff, n,
                               ambient_moduli=tame_gm.moduli)
        self.module = self._sq.module

    def class_of(self, vec):
        """Class of a module vector (= of the cocycle sending sigma to it)."""
        return list(self._sq.project(vec))

    def representative(self, coords):
        return self._sq.lift(coords)

    def class_matrix(self):
        """Matrix from module generator coordinates to H^1 coordinates."""
        return self._sq.project_matrix()


def inertia_h1(tame_gm):
    """H^1 of a cyclic tame quotient acting on M^P.

    Validates cyclicity, that the torsion order divides the group order,
    and that the norm operator vanishes; rejects otherwise.
    """
    return InertiaH1(tame_gm)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
