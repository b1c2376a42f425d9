"""Finite groups by multiplication table, with subgroups and quotients.

Elements are integer ids 0..N-1 with 0 the identity.  Groups built from
permutation generators get their ids in breadth-first order from the
generator list, which makes serialisation reproducible.  Products follow
the map-composition convention: table[g][h] is "g after h".
"""

from __future__ import annotations

import warnings
from itertools import product


class OrderBoundExceeded(RuntimeError):
    """Closure grew past the configured order bound."""


class NotNormal(ValueError):
    """Quotient requested by a non-normal subgroup."""


class FiniteGroup:
    """A finite group as a multiplication table plus designated generators.

    The table is verified on construction: identity at id 0, two-sided
    inverses, latin-square rows/columns, and associativity by Light's test
    against the generator set (full associativity when no generators are
    supplied and the order is at most 64).
    """

    __slots__ = ("table", "generators", "labels", "_inverse", "_orders")

    def __init__(self, table, generators, labels=None, check=True):
        n = len(table)
        self.table = [list(r) for r in table]
        self.generators = list(generators)
        self.labels = list(labels) if labels is not None else None
        self._inverse = None
        self._orders = None
        if check:
            self._check_table()

    def _check_table(self):
        n = self.order
        for i, row in enumerate(self.table):
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise ValueError("table is not square over element ids")
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ValueError("id 0 is not the identity")
        for g in range(n):
            if sorted(self.table[g]) != list(range(n)):
                raise ValueError("row is not a permutation")
            if sorted(self.table[r][g] for r in range(n)) != list(range(n)):
                raise ValueError("column is not a permutation")
        if any(all(self.table[g][h] != 0 for h in range(n)) for g in range(n)):
            raise ValueError("an element has no inverse")
        gens = self.generators or (list(range(n)) if n <= 64 else [])
        # Light's associativity test: (g*s)*h == g*(s*h) for generating s
        for s in gens:
            for g in range(n):
                gs = self.table[g][s]
                row_gs = self.table[gs]
                row_g = self.table[g]
                srow = self.table[s]
                for h in range(n):
                    if row_gs[h] != row_g[srow[h]]:
                        raise ValueError("table is not associative")
        if self.generators:
            if len(self._closure_of(self.generators)) != n:
                raise ValueError("generators do not generate")

    # -- basic calculus --------------------------------------------------

    @property
    def order(self):
        return len(self.table)

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        if self._inverse is None:
            n = self.order
            inv = [0] * n
            for a in range(n):
                inv[a] = self.table[a].index(0)
            self._inverse = inv
        return self._inverse[g]

    def power(self, g, k):
        if k < 0:
            g, k = self.inv(g), -k
        r = 0
        for _ in range(k):
            r = self.table[r][g]
        return r

    def element_order(self, g):
        if self._orders is None:
            self._orders = [None] * self.order
        if self._orders[g] is None:
            k, x = 1, g
            while x != 0:
                x = self.table[x][g]
                k += 1
            self._orders[g] = k
        return self._orders[g]

    def conjugate(self, g, h):
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inv(h)]

    def commutator(self, g, h):
        """g^-1 h^-1 g h."""
        return self.table[self.table[self.table[self.inv(g)][self.inv(h)]][g]][h]

    def elements(self):
        return range(self.order)

    def _closure_of(self, seeds):
        seen = {0}
        frontier = [0]
        seeds = [s for s in seeds]
        while frontier:
            nxt = []
            for e in frontier:
                for s in seeds:
                    v = self.table[e][s]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
                    v = self.table[s][e]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return seen

    def label_of(self, g):
        if self.labels is not None:
            return self.labels[g]
        return f"<{g}>"

    def __repr__(self):
        return f"FiniteGroup(order {self.order})"

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_permutations(perms, names=None, order_bound=100000, on_collision=None):
        """Close a set of permutations (tuples over range(k)) into a group.

        Ids are assigned by breadth-first search from the identity along the
        given generator order.  ``on_collision`` is called with (i, j) when
        two input generators induce the same permutation (j may be -1 for
        the identity permutation); by default a warning is emitted, since a
        collision means the underlying point set does not separate the
        intended group.
        """
        if not perms:
            raise ValueError("need at least one permutation")
        deg = len(perms[0])
        ident = tuple(range(deg))
        perms = [tuple(p) for p in perms]
        for p in perms:
            if sorted(p) != list(range(deg)):
                raise ValueError("generator is not a bijection")
        seen_perm = {}
        for i, p in enumerate(perms):
            if p == ident:
                _collide(on_collision, i, -1)
            if p in seen_perm:
                _collide(on_collision, i, seen_perm[p])
            else:
                seen_perm[p] = i

        names = list(names) if names is not None else [f"g{i+1}" for i in range(len(perms))]
        ids = {ident: 0}
        elems = [ident]
        words = [""]
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                base = elems[e]
                for gi, p in enumerate(perms):
                    q = tuple(p[base[x]] for x in range(deg))
                    if q not in ids:
                        if len(elems) >= order_bound:
                            raise OrderBoundExceeded(
                                f"closure exceeded order bound {order_bound}")
                        ids[q] = len(elems)
                        elems.append(q)
                        w = words[e]
                        words.append(names[gi] if not w else names[gi] + "*" + w)
                        nxt.append(ids[q])
            frontier = nxt
        n = len(elems)
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            pa = elems[a]
            for b in range(n):
                pb = elems[b]
                table[a][b] = ids[tuple(pa[pb[x]] for x in range(deg))]
        words[0] = "e"
        gen_ids = [ids[p] for p in perms]
        g = FiniteGroup(table, gen_ids, labels=words, check=False)
        g._check_table()
        return g, elems

    @staticmethod
    def from_table(table, generators, labels=None):
        return FiniteGroup(table, generators, labels=labels)

    @staticmethod
    def cyclic(k):
        table = [[(a + b) % k for b in range(k)] for a in range(k)]
        gens = [1] if k > 1 else []
        labels = ["e"] + [f"g^{i}" if i > 1 else "g" for i in range(1, k)]
        return FiniteGroup(table, gens, labels=labels, check=False)

    @staticmethod
    def trivial():
        return FiniteGroup([[0]], [], labels=["e"], check=False)


def _collide(handler, i, j):
    if handler is not None:
        handler(i, j)
    else:
        other = "the identity" if j == -1 else f"generator {j}"
        warnings.warn(
            f"generator {i} induces the same permutation as {other}; "
            "the point set does not separate the group", stacklevel=3)


def closure(perms, names=None, order_bound=100000):
    """The group generated by permutations of a finite set.

    >>> g, _ = closure([(1, 0)])
    >>> g.order
    2
    """
    return FiniteGroup.from_permutations(perms, names=names, order_bound=order_bound)


class Subgroup:
    """A subgroup of a parent group: sorted member ids plus generators."""

    __slots__ = ("parent", "members", "generators", "_index")

    def __init__(self, parent, members, generators=None, check=True):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self.generators = list(generators) if generators is not None else \
            [m for m in self.members if m != 0]
        self._index = {m: i for i, m in enumerate(self.members)}
        if check:
            if 0 not in self._index:
                raise ValueError("subgroup must contain the identity")
            for a in self.members:
                for b in self.members:
                    if parent.table[a][b] not in self._index:
                        raise ValueError("subgroup is not closed")

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self._index

    def is_normal(self):
        p = self.parent
        for g in p.elements():
            for s in self.generators or self.members:
                if p.conjugate(s, g) not in self._index:
                    return False
        return True

    def conjugated_by(self, g):
        p = self.parent
        return Subgroup(p, [p.conjugate(m, g) for m in self.members],
                        generators=[p.conjugate(s, g) for s in self.generators],
                        check=False)

    def as_group(self):
        """The subgroup as a FiniteGroup of its own, with the id mapping.

        Returns (group, to_parent, from_parent) where to_parent[i] is the
        parent id of subgroup element i.  Ids are BFS-ordered from the
        subgroup generators, so designated generators stay designated.
        """
        p = self.parent
        gens = [g for g in self.generators if g != 0]
        order = [0]
        index = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for s in gens:
                    v = p.table[e][s]
                    if v not in index:
                        index[v] = len(order)
                        order.append(v)
                        nxt.append(v)
                    v = p.table[s][e]
                    if v not in index:
                        index[v] = len(order)
                        order.append(v)
                        nxt.append(v)
            frontier = nxt
        if len(order) != self.order:
            # generators do not reach everything; fall back to member order
            order = [0] + [m for m in self.members if m != 0]
            index = {m: i for i, m in enumerate(order)}
        table = [[index[p.table[a][b]] for b in order] for a in order]
        labels = [p.label_of(m) for m in order]
        grp = FiniteGroup(table, [index[g] for g in gens], labels=labels, check=False)
        return grp, order, index


def subgroup_generated(group, ids):
    """Smallest subgroup of ``group`` containing ``ids``.

    >>> g = FiniteGroup.cyclic(6)
    >>> subgroup_generated(g, [2]).order
    3
    """
    seen = {0}
    frontier = [0]
    gens = [g for g in ids if g != 0]
    while frontier:
        nxt = []
        for e in frontier:
            for s in gens:
                v = group.table[e][s]
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    # include inverses implicitly: finite closure under multiplication is a group
    return Subgroup(group, seen, generators=gens, check=False)


class GroupHom:
    """A homomorphism given by the image of every source element."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.images = list(images)
        if check:
            if len(self.images) != source.order:
                raise ValueError("need one image per element")
            if self.images[0] != 0:
                raise ValueError("identity must map to identity")
            for a in source.elements():
                for b in source.elements():
                    if self.images[source.table[a][b]] != \
                            target.table[self.images[a]][self.images[b]]:
                        raise ValueError("map is not multiplicative")

    def __call__(self, g):
        return self.images[g]

    def is_bijective(self):
        return sorted(self.images) == list(range(self.target.order)) \
            and self.source.order == self.target.order

    @staticmethod
    def from_generator_images(source, target, gen_images, check=True):
        """Extend a map on designated generators along BFS words.

        gen_images maps each source generator id to a target id.  The
        extension is verified multiplicative, which also proves the map is
        well defined on relations.
        """
        images = [None] * source.order
        images[0] = 0
        frontier = [0]
        gens = source.generators
        while frontier:
            nxt = []
            for e in frontier:
                for s in gens:
                    v = source.table[e][s]
                    if images[v] is None:
                        images[v] = target.table[images[e]][gen_images[s]]
                        nxt.append(v)
                    v = source.table[s][e]
                    if images[v] is None:
                        images[v] = target.table[gen_images[s]][images[e]]
                        nxt.append(v)
            frontier = nxt
        if any(im is None for im in images):
            raise ValueError("generators do not generate the source group")
        return GroupHom(source, target, images, check=check)


def quotient(group, normal):
    """Quotient by a normal subgroup: (FiniteGroup, GroupHom projection).

    Coset representatives are the minimal element ids, and the quotient's
    ids are BFS-ordered from the images of the parent generators.
    """
    if normal.parent is not group:
        raise ValueError("subgroup belongs to a different group")
    if not normal.is_normal():
        raise NotNormal("subgroup is not normal")
    n = group.order
    rep = [None] * n
    cosets = []
    for g in range(n):
        if rep[g] is None:
            members = sorted(group.table[g][h] for h in normal.members)
            r = members[0]
            for m in members:
                rep[m] = r
            cosets.append(r)
    # BFS ordering of cosets from generator images for reproducible ids
    reps_index = {}
    order = [0]
    reps_index[0] = 0
    gen_reps = [rep[s] for s in group.generators]
    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            for s in gen_reps:
                v = rep[group.table[e][s]]
                if v not in reps_index:
                    reps_index[v] = len(order)
                    order.append(v)
                    nxt.append(v)
        frontier = nxt
    for r in cosets:  # stragglers (generators of the quotient always reach all)
        if r not in reps_index:
            reps_index[r] = len(order)
            order.append(r)
    table = [[reps_index[rep[group.table[a][b]]] for b in order] for a in order]
    qgens = []
    for s in group.generators:
        q = reps_index[rep[s]]
        if q != 0 and q not in qgens:
            qgens.append(q)
    labels = [group.label_of(r) + "*N" if r != 0 else "e" for r in order]
    qgroup = FiniteGroup(table, qgens, labels=labels, check=False)
    proj = GroupHom(group, qgroup, [reps_index[rep[g]] for g in range(n)], check=False)
    return qgroup, proj


def n_torsor_quotient(group, n):
    """Quotient by the subgroup generated by n-th powers and commutators.

    The result is abelian of exponent dividing n, and every homomorphism
    from ``group`` to an n-torsion abelian group factors through it.

    >>> g = FiniteGroup.cyclic(6)
    >>> q, _ = n_torsor_quotient(g, 2)
    >>> q.order
    2
    """
    gens = set()
    for g in group.elements():
        gens.add(group.power(g, n))
    for g in group.elements():
        for h in group.elements():
            gens.add(group.commutator(g, h))
    gens.discard(0)
    s = subgroup_generated(group, sorted(gens))
    return quotient(group, s)


def is_cyclic(group):
    return any(group.element_order(g) == group.order for g in group.elements())


def cyclic_generator(group):
    """Smallest element id generating the whole group, or None."""
    for g in group.elements():
        if group.element_order(g) == group.order:
            return g
    return None


if __name__ == "__main__":
    import doctest

    doctest.testmod()
