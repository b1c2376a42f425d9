import warnings
from itertools import product

import pytest

from curvecoh.fingroup import (
    FiniteGroup,
    GroupHom,
    NotNormal,
    OrderBoundExceeded,
    Subgroup,
    closure,
    cyclic_generator,
    is_cyclic,
    n_torsor_quotient,
    quotient,
    subgroup_generated,
)


def sixteen_cover_group():
    """The order-16 cover group as permutations of the 16 fibre patterns.

    Points are (k, a, b): k in Z/4 tracks the y-branch, a and b are signs of
    the two square-root coordinates on the current sheet.
    """
    pts = [(k, a, b) for k in range(4) for a in (1, -1) for b in (1, -1)]
    idx = {p: i for i, p in enumerate(pts)}

    def perm(fn):
        return tuple(idx[fn(p)] for p in pts)

    s1 = perm(lambda p: ((p[0] + 2) % 4, p[1], p[2]))
    s2 = perm(lambda p: (p[0], -p[1], p[2]))
    s3 = perm(lambda p: (p[0], p[1], -p[2]))

    def gam(p):
        k, a, b = p
        if k % 2 == 0:
            return ((k + 1) % 4, b, a)
        return ((k + 1) % 4, -b, -a)

    return closure([s1, s2, s3, perm(gam)], names=["s1", "s2", "s3", "c"])


def test_closure_order_two():
    g, _ = closure([(1, 0)])
    assert g.order == 2


def test_closure_sixteen():
    g, _ = sixteen_cover_group()
    assert g.order == 16
    s1, s2, s3, c = g.generators
    # c^2 = s1 s2 s3 and c s2 = s3 c
    assert g.power(c, 2) == g.mul(s1, g.mul(s2, s3))
    assert g.mul(c, s2) == g.mul(s3, c)


def test_closure_order_bound():
    with pytest.raises(OrderBoundExceeded):
        closure([(1, 2, 3, 4, 5, 6, 0)], order_bound=5)


def test_collision_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        closure([(1, 0), (1, 0)])
    assert any("does not separate" in str(w.message) for w in caught)


def test_subgroup_generated_trivial():
    g = FiniteGroup.cyclic(6)
    assert subgroup_generated(g, []).order == 1


def test_subgroup_generated_c4_inside_16():
    g, _ = sixteen_cover_group()
    s1, s2, s3, c = g.generators
    # the inertia subgroup <c*s2> has order 4
    h = subgroup_generated(g, [g.mul(c, s2)])
    assert h.order == 4


def test_quotient_by_trivial():
    g = FiniteGroup.cyclic(6)
    q, proj = quotient(g, subgroup_generated(g, []))
    assert q.order == 6
    assert proj.is_bijective()


def test_quotient_sixteen_by_s2_s3():
    g, _ = sixteen_cover_group()
    s1, s2, s3, c = g.generators
    q, proj = quotient(g, subgroup_generated(g, [s2, s3]))
    assert q.order == 4
    assert is_cyclic(q)
    # the image of c generates the quotient
    assert q.element_order(proj(c)) == 4


def test_quotient_by_whole_group():
    g, _ = sixteen_cover_group()
    q, _ = quotient(g, subgroup_generated(g, list(g.generators)))
    assert q.order == 1


def test_quotient_not_normal():
    # S3: the subgroup generated by a transposition is not normal
    g, _ = closure([(1, 0, 2), (0, 2, 1)])
    h = subgroup_generated(g, [g.generators[0]])
    assert h.order == 2
    with pytest.raises(NotNormal):
        quotient(g, h)


def test_quotient_order_formula():
    g, _ = sixteen_cover_group()
    for gen_ids in ([g.generators[1]], [g.generators[0], g.generators[1]]):
        h = subgroup_generated(g, gen_ids)
        if not h.is_normal():
            continue
        q, _ = quotient(g, h)
        assert q.order * h.order == g.order


def test_n_torsor_quotient_c6():
    q, _ = n_torsor_quotient(FiniteGroup.cyclic(6), 2)
    assert q.order == 2


def test_n_torsor_quotient_s3():
    g, _ = closure([(1, 0, 2), (0, 2, 1)])
    assert g.order == 6
    q, _ = n_torsor_quotient(g, 2)
    assert q.order == 2


def test_n_torsor_quotient_exponent_n_abelian():
    klein, _ = closure([(1, 0, 3, 2), (2, 3, 0, 1)])
    q, proj = n_torsor_quotient(klein, 2)
    assert q.order == 4
    assert proj.is_bijective()


def brute_homs_to_zn(g, n):
    """All homomorphisms g -> Z/n, as value tuples, by generator search."""
    gens = g.generators
    out = set()
    for imgs in product(range(n), repeat=len(gens)):
        gen_map = dict(zip(gens, imgs))
        vals = [None] * g.order
        vals[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for s in gens:
                    v = g.table[e][s]
                    if vals[v] is None:
                        vals[v] = (vals[e] + gen_map[s]) % n
                        nxt.append(v)
            frontier = nxt
        ok = all(
            vals[g.table[a][b]] == (vals[a] + vals[b]) % n
            for a in g.elements() for b in g.elements()
        )
        if ok:
            out.add(tuple(vals))
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_torsor_quotient_universal_property(n):
    groups = [FiniteGroup.cyclic(6), closure([(1, 0, 2), (0, 2, 1)])[0],
              sixteen_cover_group()[0]]
    for g in groups:
        q, proj = n_torsor_quotient(g, n)
        homs_g = brute_homs_to_zn(g, n)
        homs_q = brute_homs_to_zn(q, n)
        # every hom g -> Z/n factors through q, and distinctly so
        lifted = {tuple(h[proj(x)] for x in g.elements()) for h in homs_q}
        assert lifted == homs_g


def test_group_hom_from_generator_images():
    g = FiniteGroup.cyclic(4)
    h = GroupHom.from_generator_images(g, g, {1: g.power(1, 3)})
    assert h(1) == 3
    assert h(2) == 2
    with pytest.raises(ValueError):
        # no homomorphism C4 -> C3 sends the generator to a generator
        GroupHom.from_generator_images(g, FiniteGroup.cyclic(3), {1: 1})


def test_subgroup_as_group_roundtrip():
    g, _ = sixteen_cover_group()
    s1, s2, s3, c = g.generators
    h = subgroup_generated(g, [g.mul(c, s2)])
    grp, to_parent, from_parent = h.as_group()
    assert grp.order == 4
    for a in range(grp.order):
        for b in range(grp.order):
            assert to_parent[grp.table[a][b]] == g.table[to_parent[a]][to_parent[b]]


def test_from_table_rejects_bad_tables():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]], [1])
    with pytest.raises(ValueError):
        FiniteGroup([[1, 0], [0, 1]], [1])
