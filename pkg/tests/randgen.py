"""Seeded random generators for the property suites: small monomial algebras
and random quotient modules, all exact and deterministic per seed."""

import random
from fractions import Fraction

from syzkit.algebra import Quiver, Relation, build_algebra
from syzkit.modules import direct_sum, projective_module, quotient_module
from syzkit.ratmat import QMatrix


def random_monomial_algebra(rng):
    """A random nilpotent monomial algebra: <= 5 vertices, <= 8 arrows, with
    every path of a fixed short length killed (plus a few extra short zeros)."""
    while True:
        nv = rng.randint(2, 5)
        vertices = [str(i + 1) for i in range(nv)]
        na = rng.randint(2, 8)
        arrows = []
        for i in range(na):
            src = rng.choice(vertices)
            tgt = rng.choice(vertices)
            arrows.append((f"a{i}", src, tgt))
        quiver = Quiver(vertices, arrows)
        kill_len = rng.choice((2, 2, 3))
        paths = _paths_of_length(quiver, kill_len)
        if not paths:
            # acyclic and too short to need relations; keep it hereditary
            try:
                return build_algebra(quiver, [], length_cap=6)
            except Exception:
                continue
        relations = [Relation.zero(p) for p in paths]
        if kill_len == 3:
            twos = _paths_of_length(quiver, 2)
            rng.shuffle(twos)
            relations += [Relation.zero(p) for p in twos[: rng.randint(0, 2)]]
        try:
            alg = build_algebra(quiver, relations, length_cap=6)
        except Exception:
            continue
        if alg.dim <= 20:
            return alg


def _paths_of_length(quiver, length):
    out = []
    frontier = [((v, ()), v) for v in quiver.vertices]
    for _ in range(length):
        nxt = []
        for (src, names), at in frontier:
            for a in quiver.arrows_from[at]:
                nxt.append(((src, names + (a.name,)), a.target))
        frontier = nxt
    return [names for (src, names), _ in frontier]


def random_module(rng, alg, side, max_dim=20):
    """A random quotient of a small random sum of projectives."""
    verts = list(alg.quiver.vertices)
    for _ in range(8):
        count = rng.randint(1, 2)
        projs = [projective_module(alg, rng.choice(verts), side)
                 for _ in range(count)]
        total, _, _ = direct_sum(projs)
        if total.total_dim == 0:
            continue
        eng = total.engine_presentation()
        nv = len(verts)
        # random radical vectors, closed under the algebra action
        rows = {v: [] for v in range(nv)}
        for _ in range(rng.randint(0, 3)):
            v = rng.randrange(nv)
            if total.dims[v] == 0:
                continue
            vec = [Fraction(rng.randint(-2, 2)) for _ in range(total.dims[v])]
            if not any(vec):
                continue
            vlabel = verts[v]
            for i in eng.basis_by_source[vlabel]:
                b = eng.basis[i]
                if not b.names:
                    continue  # quotient by radical elements only
                img = total.path_action(vlabel, b.names).apply(vec)
                if any(img):
                    rows[eng.quiver.index[b.target]].append(img)
        vertex_rows = [QMatrix.from_rows(rows[v], ncols=total.dims[v])
                       if rows[v] else QMatrix.zeros(0, total.dims[v])
                       for v in range(nv)]
        quo, _ = quotient_module(total, vertex_rows)
        if 0 < quo.total_dim <= max_dim:
            quo.verify()
            return quo
    return projective_module(alg, verts[0], side)


def algebra_pool(seed, count):
    rng = random.Random(seed)
    return [random_monomial_algebra(rng) for _ in range(count)]
