from __future__ import annotations

import random
from fractions import Fraction

import pytest

from projflat.connection import (Connection, codazzi_flat, connection_diff, curvature_at,
                                 graded_solvable_connection, induced_connection, is_autoparallel, is_flat,
                                 is_projectively_flat, projective_change, ricci, ricci_and_p, ricci_from_curvature,
                                 torsion_defect, trace_identity_defects, weyl, weyl_at)
from projflat.errors import NotAutoparallel
from projflat.lie import Subalgebra, build_algebra
from projflat.matrix import Matrix, re_trace
from projflat.parabolic import SimpleRootSubset, graded_flat_connection, parabolic, solvable_part
from projflat.suites import table_gamma, table_nabla


def named(conn, vec):
    return {conn.names[c]: v for c, v in vec.items()}


def nab(conn, x, y):
    n = conn.names
    return named(conn, conn.nabla(n.index(x), n.index(y)))


def test_canonical_examples(canon):
    assert nab(canon("R", 2), "E12", "E21") == {"H1": 1}
    assert nab(canon("R", 4), "H1", "H2") == {"H1": Fraction(1, 2), "H2": Fraction(-1, 4)}
    h3 = canon("H", 3)
    assert nab(h3, "iE22", "jE22") == {"kE22": 1}
    assert nab(h3, "iE22", "iE22") == {"H1": 1, "H2": -1}
    assert nab(h3, "iE11", "iE11") == {"H1": -1}
    assert nab(h3, "iE11", "jE22") == {}


def test_canonical_matches_definition(canon):
    conn = canon("H", 2)
    model = conn.carrier.model
    mats = model.matrices
    for a in range(model.dim):
        for b in range(model.dim):
            prod = mats[a] @ mats[b]
            shift = re_trace(prod) / model.n
            expected = model.coords_sparse(prod - Matrix.identity(model.field, model.n).scale(shift))
            assert conn.nabla(a, b) == expected


def test_curvature_examples(canon):
    conn = canon("R", 2)
    i12, i21 = conn.names.index("E12"), conn.names.index("E21")
    assert named(conn, curvature_at(conn, i12, i21, i12)) == {"E12": Fraction(-1, 2)}
    for x in range(conn.dim):
        for z in range(conn.dim):
            assert not curvature_at(conn, x, x, z)
    _, P, _ = ricci_and_p(conn)
    assert P[i12][i21] == Fraction(-1, 2)


@pytest.mark.parametrize("field, n", [("R", 2), ("R", 3), ("R", 4), ("H", 2)])
def test_weyl_and_torsion_vanish(canon, field, n):
    conn = canon(field, n)
    assert not torsion_defect(conn)
    assert not weyl(conn)
    assert is_projectively_flat(conn)


def test_weyl_single_entry_cancels(canon):
    conn = canon("R", 2)
    i12, i21 = conn.names.index("E12"), conn.names.index("E21")
    ric, P, _ = ricci_and_p(conn)
    from projflat.connection import curvature
    assert not weyl_at(conn, curvature(conn), P, i12, i21, i12)


@pytest.mark.parametrize("field, n", [("R", 3), ("H", 2)])
def test_ricci_routes_agree(canon, field, n):
    conn = canon(field, n)
    assert ricci(conn) == ricci_from_curvature(conn)


@pytest.mark.parametrize("field, n", [("R", 3), ("R", 4), ("R", 5), ("H", 2)])
def test_gamma_calibration(canon, field, n):
    conn = canon(field, n)
    _, _, gam = ricci_and_p(conn)
    mats = conn.carrier.model.matrices
    for a in range(conn.dim):
        for b in range(conn.dim):
            assert gam[a][b] == -re_trace(mats[a] @ mats[b]) / n


def test_gamma_examples(canon):
    g4 = ricci_and_p(canon("R", 4))[2]
    names = canon("R", 4).names
    assert g4[names.index("H1")][names.index("H1")] == Fraction(-3, 16)
    for n in (3, 5):
        nm = canon("R", n).names
        assert ricci_and_p(canon("R", n))[2][nm.index("E12")][nm.index("E21")] == Fraction(-1, n)
    gh = ricci_and_p(canon("H", 3))[2]
    hn = canon("H", 3).names
    assert gh[hn.index("iE22")][hn.index("iE22")] == Fraction(1, 3)


def test_closed_form_tables_cover_examples():
    assert table_gamma(4, "H1", "H1") == Fraction(-3, 16)
    assert table_gamma(3, "iE22", "iE22") == Fraction(1, 3)
    assert table_nabla(4, "H1", "H2") == {"H1": Fraction(1, 2), "H2": Fraction(-1, 4)}


def test_autoparallel_and_induced_identity(canon):
    conn = canon("R", 2)
    model = conn.carrier.model
    assert is_autoparallel(conn, model.subalgebra(["E12"]))
    assert induced_connection(conn, model.full).same_as(conn)
    with pytest.raises(NotAutoparallel):
        induced_connection(conn, Subalgebra(model, (model.idx("E12"), model.idx("E21"))))


@pytest.mark.parametrize("n, idx", [(4, ()), (4, (2,)), (5, (1, 3))])
def test_induced_p_is_restriction(canon, n, idx):
    conn = canon("R", n)
    model = conn.carrier.model
    sub = parabolic(model, SimpleRootSubset(n, idx))
    ind = induced_connection(conn, sub)
    _, _, gam_full = ricci_and_p(conn)
    _, _, gam_sub = ricci_and_p(ind)
    for a, p in enumerate(sub.indices):
        for b, q in enumerate(sub.indices):
            assert gam_sub[a][b] == gam_full[p][q]


def test_projective_change_keeps_weyl_zero(canon):
    conn = canon("R", 3)
    rng = random.Random(7)
    for _ in range(3):
        xi = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(conn.dim)]
        changed = projective_change(conn, xi)
        assert not torsion_defect(changed)
        assert not weyl(changed)
    assert projective_change(conn, [0] * conn.dim).same_as(conn)


def test_borel_sl2(canon):
    conn = canon("R", 2)
    model = conn.carrier.model
    borel = induced_connection(conn, parabolic(model, SimpleRootSubset(2)))
    assert borel.names == ("H1", "E12")
    assert codazzi_flat(borel)
    assert not is_flat(borel)
    assert is_flat(projective_change(borel, [Fraction(-1, 2), 0]))
    with pytest.raises(ValueError):
        codazzi_flat(conn)


def test_trace_identity(canon):
    for field, n in (("R", 3), ("H", 2)):
        assert not trace_identity_defects(canon(field, n))


def test_graded_connections_on_sl4():
    model = build_algebra("R", 4)
    flat0 = graded_flat_connection(model, SimpleRootSubset(4))
    assert nab(flat0, "E12", "E24") == {"E14": Fraction(2, 3)}
    flat3 = graded_flat_connection(model, SimpleRootSubset(4, (3,)))
    assert nab(flat3, "E12", "E24") == {"E14": Fraction(1, 2)}
    # mirror entry: arguments swapped relative to the line above
    assert nab(flat3, "E24", "E12") == {"E14": Fraction(-1, 2)}
    assert is_flat(flat0) and is_flat(flat3) and not torsion_defect(flat3)


def test_graded_connection_on_abelian_part():
    model = build_algebra("R", 4)
    conn = graded_flat_connection(model, SimpleRootSubset(4, (3,)))
    sub = conn.carrier
    h1 = sub.names.index("H1")
    for b in range(sub.dim):
        assert conn.nabla(h1, b) == sub.structure.get((h1, b), {})


def test_connection_diff_examples():
    model = build_algebra("R", 4)
    sub = solvable_part(model, SimpleRootSubset(4, (3,)))
    restricted = induced_connection(graded_flat_connection(model, SimpleRootSubset(4)), sub)
    mine = graded_flat_connection(model, SimpleRootSubset(4, (3,)))
    diff = connection_diff(restricted, mine)
    assert [(sub.names[a], sub.names[b], named(mine, d)) for a, b, d in diff] == [
        ("E12", "E24", {"E14": Fraction(1, 6)}), ("E24", "E12", {"E14": Fraction(1, 6)})]
    assert connection_diff(mine, mine) == []
    coeffs = dict(mine.coeffs)
    coeffs[(0, 0)] = {0: Fraction(5)}
    assert [(a, b) for a, b, _ in connection_diff(mine, Connection(sub, coeffs))] == [(0, 0)]


def test_graded_connection_rejects_bad_levels():
    model = build_algebra("R", 3)
    sub = solvable_part(model, SimpleRootSubset(3))
    from projflat.errors import GradationInvalid
    with pytest.raises(GradationInvalid):
        graded_solvable_connection(sub, [0, 1], {2: 1, 3: 1, 4: 1})
