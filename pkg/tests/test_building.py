"""Building navigation: canonical vertices, neighbors, Iwasawa cells."""

import itertools

from hb.building import (canonical_vertex, edge_from_rep, flip_matrix,
                         in_p_coset, iwasawa_decompose, mat_from_exps,
                         mat_identity, mat_inv, mat_mul,
                         type_one_in_neighbors, upper_triangularize,
                         w_matrix)
from hb.fields import get_field
from hb.poly import RatF

F2 = get_field(2)
F3 = get_field(3)


def test_canonical_vertex_kills_homothety():
    for field in (F2, F3):
        v1 = canonical_vertex(mat_from_exps(field, (2, 1)))
        v2 = canonical_vertex(mat_from_exps(field, (3, 2)))
        assert v1.key == v2.key
        v3 = canonical_vertex(mat_from_exps(field, (3, 1)))
        assert v1.key != v3.key


def test_canonical_vertex_is_idempotent():
    from hb.building import vertex_from_lattice
    g = mat_from_exps(F2, (2, 0, 1))
    v = canonical_vertex(g)
    assert vertex_from_lattice(v.rep).key == v.key


def test_neighbor_count_is_projective_space():
    # [TRIVIAL] type-1 in-neighbors of a vertex = P^{r-1}(F_q)
    for q, field in ((2, F2), (3, F3)):
        for r in (2, 3, 4):
            edges = type_one_in_neighbors(mat_identity(field, r))
            expected = (q ** r - 1) // (q - 1)
            assert len(edges) == expected
            assert len({e.key for e in edges}) == expected


def test_neighbors_invariant_under_homothety():
    keys1 = {e.key for e in
             type_one_in_neighbors(mat_from_exps(F2, (1, 0)))}
    keys2 = {e.key for e in
             type_one_in_neighbors(mat_from_exps(F2, (2, 1)))}
    assert keys1 == keys2


def test_edge_from_rep_connects_adjacent_classes():
    g = mat_from_exps(F2, (1, 0, 0))
    e = edge_from_rep(g, 1)
    assert e.key is not None


def test_iwasawa_decompose_reassembles():
    samples = [mat_identity(F2, 2), flip_matrix(F2, 2),
               mat_from_exps(F2, (2, 0)),
               mat_mul(flip_matrix(F2, 2), mat_from_exps(F2, (1, 0)))]
    x = RatF.pi_power(F2, 1)
    p = ((RatF.one(F2), x), (RatF.zero(F2), RatF.one(F2)))
    samples.append(p)
    samples.append(mat_mul(p, flip_matrix(F2, 2)))
    from hb.building import mat_scale
    for g in samples:
        iw = iwasawa_decompose(g)
        W = mat_identity(F2, 2) if iw.w == "identity" else flip_matrix(F2, 2)
        rec = mat_scale(mat_mul(mat_mul(iw.p, W), iw.kappa), iw.scalar)
        assert rec == tuple(tuple(row) for row in g)


def test_upper_triangularize_preserves_coset():
    g = mat_mul(flip_matrix(F3, 3), mat_from_exps(F3, (1, 0, 2)))
    u, k = upper_triangularize(g)
    # u = g k with k integral of unit determinant, u upper triangular
    assert mat_mul(g, k) == u
    for i in range(3):
        for j in range(i):
            assert u[i][j].is_zero()


def test_w_matrix_shape():
    # W_s = [[0, I_{r-s}], [pi I_s, 0]]
    w = w_matrix(F2, 3, 1)
    assert w[0][1] == RatF.one(F2)
    assert w[1][2] == RatF.one(F2)
    assert w[2][0] == RatF.pi_power(F2, 1)
    assert w[0][0].is_zero()


def test_in_p_coset_detects_cells():
    assert in_p_coset(mat_identity(F2, 2))
    assert not in_p_coset(flip_matrix(F2, 2))
