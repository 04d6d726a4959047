import itertools
from collections import Counter

import pytest

from dyloom import loom as lm
from dyloom.counting import loom_count
from dyloom.errors import DegreeMismatch
from dyloom.loom import Loom, LoomTile, gamma, gamma_tilde, refine, sign, sign_counts
from dyloom.mosaic import Mosaic, alpha, beta, iter_mosaics
from dyloom.perm import from_cycles, identity

EXAMPLE_22 = Loom.from_rows([["X", "MA"], ["DB", "X"]])
EXAMPLE_23 = Loom.from_rows([["X", "MB", "V"], ["DA", "X", "X"]])
WORKED = Mosaic.from_rows(["XC", "B."])


def test_refine_cross():
    assert refine(Mosaic.from_rows(["X"])) == [Loom(1, 1, (LoomTile("X"),))]


def test_refine_worked_mosaic():
    L = refine(WORKED)
    assert len(L) == 4
    assert all(lm.validate(x) and lm.project(x) == WORKED for x in L)
    assert L[0].at(0, 0) == LoomTile("X", 1, 1)


def test_worked_signs():
    # the four looms in the order they are drawn: (DelB, LMuA), (DelA, LMuA), (DelA, LMuB), (DelB, LMuB)
    by_shapes = {(x.at(0, 1).shape, x.at(1, 0).shape): x for x in refine(WORKED)}
    drawn = [by_shapes[k] for k in [("DB", "MA"), ("DA", "MA"), ("DA", "MB"), ("DB", "MB")]]
    c1_signs = [(-1) ** sign_counts(x)[0] for x in drawn]
    c2_signs = [sign(x) for x in drawn]
    assert c1_signs == [1, -1, 1, -1]
    # the loom sign also carries (-1)^alpha with alpha = 1 here
    assert c2_signs == [-1, 1, -1, 1]


def test_11_looms():
    looms = [x for M in iter_mosaics(1, 1) for x in refine(M)]
    assert len(looms) == 5
    assert sorted(t.tiles[0].shape for t in looms) == ["DA", "DB", "MA", "MB", "X"]
    assert len(lm.enumerate_looms(1, 1)) == 5


def test_enumerate_sizes():
    assert len(lm.enumerate_looms(2, 2)) == 129
    for n in range(5):
        assert len(lm.enumerate_looms(n, 0)) == 1
        assert len(lm.enumerate_looms(0, n)) == 1


def test_validate_examples():
    assert not lm.validate(Loom.from_rows([["V"]]))
    assert lm.validate(EXAMPLE_22) and lm.validate(EXAMPLE_23)
    assert not lm.validate(Loom.from_rows([["X:k1"]]))


def test_sign_counts_cross():
    assert sign_counts(Loom.from_rows([["X", "X"], ["X", "X"]])) == (0, 0)


def test_gamma_examples():
    assert gamma(EXAMPLE_22) == from_cycles(4, "(1243)")
    assert gamma(Loom.from_rows([["X"]])) == from_cycles(2, "(12)")


def test_gamma_tilde_example():
    got = gamma_tilde(from_cycles(2, "(12)"), EXAMPLE_23, from_cycles(3, "(132)"))
    assert got == from_cycles(5, "(14)(253)")


def test_gamma_tilde_degree_check():
    with pytest.raises(DegreeMismatch):
        gamma_tilde(identity(1), EXAMPLE_22, identity(2))


def test_every_refined_loom_is_valid_and_projects_back():
    for N in range(7):
        for n in range(N + 1):
            for M in iter_mosaics(n, N - n):
                looms = refine(M)
                assert len(looms) == 2 ** (alpha(M) + beta(M))
                for x in looms:
                    assert lm.validate(x)
                    assert lm.project(x) == M


def test_partition_against_direct_search():
    for N in range(6):
        for n in range(N + 1):
            refined = lm.enumerate_looms(n, N - n)
            assert len(set(refined)) == len(refined)
            assert set(refined) == set(lm.search_valid_looms(n, N - n))


def test_sign_identity():
    for N in range(6):
        for n in range(N + 1):
            for M in iter_mosaics(n, N - n):
                for x in refine(M):
                    c1, c2 = sign_counts(x)
                    assert (-1) ** (alpha(M) + c1) == (-1) ** c2


def test_boundary_totals():
    for N in range(1, 6):
        for n in range(1, N):
            m = N - n
            for x in lm.iter_looms(n, m):
                lam, gam = sum(x.left_sizes()), sum(x.bottom_sizes())
                om, th = sum(x.top_sizes()), sum(x.right_sizes())
                assert lam + gam == om + th == N


def test_gamma_tilde_identity_is_gamma():
    for N in range(6):
        for n in range(N + 1):
            for x in lm.iter_looms(n, N - n):
                assert gamma_tilde(identity(n), x, identity(N - n)) == gamma(x)


def test_canonical_order_is_deterministic():
    a = [x.to_json() for x in lm.iter_looms(2, 2)]
    assert a == [x.to_json() for x in lm.iter_looms(2, 2)]


def test_json_round_trip():
    for x in lm.iter_looms(2, 2):
        assert Loom.from_json(x.to_json()) == x


def test_gamma_signed_count_is_product():
    # Σ_L sign(L) over looms with γ = π gives the structure constants of id∘id
    c = Counter()
    for x in lm.iter_looms(1, 1):
        c[gamma(x)] += sign(x)
    assert c == Counter({identity(2): 2, from_cycles(2, "(12)"): -1})


def test_counts_match_enumeration():
    for n, m in itertools.product(range(4), repeat=2):
        assert sum(1 for _ in lm.iter_looms(n, m)) == loom_count(n, m)


def test_tile_ports_and_routes_agree():
    for t in lm.candidate_tiles(3, 3):
        tp, bp, lp, rp = t.ports()
        top, right = t.route(list(range(lp)), list(range(lp, lp + bp)))
        assert len(top) == tp and len(right) == rp
        assert sorted(top + right) == list(range(lp + bp))
