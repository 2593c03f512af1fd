from itertools import permutations, product

import pytest

from depth2kit.errors import DomainError, PreconditionError, SizeError
from depth2kit.frames import (
    Frame,
    canonical_form,
    classify_extremal,
    cluster_poset,
    converse_frame,
    enumerate_frames,
    frame_condition,
    frame_from_dict,
    make_extremal,
    make_frame,
)

F2 = make_frame(2, [(0, 0), (0, 1), (1, 1)])


# Independent brute-force oracle used to validate the enumerator: walk
# every relation matrix, keep reflexive-transitive ones, and reduce by
# relabeling over explicit edge sets.  Kept free of the frames module's
# own canonicalization machinery on purpose.


def oracle_quasiorder_classes(n):
    worlds = range(n)
    cells = [(x, y) for x in worlds for y in worlds]
    classes = set()
    for bits in product((0, 1), repeat=n * n):
        rel = {cell for cell, bit in zip(cells, bits) if bit}
        if not all((x, x) in rel for x in worlds):
            continue
        if not all(
            (x, z) in rel
            for (x, y) in rel
            for (w, z) in rel
            if y == w
        ):
            continue
        canon = min(
            tuple(sorted((p[x], p[y]) for (x, y) in rel))
            for p in permutations(worlds)
        )
        classes.add(canon)
    return classes


def edge_canon(frame):
    return min(
        tuple(sorted((p[x], p[y]) for (x, y) in frame.edges()))
        for p in permutations(range(frame.n_worlds))
    )


def test_make_frame():
    single = make_frame(1, [(0, 0)])
    assert single.rows == (1,)
    assert F2.rows == (0b11, 0b10)
    with pytest.raises(DomainError):
        make_frame(2, [(0, 2)])
    with pytest.raises(SizeError):
        make_frame(13, [])


def test_frame_dict_round_trip():
    assert frame_from_dict(F2.to_dict()) == F2


def test_conditions_basic():
    identity3 = make_frame(3, [(i, i) for i in range(3)])
    assert frame_condition(identity3, "reflexive")[0]
    universal2 = make_frame(2, [(x, y) for x in range(2) for y in range(2)])
    assert frame_condition(universal2, "symmetric")[0]
    assert frame_condition(F2, "b2")[0]
    assert frame_condition(F2, "m")[0]
    assert not frame_condition(F2, "symmetric")[0]
    assert frame_condition(F2, "symmetric")[1] == (0, 1)
    with pytest.raises(KeyError):
        frame_condition(F2, "no_such_condition")


def test_condition_witnesses():
    chain3 = make_frame(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)])
    ok, witness = frame_condition(chain3, "b2")
    assert not ok and witness == (0, 1, 2)
    loopless = make_frame(2, [(0, 1)])
    assert frame_condition(loopless, "serial") == (False, (1,))
    assert frame_condition(loopless, "reflexive") == (False, (0,))


def test_quasiorder_gated_conditions():
    not_quasi = make_frame(2, [(0, 1)])
    for name in ("dum", "grz", "m"):
        with pytest.raises(PreconditionError):
            frame_condition(not_quasi, name)


def test_dum_condition_nontrivial():
    # a simple root under both a proper cluster and a simple point:
    # every non-maximal cluster is simple, yet the proper cluster can be
    # escaped, so the dum condition must fail
    frame = make_frame(4, [(0, 0), (1, 1), (2, 2), (3, 3),
                           (3, 0), (3, 1), (3, 2), (1, 2), (2, 1)])
    assert not frame_condition(frame, "dum")[0]
    # tack: proper cluster at the bottom, simple point above
    tack = make_extremal("ui", 2, 1)
    assert not frame_condition(tack, "dum")[0]
    # proper cluster only at the top is fine
    assert frame_condition(make_extremal("iu", 2, 2), "dum")[0]
    assert frame_condition(make_extremal("uu", 1, 2), "dum")[0]


def test_grz_condition():
    assert frame_condition(make_extremal("ii", 2, 2), "grz")[0]
    assert not frame_condition(make_extremal("uu", 2, 1), "grz")[0]


def test_cluster_poset_examples():
    universal3 = make_frame(3, [(x, y) for x in range(3) for y in range(3)])
    poset = cluster_poset(universal3)
    assert poset.depth == 1 and len(poset.clusters) == 1
    assert not poset.is_simple(0)

    poset = cluster_poset(F2)
    assert poset.depth == 2
    assert all(poset.is_simple(i) for i in range(2))

    poset = cluster_poset(make_extremal("ui", 2, 3))
    assert poset.depth == 2
    assert [poset.levels[i] for i in range(len(poset.clusters))] == [1, 2, 2, 2]
    assert not poset.is_simple(0)
    assert all(poset.is_simple(i) for i in (1, 2, 3))


def test_cluster_poset_requires_quasiorder():
    with pytest.raises(PreconditionError):
        cluster_poset(make_frame(2, [(0, 1)]))


def test_classify_extremal():
    frame = make_frame(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)])
    kinds = {kind for kind, _, _ in classify_extremal(frame)}
    # with a single simple lower cluster the ii and ui relations coincide
    assert kinds == {"ii", "ui"}
    matches = {m for m in classify_extremal(frame)}
    assert matches == {("ii", 0b001, 0b110), ("ui", 0b001, 0b110)}

    # two-world chain: all four relation forms coincide on singletons
    kinds = {kind for kind, _, _ in classify_extremal(F2)}
    assert kinds == {"ii", "iu", "ui", "uu"}

    universal = make_frame(2, [(x, y) for x in range(2) for y in range(2)])
    assert classify_extremal(universal) == frozenset()


def test_make_extremal_round_trip():
    for kind in ("ii", "iu", "ui", "uu"):
        for u_size, v_size in ((1, 1), (1, 3), (2, 2), (3, 1)):
            frame = make_extremal(kind, u_size, v_size)
            kinds = {k for k, _, _ in classify_extremal(frame)}
            assert kind in kinds
            for condition in ("reflexive", "transitive", "b2"):
                assert frame_condition(frame, condition)[0], (kind, condition)


def test_make_extremal_shapes():
    assert make_extremal("uu", 1, 1).rows == F2.rows
    fig1 = make_extremal("iu", 2, 2)  # two simple points under one cluster
    poset = cluster_poset(fig1)
    assert poset.depth == 2
    assert sorted(len(c) for c in poset.clusters) == [1, 1, 2]
    with pytest.raises(DomainError):
        make_extremal("iu", 0, 2)
    with pytest.raises(SizeError):
        make_extremal("iu", 7, 6)


def test_extremal_inclusions():
    # for fixed levels: ii below iu and ui, both below uu, row by row
    for u_size, v_size in ((1, 1), (2, 1), (2, 3)):
        frames = {
            kind: make_extremal(kind, u_size, v_size).rows
            for kind in ("ii", "iu", "ui", "uu")
        }
        for low, high in (("ii", "iu"), ("ii", "ui"), ("iu", "uu"), ("ui", "uu")):
            assert all(
                a & b == a for a, b in zip(frames[low], frames[high])
            ), (low, high, u_size, v_size)


def test_converse():
    assert converse_frame(F2).rows == (0b01, 0b11)
    assert converse_frame(converse_frame(F2)) == F2
    identity = make_frame(3, [(i, i) for i in range(3)])
    assert converse_frame(identity) == identity
    # the converse of a two-level identity/universal frame swaps its kind
    iu = make_extremal("iu", 2, 2)
    kinds = {k for k, _, _ in classify_extremal(canonical_form(converse_frame(iu)))}
    assert "ui" in kinds


def test_canonical_form():
    relabeled = make_frame(2, [(1, 1), (1, 0), (0, 0)])
    assert canonical_form(relabeled) == canonical_form(F2)
    identity = make_frame(3, [(i, i) for i in range(3)])
    assert canonical_form(identity) == identity
    # moving the lower level around does not change the canonical form
    a = make_frame(3, [(0, 0), (1, 1), (2, 2), (2, 0), (2, 1)])
    b = make_frame(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)])
    assert canonical_form(a) == canonical_form(b)
    with pytest.raises(SizeError):
        canonical_form(Frame(8, tuple(1 << i for i in range(8))))


def test_enumeration_against_oracle():
    for n, expected in ((1, 1), (2, 3), (3, 9)):
        oracle = oracle_quasiorder_classes(n)
        assert len(oracle) == expected
        frames = enumerate_frames(n, quasiorder=True)
        assert len(frames) == expected
        assert {edge_canon(f) for f in frames} == oracle


def test_enumeration_counts():
    assert [len(enumerate_frames(n, quasiorder=True)) for n in range(1, 6)] == [
        1, 3, 9, 33, 139]
    assert len(enumerate_frames(3, quasiorder=True, max_depth=2)) == 8
    assert [len(enumerate_frames(n)) for n in range(1, 4)] == [2, 10, 104]


def test_enumeration_no_duplicates():
    frames = enumerate_frames(4, quasiorder=True)
    canons = {canonical_form(f).rows for f in frames}
    assert len(canons) == len(frames)
    for frame in frames:
        assert frame_condition(frame, "quasiorder")[0]


def test_enumeration_bounds():
    with pytest.raises(SizeError):
        enumerate_frames(6, quasiorder=True)
    with pytest.raises(SizeError):
        enumerate_frames(5)
    with pytest.raises(DomainError):
        enumerate_frames(3, max_depth=2)
