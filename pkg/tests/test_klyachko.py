from itertools import combinations

import pytest

from logstab.errors import NotASubspace, OverlappingAmbients
from logstab.klyachko import (
    RayFiltration,
    decompose,
    direct_sum,
    logtangent_filtrations,
    subsheaf_filtrations,
)
from logstab.lattice_fan import build_rank1, build_rank2
from logstab.linalg import VectorSpace

from conftest import all_subsets, small_rank1, small_rank2


def test_logtangent_shape():
    x = build_rank2(1, 2, [1])
    fam = logtangent_filtrations(x, ["v0", "w1"])
    assert fam.rank == 3
    for name, filt in fam.per_ray.items():
        assert filt.at(1) == x.space.full()
        assert filt.at(-2).dim == 0
        if name in ("v0", "w1"):
            assert filt.thresholds() == [0]
            assert filt.first_chern_weight() == 0
        else:
            assert filt.at(-1) == x.space.span([x.generator(name)])
            assert filt.first_chern_weight() == 1


def test_filtration_canonical_form():
    space = VectorSpace(2)
    line = space.span([[1, 0]])
    f1 = RayFiltration.from_steps(space.zero(), [(-3, line), (-1, line), (0, space.full())])
    f2 = RayFiltration.from_steps(space.zero(), [(-3, line), (0, space.full())])
    assert f1 == f2
    with pytest.raises(ValueError):
        RayFiltration.from_steps(space.zero(), [(-1, space.full()), (0, line)])


def test_subsheaf_rejects_outside_spaces():
    x = build_rank2(1, 1, [0])
    fam = logtangent_filtrations(x, [])
    with pytest.raises(NotASubspace):
        subsheaf_filtrations(fam, x.space.zero())
    with pytest.raises(NotASubspace):
        subsheaf_filtrations(fam, VectorSpace(3).full())


def test_direct_sum_rejects_overlap():
    x = build_rank2(1, 1, [0])
    fam = logtangent_filtrations(x, [])
    g = x.space.span([[1, 0]])
    with pytest.raises(OverlappingAmbients):
        direct_sum([subsheaf_filtrations(fam, g), subsheaf_filtrations(fam, g)])


def test_subsheaf_of_full_space_is_identity():
    for x in small_rank2(max_rs=3):
        for delta in all_subsets(x.ray_names):
            fam = logtangent_filtrations(x, delta)
            assert subsheaf_filtrations(fam, x.space.full()) == fam


def test_decompose_results_resum_to_the_family():
    found = 0
    for x in list(small_rank2(max_rs=4)) + list(small_rank1(max_n=2)):
        for delta in all_subsets(x.ray_names):
            summands = decompose(x, delta)
            if summands is None:
                continue
            found += 1
            fam = logtangent_filtrations(x, delta)
            assert sum(g.dim for g in summands) == x.n
            assert direct_sum([subsheaf_filtrations(fam, g) for g in summands]) == fam
            for g, h in combinations(summands, 2):
                assert (g & h).dim == 0
    assert found > 100


def test_known_splittings():
    p2 = build_rank1([1, 1, 1])
    assert [g.dim for g in decompose(p2, ["u0"])] == [1, 1]
    p1p1 = build_rank2(1, 1, [0])
    assert sorted(g.dim for g in decompose(p1p1, ["v0", "v1", "w0"])) == [1, 1]
    # trivial bundle splits into lines
    assert len(decompose(p1p1, p1p1.ray_names)) == 2
    # no listed splitting for this one
    assert decompose(build_rank2(2, 1, [0, 1]), ["v2"]) is None
