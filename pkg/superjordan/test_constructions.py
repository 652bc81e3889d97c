"""Tests for module constructions: functors, Kac and free modules, layers and syzygies."""
import pytest

from superjordan.algebra.linalg import Subspace, rank
from superjordan.errors import AlgebraMismatch, NotContained
from superjordan.models.algebra import ODD, AlgebraSpec
from superjordan.services.constructions import (
    dual,
    dual_kac0,
    direct_sum,
    free_module,
    free_rank,
    head,
    hom,
    kac0,
    omega,
    parity_shift,
    projective_cover,
    quotient_by_socle,
    radical_module,
    random_module,
    socle_module,
    submodule,
    tensor,
    trivial,
    w_dual_module,
    w_module,
    zero_module,
)
from superjordan.services.superalgebra import superdim, validate

EXT2 = AlgebraSpec.exterior(2)
EXT4 = AlgebraSpec.exterior(4)


def test_trivial_and_shift():
    k = trivial(EXT2, "od")
    assert k.parity == (ODD,)
    assert parity_shift(k).parity == (0,)
    assert zero_module(EXT2).dim == 0
    with pytest.raises(ValueError):
        trivial(EXT2, "up")


def test_direct_sum_is_block_diagonal():
    m = direct_sum(kac0(), dual_kac0())
    assert m.parity == (0, 1, 1, 0)
    assert m.action("y1").to_dict() == {(1, 0): 1}
    assert m.action("x1").to_dict() == {(3, 2): 1}
    assert validate(m) == []
    with pytest.raises(AlgebraMismatch):
        direct_sum(kac0(), trivial(EXT2))


def test_tensor_uses_koszul_sign():
    m = tensor(trivial(AlgebraSpec.sl11(), "od"), kac0())
    assert m.parity == (1, 0)
    assert m.action("y1").to_dict() == {(1, 0): -1}
    n = tensor(kac0(), dual_kac0())
    assert n.dim == 4
    assert validate(n) == []
    assert superdim(n).sdim == superdim(kac0()).sdim * superdim(dual_kac0()).sdim


def test_dual_and_double_dual():
    w = w_module(3)
    d = dual(w)
    assert validate(d) == []
    dd = dual(d)
    for g in ("z1", "z2"):
        assert dd.action(g) == -w.action(g)


def test_hom_dimension_and_validity():
    h = hom(w_module(2), w_module(3))
    assert h.dim == 15
    assert validate(h) == []


def test_kac_modules_are_valid():
    assert validate(kac0()) == []
    assert validate(dual_kac0()) == []
    assert kac0().name == "K(0)"


def test_free_module_structure():
    f = free_module(EXT2)
    assert f.parity == (0, 1, 1, 0)
    assert validate(f) == []
    assert free_rank(f) == 1
    assert radical_module(f).dim == 3
    assert socle_module(f).dim == 1
    assert head(f).dim == 1
    big = free_module(EXT4, rank=2, parity="od")
    assert big.dim == 32
    assert free_rank(big) == 2
    assert validate(big) == []


def test_layers_of_zigzag():
    w = w_module(3)
    assert w.dim == 5
    assert validate(w) == []
    assert radical_module(w).dim == 2
    assert socle_module(w).dim == 2
    assert head(w).dim == 3
    assert free_rank(w) == 0
    assert validate(w_dual_module(3)) == []
    with pytest.raises(ValueError):
        w_module(0)


def test_submodule_rejects_non_invariant_subspace():
    w = w_module(2)
    with pytest.raises(NotContained):
        submodule(w, Subspace.coordinate(w.dim, [0]))


def test_projective_cover_is_surjective():
    cover, pi = projective_cover(w_module(3))
    assert cover.dim == 12
    assert pi.shape == (5, 12)
    assert rank(pi) == 5


@pytest.mark.parametrize("n,dim", [(0, 1), (1, 3), (2, 5), (-1, 3), (-3, 7)])
def test_syzygy_dimensions_exterior2(n, dim):
    assert omega(trivial(EXT2), n).dim == dim


def test_syzygy_dimensions_exterior4():
    k = trivial(EXT4)
    assert omega(k, 1).dim == 15
    assert omega(k, 2).dim == 49
    assert omega(k, -1).dim == 15


def test_syzygy_laws():
    k = trivial(EXT2)
    assert omega(omega(k, 1), -1).dim == 1
    assert omega(free_module(EXT2), 0).dim == 0
    assert omega(direct_sum(k, free_module(EXT2)), 0).dim == 1
    for n in (1, 2, -2):
        assert validate(omega(k, n)) == []


def test_quotient_by_socle_of_first_syzygy():
    q = quotient_by_socle(omega(trivial(EXT4), 1))
    assert q.dim == 14
    assert validate(q) == []


def test_random_module_is_seeded_and_valid():
    a = random_module(EXT2, 6, seed=7)
    b = random_module(EXT2, 6, seed=7)
    assert a == b
    assert validate(a) == []
    with pytest.raises(AlgebraMismatch):
        random_module(AlgebraSpec.sl11(), 3, seed=1)
