import pytest

from syzkit.algebra import Quiver, build_algebra
from syzkit.decompose import end_ring, is_indecomposable, krull_schmidt, split_once
from syzkit.errors import ExtensionFieldAmbiguity
from syzkit.modules import RepModule, projective_module, simple_module
from syzkit.orders import ValuedQuiver, presentation_from_valued_quiver
from syzkit.ratmat import QMatrix
from syzkit.repetition import (build_catalog, build_transition_system,
                               pdim_from_transition, repetition_index,
                               syzygy_type)


@pytest.fixture(scope="module")
def double_arrow():
    return build_algebra(Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")]), [])


def test_extension_field_ambiguity_raised(double_arrow):
    # one arrow acts as the identity, the other with irreducible quadratic
    # characteristic polynomial: the endomorphism ring is a quadratic field,
    # so the module is indecomposable over Q but may split over an extension
    alg = double_arrow
    act = {"a": QMatrix.identity(2),
           "b": QMatrix.from_rows([[0, -1], [1, 0]])}
    m = RepModule(alg, "left", (2, 2), act)
    e = end_ring(m)
    assert e.dim == 2
    assert e.semisimple_dim() == 2
    with pytest.raises(ExtensionFieldAmbiguity):
        is_indecomposable(m)
    with pytest.raises(ExtensionFieldAmbiguity):
        split_once(m)


def test_rational_eigenvalues_still_split(double_arrow):
    # same shape but with a rational-eigenvalue action: splits into two
    # non-isomorphic two-dimensional pieces
    alg = double_arrow
    act = {"a": QMatrix.identity(2),
           "b": QMatrix.from_rows([[1, 0], [0, 2]])}
    m = RepModule(alg, "left", (2, 2), act)
    pieces = krull_schmidt(m)
    assert sorted(p.total_dim for p in pieces) == [2, 2]


def test_isotypic_square_splits(double_arrow):
    alg = double_arrow
    act = {"a": QMatrix.identity(2), "b": QMatrix.zeros(2, 2)}
    m = RepModule(alg, "left", (2, 2), act)
    pieces = krull_schmidt(m)
    assert sorted(p.total_dim for p in pieces) == [2, 2]
    assert len(end_ring(m).basis) == 4  # a 2x2 matrix ring over Q


def test_rep_bounded_by_syzygy_type(ex_five, ex_three_loop):
    from syzkit.modules import direct_sum

    for alg in (ex_five, ex_three_loop):
        simples = [simple_module(alg, v, "right") for v in alg.quiver.vertices]
        total, _, _ = direct_sum(simples)
        cat = build_catalog(total, 12)
        if not cat.closed:
            continue
        rep = repetition_index(cat)
        styp = syzygy_type(cat)
        assert rep.status == "finite" and styp.status == "finite"
        assert rep.value <= styp.value


def test_tor_vector_zero_gives_dimension_zero(ex_five):
    from syzkit.modules import direct_sum, regular_module

    simples = [simple_module(ex_five, v, "right") for v in ex_five.quiver.vertices]
    total, _, _ = direct_sum(simples)
    ts = build_transition_system(build_catalog(total, 12))
    lam = regular_module(ex_five, "left")
    out = pdim_from_transition(ts, lam, root_is_semisimple_quotient=True)
    assert out.status == "finite" and out.value == 0


def test_disconnected_valued_quiver():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "1")])
    vq = ValuedQuiver(q, {"a": 0, "b": 1})
    pres = presentation_from_valued_quiver(vq)
    # reachable pairs: the 2x2 component contributes 4, the isolated vertex 1
    assert pres.dim == 5
    assert pres.dim_pair("3", "1") == 0


def test_right_side_simple_shorthand_cli(data_dir):
    from syzkit.cli import run_command

    code, doc = run_command([
        "pdim", "--algebra", f"{data_dir}/ex33.alg",
        "--module", "simple:1", "--side", "right", "--budget", "8"])
    assert code == 0
    # the chain feeds into the recurrent two-dimensional classes: infinite
    assert doc.results["pdim"] == "infinite"
