
import pytest
from hypothesis import given, strategies as st

from ricciflat import algspec
from ricciflat.linalg import kernel, rank
from ricciflat.riccicheck import (FLAT_ONLY, MIXED, RICCI_TYPE, TRACE_FREE, ClassificationRecord,
                                  classify, ricci_ambient, ricci_tensor, verdict_for)
from ricciflat.spencer import boundary_K

# frozen after cross-checking against the stacked-kernel route below
FROZEN = {
    "so(3)": (6, 6, 0, RICCI_TYPE),
    "so(4)": (20, 10, 10, MIXED),
    "so(3,1)": (20, 10, 10, MIXED),
    "su(2)": (5, 0, 5, TRACE_FREE),
    "sl(1,H)": (5, 0, 5, TRACE_FREE),
    "sl(2,C)": (22, 6, 16, MIXED),
    "sp(4,R)": (45, 10, 35, MIXED),
    "su(3)": (27, 0, 27, TRACE_FREE),
    "g2": (77, 0, 77, TRACE_FREE),
    "split-g2": (77, 0, 77, TRACE_FREE),
    "sp(2)": (35, 0, 35, TRACE_FREE),
    "spin7": (168, 0, 168, TRACE_FREE),
    "spin(4,3)": (168, 0, 168, TRACE_FREE),
    "so(4,C)": (40, 20, 20, MIXED),
}


@pytest.mark.parametrize("spec", sorted(FROZEN))
def test_catalog_dimensions(spec):
    rec = classify(algspec.build(spec))
    assert (rec.dim_K, rec.dim_ricci_image, rec.dim_ricci_kernel, rec.verdict) == FROZEN[spec]


@pytest.mark.parametrize("spec", ["so(3)", "so(4)", "sl(2,C)", "sp(4,R)", "su(3)", "g2"])
def test_kernel_via_stacked_matrix(spec):
    """dim(ker Ric on K) equals the nullity of [d; Ric] on Lambda^2 V* (x) g."""
    g = algspec.build(spec)
    stacked = boundary_K(g).vstack(ricci_ambient(g))
    nullity = stacked.ncols - rank(stacked)
    assert nullity == FROZEN[spec][2]


def test_trace_free_is_not_vacuous():
    assert classify(algspec.build("su(3)")).dim_K > 0


@pytest.mark.parametrize("spec", ["so(4)", "sp(4,R)", "g2"])
def test_probabilistic_matches_exact(spec):
    g = algspec.build(spec)
    exact = classify(g)
    prob = classify(g, budget=1, probabilistic=True)
    assert prob.provenance == "probabilistic"
    for f in ("dim_K", "dim_ricci_image", "dim_ricci_kernel", "h12_dim", "verdict"):
        assert getattr(prob, f) == getattr(exact, f)


def test_ricci_of_kernel_elements_vanishes():
    g = algspec.build("so(4)")
    K = kernel(boundary_K(g))
    from ricciflat.riccicheck import ricci_kernel
    for k in ricci_kernel(g, K):
        assert all(x == 0 for row in ricci_tensor(g, k) for x in row)


def test_ricci_is_symmetric_for_metric_algebras():
    g = algspec.build("so(3,1)")
    K = kernel(boundary_K(g))
    for k in K.basis:
        R = ricci_tensor(g, k)
        assert all(R[x][y] == R[y][x] for x in range(4) for y in range(4))


@given(st.integers(0, 50), st.integers(0, 50))
def test_verdict_rules(image, kern):
    dim_K = image + kern
    v = verdict_for(dim_K, image, kern)
    rec = ClassificationRecord("x", 1, 1, 0, dim_K, image, kern, 0, v)
    assert ClassificationRecord.from_dict(rec.to_dict()) == rec
    if dim_K == 0:
        assert v == FLAT_ONLY
    elif kern == 0:
        assert v == RICCI_TYPE
    elif image == 0:
        assert v == TRACE_FREE
    else:
        assert v == MIXED


def test_record_rejects_inconsistent_dims():
    with pytest.raises(ValueError):
        ClassificationRecord("x", 3, 3, 0, 6, 5, 0, 0, RICCI_TYPE)
    with pytest.raises(ValueError):
        ClassificationRecord("x", 3, 3, 0, 6, 6, 0, 0, MIXED)
