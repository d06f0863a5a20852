import pytest
from hypothesis import given, strategies as st

from ricciflat import algspec
from ricciflat.algspec import SpecError, build, expectation_for, parse
from ricciflat.riccicheck import MIXED

ROUND_TRIP = ["so(3)", "so(3,1)", "su(3)", "sl(3,R)", "sp(4,C)", "gl(3,R)@sym2", "sl(6,R)@alt3",
              "sp(6,R)@prim3", "sl(2,R)*so(3)+center", "g2", "split-g2", "spin7", "spin(4,3)",
              "sl(1,H)", "so(4,C)", "gl(2,C)+ccenter", "stab(some/file.json)", "u(2)@dual"]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_round_trip(text):
    s = parse(text)
    assert parse(s.text()) == s


def test_whitespace_and_aliases():
    assert parse(" sl( 2 , R ) * so(3) ").text() == "sl(2,R)*so(3)"
    assert parse("spin(7)").text() == "spin7"


@given(st.lists(st.sampled_from(["so(3)", "sl(2,R)", "su(2)@dual", "gl(2,R)@sym2", "so(2,1)"]),
                min_size=1, max_size=3), st.sampled_from(["", "+center"]))
def test_round_trip_products(factors, center):
    text = "*".join(factors) + center
    assert parse(parse(text).text()).text() == parse(text).text()


@pytest.mark.parametrize("bad", ["", "foo(3)", "so(3", "so()", "so(a)", "so(-1)", "sl(2,R)@wat",
                                 "so(3)++center", "so(3)*", "g2(R)", "e6(2)", "so(1,2,3)"])
def test_parse_errors(bad):
    with pytest.raises(SpecError):
        parse(bad)


@pytest.mark.parametrize("bad", ["sp(3,R)", "sl(3,R)@prim3", "so(3)*sl(2,C)", "so(3)+ccenter", "gl(2,C)+ccenter"])
def test_build_errors(bad):
    with pytest.raises(SpecError):
        build(bad)


@pytest.mark.parametrize("text,dim,dim_V", [
    ("sl(2,C)", 6, 4), ("so(4,C)", 12, 8), ("gl(3,R)@sym2", 9, 6), ("sl(2,R)@sym3", 3, 4),
    ("sl(2,R)*so(3)+center", 7, 6), ("sp(6,R)@prim3", 21, 14), ("u(2)", 4, 4),
    ("sl(2,C)*so(3,C)", 12, 12), ("sl(2,C)+ccenter", 8, 4),
])
def test_build_dimensions(text, dim, dim_V):
    g = build(text)
    assert (g.dim, g.dim_V) == (dim, dim_V)
    assert g.name == parse(text).text()


def test_complex_algebras_commute_with_J():
    g = build("sl(2,C)*so(3,C)")
    assert g.J is not None and g.is_complex_linear
    assert all(A @ g.J == g.J @ A for A in g.generators)


def test_stab_from_file(tmp_path):
    from ricciflat.repcatalog import dump_generator_file, so_pq
    p = tmp_path / "g.json"
    dump_generator_file(so_pq(2, 1), p)
    g = build(f"stab({p})")
    assert g.dim == 3
    with pytest.raises(SpecError):
        build(f"stab({tmp_path / 'missing.json'})")


def test_catalog():
    assert len(algspec.CATALOG) == 14
    assert len(algspec.catalog_rows(4)) == 7
    assert expectation_for("so( 4 , C )") == MIXED
    assert expectation_for("gl(3,R)") is None
    for row in algspec.CATALOG:
        assert build(row.spec).dim_V == row.dim_V
