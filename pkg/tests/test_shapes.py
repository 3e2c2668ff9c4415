import pytest
from hypothesis import given
from hypothesis import strategies as st

from nl2mdp.errors import ShapeSyntaxError
from nl2mdp.ir import ShapeDim, ShapeExpr, parse_shape


def test_scalar_is_rank_zero():
    assert parse_shape("[]").rank == 0
    assert parse_shape("[]").render() == "[]"


def test_two_symbolic_dims():
    s = parse_shape("[N, M]")
    assert s.rank == 2
    assert s.symbols() == {"N", "M"}


def test_sum_of_terms_kept_unevaluated():
    s = parse_shape("[1 + 2 + n + n]")
    assert s.rank == 1
    assert s.dims[0].terms == (1, 2, "n", "n")
    assert s.render() == "[1 + 2 + n + n]"


def test_trailing_comma_tolerated():
    assert parse_shape("[4,]").render() == "[4]"
    assert parse_shape("[4,]") == parse_shape("[4]")


@pytest.mark.parametrize(
    "bad",
    ["", "4", "[4", "4]", "[[4]]", "[4,,5]", "[a-b]", "[4 5]", "[+]", "[,]", "[N M]"],
)
def test_illegal_shapes_rejected(bad):
    with pytest.raises(ShapeSyntaxError):
        parse_shape(bad)


# --- round-trip property -------------------------------------------------------

_term = st.one_of(
    st.integers(min_value=0, max_value=99),
    st.from_regex(r"[A-Za-z][A-Za-z0-9]{0,8}", fullmatch=True),
)
_dim = st.lists(_term, min_size=1, max_size=4).map(tuple).map(lambda t: ShapeDim(terms=t))
_shape = st.lists(_dim, min_size=0, max_size=4).map(tuple).map(lambda d: ShapeExpr(dims=d))


@given(_shape)
def test_canonical_form_round_trips(shape):
    rendered = shape.render()
    reparsed = parse_shape(rendered)
    assert reparsed == shape
    assert reparsed.render() == rendered


@given(_shape)
def test_parsing_is_deterministic(shape):
    text = shape.render()
    assert parse_shape(text) == parse_shape(text)
