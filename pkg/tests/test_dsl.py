import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsagnac import dsl
from qsagnac.dsl import CircuitParseError, parse_circuit, serialize
from qsagnac.presets import PRESETS, builtin_presets

FUZZ_TOKENS = [
    "register", "scenario", "inject", "measure", "bs", "phase", "dpa", "npa", "bogus",
    "a", "b", "a.s", "a.i", "b.s", "b.i", "c", "a.x",
    "theta=0.1", "theta=delta1", "theta=-loop_half", "theta=nope", "theta=1e", "theta=nan",
    "phi=pi", "phi=phi2p", "G=1.5", "G=0.5", "G=inf", "omega=1e-3", "area_lp2q=1",
    "area_lp1c=-1", "lambda_s=1.55e-6", "lambda_i=0", "split=0.2,0.3,0.5", "split=1,1",
    "nonlinearity=chi3", "nonlinearity=chi9", "scheme=degenerate_single",
    "scheme=nondegenerate_dual", "scheme=x", "alpha=1000", "alpha=1+2j", "alpha=1+",
    "mode=b", "mode=b.s,b.i", "mode=b,b", "mode=z", "angle=0.5", "angle=x",
    "combine=single", "combine=sum_of_two", "combine=both", "=", "x=", "=1", "#", "# note",
]


def test_empty_input_has_no_register():
    with pytest.raises(dsl.NoRegisterError, match="no register declared"):
        parse_circuit("")


def test_two_line_document():
    doc = parse_circuit("register a b\nbs a b\n")
    assert len(doc.elements) == 1
    assert doc.elements[0].kind == "bs"
    assert doc.measure.modes == ("b",)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_round_trip(name):
    doc = parse_circuit(PRESETS[name])
    again = parse_circuit(serialize(doc))
    assert again == doc
    assert serialize(again) == serialize(doc)


def test_comment_header_kept():
    doc = parse_circuit("# hello\nregister a b\n")
    assert doc.comment == "hello"
    assert parse_circuit(serialize(doc)).comment == "hello"


@pytest.mark.parametrize("text,kind,line,token", [
    ("register a b\nfoo a\n", "unknown_keyword", 2, "foo"),
    ("register a b\nbs a c\n", "undeclared_mode", 2, "c"),
    ("bs a b\nregister a b\n", "undeclared_mode", 1, "a"),
    ("register a b\nphase a theta=1.2.3\n", "malformed_number", 2, "1.2.3"),
    ("register a b\nscenario omega=inf\n", "malformed_number", 2, "inf"),
    ("register a b\nphase a theta=nan\n", "unknown_symbol", 2, "nan"),
    ("register a b\nmeasure mode=b\nmeasure mode=a\n", "duplicate_measurement", 3, "measure"),
    ("register a b\nphase a theta=wobble\n", "unknown_symbol", 2, "wobble"),
    ("register a b\nphase a\n", "bad_argument", 2, ""),
    ("register a b\nbs a\n", "bad_argument", 2, ""),
    ("register a b\ndpa a phi=0 G=0.5\n", "bad_argument", 2, "0.5"),
    ("register a b.s\n", "bad_register", 1, "a"),
    ("register a b\nregister a b\n", "duplicate_block", 2, "register"),
    ("register a b\ninject alpha=1+\n", "malformed_number", 2, "1+"),
    ("register a b\nscenario split=0.5,0.6,0.1\n", "bad_argument", 2, "0.5,0.6,0.1"),
])
def test_error_kinds(text, kind, line, token):
    with pytest.raises(CircuitParseError) as info:
        parse_circuit(text)
    err = info.value
    assert err.kind == kind
    assert err.line == line
    if token:
        assert err.token == token
    assert str(err)


def test_encoding_error():
    with pytest.raises(dsl.EncodingError):
        parse_circuit(b"register a b\n\xff\xfe\n")


def test_symbols_and_negation():
    doc = parse_circuit("register a b\nphase a theta=-loop_half\nphase b theta=0.25\n")
    table = {"loop_half": 0.3}
    assert doc.elements[0].param("theta").resolve(table) == pytest.approx(-0.3)
    assert doc.elements[1].param("theta").resolve(table) == 0.25


def test_presets_parse():
    docs = builtin_presets()
    assert set(docs) == {"classical-sagnac", "naive-sui", "nested-degenerate",
                         "nested-nondegenerate-single", "nested-nondegenerate-dual"}


def _fuzz_check(text):
    try:
        doc = parse_circuit(text)
    except CircuitParseError:
        return
    assert parse_circuit(serialize(doc)) == doc


@settings(max_examples=300, deadline=None)
@given(st.lists(st.lists(st.sampled_from(FUZZ_TOKENS), max_size=6), max_size=8))
def test_fuzz_token_soup(lines):
    _fuzz_check("\n".join(" ".join(words) for words in lines))


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=200))
def test_fuzz_arbitrary_text(text):
    _fuzz_check(text)


@settings(max_examples=100, deadline=None)
@given(st.binary(max_size=200))
def test_fuzz_arbitrary_bytes(data):
    _fuzz_check(data)
