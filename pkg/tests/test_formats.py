import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qudit_compiler import formats
from qudit_compiler.circuit import random_circuit
from qudit_compiler.formats import FormatError
from qudit_compiler.phasepoly import SignatureTensor, random_implementation, random_signature


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([5, 7, 11]), st.integers(1, 4))
def test_round_trips(seed, d, n):
    circ = random_circuit(n, d, 20, seed)
    assert formats.parse_circuit(formats.format_circuit(circ)) == circ
    S = random_signature(n, d, seed)
    assert formats.parse_signature(formats.format_signature(S)) == S
    imp = random_implementation(n, 3, d, seed)
    assert formats.parse_implementation(formats.format_implementation(imp)) == imp
    E = np.random.default_rng(seed).integers(0, d, size=(n, n))
    back, dd = formats.parse_linear(formats.format_linear(E, d))
    assert dd == d and np.array_equal(back, E)


def test_fraction_literals():
    S = formats.parse_signature("SIG 5 3\n1 2 3 1/6  # ccz\n")
    assert S[(0, 1, 2)] == 1 and S[(2, 1, 0)] == 1
    imp = formats.parse_implementation("IMP 7 1 2\n1 -1\n---\n1/3 -2/5\n")
    assert imp.A.tolist() == [[1, 6]]
    assert (imp.lam[0] * 3) % 7 == 1 and (imp.lam[1] * 5) % 7 == 5
    circ = formats.parse_circuit("QUDITS 5 1\nM 0 1/24\n")
    assert circ.gates[0].param == 4  # 24 = 4 and 4 * 4 = 1 mod 5


def test_empty_implementation():
    imp = formats.parse_implementation("IMP 5 3 0\n---\n")
    assert imp.m == 0 and imp.n == 3
    assert formats.format_implementation(imp) == "IMP 5 3 0\n---\n"


def test_empty_signature():
    assert formats.parse_signature("SIG 5 2\n") == SignatureTensor(2, 5)


@pytest.mark.parametrize(
    "parser,text,line",
    [
        (formats.parse_signature, "SIG 5 3\n1 2 3 1\n3 2 1 1\n", 3),
        (formats.parse_signature, "SIG 5 3\n1 2 3 1\n1 2 3 2\n", 3),
        (formats.parse_signature, "SIG 5 3\n1 2 4 1\n", 2),
        (formats.parse_signature, "SIG 5 3\n1 2 3 1/5\n", 2),
        (formats.parse_signature, "SIG 6 3\n", 1),
        (formats.parse_signature, "SIG 3 3\n", 1),
        (formats.parse_circuit, "QUDITS 5 2\nM 0 1\nFOO 1 1\n", 3),
        (formats.parse_circuit, "QUDITS 5 2\nSUM 0 0\n", 2),
        (formats.parse_circuit, "QUDITS 5 2\nM 3 1\n", 2),
        (formats.parse_circuit, "QUDITS 5 2\nM 0 0\n", 2),
        (formats.parse_circuit, "QUDITS 5 2\n\n# note\nP 1 x\n", 4),
        (formats.parse_implementation, "IMP 5 2 2\n1 0\n0 1 1\n---\n1 1\n", 3),
        (formats.parse_implementation, "IMP 5 1 1\n1\n---\n1\n1\n", 5),
        (formats.parse_implementation, "IMP 5 1 1\n1\n---\n0\n", None),
        (formats.parse_implementation, "IMP 5 1 1\n1\n1\n", None),
    ],
)
def test_errors_name_the_line(parser, text, line):
    with pytest.raises(FormatError) as info:
        parser(text, "f")
    assert info.value.line == line
    if line is not None:
        assert str(info.value).startswith(f"f:{line}:")


def test_load_and_dump(tmp_path, ccz4):
    p = tmp_path / "x.imp"
    formats.dump(ccz4(5), p)
    assert formats.load(p) == ccz4(5)
    with pytest.raises(FormatError):
        formats.load(tmp_path / "x.txt")
