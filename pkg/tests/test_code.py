import itertools

import numpy as np
import pytest

from sstdist.code import CodeSpec, NotQli, TapSet, load_code, parse_code, resolve_code_path, taps_general, taps_qli
from sstdist.gf2 import Gf2Poly, NotAnInverse, TransferMatrix

P = Gf2Poly.parse


def make_code(g1, g2, ginv1, ginv2, qli_L=None):
    G = TransferMatrix.from_rows([[P(g1), P(g2)]])
    Ginv = TransferMatrix.from_rows([[P(ginv1)], [P(ginv2)]])
    return CodeSpec(n0=2, k0=1, G=G, Ginv=Ginv, qli_L=qli_L)


def find_inverse(g1, g2, max_deg=3):
    """Smallest delay-free inverse (a, b) with g1 a + g2 b = 1, by search."""
    cands = [Gf2Poly(tuple(i for i in range(max_deg + 1) if m >> i & 1)) for m in range(1 << (max_deg + 1))]
    for a, b in itertools.product(cands, repeat=2):
        if P(g1) * a + P(g2) * b == Gf2Poly((0,)):
            return str(a), str(b)
    raise AssertionError("no inverse found")


def dense(p: Gf2Poly, n: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[[e for e in p.exponents if e < n]] = 1
    return v


def conv(x, p: Gf2Poly):
    return np.convolve(x, dense(p, len(x)))[: len(x)] % 2


def check_taps_by_convolution(code: CodeSpec, taps, qli: bool):
    g = [code.G[0, 0], code.G[0, 1]]
    ginv = [code.Ginv[0, 0], code.Ginv[1, 0]]
    depth = max(t.max_delay for t in taps) + 1
    assert 2 * depth <= 12
    for bits in itertools.product((0, 1), repeat=2 * depth):
        e = np.array(bits, dtype=np.int64).reshape(2, depth)
        if qli:
            u = (e[0] + e[1]) % 2
        else:
            u = (conv(e[0], ginv[0]) + conv(e[1], ginv[1])) % 2
        k = depth - 1
        for l in range(2):
            v = conv(u, g[l])[k]
            xor = sum(e[s - 1, k - d] for s, d in taps[l]) % 2
            assert v == xor, (bits, l)


C1_GENERAL = [
    {(1, 1), (1, 2), (1, 3), (2, 0), (2, 3)},
    {(1, 1), (1, 3), (2, 0), (2, 1), (2, 2), (2, 3)},
]
C1_QLI = [
    {(s, d) for s in (1, 2) for d in (0, 1, 2)},
    {(s, d) for s in (1, 2) for d in (0, 2)},
]


def test_c1_config(c1):
    assert (c1.n0, c1.k0, c1.qli_L, c1.tau, c1.name) == (2, 1, 1, 0, "C1")
    assert str(c1.G[0, 0]) == "1+D+D^2" and str(c1.G[0, 1]) == "1+D^2"


def test_taps_general_c1(c1):
    t = taps_general(c1)
    assert [set(x.taps) for x in t] == C1_GENERAL
    assert [len(x) for x in t] == [5, 6]
    assert t[0].delays(1) == [1, 2, 3] and t[0].delays(2) == [0, 3]


def test_taps_qli_c1(c1):
    t = taps_qli(c1)
    assert [set(x.taps) for x in t] == C1_QLI
    assert [len(x) for x in t] == [6, 4]


def test_identity_transfer():
    I2 = TransferMatrix.identity(2)
    code = CodeSpec(n0=2, k0=2, G=I2, Ginv=I2)
    assert [set(t.taps) for t in taps_general(code)] == [{(1, 0)}, {(2, 0)}]


def test_qli_with_unit_generator():
    code = make_code("1", "1+D", "1", "0", qli_L=1)
    assert set(taps_qli(code)[0].taps) == {(1, 0), (2, 0)}


def test_not_qli():
    code = make_code("1+D", "1+D+D^2", "D", "1")
    with pytest.raises(NotQli):
        taps_qli(code)


def test_qli_taps_differ_by_delay(c1):
    t1, t2 = taps_qli(c1)
    # (g1 + g2) applied to the summed stream is D
    assert t1.taps ^ t2.taps == {(1, 1), (2, 1)}


def test_invalid_inverse_rejected():
    with pytest.raises(NotAnInverse):
        make_code("1+D+D^2", "1+D^2", "1", "0")


def test_wrong_qli_delay_rejected():
    with pytest.raises(ValueError):
        make_code("1+D+D^2", "1+D^2", "D", "1+D", qli_L=2)


def test_tapset_rejects_bad_positions():
    with pytest.raises(ValueError):
        TapSet(frozenset({(0, 1)}))
    with pytest.raises(ValueError):
        TapSet(frozenset({(1, -1)}))


@pytest.mark.parametrize(
    "g1, g2",
    [("1+D+D^2", "1+D^2"), ("1+D", "1+D+D^2"), ("1", "1+D"), ("0o15", "0o17"), ("1+D^2", "1+D+D^2")],
)
def test_general_taps_match_convolution(g1, g2):
    a, b = find_inverse(g1, g2)
    code = make_code(g1, g2, a, b)
    check_taps_by_convolution(code, taps_general(code), qli=False)


@pytest.mark.parametrize("g1, g2, L", [("1+D+D^2", "1+D^2", 1), ("1", "1+D", 1), ("1+D+D^3", "1+D^3", 1)])
def test_qli_taps_match_convolution(g1, g2, L):
    a, b = find_inverse(g1, g2)
    code = make_code(g1, g2, a, b, qli_L=L)
    check_taps_by_convolution(code, taps_qli(code), qli=True)


def test_parse_alternative_notations():
    text = """
    [code]
    n0 = 2
    k0 = 1
    G = 0o7, [0,2]   # octal and exponent list
    Ginv = [1]; 0o6
    qli_L = 1
    """
    code = parse_code(text)
    assert str(code.G[0, 0]) == "1+D+D^2" and str(code.Ginv[1, 0]) == "1+D"
    assert code.is_qli and code.rate == 0.5


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_code("[other]\nx = 1\n")
    with pytest.raises(ValueError):
        parse_code("[code]\nn0 = 2\nk0 = 1\nG = 1, 1\n")


def test_env_code_dir(tmp_path, monkeypatch):
    (tmp_path / "c2.code").write_text("[code]\nname = C2\nn0 = 2\nk0 = 1\nG = 1+D, 1+D+D^2\nGinv = D; 1\n")
    monkeypatch.setenv("SSTDIST_CODE_DIR", str(tmp_path))
    assert resolve_code_path("c2") == tmp_path / "c2.code"
    assert load_code("c2.code").name == "C2"
    assert load_code("c1").name == "C1"


def test_missing_code():
    with pytest.raises(FileNotFoundError):
        resolve_code_path("no_such_code")
