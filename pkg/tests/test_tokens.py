import pytest

from ordercanon import tokens as T


def test_order():
    assert T.SEMI < T.COMMA < T.OPEN < T.CLOSE < T.MINUS < T.PLUS < T.STAR < T.num(0) < T.num(1)


def test_render_parse_round_trip():
    toks = T.block_tokens([(-1, 3), (1, 1)], [[(-1, 4), (1, 2)], [(1, 7)]])
    text = T.render(toks)
    assert text == "( -3 +1 ) ( -4 +2 ) +7"
    assert T.parse(text) == toks
    assert T.parse_block(toks) == ([(-1, 3), (1, 1)], [[(-1, 4), (1, 2)], [(1, 7)]])


def test_render_kgb_entries():
    assert T.render([T.STAR, T.num(1), T.SEMI, T.num(0), T.COMMA, T.STAR, T.SEMI]) == "* 1 ; 0 , * ;"


def test_parse_errors():
    with pytest.raises(ValueError):
        T.parse("( +x )")
    with pytest.raises(ValueError):
        T.parse_block([T.PLUS, T.num(1)])
    with pytest.raises(ValueError):
        T.num(-1)
