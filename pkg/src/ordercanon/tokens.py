"""Integer-coded token alphabet shared by the canonical representations.

Tokens compare as plain ints, which fixes the lexicographic order
``; < , < ( < ) < - < + < * < numbers`` (numbers ordered by value).
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

SEMI, COMMA, OPEN, CLOSE, MINUS, PLUS, STAR = range(7)
NUM = 7

_SYMBOLS = {SEMI: ";", COMMA: ",", OPEN: "(", CLOSE: ")", MINUS: "-", PLUS: "+", STAR: "*"}
_FROM_SYMBOL = {v: k for k, v in _SYMBOLS.items()}


def num(v: int) -> int:
    if v < 0:
        raise ValueError("numeric tokens are non-negative")
    return NUM + v


def is_num(tok: int) -> bool:
    return tok >= NUM


def value(tok: int) -> int:
    return tok - NUM


def sign_token(s: int) -> int:
    return PLUS if s > 0 else MINUS


def render(tokens: Sequence[int]) -> str:
    """Space-separated text; a sign directly followed by a number is fused ('+3')."""
    out: List[str] = []
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t in (PLUS, MINUS) and i + 1 < len(tokens) and is_num(tokens[i + 1]):
            out.append(_SYMBOLS[t] + str(value(tokens[i + 1])))
            i += 2
            continue
        out.append(str(value(t)) if is_num(t) else _SYMBOLS[t])
        i += 1
    return " ".join(out)


def parse(text: str) -> List[int]:
    toks: List[int] = []
    for word in text.split():
        if word in _FROM_SYMBOL:
            toks.append(_FROM_SYMBOL[word])
        elif word[0] in "+-" and word[1:].isdigit():
            toks.append(_FROM_SYMBOL[word[0]])
            toks.append(num(int(word[1:])))
        elif word.isdigit():
            toks.append(num(int(word)))
        else:
            raise ValueError(f"bad token {word!r}")
    return toks


Entry = Tuple[int, int]  # (sign, number)


def block_tokens(a0: Iterable[Entry], groups: Iterable[Sequence[Entry]]) -> List[int]:
    """Radial block: '(' A0 entries ')' then groups; singletons are bare."""
    toks = [OPEN]
    for s, v in a0:
        toks += [sign_token(s), num(v)]
    toks.append(CLOSE)
    for g in groups:
        if len(g) > 1:
            toks.append(OPEN)
        for s, v in g:
            toks += [sign_token(s), num(v)]
        if len(g) > 1:
            toks.append(CLOSE)
    return toks


def parse_block(tokens: Sequence[int]) -> Tuple[List[Entry], List[List[Entry]]]:
    """Inverse of :func:`block_tokens`."""
    it = list(tokens)
    if not it or it[0] != OPEN:
        raise ValueError("block must start with the A0 group")
    i = 1

    def entry(i):
        s, v = it[i], it[i + 1]
        if s not in (PLUS, MINUS) or not is_num(v):
            raise ValueError(f"malformed entry at token {i}")
        return (1 if s == PLUS else -1, value(v)), i + 2

    a0: List[Entry] = []
    while it[i] != CLOSE:
        e, i = entry(i)
        a0.append(e)
    i += 1
    groups: List[List[Entry]] = []
    while i < len(it):
        if it[i] == OPEN:
            i += 1
            g = []
            while it[i] != CLOSE:
                e, i = entry(i)
                g.append(e)
            i += 1
            groups.append(g)
        else:
            e, i = entry(i)
            groups.append([e])
    return a0, groups
