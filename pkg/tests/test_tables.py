"""Truth-table layer: words, dense tables, predicates, text format."""

import random

import pytest

from revlab import (
    BitWord,
    NotReversible,
    ParseError,
    TruthTable,
    WidthMismatch,
    compose,
    format_table,
    invert,
    is_conservative,
    is_reversible,
    parse_table,
)

# the four canonical two-bit examples: a controlled flip, a lossy overwrite,
# a wire swap, and a value rotation
CONTROLLED_FLIP = TruthTable(2, 2, (0, 1, 3, 2))
LOSSY = TruthTable(2, 2, (1, 3, 3, 0))
SWAP = TruthTable(2, 2, (0, 2, 1, 3))
ROTATE = TruthTable(2, 2, (3, 2, 0, 1))


def test_bitword_str_is_msb_first():
    word = BitWord(4, 0b1010)
    assert str(word) == "1010"
    assert word.bit(0) == 1
    assert word.bit(1) == 0
    assert word.bit(3) == 0
    assert word.weight == 2


def test_bitword_round_trip():
    for width in range(0, 9):
        for value in range(min(1 << width, 40)):
            word = BitWord(width, value)
            assert BitWord.from_string(str(word)) == word


def test_bitword_zero_width():
    word = BitWord(0, 0)
    assert str(word) == ""
    assert BitWord.from_string("") == word
    assert word.weight == 0


def test_bitword_validation():
    with pytest.raises(ValueError):
        BitWord(2, 4)
    with pytest.raises(ValueError):
        BitWord(-1, 0)
    with pytest.raises(ValueError):
        BitWord(17, 0)
    with pytest.raises(ParseError):
        BitWord.from_string("01x1")


def test_truth_table_validation():
    with pytest.raises(ValueError):
        TruthTable(2, 2, (0, 1, 2))
    with pytest.raises(ValueError):
        TruthTable(1, 1, (0, 2))
    with pytest.raises(ValueError):
        TruthTable(1, 1, (0, -1))


def test_truth_table_apply():
    out = CONTROLLED_FLIP.apply(BitWord(2, 0b10))
    assert out == BitWord(2, 0b11)
    assert CONTROLLED_FLIP(0b10) == 0b11
    with pytest.raises(WidthMismatch):
        CONTROLLED_FLIP.apply(BitWord(3, 0))


def test_canonical_tables_classify_as_published():
    assert is_reversible(CONTROLLED_FLIP) and not is_conservative(CONTROLLED_FLIP)
    assert not is_reversible(LOSSY) and not is_conservative(LOSSY)
    assert is_reversible(SWAP) and is_conservative(SWAP)
    assert is_reversible(ROTATE) and not is_conservative(ROTATE)


def test_conservative_implies_reversible():
    rng = random.Random(101)
    for _ in range(200):
        width = rng.randint(1, 3)
        size = 1 << width
        rows = tuple(rng.randrange(size) for _ in range(size))
        table = TruthTable(width, width, rows)
        if is_conservative(table):
            assert is_reversible(table)


def test_unequal_widths_never_reversible():
    widening = TruthTable(1, 2, (0, 3))
    assert not is_reversible(widening)
    assert not is_conservative(widening)


def test_invert_known_value():
    assert invert(ROTATE).rows == (2, 3, 1, 0)


def test_invert_round_trip_random_permutations():
    rng = random.Random(77)
    for _ in range(60):
        width = rng.randint(1, 6)
        rows = list(range(1 << width))
        rng.shuffle(rows)
        table = TruthTable(width, width, tuple(rows))
        back = invert(table)
        assert invert(back) == table
        # compose evaluates every input word, so equality with the identity
        # table is an exhaustive round-trip check at this width
        assert compose(table, back) == TruthTable.identity(width)
        assert compose(back, table) == TruthTable.identity(width)


def test_reversibility_check_agrees_with_word_count():
    # two equivalent bijectivity criteria: no duplicate outputs vs
    # every output word appearing exactly once
    rng = random.Random(78)
    for _ in range(200):
        width = rng.randint(1, 4)
        size = 1 << width
        if rng.random() < 0.5:
            rows = [rng.randrange(size) for _ in range(size)]
        else:
            rows = list(range(size))
            rng.shuffle(rows)
        table = TruthTable(width, width, tuple(rows))
        assert is_reversible(table) == (sorted(rows) == list(range(size)))


def test_invert_rejects_lossy():
    with pytest.raises(NotReversible):
        invert(LOSSY)


def test_compose_applies_left_then_right():
    # rotate after swap: x -> rotate(swap(x))
    both = compose(SWAP, ROTATE)
    for x in range(4):
        assert both(x) == ROTATE(SWAP(x))
    with pytest.raises(WidthMismatch):
        compose(TruthTable(1, 2, (0, 3)), TruthTable.identity(1))


def test_parse_format_round_trip():
    rng = random.Random(3)
    for _ in range(30):
        in_w = rng.randint(0, 3)
        out_w = rng.randint(0, 3)
        rows = tuple(rng.randrange(1 << out_w) for _ in range(1 << in_w))
        table = TruthTable(in_w, out_w, rows)
        assert parse_table(format_table(table)) == table


def test_parse_table_text():
    text = """
    # a controlled flip
    table 2 2
    00 -> 00
    01 -> 01
    10 -> 11
    11 -> 10
    """
    assert parse_table(text) == CONTROLLED_FLIP


@pytest.mark.parametrize(
    "text",
    [
        "",
        "table 1 1\n0 -> 0\n",  # missing input row
        "table 1 1\n0 -> 0\n0 -> 1\n1 -> 1\n",  # duplicate input
        "table 1 1\n0 -> 00\n1 -> 1\n",  # output width mismatch
        "table 1 1\n00 -> 0\n1 -> 1\n",  # input width mismatch
        "table 1\n0 -> 0\n1 -> 1\n",  # malformed header
        "table 1 1\n0 = 0\n1 = 1\n",  # malformed row
        "nonsense 1 1\n",
    ],
)
def test_parse_table_rejects(text):
    with pytest.raises(ParseError):
        parse_table(text)
