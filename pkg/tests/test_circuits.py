"""Gate and circuit layer: semantics, inversion, dual-rail, netlist format."""

import itertools
import random

import pytest

from revlab import (
    CNOT,
    FREDKIN,
    NOT,
    TOFFOLI,
    BitWord,
    Circuit,
    Gate,
    GateKind,
    LineOutOfRange,
    NotReversible,
    ParseError,
    TooWide,
    TruthTable,
    WidthMismatch,
    apply_gate,
    drop_garbage,
    dual_rail_codeword,
    dual_rail_embed,
    format_circuit,
    invert,
    invert_circuit,
    is_conservative,
    is_reversible,
    parse_circuit,
    simulate,
    step_states,
    to_truth_table,
)


def _random_gate(rng, width):
    kind = rng.choice([k for k in GateKind if k.arity <= width])
    lines = tuple(rng.sample(range(width), kind.arity))
    return Gate(kind, lines)


def _random_circuit(rng, width, n_gates):
    return Circuit(width, tuple(_random_gate(rng, width) for _ in range(n_gates)))


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate(GateKind.CNOT, (0,))
    with pytest.raises(ValueError):
        Gate(GateKind.CNOT, (1, 1))
    with pytest.raises(ValueError):
        Gate(GateKind.NOT, (-1,))


def test_not_flips_leftmost_line():
    out = apply_gate(NOT(0), BitWord(4, 0))
    assert str(out) == "1000"


def test_cnot_semantics():
    assert apply_gate(CNOT(0, 1), BitWord(2, 0b00)) == BitWord(2, 0b00)
    assert apply_gate(CNOT(0, 1), BitWord(2, 0b10)) == BitWord(2, 0b11)
    assert apply_gate(CNOT(1, 0), BitWord(2, 0b01)) == BitWord(2, 0b11)


def test_toffoli_needs_both_controls():
    gate = TOFFOLI(0, 1, 2)
    assert apply_gate(gate, BitWord(3, 0b110)) == BitWord(3, 0b111)
    assert apply_gate(gate, BitWord(3, 0b100)) == BitWord(3, 0b100)
    assert apply_gate(gate, BitWord(3, 0b010)) == BitWord(3, 0b010)


def test_fredkin_swaps_targets_under_control():
    gate = FREDKIN(0, 1, 2)
    assert apply_gate(gate, BitWord(3, 0b110)) == BitWord(3, 0b101)
    assert apply_gate(gate, BitWord(3, 0b010)) == BitWord(3, 0b010)
    assert apply_gate(gate, BitWord(3, 0b111)) == BitWord(3, 0b111)


def test_apply_gate_checks_width():
    with pytest.raises(LineOutOfRange):
        apply_gate(NOT(2), BitWord(2, 0))


def test_gates_self_inverse_exhaustive():
    # every gate kind, every line assignment, every state, widths 1..6
    for width in range(1, 7):
        for kind in GateKind:
            if kind.arity > width:
                continue
            for lines in itertools.permutations(range(width), kind.arity):
                gate = Gate(kind, lines)
                for value in range(1 << width):
                    state = BitWord(width, value)
                    assert apply_gate(gate, apply_gate(gate, state)) == state


def test_circuit_validation():
    with pytest.raises(LineOutOfRange):
        Circuit(2, (NOT(2),))
    with pytest.raises(LineOutOfRange):
        Circuit(2, (), {2: 0})
    with pytest.raises(ValueError):
        Circuit(2, (), {0: 2})
    with pytest.raises(LineOutOfRange):
        Circuit(2, (), {}, frozenset({5}))


def test_line_roles():
    circuit = Circuit(4, (), {1: 0}, frozenset({3}))
    assert circuit.free_lines == (0, 2, 3)
    assert circuit.output_lines == (0, 1, 2)


def test_simulate_controlled_flip():
    circuit = Circuit(2, (CNOT(0, 1),))
    assert simulate(circuit, BitWord.from_string("10")) == BitWord.from_string("11")
    assert simulate(circuit, BitWord.from_string("01")) == BitWord.from_string("01")
    with pytest.raises(WidthMismatch):
        simulate(circuit, BitWord(3, 0))


def test_simulate_loads_ancilla_constants():
    # line 0 is an ancilla stuck at 1, so the CNOT always fires
    circuit = Circuit(2, (CNOT(0, 1),), {0: 1})
    assert simulate(circuit, BitWord.from_string("0")) == BitWord.from_string("11")
    assert simulate(circuit, BitWord.from_string("1")) == BitWord.from_string("10")


def test_step_states_traces_every_gate():
    circuit = Circuit(2, (NOT(0), CNOT(0, 1)))
    trace = list(step_states(circuit, BitWord(2, 0)))
    assert [str(s) for s in trace] == ["00", "10", "11"]


def test_to_truth_table_matches_simulate():
    rng = random.Random(9)
    for _ in range(30):
        width = rng.randint(1, 6)
        circuit = _random_circuit(rng, width, rng.randint(0, 6))
        table = to_truth_table(circuit)
        # ancilla-free circuits always realize a bijection
        assert is_reversible(table)
        for x in range(1 << width):
            assert table(x) == simulate(circuit, BitWord(width, x)).value


def test_fredkin_only_circuits_are_conservative():
    rng = random.Random(10)
    for _ in range(20):
        width = rng.randint(3, 6)
        gates = tuple(
            FREDKIN(*rng.sample(range(width), 3)) for _ in range(rng.randint(1, 6))
        )
        table = to_truth_table(Circuit(width, gates))
        assert is_conservative(table)


def test_to_truth_table_with_ancilla_shrinks_inputs():
    circuit = Circuit(2, (CNOT(0, 1),), {0: 1})
    table = to_truth_table(circuit)
    assert (table.in_width, table.out_width) == (1, 2)
    assert table.rows == (0b11, 0b10)


def test_to_truth_table_width_cap():
    with pytest.raises(TooWide):
        to_truth_table(Circuit(17))


def test_invert_circuit_reverses_gate_order():
    circuit = Circuit(2, (NOT(0), CNOT(0, 1)))
    inv = invert_circuit(circuit)
    assert [g.kind for g in inv.gates] == [GateKind.CNOT, GateKind.NOT]
    assert inv.ancillas == {}
    assert inv.garbage == frozenset()


def test_invert_circuit_undoes_simulation():
    rng = random.Random(21)
    for _ in range(50):
        width = rng.randint(1, 6)
        circuit = _random_circuit(rng, width, rng.randint(0, 10))
        inv = invert_circuit(circuit)
        for _ in range(5):
            word = BitWord(width, rng.randrange(1 << width))
            assert simulate(inv, simulate(circuit, word)) == word


def test_invert_circuit_matches_table_inverse():
    rng = random.Random(22)
    for _ in range(20):
        width = rng.randint(1, 5)
        circuit = _random_circuit(rng, width, rng.randint(1, 8))
        assert to_truth_table(invert_circuit(circuit)) == invert(to_truth_table(circuit))


def test_drop_garbage_projects_positions():
    table = TruthTable(1, 2, (0b01, 0b11))
    kept, lost = drop_garbage(table, {1})
    assert kept == TruthTable(1, 1, (0, 1))
    assert not lost
    collapsed, lost = drop_garbage(table, {0})
    assert collapsed == TruthTable(1, 1, (1, 1))
    assert lost
    with pytest.raises(LineOutOfRange):
        drop_garbage(table, {2})


def test_dual_rail_codeword_layout():
    assert str(BitWord(4, dual_rail_codeword(0b10, 2))) == "1001"
    assert str(BitWord(6, dual_rail_codeword(0b000, 3))) == "000111"


def test_dual_rail_known_mapping():
    base = to_truth_table(Circuit(2, (CNOT(0, 1),)))
    pair = dual_rail_embed(base)
    codeword = dual_rail_codeword(0b10, 2)
    assert BitWord(4, pair.embedded(codeword)) == BitWord.from_string("1100")


def test_dual_rail_is_reversible_and_weight_preserving():
    rng = random.Random(33)
    for _ in range(40):
        n = rng.randint(1, 4)
        rows = list(range(1 << n))
        rng.shuffle(rows)
        base = TruthTable(n, n, tuple(rows))
        pair = dual_rail_embed(base)
        assert is_reversible(pair.embedded)
        for x in range(1 << n):
            word = dual_rail_codeword(x, n)
            out = pair.embedded(word)
            assert out.bit_count() == n
            # the first rail carries the base function's value
            assert out >> n == base(x)


def test_dual_rail_rejects_bad_bases():
    with pytest.raises(NotReversible):
        dual_rail_embed(TruthTable(1, 1, (0, 0)))
    wide_rows = tuple(range(1 << 9))
    with pytest.raises(TooWide):
        dual_rail_embed(TruthTable(9, 9, wide_rows))


def test_parse_format_round_trip():
    rng = random.Random(44)
    for _ in range(25):
        width = rng.randint(3, 6)
        circuit = _random_circuit(rng, width, rng.randint(0, 6))
        lines = set(range(width))
        ancillas = {i: rng.randint(0, 1) for i in rng.sample(sorted(lines), rng.randint(0, 2))}
        garbage = frozenset(rng.sample(sorted(lines), rng.randint(0, 2)))
        circuit = Circuit(width, circuit.gates, ancillas, garbage)
        assert parse_circuit(format_circuit(circuit)) == circuit


def test_parse_circuit_text():
    text = """
    lines 3
    ancilla 2 0   # work line
    garbage 2
    TOF 0 1 2
    NOT 1
    """
    circuit = parse_circuit(text)
    assert circuit.width == 3
    assert circuit.ancillas == {2: 0}
    assert circuit.garbage == frozenset({2})
    assert [g.kind for g in circuit.gates] == [GateKind.TOFFOLI, GateKind.NOT]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "NOT 0\n",  # gate before header
        "lines 2\nXOR 0 1\n",  # unknown mnemonic
        "lines 2\nCNOT 0\n",  # wrong arity
        "lines 2\nCNOT 0 0\n",  # repeated line
        "lines 2\nNOT 5\n",  # line out of range
        "lines 2\nancilla 0 2\n",  # bad constant
        "lines 2\nancilla 0 1\nancilla 0 0\n",  # duplicate ancilla
        "lines two\n",
    ],
)
def test_parse_circuit_rejects(text):
    with pytest.raises(ParseError):
        parse_circuit(text)
