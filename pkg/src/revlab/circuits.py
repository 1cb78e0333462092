"""Gate-level circuits over the classical reversible gate set.

Supports the four self-inverse gates NOT, CNOT, TOFFOLI (controlled-controlled
NOT) and FREDKIN (controlled swap), sequential simulation, structural circuit
inversion, exhaustive truth-table extraction, garbage projection, and the
2n-bit dual-rail embedding that realizes any reversible function
conservatively.

Netlist text format::

    lines 3              # mandatory header: number of lines
    ancilla 2 0          # line 2 is a constant-0 input
    garbage 2            # line 2 is excluded from the functional output
    TOF 0 1 2            # controls first, then targets
    NOT 1

Line 0 is the most significant bit of every word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import LineOutOfRange, NotReversible, ParseError, TooWide, WidthMismatch
from .tables import MAX_WIDTH, BitWord, TruthTable, is_reversible


class GateKind(Enum):
    NOT = "NOT"
    CNOT = "CNOT"
    TOFFOLI = "TOF"
    FREDKIN = "FRED"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    GateKind.NOT: 1,
    GateKind.CNOT: 2,
    GateKind.TOFFOLI: 3,
    GateKind.FREDKIN: 3,
}


@dataclass(frozen=True)
class Gate:
    """A single gate: kind plus the lines it acts on, controls before targets."""

    kind: GateKind
    lines: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lines", tuple(self.lines))
        if len(self.lines) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} takes {self.kind.arity} lines, got {len(self.lines)}"
            )
        if len(set(self.lines)) != len(self.lines):
            raise ValueError(f"{self.kind.value} lines must be distinct: {self.lines}")
        if any(line < 0 for line in self.lines):
            raise ValueError(f"negative line index in {self.lines}")


def NOT(t: int) -> Gate:
    return Gate(GateKind.NOT, (t,))


def CNOT(c: int, t: int) -> Gate:
    return Gate(GateKind.CNOT, (c, t))


def TOFFOLI(c1: int, c2: int, t: int) -> Gate:
    return Gate(GateKind.TOFFOLI, (c1, c2, t))


def FREDKIN(c: int, t1: int, t2: int) -> Gate:
    return Gate(GateKind.FREDKIN, (c, t1, t2))


def _apply_kind(gate: Gate, value: int, width: int) -> int:
    pos = [width - 1 - line for line in gate.lines]
    kind = gate.kind
    if kind is GateKind.NOT:
        return value ^ (1 << pos[0])
    if kind is GateKind.CNOT:
        if value >> pos[0] & 1:
            return value ^ (1 << pos[1])
        return value
    if kind is GateKind.TOFFOLI:
        if (value >> pos[0] & 1) and (value >> pos[1] & 1):
            return value ^ (1 << pos[2])
        return value
    # FREDKIN: swap the two targets when the control is set
    if value >> pos[0] & 1:
        a = value >> pos[1] & 1
        b = value >> pos[2] & 1
        if a != b:
            return value ^ (1 << pos[1]) ^ (1 << pos[2])
    return value


def apply_gate(gate: Gate, state: BitWord) -> BitWord:
    """Apply one gate to a full-width state word."""
    if any(line >= state.width for line in gate.lines):
        raise LineOutOfRange(
            f"{gate.kind.value} on lines {gate.lines} exceeds width {state.width}"
        )
    return BitWord(state.width, _apply_kind(gate, state.value, state.width))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over `width` named lines.

    Ancilla lines carry declared constant inputs and are not part of the free
    input word; garbage lines are retained in the raw output word but excluded
    from the functional output.
    """

    width: int
    gates: tuple[Gate, ...] = ()
    ancillas: Mapping[int, int] = field(default_factory=dict)
    garbage: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValueError("width must be non-negative")
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(
            self, "ancillas", MappingProxyType(dict(sorted(self.ancillas.items())))
        )
        object.__setattr__(self, "garbage", frozenset(self.garbage))
        for gate in self.gates:
            if any(line >= self.width for line in gate.lines):
                raise LineOutOfRange(
                    f"{gate.kind.value} on lines {gate.lines} exceeds width {self.width}"
                )
        for line, bit in self.ancillas.items():
            if not 0 <= line < self.width:
                raise LineOutOfRange(f"ancilla line {line} exceeds width {self.width}")
            if bit not in (0, 1):
                raise ValueError(f"ancilla constant must be 0 or 1, got {bit}")
        for line in self.garbage:
            if not 0 <= line < self.width:
                raise LineOutOfRange(f"garbage line {line} exceeds width {self.width}")

    @property
    def free_lines(self) -> tuple[int, ...]:
        """Lines that take free input bits, in word order."""
        return tuple(i for i in range(self.width) if i not in self.ancillas)

    @property
    def output_lines(self) -> tuple[int, ...]:
        """Lines forming the functional output (garbage excluded)."""
        return tuple(i for i in range(self.width) if i not in self.garbage)


def _load_word(circuit: Circuit, free_value: int) -> int:
    word = 0
    for line, bit in circuit.ancillas.items():
        if bit:
            word |= 1 << (circuit.width - 1 - line)
    free = circuit.free_lines
    n = len(free)
    for i, line in enumerate(free):
        if free_value >> (n - 1 - i) & 1:
            word |= 1 << (circuit.width - 1 - line)
    return word


def _run(circuit: Circuit, word: int) -> int:
    for gate in circuit.gates:
        word = _apply_kind(gate, word, circuit.width)
    return word


def step_states(circuit: Circuit, inputs: BitWord) -> Iterator[BitWord]:
    """Yield the full state word after loading and after each gate."""
    if inputs.width != len(circuit.free_lines):
        raise WidthMismatch(
            f"circuit takes {len(circuit.free_lines)} free input bits, got {inputs.width}"
        )
    word = _load_word(circuit, inputs.value)
    yield BitWord(circuit.width, word)
    for gate in circuit.gates:
        word = _apply_kind(gate, word, circuit.width)
        yield BitWord(circuit.width, word)


def simulate(circuit: Circuit, inputs: BitWord) -> BitWord:
    """Run the circuit on a free-input word; returns the full output word.

    Ancilla lines take their declared constants; garbage lines are retained.
    """
    if inputs.width != len(circuit.free_lines):
        raise WidthMismatch(
            f"circuit takes {len(circuit.free_lines)} free input bits, got {inputs.width}"
        )
    return BitWord(circuit.width, _run(circuit, _load_word(circuit, inputs.value)))


def to_truth_table(circuit: Circuit) -> TruthTable:
    """Exhaustive table over all free-input words, ancillas held at their
    constants, garbage lines retained in the output."""
    if circuit.width > MAX_WIDTH:
        raise TooWide(f"cannot enumerate {circuit.width} lines (cap {MAX_WIDTH})")
    n = len(circuit.free_lines)
    rows = tuple(_run(circuit, _load_word(circuit, x)) for x in range(1 << n))
    return TruthTable(n, circuit.width, rows)


def invert_circuit(circuit: Circuit) -> Circuit:
    """Structural inverse: gates in reverse order, each unchanged (all four
    kinds are self-inverse). Ancilla and garbage annotations are dropped; the
    inverse consumes the full output word as its free input."""
    return Circuit(circuit.width, tuple(reversed(circuit.gates)))


def drop_garbage(t: TruthTable, positions: frozenset[int] | set[int]) -> tuple[TruthTable, bool]:
    """Project the given output bit positions away.

    Returns the projected table and a flag that is True when the projection
    lost information, i.e. two previously distinct outputs collided.
    """
    for p in positions:
        if not 0 <= p < t.out_width:
            raise LineOutOfRange(f"output position {p} exceeds width {t.out_width}")
    keep = [p for p in range(t.out_width) if p not in positions]
    kept_width = len(keep)
    shifts = [t.out_width - 1 - p for p in keep]

    def project(y: int) -> int:
        out = 0
        for s in shifts:
            out = out << 1 | (y >> s & 1)
        return out

    rows = tuple(project(y) for y in t.rows)
    lost = len({project(y) for y in set(t.rows)}) < len(set(t.rows))
    return TruthTable(t.in_width, kept_width, rows), lost


@dataclass(frozen=True)
class DualRailFunction:
    """A reversible n-bit table together with its 2n-bit dual-rail embedding."""

    base: TruthTable
    embedded: TruthTable

    @property
    def rail_width(self) -> int:
        return self.base.in_width


def dual_rail_codeword(x: int, n: int) -> int:
    """The 2n-bit codeword carrying x on the first rail and its complement on
    the second."""
    mask = (1 << n) - 1
    return (x & mask) << n | (~x & mask)


def dual_rail_embed(f: TruthTable) -> DualRailFunction:
    """Embed a reversible n-bit function into 2n bits, one rail per bit plus
    its complement.

    On a codeword (x, ~x) the output is (f(x), ~f(x)), so both sides always
    carry exactly n set bits: the embedding is conservative on codewords even
    when f itself is not. Off the codeword subspace the second rail is the
    complement-conjugated image of f, which keeps the embedding a bijection on
    the whole 2n-bit space.
    """
    if not is_reversible(f):
        raise NotReversible("dual-rail embedding needs a bijective base table")
    n = f.in_width
    if 2 * n > MAX_WIDTH:
        raise TooWide(f"embedding needs {2 * n} lines (cap {MAX_WIDTH})")
    mask = (1 << n) - 1
    rows = []
    for word in range(1 << (2 * n)):
        x = word >> n
        y = word & mask
        rows.append(f.rows[x] << n | (~f.rows[~y & mask] & mask))
    embedded = TruthTable(2 * n, 2 * n, tuple(rows))
    return DualRailFunction(base=f, embedded=embedded)


_MNEMONICS = {kind.value: kind for kind in GateKind}


def parse_circuit(text: str) -> Circuit:
    """Parse the netlist text format (see module docstring)."""
    width: int | None = None
    gates: list[Gate] = []
    ancillas: dict[int, int] = {}
    garbage: set[int] = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word, args = parts[0], parts[1:]
        if width is None:
            if word != "lines" or len(args) != 1:
                raise ParseError(f"expected 'lines <width>' header, got {line!r}")
            width = _parse_int(args[0], line)
            if width < 0:
                raise ParseError("line count must be non-negative")
            continue
        if word == "ancilla":
            if len(args) != 2:
                raise ParseError(f"expected 'ancilla <line> <0|1>', got {line!r}")
            idx = _parse_int(args[0], line)
            bit = _parse_int(args[1], line)
            if bit not in (0, 1):
                raise ParseError(f"ancilla constant must be 0 or 1 in {line!r}")
            if idx in ancillas:
                raise ParseError(f"ancilla line {idx} declared twice")
            ancillas[idx] = bit
        elif word == "garbage":
            if len(args) != 1:
                raise ParseError(f"expected 'garbage <line>', got {line!r}")
            garbage.add(_parse_int(args[0], line))
        elif word in _MNEMONICS:
            kind = _MNEMONICS[word]
            if len(args) != kind.arity:
                raise ParseError(
                    f"{word} takes {kind.arity} line(s), got {len(args)} in {line!r}"
                )
            try:
                gates.append(Gate(kind, tuple(_parse_int(a, line) for a in args)))
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        else:
            raise ParseError(f"unknown directive {word!r}")
    if width is None:
        raise ParseError("empty netlist: missing 'lines <width>' header")
    try:
        return Circuit(width, tuple(gates), ancillas, frozenset(garbage))
    except (LineOutOfRange, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def format_circuit(circuit: Circuit) -> str:
    """Render a circuit in the netlist text format."""
    out = [f"lines {circuit.width}"]
    for line, bit in circuit.ancillas.items():
        out.append(f"ancilla {line} {bit}")
    for line in sorted(circuit.garbage):
        out.append(f"garbage {line}")
    for gate in circuit.gates:
        out.append(" ".join([gate.kind.value, *map(str, gate.lines)]))
    return "\n".join(out) + "\n"


def _parse_int(token: str, line: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise ParseError(f"bad integer {token!r} in {line!r}") from exc
