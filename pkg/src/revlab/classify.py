"""Reversibility levels, machine profiles, and per-run dissipation ledgers.

A system profile records which reversibility mechanisms a machine actually
has; `classify` maps it to the highest of four ordered levels. `run_ledger`
walks a circuit on a concrete input and prices every stage of the run in
joules: transcribing the inputs in, consuming control signals, overwriting
intermediate state, resistive interconnect loss, and reading the outputs
back out. `check_bound` compares a ledger against the floor obtained by
charging one per-bit unit for every set, read, consumed or overwritten bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

from .circuits import Circuit, step_states, to_truth_table
from .energy import BoundInput, EnergyParams, landauer_per_bit, lower_bound, wire_dissipation_per_cycle
from .errors import DimensionMismatch, InconsistentProfile
from .tables import BitWord, is_conservative


class Level(IntEnum):
    """Reversibility levels, weakest to strongest.

    NSLR: reversibility exists only as software-tracked history.
    SLR: components step bijectively but spend energy doing so.
    ESR: component energy is additionally recovered or conserved.
    FSR: additionally nothing is lost moving signals between components.
    """

    NSLR = 0
    SLR = 1
    ESR = 2
    FSR = 3


class Environment(Enum):
    """CLOSED: the run stays inside one sealed system and nothing crosses its
    boundary. TRANSFER: results are handed out to an irreversible outside."""

    CLOSED = "CLOSED"
    TRANSFER = "TRANSFER"


class ControlStyle(Enum):
    """EXTERNAL_IRREVERSIBLE consumes the instruction word afresh for every
    gate; CYCLIC_TAG_REVERSIBLE pays once to initialize a circulating tag
    that then sequences the gates without further erasure."""

    EXTERNAL_IRREVERSIBLE = "EXTERNAL_IRREVERSIBLE"
    CYCLIC_TAG_REVERSIBLE = "CYCLIC_TAG_REVERSIBLE"


class Stage(Enum):
    INPUT_SET = "INPUT_SET"
    OUTPUT_READ = "OUTPUT_READ"
    CONTROL = "CONTROL"
    COMPUTE = "COMPUTE"
    INTERCONNECT = "INTERCONNECT"
    MEASUREMENT = "MEASUREMENT"


@dataclass(frozen=True)
class SystemProfile:
    """What a machine can do, plus the run-accounting knobs.

    The first four flags are capability claims feeding `classify`. The rest
    shape ledgers: instruction_bits is the control word width consumed per
    gate, recovered_fraction the share of overwrite energy won back by
    uncomputation or recapture, reconfiguration_units the relative cost of
    setting one bit inside a closed system.
    """

    logical_reversible_components: bool = False
    software_tracked_only: bool = False
    energy_conservative_components: bool = False
    ideal_transmission: bool = False
    environment: Environment = Environment.TRANSFER
    control_style: ControlStyle = ControlStyle.EXTERNAL_IRREVERSIBLE
    instruction_bits: int = 0
    recovered_fraction: float = 0.0
    reconfiguration_units: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.instruction_bits, int) or self.instruction_bits < 0:
            raise ValueError(f"instruction_bits must be a non-negative int, got {self.instruction_bits!r}")
        if not 0.0 <= self.recovered_fraction <= 1.0:
            raise ValueError(f"recovered_fraction must be in [0, 1], got {self.recovered_fraction!r}")
        if not math.isfinite(self.reconfiguration_units) or self.reconfiguration_units < 0:
            raise ValueError(f"reconfiguration_units must be finite and non-negative")


def classify(profile: SystemProfile) -> Level:
    """The highest level whose requirements the profile meets."""
    if profile.energy_conservative_components and profile.ideal_transmission:
        return Level.FSR
    if profile.energy_conservative_components:
        return Level.ESR
    if profile.logical_reversible_components:
        return Level.SLR
    if profile.software_tracked_only:
        return Level.NSLR
    raise InconsistentProfile("profile enables no reversibility mechanism at all")


@dataclass(frozen=True)
class LedgerEntry:
    """One priced event: the stage it belongs to, the bit count the lower
    bound may charge for it, and the energy actually spent."""

    stage: Stage
    bits: int
    joules: float

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or self.bits < 0:
            raise ValueError(f"bits must be a non-negative int, got {self.bits!r}")
        if not math.isfinite(self.joules) or self.joules < 0:
            raise ValueError(f"joules must be finite and non-negative, got {self.joules!r}")


@dataclass(frozen=True)
class DissipationLedger:
    """An ordered record of priced events for one run.

    observable is False when the run stayed sealed inside a closed system,
    so its results never crossed the boundary and were never read out.
    """

    entries: tuple[LedgerEntry, ...] = ()
    observable: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def total(self) -> float:
        """Sum of all entry energies, joules."""
        return math.fsum(entry.joules for entry in self.entries)

    def stage_total(self, stage: Stage) -> float:
        return math.fsum(e.joules for e in self.entries if e.stage is stage)

    def stage_bits(self, stage: Stage) -> int:
        return sum(e.bits for e in self.entries if e.stage is stage)

    def __add__(self, other: "DissipationLedger") -> "DissipationLedger":
        return DissipationLedger(
            self.entries + other.entries, self.observable and other.observable
        )


def run_ledger(
    circuit: Circuit,
    inputs: BitWord,
    profile: SystemProfile,
    params: EnergyParams,
) -> DissipationLedger:
    """Simulate the circuit on the given free-input word and price the run.

    Stages, in order:

    * INPUT_SET: every line (free or ancilla) is one transcribed bit. Inside
      a closed system this is a reconfiguration, scaled by
      reconfiguration_units.
    * CONTROL: with external control each gate consumes the instruction word
      afresh; a cyclic tag is paid for once up front. Skipped when the
      instruction word is empty or the circuit has no gates.
    * COMPUTE: one entry per gate that changes the machine state, charging
      the flipped bits net of the recovered fraction. Skipped entirely when
      the gates taken alone act conservatively (switching then only routes
      signals) or when the system is closed (changes stay recoverable
      inside).
    * INTERCONNECT: resistive wire loss, one cycle per gate, unless
      transmission is ideal. Carries no bit count.
    * OUTPUT_READ: each functional output line read across the boundary is
      one transcribed bit. A closed run reads nothing out and the ledger is
      marked not observable instead.
    """
    unit = landauer_per_bit(params)
    recovery = profile.recovered_fraction
    closed = profile.environment is Environment.CLOSED
    entries: list[LedgerEntry] = []

    if circuit.width > 0:
        scale = profile.reconfiguration_units if closed else 1.0
        entries.append(
            LedgerEntry(Stage.INPUT_SET, circuit.width, circuit.width * scale * unit)
        )

    i_r = profile.instruction_bits
    if i_r > 0 and circuit.gates:
        if profile.control_style is ControlStyle.EXTERNAL_IRREVERSIBLE:
            entries.extend(
                LedgerEntry(Stage.CONTROL, i_r, i_r * unit) for _ in circuit.gates
            )
        else:
            entries.append(LedgerEntry(Stage.CONTROL, i_r, i_r * unit))

    states = list(step_states(circuit, inputs))
    pure_gates = Circuit(circuit.width, circuit.gates)
    conservative = is_conservative(to_truth_table(pure_gates))
    if not conservative and not closed:
        for before, after in zip(states, states[1:]):
            flipped = (before.value ^ after.value).bit_count()
            joules = flipped * (1.0 - recovery) * unit
            if joules > 0:
                # floor keeps the charged bit count at or below the energy
                # actually spent, so the run bound stays self-consistent
                entries.append(
                    LedgerEntry(Stage.COMPUTE, int(flipped * (1.0 - recovery)), joules)
                )

    if not profile.ideal_transmission and circuit.gates:
        per_cycle = wire_dissipation_per_cycle(params)
        entries.append(
            LedgerEntry(Stage.INTERCONNECT, 0, len(circuit.gates) * per_cycle)
        )

    if closed:
        return DissipationLedger(tuple(entries), observable=False)
    out_bits = len(circuit.output_lines)
    if out_bits > 0:
        entries.append(LedgerEntry(Stage.OUTPUT_READ, out_bits, out_bits * unit))
    return DissipationLedger(tuple(entries), observable=True)


def measurement_entry(bits: int, params: EnergyParams) -> LedgerEntry:
    """Transcription cost of reading `bits` measured values into classical
    storage, one per-bit unit each."""
    return LedgerEntry(Stage.MEASUREMENT, bits, bits * landauer_per_bit(params))


def matching_bound(ledger: DissipationLedger) -> BoundInput:
    """The bit counts a ledger's own entries justify charging for: input bits
    set, output bits read, the control word width (consumed once per gate but
    counted once), and intermediate bits overwritten."""
    i_r = 0
    for entry in ledger.entries:
        if entry.stage is Stage.CONTROL:
            i_r = entry.bits
            break
    return BoundInput(
        k=ledger.stage_bits(Stage.INPUT_SET),
        l=ledger.stage_bits(Stage.OUTPUT_READ),
        i_r=i_r,
        n_pr=ledger.stage_bits(Stage.COMPUTE),
    )


def check_bound(ledger: DissipationLedger, bits: BoundInput, params: EnergyParams) -> bool:
    """True when the ledger's total meets the floor for the given bit counts.

    Bit counts are cross-checked against whichever stages the ledger actually
    contains; a conflict raises DimensionMismatch. Stages absent from the
    ledger are taken on faith from `bits`.
    """
    own = matching_bound(ledger)
    present = {entry.stage for entry in ledger.entries}
    checks = (
        (Stage.INPUT_SET, own.k, bits.k, "k"),
        (Stage.OUTPUT_READ, own.l, bits.l, "l"),
        (Stage.CONTROL, own.i_r, bits.i_r, "i_r"),
        (Stage.COMPUTE, own.n_pr, bits.n_pr, "n_pr"),
    )
    for stage, have, want, name in checks:
        if stage in present and have != want:
            raise DimensionMismatch(
                f"ledger {stage.value} bits total {have}, bound says {name}={want}"
            )
    return ledger.total >= lower_bound(bits, params) - 1e-30


def sci6(x: float) -> str:
    """Scientific notation with six digits after the point and a bare
    exponent, e.g. 2.803511e-21, 0.000000e0."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    mantissa, _, exponent = f"{x:.6e}".partition("e")
    return f"{mantissa}e{int(exponent)}"


def format_ledger(
    ledger: DissipationLedger,
    params: EnergyParams,
    bits: BoundInput | None = None,
) -> str:
    """Line-oriented report: one line per entry, then totals and the bound
    verdict. The bound defaults to the one the ledger itself justifies."""
    if bits is None:
        bits = matching_bound(ledger)
    lines = [
        f"{entry.stage.value:<12} bits={entry.bits:<4d} {sci6(entry.joules)} J"
        for entry in ledger.entries
    ]
    lines.append(f"total {sci6(ledger.total)} J")
    lines.append(
        f"bound {sci6(lower_bound(bits, params))} J"
        f" (k={bits.k} l={bits.l} i_r={bits.i_r} n_pr={bits.n_pr})"
    )
    lines.append(f"bound met: {'yes' if check_bound(ledger, bits, params) else 'no'}")
    lines.append(f"observable: {'yes' if ledger.observable else 'no'}")
    return "\n".join(lines) + "\n"


def ledger_dict(
    ledger: DissipationLedger,
    params: EnergyParams,
    bits: BoundInput | None = None,
) -> dict:
    """The same report as a plain structure for machine consumption."""
    if bits is None:
        bits = matching_bound(ledger)
    return {
        "entries": [
            {"stage": entry.stage.value, "bits": entry.bits, "joules": entry.joules}
            for entry in ledger.entries
        ],
        "total": ledger.total,
        "bound": {
            "k": bits.k,
            "l": bits.l,
            "i_r": bits.i_r,
            "n_pr": bits.n_pr,
            "joules": lower_bound(bits, params),
            "met": check_bound(ledger, bits, params),
        },
        "observable": ledger.observable,
    }
