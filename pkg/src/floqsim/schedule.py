"""Measurement schedules, the rewinding predicate, and the simulation loop."""

from __future__ import annotations

from dataclasses import dataclass, field

from .codes.base import CodeInstance
from .errors import PeriodicityViolationError, UnknownLabelError
from .pauli import PauliOp
from .stabilizer import StabilizerGroup

DEFAULT_WARMUP = 2


@dataclass(frozen=True)
class Schedule:
    """A periodic label sequence with an initialization prefix, bound to a code."""

    code: CodeInstance
    period: tuple[str, ...]
    init_prefix: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        if not self.period:
            raise ValueError("schedule period must be nonempty")

    def checks_for(self, label: str) -> list[PauliOp]:
        return self.code.checks_for(label)


def parse_schedule(
    text: str, code: CodeInstance, init: str | None = None
) -> Schedule:
    """Build a Schedule from text.

    Accepts a declared schedule name ("gbrbgr"), a string of single-letter
    labels ("GBRBGR"), or a comma/space separated token list ("F0,F1,...").
    The init prefix defaults to the one declared for the code's default
    schedule; pass init="" for no prefix.
    """
    declared = code.declared_schedules
    if text in declared:
        entry = declared[text]
        return Schedule(code, tuple(entry["period"]), tuple(entry["init"]),
                        name=text)
    labels = _tokenize(text)
    known = set(code.round_labels())
    for lab in labels:
        if lab not in known:
            raise UnknownLabelError(
                f"label {lab!r} not declared by {code.family} "
                f"(known: {sorted(known)})"
            )
    if init is None:
        default = next(iter(declared.values()), None)
        prefix = tuple(default["init"]) if default else ()
    else:
        prefix = tuple(_tokenize(init)) if init else ()
    for lab in prefix:
        if lab not in known:
            raise UnknownLabelError(f"init label {lab!r} not declared")
    return Schedule(code, tuple(labels), prefix, name=text)


def _tokenize(text: str) -> list[str]:
    if "," in text or " " in text:
        return [t for t in text.replace(",", " ").split() if t]
    return list(text)


def is_rewinding(schedule: Schedule | str) -> bool:
    """True iff some cyclic rotation of the period, with its first label
    appended at the end, is a palindrome.

    This captures schedules whose measurement order reverses within a
    period: 012021 rotates to 0210|12 -> appending gives 2102012 read the
    same both ways, while 012 and GBR fail for every rotation.
    """
    period = schedule.period if isinstance(schedule, Schedule) else tuple(
        _tokenize(schedule))
    m = len(period)
    for r in range(m):
        rot = period[r:] + period[:r]
        word = rot + (rot[0],)
        if word == word[::-1]:
            return True
    return False


@dataclass
class IsgHistory:
    """Per-round ISG snapshots of one simulated run."""

    code: CodeInstance
    schedule: Schedule
    snapshots: list[tuple[int, str, StabilizerGroup]] = field(
        default_factory=list)
    warmup_periods: int = 0

    def ranks(self) -> list[int]:
        return [g.rank for _, _, g in self.snapshots]

    def ks(self) -> list[int]:
        return [g.n - g.rank for _, _, g in self.snapshots]

    def rounds_per_period(self) -> int:
        return len(self.schedule.period)

    def period_groups(self, period_index: int) -> list[StabilizerGroup]:
        m = self.rounds_per_period()
        return [g for _, _, g in
                self.snapshots[period_index * m:(period_index + 1) * m]]

    def to_json_dict(self, with_generators: bool = False) -> dict:
        rounds = []
        for idx, label, g in self.snapshots:
            rec = {"round": idx, "label": label, "rank": g.rank,
                   "k": g.n - g.rank}
            if with_generators:
                rec["generators"] = [op.to_sparse() for op in g.generators()]
            rounds.append(rec)
        return {
            "family": self.code.family,
            "L": self.code.L,
            "boundary": self.code.boundary,
            "schedule": list(self.schedule.period),
            "init_prefix": list(self.schedule.init_prefix),
            "warmup_periods": self.warmup_periods,
            "rounds": rounds,
        }


def run(
    code: CodeInstance,
    schedule: Schedule | str,
    periods: int = 1,
    warmup: int = DEFAULT_WARMUP,
) -> IsgHistory:
    """Simulate warmup + periods full periods from the empty group.

    The init prefix runs once, then warmup periods without snapshots, then
    the measured periods with one snapshot per round.  Raises
    PeriodicityViolation if the final two measured periods disagree in rank
    round-by-round (requires periods >= 2; with a single measured period the
    check compares against one extra silent period).
    """
    if isinstance(schedule, str):
        schedule = parse_schedule(schedule, code)
    if periods < 1:
        raise ValueError("periods must be >= 1")
    if warmup < 0:
        raise ValueError("warmup must be >= 0")

    by_label = {lab: code.checks_for(lab) for lab in code.round_labels()}
    # validate each label's round once; measure_round then skips the check
    code.validate_rounds()

    g = StabilizerGroup.empty(code.n_qubits)
    for lab in schedule.init_prefix:
        g = g.measure_round(by_label[lab], validated=True)
    for _ in range(warmup):
        for lab in schedule.period:
            g = g.measure_round(by_label[lab], validated=True)

    hist = IsgHistory(code, schedule, warmup_periods=warmup)
    idx = 0
    for _ in range(periods):
        for lab in schedule.period:
            g = g.measure_round(by_label[lab], validated=True)
            hist.snapshots.append((idx, lab, g))
            idx += 1

    _assert_rank_periodicity(hist, by_label, g)
    return hist


def _assert_rank_periodicity(hist, by_label, last_group) -> None:
    m = hist.rounds_per_period()
    ranks = hist.ranks()
    if len(ranks) >= 2 * m:
        a, b = ranks[-2 * m:-m], ranks[-m:]
    else:
        g = last_group
        extra = []
        for lab in hist.schedule.period:
            g = g.measure_round(by_label[lab], validated=True)
            extra.append(g.rank)
        a, b = ranks[-m:], extra
    if a != b:
        raise PeriodicityViolationError(
            f"ISG ranks not periodic after warm-up: {a} vs {b}"
        )


def logical_count(code: CodeInstance, s: StabilizerGroup) -> int:
    """k = n_qubits - rank(S)."""
    if s.n != code.n_qubits:
        raise ValueError("group does not match code qubit count")
    return s.n - s.rank
