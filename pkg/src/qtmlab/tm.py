"""Deterministic and probabilistic Turing machines.

Tape alphabet is {0, 1, blank}; blank is written "_" in JSON and in
rendered tape strings.  A machine halts by entering its halting state,
either through a rule or implicitly when no rule matches the current
(state, symbol) pair.  Non-halting runs are reported as budget
exhaustion, never raised.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .distributions import OutputDistribution
from .errors import ResourceGuardError, ValidationError

BLANK = "_"
SYMBOLS = ("0", "1", BLANK)
MOVES = (-1, 0, 1)

ACCEPT_THRESHOLD = Fraction(3, 4)


def config_guard() -> int:
    """Enumeration-size cap, configurable via QTMLAB_GUARD_CONFIGS."""
    return int(os.environ.get("QTMLAB_GUARD_CONFIGS", 1_000_000))


def render_tape(tape: dict) -> str:
    """Contents between the extreme non-blank cells, blanks as '_'."""
    if not tape:
        return ""
    lo, hi = min(tape), max(tape)
    return "".join(tape.get(i, BLANK) for i in range(lo, hi + 1))


def _check_symbol(sym, what: str):
    if sym not in SYMBOLS:
        raise ValidationError(f"{what} {sym!r} is not one of {SYMBOLS}")


class TMDescription:
    """Finite deterministic transition table with distinguished q0, qH."""

    kind = "tm"

    def __init__(self, states, initial, halt, rules):
        states = list(states)
        if initial not in states or halt not in states:
            raise ValidationError("initial and halting states must be listed")
        if initial == halt:
            raise ValidationError("initial and halting states must differ")
        if len(set(states)) != len(states):
            raise ValidationError("duplicate state names")
        self.states = states
        self.initial = initial
        self.halt = halt
        self.rules = {}
        for (q, s), action in dict(rules).items():
            if q == halt:
                raise ValidationError("no rule may be keyed on the halting state")
            if q not in states:
                raise ValidationError(f"rule keyed on unknown state {q!r}")
            _check_symbol(s, "read symbol")
            write, move, nxt = action
            _check_symbol(write, "write symbol")
            if move not in MOVES:
                raise ValidationError(f"move {move!r} must be -1, 0 or +1")
            if nxt not in states:
                raise ValidationError(f"rule targets unknown state {nxt!r}")
            self.rules[(q, s)] = (write, move, nxt)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "states": list(self.states),
            "initial": self.initial,
            "halt": self.halt,
            "rules": [
                {
                    "state": q,
                    "read": s,
                    "branches": [{"write": w, "move": m, "next": t}],
                }
                for (q, s), (w, m, t) in sorted(self.rules.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TMDescription":
        if obj.get("kind") != "tm":
            raise ValidationError("expected kind 'tm'")
        rules = {}
        for entry in obj["rules"]:
            branches = entry["branches"]
            if len(branches) != 1:
                raise ValidationError("a deterministic rule has exactly one branch")
            br = branches[0]
            p = br.get("p", [1, 1])
            if Fraction(p[0], p[1]) != 1:
                raise ValidationError("deterministic branch probability must be 1")
            rules[(entry["state"], entry["read"])] = (
                br["write"],
                int(br["move"]),
                br["next"],
            )
        return cls(obj["states"], obj["initial"], obj["halt"], rules)

    def __eq__(self, other):
        if not isinstance(other, TMDescription) or other.kind != self.kind:
            return NotImplemented
        return (
            self.states == other.states
            and self.initial == other.initial
            and self.halt == other.halt
            and self.rules == other.rules
        )

    def __hash__(self):
        return hash((tuple(self.states), self.initial, self.halt,
                     frozenset(self.rules.items())))

    def as_ptm(self) -> "PTMDescription":
        """Embed as a PTM with all branch probabilities 1."""
        rules = {
            key: [(Fraction(1), w, m, t)] for key, (w, m, t) in self.rules.items()
        }
        return PTMDescription(self.states, self.initial, self.halt, rules)


class PTMDescription:
    """Probabilistic transition table; branch probabilities are exact
    rationals summing to 1 per (state, symbol) key."""

    kind = "ptm"

    def __init__(self, states, initial, halt, rules):
        states = list(states)
        if initial not in states or halt not in states:
            raise ValidationError("initial and halting states must be listed")
        if initial == halt:
            raise ValidationError("initial and halting states must differ")
        self.states = states
        self.initial = initial
        self.halt = halt
        self.rules = {}
        for (q, s), branches in dict(rules).items():
            if q == halt:
                raise ValidationError("no rule may be keyed on the halting state")
            if q not in states:
                raise ValidationError(f"rule keyed on unknown state {q!r}")
            _check_symbol(s, "read symbol")
            cleaned = []
            total = Fraction(0)
            for p, w, m, t in branches:
                p = Fraction(p)
                if p < 0:
                    raise ValidationError("branch probability must be >= 0")
                _check_symbol(w, "write symbol")
                if m not in MOVES:
                    raise ValidationError(f"move {m!r} must be -1, 0 or +1")
                if t not in states:
                    raise ValidationError(f"rule targets unknown state {t!r}")
                total += p
                if p > 0:
                    cleaned.append((p, w, m, t))
            if total != 1:
                raise ValidationError(
                    f"probabilities for ({q!r}, {s!r}) sum to {total}, not 1"
                )
            self.rules[(q, s)] = cleaned

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "states": list(self.states),
            "initial": self.initial,
            "halt": self.halt,
            "rules": [
                {
                    "state": q,
                    "read": s,
                    "branches": [
                        {
                            "p": [p.numerator, p.denominator],
                            "write": w,
                            "move": m,
                            "next": t,
                        }
                        for p, w, m, t in branches
                    ],
                }
                for (q, s), branches in sorted(self.rules.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PTMDescription":
        if obj.get("kind") != "ptm":
            raise ValidationError("expected kind 'ptm'")
        rules = {}
        for entry in obj["rules"]:
            rules[(entry["state"], entry["read"])] = [
                (Fraction(br["p"][0], br["p"][1]), br["write"], int(br["move"]),
                 br["next"])
                for br in entry["branches"]
            ]
        return cls(obj["states"], obj["initial"], obj["halt"], rules)

    def __eq__(self, other):
        if not isinstance(other, PTMDescription):
            return NotImplemented
        return (
            self.states == other.states
            and self.initial == other.initial
            and self.halt == other.halt
            and self.rules == other.rules
        )

    def __hash__(self):
        return hash((tuple(self.states), self.initial, self.halt))


@dataclass(frozen=True)
class RunResult:
    status: str  # "halted" | "budget"
    tape: str | None
    steps: int

    @property
    def halted(self) -> bool:
        return self.status == "halted"


def _initial_tape(input_bits: str) -> dict:
    for ch in input_bits:
        if ch not in ("0", "1"):
            raise ValidationError(f"input symbol {ch!r} is not a bit")
    return {i: ch for i, ch in enumerate(input_bits)}


def tm_run(machine: TMDescription, input_bits: str, budget: int) -> RunResult:
    """Run a deterministic machine; head starts over cell 0 in state q0."""
    if budget < 1:
        raise ValidationError("budget must be >= 1")
    tape = _initial_tape(input_bits)
    state = machine.initial
    halt = machine.halt
    rules = machine.rules
    pos = 0
    steps = 0
    while steps < budget:
        steps += 1
        action = rules.get((state, tape.get(pos, BLANK)))
        if action is None:
            state = halt
        else:
            write, move, state = action
            if write == BLANK:
                tape.pop(pos, None)
            else:
                tape[pos] = write
            pos += move
        if state == halt:
            return RunResult("halted", render_tape(tape), steps)
    return RunResult("budget", None, steps)


def ptm_exact_distribution(
    machine: PTMDescription, input_bits: str, budget: int
) -> tuple[OutputDistribution, Fraction]:
    """Exact rational distribution over halted outputs within the budget,
    plus the residual probability mass still running."""
    if budget < 1:
        raise ValidationError("budget must be >= 1")
    guard = config_guard()
    explored = 0
    halt = machine.halt
    rules = machine.rules
    outputs: dict[str, Fraction] = {}
    # level: configuration -> probability, merged per step
    level = {(machine.initial, frozenset(_initial_tape(input_bits).items()), 0):
             Fraction(1)}
    for _ in range(budget):
        if not level:
            break
        nxt: dict = {}
        for (state, tape_items, pos), prob in level.items():
            explored += 1
            if explored > guard:
                raise ResourceGuardError(
                    f"exploration guard of {guard} configurations exceeded"
                )
            tape = dict(tape_items)
            branches = rules.get((state, tape.get(pos, BLANK)))
            if branches is None:
                out = render_tape(tape)
                outputs[out] = outputs.get(out, Fraction(0)) + prob
                continue
            for p, write, move, target in branches:
                t2 = dict(tape)
                if write == BLANK:
                    t2.pop(pos, None)
                else:
                    t2[pos] = write
                if target == halt:
                    out = render_tape(t2)
                    outputs[out] = outputs.get(out, Fraction(0)) + prob * p
                else:
                    key = (target, frozenset(t2.items()), pos + move)
                    nxt[key] = nxt.get(key, Fraction(0)) + prob * p
        level = nxt
    residual = sum(level.values(), Fraction(0))
    return OutputDistribution(outputs, exact=True), residual


def ptm_accepts(
    machine: PTMDescription, input_bits: str, target_output: str, budget: int
) -> bool:
    """True iff the machine halts with the target output with exact
    probability strictly greater than 3/4."""
    dist, _residual = ptm_exact_distribution(machine, input_bits, budget)
    return dist[target_output] > ACCEPT_THRESHOLD


def ptm_sample(
    machine: PTMDescription, input_bits: str, budget: int, shots: int, seed: int
) -> OutputDistribution:
    """Monte Carlo estimate of the halted-output distribution.

    Non-halting shots are dropped; frequencies are over halted shots.
    Deterministic for a fixed seed.
    """
    import random

    rng = random.Random(seed)
    counts: dict[str, int] = {}
    halted_shots = 0
    halt = machine.halt
    rules = machine.rules
    for _ in range(shots):
        tape = _initial_tape(input_bits)
        state = machine.initial
        pos = 0
        for _step in range(budget):
            branches = rules.get((state, tape.get(pos, BLANK)))
            if branches is None:
                state = halt
            else:
                r = Fraction(rng.random()).limit_denominator(1 << 53)
                acc = Fraction(0)
                chosen = branches[-1]
                for br in branches:
                    acc += br[0]
                    if r < acc:
                        chosen = br
                        break
                _, write, move, state = chosen
                if write == BLANK:
                    tape.pop(pos, None)
                else:
                    tape[pos] = write
                pos += move
            if state == halt:
                out = render_tape(tape)
                counts[out] = counts.get(out, 0) + 1
                halted_shots += 1
                break
    if halted_shots == 0:
        return OutputDistribution({}, exact=False)
    return OutputDistribution(
        {k: v / halted_shots for k, v in counts.items()}, exact=False
    )


# -- bounded universality checking --------------------------------------


@dataclass(frozen=True)
class ProbeEntry:
    code_value: int
    input_bits: str
    verdict: str  # "match" | "mismatch" | "inconclusive"
    detail: str


@dataclass(frozen=True)
class ProbeReport:
    candidate_value: int
    budget: int
    candidate_budget: int
    entries: tuple

    @property
    def all_match(self) -> bool:
        return all(e.verdict == "match" for e in self.entries)


def universality_probe(candidate, testset, budget: int,
                       candidate_budget: int | None = None) -> ProbeReport:
    """Spot-check whether `candidate` simulates each (machine, input) pair.

    For every pair the probe runs the target machine on its input and the
    candidate on the paired code input, then compares.  The candidate is
    granted a larger step budget (default 200x) because a universal
    machine necessarily simulates with slowdown; equal budgets would
    render every honest simulator inconclusive.
    """
    from . import encoding

    if candidate_budget is None:
        candidate_budget = 200 * budget
    cand = encoding.decode(candidate)
    entries = []
    for code, input_bits in testset:
        target = encoding.decode(code)
        z = encoding.pair(code.value, encoding.string_to_nat(input_bits))
        paired_input = encoding.nat_to_binary(z)
        if isinstance(cand, TMDescription) and isinstance(target, TMDescription):
            res_t = tm_run(target, input_bits, budget)
            res_c = tm_run(cand, paired_input, candidate_budget)
            if res_t.halted and res_c.halted:
                if res_t.tape == res_c.tape:
                    verdict, detail = "match", f"both output {res_t.tape!r}"
                else:
                    verdict = "mismatch"
                    detail = f"target {res_t.tape!r} vs candidate {res_c.tape!r}"
            else:
                verdict = "inconclusive"
                detail = (
                    f"target {'halted' if res_t.halted else 'exhausted budget'}, "
                    f"candidate {'halted' if res_c.halted else 'exhausted budget'}"
                )
        else:
            cand_p = cand.as_ptm() if isinstance(cand, TMDescription) else cand
            targ_p = target.as_ptm() if isinstance(target, TMDescription) else target
            dist_t, res_t = ptm_exact_distribution(targ_p, input_bits, budget)
            dist_c, res_c = ptm_exact_distribution(
                cand_p, paired_input, candidate_budget
            )
            if res_t == 0 and res_c == 0:
                if dist_t == dist_c:
                    verdict, detail = "match", "distributions equal"
                else:
                    verdict, detail = "mismatch", "halted distributions differ"
            elif _distribution_mismatch_provable(dist_t, res_t, dist_c, res_c):
                verdict, detail = "mismatch", "halted mass already incompatible"
            else:
                verdict, detail = "inconclusive", "residual mass remains"
        entries.append(ProbeEntry(code.value, input_bits, verdict, detail))
    return ProbeReport(candidate.value, budget, candidate_budget, tuple(entries))


def _distribution_mismatch_provable(dist_a, res_a, dist_b, res_b) -> bool:
    """True when no continuation of either run could equalise the outputs."""
    labels = set(dist_a.support) | set(dist_b.support)
    for y in labels:
        if dist_a[y] > dist_b[y] + res_b or dist_b[y] > dist_a[y] + res_a:
            return True
    return False
