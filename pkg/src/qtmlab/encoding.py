"""Goedel numbering of machine descriptions and the pairing function.

Codes are built from a self-delimiting unary payload so that a machine's
transition table can be parsed directly off a Turing tape - this is what
makes the shipped universal machine runnable.  The payload bit string P
becomes the natural number int('1' + P, 2); the machine kind is tagged
into the two lowest bits (TM=0, PTM=1, QTM=2), keeping codes prefix-free
per kind.

State names are canonicalised to "0" (initial), "1" (halting) and "2",
"3", ... in order of first appearance in the sorted rule list, so
structurally identical machines always receive equal codes.

Payload grammar (fields are unary, value v encoded as '1'*(v+1)):

    tm      := rule ('00' rule)*          | empty
    rule    := q '0' s '0' w '0' d '0' t
    ptm     := prule ('00' prule)*        | empty
    prule   := q '0' s '0' nb '0' pbranch ('0' pbranch)*
    pbranch := num '0' den '0' w '0' d '0' t
    qtm     := qrule ('00' qrule)*        | empty
    qrule   := q '0' s '0' nb '0' qbranch ('0' qbranch)*
    qbranch := zz(a) '0' zz(b) '0' zz(c) '0' zz(d) '0' k '0' w '0' d '0' t

with symbols 0/1/blank as 0/1/2, moves left/stay/right as 0/1/2, and
zz the zigzag map for signed integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAMachineError, ValidationError
from .exactnum import ExactAmplitude

KIND_TAGS = {"tm": 0, "ptm": 1, "qtm": 2}
TAG_KINDS = {v: k for k, v in KIND_TAGS.items()}

_SYMBOL_IDX = {"0": 0, "1": 1, "_": 2}
_IDX_SYMBOL = {v: k for k, v in _SYMBOL_IDX.items()}
_MOVE_IDX = {-1: 0, 0: 1, 1: 2}
_IDX_MOVE = {v: k for k, v in _MOVE_IDX.items()}


# -- pairing -------------------------------------------------------------


def pair(n: int, m: int) -> int:
    """Cantor pairing (n+m)(n+m+1)/2 + m, a bijection N0 x N0 -> N0."""
    if n < 0 or m < 0:
        raise ValidationError("pair is defined on non-negative integers")
    s = n + m
    return s * (s + 1) // 2 + m


def unpair(z: int) -> tuple[int, int]:
    if z < 0:
        raise ValidationError("unpair is defined on non-negative integers")
    w = (math.isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    m = z - t
    return w - m, m


# -- naturals <-> strings ------------------------------------------------


def string_to_nat(bits: str) -> int:
    """Bijection between bit strings and naturals: '' -> 0, '0' -> 1,
    '1' -> 2, '00' -> 3, ..."""
    for ch in bits:
        if ch not in ("0", "1"):
            raise ValidationError(f"input symbol {ch!r} is not a bit")
    return int("1" + bits, 2) - 1


def nat_to_string(n: int) -> str:
    if n < 0:
        raise ValidationError("negative natural")
    return bin(n + 1)[3:]


def nat_to_binary(n: int) -> str:
    """Plain MSB-first binary rendering used to place a natural on tape."""
    if n < 0:
        raise ValidationError("negative natural")
    return bin(n)[2:]


# -- unary field assembly -------------------------------------------------


def _zigzag(v: int) -> int:
    return 2 * v if v >= 0 else -2 * v - 1


def _unzigzag(u: int) -> int:
    return u // 2 if u % 2 == 0 else -(u + 1) // 2


class _PayloadWriter:
    def __init__(self):
        self.parts: list[str] = []

    def rule(self, fields):
        self.parts.append("0".join("1" * (v + 1) for v in fields))

    def bits(self) -> str:
        return "00".join(self.parts)


class _PayloadReader:
    """Splits a payload into per-rule unary field tuples."""

    def __init__(self, payload: str):
        self.rules: list[list[int]] = []
        if payload == "":
            return
        if payload.startswith("0") or payload.endswith("0") or "000" in payload:
            raise NotAMachineError("malformed unary payload")
        for chunk in payload.split("00"):
            fields = []
            for run in chunk.split("0"):
                if not run or run.strip("1"):
                    raise NotAMachineError("malformed unary field")
                fields.append(len(run) - 1)
            self.rules.append(fields)


@dataclass(frozen=True)
class MachineCode:
    """A machine's natural-number code together with its kind."""

    value: int
    kind: str

    def __int__(self) -> int:
        return self.value


# -- canonicalisation -----------------------------------------------------


def _canonical_state_order(machine) -> dict:
    """initial -> 0, halt -> 1, then first appearance in sorted rules."""
    order = {machine.initial: 0, machine.halt: 1}
    nxt = 2

    def visit(state):
        nonlocal nxt
        if state not in order:
            order[state] = nxt
            nxt += 1

    for (q, s) in sorted(machine.rules, key=lambda k: (str(k[0]), _SYMBOL_IDX[k[1]])):
        visit(q)
    for (q, s) in sorted(machine.rules, key=lambda k: (str(k[0]), _SYMBOL_IDX[k[1]])):
        val = machine.rules[(q, s)]
        targets = [val[2]] if machine.kind == "tm" else [br[3] for br in val]
        for t in targets:
            visit(t)
    for state in machine.states:
        visit(state)
    return order


def _sorted_rule_items(machine, order):
    return sorted(
        machine.rules.items(),
        key=lambda item: (order[item[0][0]], _SYMBOL_IDX[item[0][1]]),
    )


# -- encode ---------------------------------------------------------------


def encode(machine) -> MachineCode:
    """Canonical code of a machine description."""
    kind = machine.kind
    order = _canonical_state_order(machine)
    out = _PayloadWriter()
    if kind == "tm":
        for (q, s), (w, m, t) in _sorted_rule_items(machine, order):
            out.rule(
                [order[q], _SYMBOL_IDX[s], _SYMBOL_IDX[w], _MOVE_IDX[m], order[t]]
            )
    elif kind == "ptm":
        for (q, s), branches in _sorted_rule_items(machine, order):
            fields = [order[q], _SYMBOL_IDX[s], len(branches) - 1]
            for p, w, m, t in branches:
                fields += [p.numerator, p.denominator - 1, _SYMBOL_IDX[w],
                           _MOVE_IDX[m], order[t]]
            out.rule(fields)
    elif kind == "qtm":
        for (q, s), targets in _sorted_rule_items(machine, order):
            fields = [order[q], _SYMBOL_IDX[s], len(targets) - 1]
            for amp, w, m, t in targets:
                a, b, c, d, k = amp.as_tuple()
                fields += [
                    _zigzag(a, ), _zigzag(b), _zigzag(c), _zigzag(d), k,
                    _SYMBOL_IDX[w], _MOVE_IDX[m], order[t],
                ]
            out.rule(fields)
    else:  # pragma: no cover - machine kinds are closed
        raise ValidationError(f"unknown machine kind {kind!r}")
    payload = out.bits()
    value = (int("1" + payload, 2) << 2) | KIND_TAGS[kind]
    return MachineCode(value, kind)


# -- decode ---------------------------------------------------------------


def decode(code, kind: str | None = None):
    """Reconstruct a machine description from its code.

    Raises NotAMachineError for numbers that encode no valid machine
    (the coding map is not surjective onto valid machines).
    """
    from .qtm import QTMDescription
    from .tm import PTMDescription, TMDescription

    if isinstance(code, MachineCode):
        value = code.value
        if kind is not None and kind != code.kind:
            raise NotAMachineError(f"code is tagged {code.kind}, not {kind}")
    else:
        value = int(code)
    if value < 0:
        raise NotAMachineError("codes are non-negative")
    tag = value & 3
    if tag not in TAG_KINDS:
        raise NotAMachineError(f"unknown kind tag {tag}")
    decoded_kind = TAG_KINDS[tag]
    if kind is not None and decoded_kind != kind:
        raise NotAMachineError(f"code is tagged {decoded_kind}, not {kind}")
    body = value >> 2
    if body < 1:
        raise NotAMachineError("code has no payload sentinel")
    payload = bin(body)[3:]
    reader = _PayloadReader(payload)

    max_state = 1
    try:
        if decoded_kind == "tm":
            rules = {}
            for fields in reader.rules:
                if len(fields) != 5:
                    raise NotAMachineError("a tm rule has exactly 5 fields")
                q, s, w, m, t = fields
                max_state = max(max_state, q, t)
                key = (str(q), _sym(s))
                if q == 1:
                    raise NotAMachineError("rule keyed on the halting state")
                if key in rules:
                    raise NotAMachineError(f"duplicate rule for {key}")
                rules[key] = (_sym(w), _move(m), str(t))
            states = [str(i) for i in range(max_state + 1)]
            return TMDescription(states, "0", "1", rules)
        if decoded_kind == "ptm":
            rules = {}
            for fields in reader.rules:
                if len(fields) < 3:
                    raise NotAMachineError("truncated ptm rule")
                q, s, nb = fields[0], fields[1], fields[2] + 1
                rest = fields[3:]
                if len(rest) != 5 * nb:
                    raise NotAMachineError("ptm rule has wrong branch count")
                branches = []
                for i in range(nb):
                    num, den1, w, m, t = rest[5 * i : 5 * i + 5]
                    branches.append(
                        (Fraction(num, den1 + 1), _sym(w), _move(m), str(t))
                    )
                    max_state = max(max_state, t)
                if q == 1:
                    raise NotAMachineError("rule keyed on the halting state")
                max_state = max(max_state, q)
                key = (str(q), _sym(s))
                if key in rules:
                    raise NotAMachineError(f"duplicate rule for {key}")
                rules[key] = branches
            states = [str(i) for i in range(max_state + 1)]
            return PTMDescription(states, "0", "1", rules)
        # qtm
        rules = {}
        for fields in reader.rules:
            if len(fields) < 3:
                raise NotAMachineError("truncated qtm rule")
            q, s, nb = fields[0], fields[1], fields[2] + 1
            rest = fields[3:]
            if len(rest) != 8 * nb:
                raise NotAMachineError("qtm rule has wrong target count")
            targets = []
            for i in range(nb):
                za, zb, zc, zd, k, w, m, t = rest[8 * i : 8 * i + 8]
                amp = ExactAmplitude(
                    _unzigzag(za), _unzigzag(zb), _unzigzag(zc), _unzigzag(zd), k
                )
                targets.append((amp, _sym(w), _move(m), str(t)))
                max_state = max(max_state, t)
            if q == 1:
                raise NotAMachineError("rule keyed on the halting state")
            max_state = max(max_state, q)
            key = (str(q), _sym(s))
            if key in rules:
                raise NotAMachineError(f"duplicate rule for {key}")
            rules[key] = targets
        states = [str(i) for i in range(max_state + 1)]
        return QTMDescription(states, "0", "1", rules)
    except ValidationError as exc:
        raise NotAMachineError(f"payload decodes to no valid machine: {exc}") from exc


def _sym(idx: int) -> str:
    if idx not in _IDX_SYMBOL:
        raise NotAMachineError(f"symbol index {idx} out of range")
    return _IDX_SYMBOL[idx]


def _move(idx: int) -> int:
    if idx not in _IDX_MOVE:
        raise NotAMachineError(f"move index {idx} out of range")
    return _IDX_MOVE[idx]


def canonicalize(machine):
    """The machine with states renamed to their canonical code order."""
    return decode(encode(machine))
