"""The torus algebra A(T^2) over F2: idempotents, Reeb elements, products."""
from __future__ import annotations

from enum import Enum
from typing import Sequence


class Idempotent(Enum):
    I1 = "i1"
    I2 = "i2"


class ReebLabel(Enum):
    EMPTY = ""
    R1 = "1"
    R2 = "2"
    R3 = "3"
    R12 = "12"
    R23 = "23"
    R123 = "123"

    @classmethod
    def parse(cls, text) -> "ReebLabel":
        if isinstance(text, cls):
            return text
        text = str(text).strip().lstrip("ρr").replace("∅", "")
        if text in ("", "0", "empty"):
            return cls.EMPTY
        return cls(text)


class AlgebraElement(Enum):
    ZERO = "0"
    I1 = "i1"
    I2 = "i2"
    R1 = "1"
    R2 = "2"
    R3 = "3"
    R12 = "12"
    R23 = "23"
    R123 = "123"

    @property
    def is_idempotent(self) -> bool:
        return self in (AlgebraElement.I1, AlgebraElement.I2)


E = AlgebraElement
I1, I2 = Idempotent.I1, Idempotent.I2

# (left, right) idempotents of each nonzero basis element
_SIDES = {
    E.I1: (I1, I1),
    E.I2: (I2, I2),
    E.R1: (I1, I2),
    E.R2: (I2, I1),
    E.R3: (I1, I2),
    E.R12: (I1, I1),
    E.R23: (I2, I2),
    E.R123: (I1, I2),
}

_REEB_PRODUCTS = {
    (E.R1, E.R2): E.R12,
    (E.R2, E.R3): E.R23,
    (E.R1, E.R23): E.R123,
    (E.R12, E.R3): E.R123,
}

_IDEMPOTENT_ELEMENT = {I1: E.I1, I2: E.I2}


def as_element(x) -> AlgebraElement:
    """Coerce an idempotent, a Reeb label or an element name to an AlgebraElement."""
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, Idempotent):
        return _IDEMPOTENT_ELEMENT[x]
    if isinstance(x, ReebLabel):
        if x is ReebLabel.EMPTY:
            raise ValueError("rho_empty = i1 + i2 is not a basis element")
        return AlgebraElement(x.value)
    return AlgebraElement(str(x))


def idempotents_of(a) -> tuple[Idempotent, Idempotent]:
    a = as_element(a)
    if a is E.ZERO:
        raise ValueError("zero has no idempotents")
    return _SIDES[a]


def left(a) -> Idempotent:
    return idempotents_of(a)[0]


def right(a) -> Idempotent:
    return idempotents_of(a)[1]


def multiply(a, b) -> AlgebraElement:
    a, b = as_element(a), as_element(b)
    if a is E.ZERO or b is E.ZERO:
        return E.ZERO
    if _SIDES[a][1] is not _SIDES[b][0]:
        return E.ZERO
    if a.is_idempotent:
        return b
    if b.is_idempotent:
        return a
    return _REEB_PRODUCTS.get((a, b), E.ZERO)


def composable(seq: Sequence) -> bool:
    labels = [ReebLabel.parse(s) if not isinstance(s, ReebLabel) else s for s in seq]
    if not labels or any(l is ReebLabel.EMPTY for l in labels):
        raise ValueError("composable expects a nonempty sequence of Reeb elements")
    return all(right(x) is left(y) for x, y in zip(labels, labels[1:]))


BASIS = tuple(e for e in AlgebraElement if e is not E.ZERO)
REEB = tuple(l for l in ReebLabel if l is not ReebLabel.EMPTY)
