"""Result containers shared by the cone, beta and beta' calculators."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .kernels import KernelValue


class Form(str, enum.Enum):
    """Which of the four equivalent sums produced a face number.

    ``B_side`` is the sum whose ``A`` factor carries the ``2/alpha`` shift (or,
    for cones, the ``(j-1)**2`` weight); ``A_side`` is its shifted partner.
    The complement forms evaluate ``C(n, k) - E f``.
    """

    B_SIDE = "B_side"
    A_SIDE = "A_side"
    COMPLEMENT_B_SIDE = "complement_B_side"
    COMPLEMENT_A_SIDE = "complement_A_side"

    @property
    def is_complement(self) -> bool:
        return self in (Form.COMPLEMENT_B_SIDE, Form.COMPLEMENT_A_SIDE)

    @classmethod
    def parse(cls, text) -> "Form":
        if isinstance(text, cls):
            return text
        aliases = {"b": cls.B_SIDE, "a": cls.A_SIDE, "cb": cls.COMPLEMENT_B_SIDE, "ca": cls.COMPLEMENT_A_SIDE}
        key = str(text).strip()
        if key.lower() in aliases:
            return aliases[key.lower()]
        return cls(key)


@dataclass
class FaceNumberResult:
    value: float
    form: Form
    summands: list[tuple[int, float]] = field(default_factory=list)
    est_error: float = 0.0

    def __float__(self) -> float:
        return self.value


class TermSum:
    """Accumulates ``coef * X * Y`` terms and tracks an error budget.

    ``mass`` is the sum of ``|coef| * scale(X) * scale(Y)``, the magnitude
    against which cancellation noise in the sum should be judged.
    """

    def __init__(self, log_prefactor: float = 0.0):
        self.prefactor = math.exp(log_prefactor)
        self.summands: list[tuple[int, float]] = []
        self.total = 0.0
        self.abs_err = 0.0
        self.mass = 0.0

    def add(self, index: int, coef: float, x: KernelValue, y: KernelValue | None = None) -> None:
        yv = 1.0 if y is None else y.value
        ys = 1.0 if y is None else y.scale
        ye = 0.0 if y is None else y.est_error
        term = float(self.prefactor * coef * x.value * yv)
        self.summands.append((index, term))
        self.total += term
        self.abs_err += abs(self.prefactor * coef) * (x.est_error * x.scale * abs(yv) + ye * ys * abs(x.value))
        self.mass += abs(self.prefactor * coef) * x.scale * ys

    def add_value(self, index: int, term: float) -> None:
        term = float(term)
        self.summands.append((index, term))
        self.total += term
        self.mass += abs(term)

    @property
    def rel_error(self) -> float:
        return self.abs_err / max(abs(self.total), 1e-300)

    def result(self, form: Form, value: float | None = None) -> FaceNumberResult:
        return FaceNumberResult(self.total if value is None else value, form, self.summands, self.rel_error)


def residual(lhs: float, rhs: float, floor: float = 0.0) -> float:
    """``|lhs - rhs| / max(|lhs|, |rhs|, floor, 1e-300)``."""
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), floor, 1e-300)


@dataclass
class IdentityCheck:
    """Residuals of a pair of identities, unpackable as ``r1, r2 = check``.

    ``sides`` holds ``(lhs, rhs)`` for each identity. ``expected_failure`` is
    set for probes that are known not to satisfy the identity.
    """

    residuals: tuple[float, ...]
    sides: tuple[tuple[float, float], ...]
    expected_failure: bool = False
    note: str = ""

    def __iter__(self):
        return iter(self.residuals)

    def __getitem__(self, i):
        return self.residuals[i]

    def __len__(self):
        return len(self.residuals)

    @property
    def worst(self) -> float:
        return max(self.residuals) if self.residuals else 0.0
