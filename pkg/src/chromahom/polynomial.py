"""Integer polynomials in one variable with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


def _trim(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(int(c) for c in coeffs)


@dataclass(frozen=True)
class GradedPolynomial:
    """Polynomial with integer coefficients, ``coeffs[k]`` multiplying ``var**k``.

    Used both for chromatic polynomials in lambda and for graded dimensions
    in q; ``var`` only affects printing.
    """

    coeffs: tuple[int, ...] = ()
    var: str = "q"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1, var: str = "q") -> GradedPolynomial:
        return cls((0,) * degree + (coeff,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other) -> GradedPolynomial:
        if isinstance(other, GradedPolynomial):
            return other
        if isinstance(other, int):
            return GradedPolynomial((other,), self.var)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other) -> GradedPolynomial:
        other = self._coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return GradedPolynomial(tuple(x + y for x, y in zip(a, b)), self.var)

    __radd__ = __add__

    def __neg__(self) -> GradedPolynomial:
        return GradedPolynomial(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other) -> GradedPolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GradedPolynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> GradedPolynomial:
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return GradedPolynomial((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for k, b in enumerate(other.coeffs):
                    out[i + k] += a * b
        return GradedPolynomial(tuple(out), self.var)

    __rmul__ = __mul__

    def __call__(self, value: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    def shift(self, l: int) -> GradedPolynomial:
        """Multiply by ``var**l`` (``l`` may be negative if no coefficient is lost)."""
        if l >= 0:
            return GradedPolynomial((0,) * l + self.coeffs, self.var)
        if any(self.coeffs[:-l]):
            raise ValueError("negative shift would drop nonzero coefficients")
        return GradedPolynomial(self.coeffs[-l:], self.var)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = self.var if k == 1 else f"{self.var}^{k}"
                body = power if mag == 1 else f"{mag}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def evaluate_at_one_plus_q(poly: GradedPolynomial) -> GradedPolynomial:
    """Substitute ``lambda -> 1 + q`` and expand."""
    out = [0] * max(len(poly.coeffs), 1)
    for k, c in enumerate(poly.coeffs):
        if c:
            for t in range(k + 1):
                out[t] += c * comb(k, t)
    return GradedPolynomial(tuple(out), "q")
