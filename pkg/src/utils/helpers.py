from fractions import Fraction
from typing import Iterable

SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


class TextFormatter:
    @staticmethod
    def superscript(value: int) -> str:
        return str(value).translate(SUPERSCRIPTS)

    @staticmethod
    def power(value: int) -> str:
        """Exponent suffix; empty for the first power."""
        return "" if value == 1 else TextFormatter.superscript(value)

    @staticmethod
    def fraction(value: Fraction) -> str:
        return str(value)

    @staticmethod
    def vertex_set(vertices: Iterable[str]) -> str:
        return "{" + ", ".join(vertices) + "}"
