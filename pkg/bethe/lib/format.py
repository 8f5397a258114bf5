import math

from bethe.core.models import Units

LN2 = math.log(2.0)


def to_units(value: float, units: Units) -> float:
    return value / LN2 if units == Units.BITS else value


def format_value(value: float, units: Units = Units.NATS, digits: int = 6) -> str:
    value = to_units(value, units)
    if math.isinf(value):
        return f"{'-' if value < 0 else ''}inf {units.value}"
    return f"{value:.{digits}f} {units.value}"


def csv_number(value: float) -> str:
    """12 significant digits; infinities and nan spelled out."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.12g}"


def format_vector(values, digits: int = 6) -> str:
    return "(" + ", ".join(f"{float(v):.{digits}g}" for v in values) + ")"
