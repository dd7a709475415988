import math
from typing import List, Sequence, Tuple

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """One splitmix64 output step for a 64-bit state."""
    z = (value + _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, index: int) -> int:
    """
    Derive the seed of trial ``index`` from ``base_seed``.

    The result is splitmix64(splitmix64(base_seed) XOR index), so it depends on
    (base_seed, index) only and never on execution order.
    """
    return splitmix64(splitmix64(base_seed & _MASK64) ^ (index & _MASK64))


def format_float(value: float) -> str:
    """Format a double with 17 significant digits (exact round trip)."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(float(value), ".17g")


def parse_float_list(text: str) -> List[float]:
    """Parse a comma separated list of floats ("2,1,0.5")."""
    items = [item.strip() for item in text.split(",")]
    return [float(item) for item in items if item]


def compensated_mean(values: Sequence[float]) -> float:
    """Mean via ``math.fsum``; exact summation makes it order independent."""
    if not values:
        return math.nan
    return math.fsum(values) / len(values)


def mean_and_stderr(values: Sequence[float]) -> Tuple[float, float]:
    """Sample mean and standard error of the mean (0 for fewer than two values)."""
    count = len(values)
    if count == 0:
        return math.nan, math.nan
    mean = compensated_mean(values)
    if count < 2:
        return mean, 0.0
    variance = math.fsum((v - mean) ** 2 for v in values) / (count - 1)
    return mean, math.sqrt(variance / count)
