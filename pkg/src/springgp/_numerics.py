"""Log-domain helpers for the extreme exponents (1/n, 6/n, ...) that small n produces."""
import math


def pos_pow(x, p):
    """Return x**p for x >= 0 evaluated as exp(p*ln x).

    x == 0 gives 0 for p > 0. Overflow saturates to inf rather than raising.
    """
    if x < 0:
        raise ValueError(f"pos_pow requires x >= 0, got {x!r}")
    if x == 0:
        if p > 0:
            return 0.0
        if p == 0:
            return 1.0
        return math.inf
    e = p * math.log(x)
    if e > 709.0:
        return math.inf
    return math.exp(e)


def safe_exp(e):
    """exp that saturates to inf instead of raising OverflowError."""
    if e > 709.0:
        return math.inf
    return math.exp(e)
