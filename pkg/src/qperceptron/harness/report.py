import math

from ..errors import DomainError

_LOGS = {2: math.log2, "2": math.log2, "e": math.log, 10: math.log10, "10": math.log10}


def speedup_report(n, log_base=2):
    """Classical-over-quantum SVD cost ratio ``N^3 / (N log N) = N^2 / log N``."""
    if log_base not in _LOGS:
        raise DomainError(f"log base must be 2, 'e' or 10, got {log_base!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise DomainError(f"N must be an integer >= 2, got {n!r}")
    return n * n / _LOGS[log_base](n)
