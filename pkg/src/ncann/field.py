"""Arithmetic in the prime fields GF(p), p in {2, 3, 5, 7}.

Field scalars are plain ints kept in ``range(p)``.
"""

from .errors import FieldError

SUPPORTED_PRIMES = (2, 3, 5, 7)


def check_prime(p: int) -> int:
    if p not in SUPPORTED_PRIMES:
        raise FieldError(f"characteristic {p} is not a supported prime {SUPPORTED_PRIMES}")
    return p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(%d)" % p)
    return pow(a, p - 2, p)


def neg(a: int, p: int) -> int:
    return (-a) % p
