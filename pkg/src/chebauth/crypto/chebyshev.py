"""Chebyshev polynomial arithmetic over Z_p.

Over a prime field the polynomials T_n satisfy the composition law
T_r(T_s(x)) = T_rs(x) = T_s(T_r(x)) (mod p), which gives a
Diffie-Hellman style trapdoor: recovering n from T_n(x) is assumed hard.
"""

from functools import lru_cache
from random import Random

from sympy import isprime

from chebauth.errors import ParameterError

# 2^255 - 19
DEFAULT_PRIME = (1 << 255) - 19

FIELD_BYTES = 32
DEGREE_BITS = 255
MIN_DEGREE = 2


@lru_cache(maxsize=64)
def is_valid_modulus(p: int) -> bool:
    """Check that p is a prime larger than 3."""
    return p > 3 and bool(isprime(p))


def _check_args(n: int, x: int, p: int) -> None:
    if not is_valid_modulus(p):
        raise ParameterError(f"modulus must be a prime > 3, got {p}")
    if not 0 <= x < p:
        raise ParameterError("field element out of range [0, p)")
    if n < 0:
        raise ParameterError(f"degree must be non-negative, got {n}")


def cheb_eval(n: int, x: int, p: int) -> int:
    """
    Evaluate T_n(x) mod p in O(log n) multiplications.

    Walks the bits of n from the top keeping the pair (T_k, T_{k+1}) and
    applies the doubling identities

        T_2k   = 2 T_k^2 - 1
        T_2k+1 = 2 T_k T_k+1 - x

    Args:
        n: Polynomial degree (>= 0)
        x: Field element in [0, p)
        p: Prime modulus > 3

    Returns:
        T_n(x) mod p

    Raises:
        ParameterError: If p is not a prime > 3 or x is out of range
    """
    _check_args(n, x, p)

    lo, hi = 1, x  # (T_0, T_1)
    for bit in bin(n)[2:] if n else "":
        cross = (2 * lo * hi - x) % p
        if bit == "1":
            lo, hi = cross, (2 * hi * hi - 1) % p
        else:
            lo, hi = (2 * lo * lo - 1) % p, cross
    return lo % p


def cheb_eval_naive(n: int, x: int, p: int) -> int:
    """Evaluate T_n(x) mod p by iterating the three-term recurrence. Test oracle only."""
    _check_args(n, x, p)

    prev, cur = 1, x % p
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, (2 * x * cur - prev) % p
    return cur


def random_degree(rng: Random) -> int:
    """Sample a secret degree uniformly from [2, 2^255)."""
    return rng.randrange(MIN_DEGREE, 1 << DEGREE_BITS)


def server_keygen(p: int, rng: Random) -> tuple[int, int, int]:
    """
    Generate a per-user base point and the server trapdoor.

    Args:
        p: Prime modulus
        rng: Random source (``secrets.SystemRandom()`` in production)

    Returns:
        Tuple of (s, x_s, spub) with spub = T_{x_s}(s) mod p
    """
    if not is_valid_modulus(p):
        raise ParameterError(f"modulus must be a prime > 3, got {p}")

    s = rng.randrange(p)
    x_s = random_degree(rng)
    return s, x_s, cheb_eval(x_s, s, p)


def field_to_bytes(value: int) -> bytes:
    """Serialize a field element (or any value < 2^256) as 32 big-endian bytes."""
    if not 0 <= value < 1 << (8 * FIELD_BYTES):
        raise ParameterError("value does not fit in 32 bytes")
    return value.to_bytes(FIELD_BYTES, "big")


def field_from_bytes(data: bytes) -> int:
    if len(data) != FIELD_BYTES:
        raise ParameterError(f"expected {FIELD_BYTES} bytes, got {len(data)}")
    return int.from_bytes(data, "big")
