"""Code-offset secure sketch and fuzzy extractor over binary biometric vectors.

The sketch publishes ``w XOR C(m)`` for a random codeword ``C(m)``; a
reading ``w'`` close to ``w`` is corrected by decoding ``w' XOR sketch``
back to ``m``. The extractor hashes the recovered ``w`` together with a
public seed and the password into a 32-byte key.
"""

from abc import ABC, abstractmethod
from random import Random
from typing import NewType

import numpy as np

from chebauth.crypto.hashing import h
from chebauth.errors import ParameterError
from chebauth.models.biometric import SEED_BYTES, BiometricVector, HelperData
from chebauth.models.params import CodeParams

BioKey = NewType("BioKey", bytes)

KEY_BYTES = 32


class ErrorCorrectingCode(ABC):
    """Binary code used by the sketch. Encodes k-bit messages into N-bit codewords."""

    @abstractmethod
    def encode(self, message: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def decode(self, word: np.ndarray) -> np.ndarray:
        """Return the message of the nearest codeword."""
        pass


class RepetitionCode(ErrorCorrectingCode):
    """Each message bit repeated r times; majority decoding per r-bit block."""

    def __init__(self, params: CodeParams):
        self.params = params

    def encode(self, message: np.ndarray) -> np.ndarray:
        return np.repeat(message.astype(np.uint8), self.params.r)

    def decode(self, word: np.ndarray) -> np.ndarray:
        blocks = word.reshape(self.params.k, self.params.r)
        return (blocks.sum(axis=1) > self.params.t).astype(np.uint8)


def _check_length(w: BiometricVector, params: CodeParams, what: str = "biometric") -> None:
    if w.n_bits != params.n:
        raise ParameterError(f"{what} has {w.n_bits} bits, expected N={params.n}")


def _random_message(params: CodeParams, rng: Random) -> np.ndarray:
    value = rng.getrandbits(params.k)
    return np.array([(value >> (params.k - 1 - i)) & 1 for i in range(params.k)], dtype=np.uint8)


def xor_vectors(a: BiometricVector, b: BiometricVector) -> BiometricVector:
    if a.n_bits != b.n_bits:
        raise ParameterError("vectors differ in length")
    return BiometricVector.from_array(a.array() ^ b.array())


def hamming_distance(a: BiometricVector, b: BiometricVector) -> int:
    return int(np.count_nonzero(a.array() != b.array()))


def ss_sketch(w: BiometricVector, params: CodeParams, rng: Random) -> BiometricVector:
    """Secure sketch: w XOR C(m) for a uniformly random message m."""
    _check_length(w, params)
    codeword = RepetitionCode(params).encode(_random_message(params, rng))
    return BiometricVector.from_array(w.array() ^ codeword)


def ss_recover(
    w_prime: BiometricVector, sketch: BiometricVector, params: CodeParams
) -> BiometricVector:
    """
    Recover the enrolled vector from a noisy reading.

    Exact whenever every r-bit block of w' differs from w in at most t
    positions. Beyond that the result is silently wrong; the protocol's
    proof check is what rejects it.
    """
    _check_length(w_prime, params)
    _check_length(sketch, params, "sketch")

    code = RepetitionCode(params)
    offset = sketch.array()
    message = code.decode(w_prime.array() ^ offset)
    return BiometricVector.from_array(code.encode(message) ^ offset)


def _extract(w: BiometricVector, pw: bytes, seed: bytes) -> BioKey:
    return BioKey(h(seed, w.bits, pw)[:KEY_BYTES])


def fe_gen(
    w: BiometricVector, pw: bytes, params: CodeParams, rng: Random
) -> tuple[BioKey, HelperData]:
    """
    Fuzzy extractor generation.

    Args:
        w: Enrolled biometric
        pw: Password, bound into the key (not the sketch)
        params: Code parameters
        rng: Random source for the codeword and the seed

    Returns:
        Tuple of (key, helper data)
    """
    if not pw:
        raise ParameterError("password must not be empty")
    _check_length(w, params)

    sketch = ss_sketch(w, params, rng)
    hd = HelperData(sketch=sketch, seed=rng.randbytes(SEED_BYTES), code=params)
    return _extract(w, pw, hd.seed), hd


def fe_rep(
    w_prime: BiometricVector, pw: bytes, hd: HelperData, params: CodeParams | None = None
) -> tuple[BioKey, BiometricVector]:
    """Fuzzy extractor reproduction. Returns the key and the reconstructed vector."""
    params = params or hd.code
    if params != hd.code:
        raise ParameterError("helper data was built with different code parameters")

    w = ss_recover(w_prime, hd.sketch, params)
    return _extract(w, pw, hd.seed), w


def mask_expand(key: bytes, n_bits: int) -> BiometricVector:
    """Deterministic n_bits stream of H(key || counter) blocks, counter from 0."""
    if n_bits <= 0:
        raise ParameterError("mask length must be positive")

    blocks = (n_bits + 255) // 256
    stream = b"".join(h(key, i.to_bytes(4, "big")) for i in range(blocks))
    bits = np.unpackbits(np.frombuffer(stream, dtype=np.uint8))[:n_bits]
    return BiometricVector.from_array(bits)


def mask_template(w: BiometricVector, key: bytes) -> BiometricVector:
    """BB = w XOR mask_expand(K, N)."""
    return xor_vectors(w, mask_expand(key, w.n_bits))


def random_vector(params: CodeParams, rng: Random) -> BiometricVector:
    raw = np.frombuffer(rng.randbytes(params.n_bytes), dtype=np.uint8)
    return BiometricVector.from_array(np.unpackbits(raw)[: params.n])


def apply_block_noise(
    w: BiometricVector, flips_per_block: int, params: CodeParams, rng: Random
) -> BiometricVector:
    """Flip exactly ``flips_per_block`` distinct bits inside every r-bit block."""
    _check_length(w, params)
    if not 0 <= flips_per_block <= params.r:
        raise ParameterError(f"flips per block must be in [0, {params.r}]")

    bits = w.array().copy()
    for block in range(params.k):
        for pos in rng.sample(range(params.r), flips_per_block):
            bits[block * params.r + pos] ^= 1
    return BiometricVector.from_array(bits)


def flip_in_block(
    w: BiometricVector, block: int, flips: int, params: CodeParams
) -> BiometricVector:
    """Flip the first ``flips`` bits of one block. Used to push a block past capacity."""
    bits = w.array().copy()
    start = block * params.r
    bits[start : start + flips] ^= 1
    return BiometricVector.from_array(bits)
