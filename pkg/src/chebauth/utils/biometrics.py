"""Biometric vector files and synthetic readings."""

from pathlib import Path
from random import Random

from chebauth.crypto.fuzzy import apply_block_noise, random_vector
from chebauth.errors import ParameterError
from chebauth.models.biometric import BiometricVector
from chebauth.models.params import CodeParams


def read_bio(path: Path, code: CodeParams) -> BiometricVector:
    """
    Read an N-bit vector stored as hex text or as raw packed bytes.

    A file of exactly ceil(N/8) bytes is taken as raw; anything else must be hex.

    Raises:
        ParameterError: If the file does not hold exactly N bits
    """
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise ParameterError(f"cannot read biometric file {path}: {e}") from e

    if len(data) == code.n_bytes:
        return BiometricVector(bits=data, n_bits=code.n)
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise ParameterError(
            f"{path}: {len(data)} bytes is neither hex nor {code.n_bytes} raw bytes"
        ) from e
    return BiometricVector.from_hex(text, code.n)


def write_bio(path: Path, vector: BiometricVector, raw: bool = False) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if raw:
        path.write_bytes(vector.bits)
    else:
        path.write_text(vector.to_hex() + "\n", encoding="ascii")
    return path


def genbio(
    code: CodeParams,
    rng: Random,
    base: BiometricVector | None = None,
    noise: int = 0,
) -> BiometricVector:
    """
    A fresh random vector, or a noisy reading of ``base``.

    Args:
        code: Code parameters (fixes N)
        rng: Random source
        base: Vector to perturb; a random one is drawn when omitted
        noise: Bit flips per r-bit block

    Returns:
        The generated vector
    """
    vector = base if base is not None else random_vector(code, rng)
    if noise:
        vector = apply_block_noise(vector, noise, code, rng)
    return vector
