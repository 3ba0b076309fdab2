"""Bit-plane watermarking: embed a signature bit plane in a cover image,
simulate attacks, score robustness, and pick the best plane pair."""

from bpwm._core import (
    apply_attack,
    crc,
    decompose,
    default_battery,
    embed,
    evaluate,
    extract_plane,
    mse,
    presets,
    pseudorandom_plane,
    psnr,
    read_pgm,
    recompose,
    sweep,
    weighted_crc,
    write_pgm,
)
from bpwm._core import ConfigError, FileIoError, PgmDecodeError, __version__

__all__ = [
    "ConfigError",
    "FileIoError",
    "PgmDecodeError",
    "__version__",
    "apply_attack",
    "crc",
    "decompose",
    "default_battery",
    "embed",
    "evaluate",
    "extract_plane",
    "mse",
    "presets",
    "pseudorandom_plane",
    "psnr",
    "read_pgm",
    "recompose",
    "sweep",
    "weighted_crc",
    "write_pgm",
]
