"""Decode image sequences into quantized grayscale frames.

Sources are either a single animated image file (GIF) or a directory of
still frames taken in lexicographic filename order. Each decoded frame goes
through the same pipeline: grayscale conversion with BT.601 luma weights,
box-filter downscaling, then quantization to the configured intensity level
count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from PIL import Image, ImageSequence, UnidentifiedImageError

__all__ = [
    "SequenceDecodeError",
    "GrayFrame",
    "SourceKind",
    "SequenceSource",
    "PreprocessConfig",
    "LUMA_WEIGHTS",
    "STILL_EXTENSIONS",
    "decode_sequence",
    "to_grayscale",
    "downscale",
    "quantize",
]

# ITU-R BT.601 luma coefficients for (r, g, b).
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

STILL_EXTENSIONS = {".png", ".jpg", ".jpeg", ".bmp", ".gif"}


class SequenceDecodeError(RuntimeError):
    """A sequence source could not be turned into a usable frame list."""


@dataclass(frozen=True, eq=False)
class GrayFrame:
    """A quantized grayscale raster.

    pixels is a row-major (height, width) integer array with every value in
    [0, levels).
    """

    width: int
    height: int
    levels: int
    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"frame dimensions must be positive, got {self.width}x{self.height}")
        if self.levels < 1:
            raise ValueError(f"levels must be positive, got {self.levels}")
        if self.pixels.shape != (self.height, self.width):
            raise ValueError(
                f"pixel array shape {self.pixels.shape} does not match "
                f"{self.height}x{self.width}"
            )
        if not np.issubdtype(self.pixels.dtype, np.integer):
            raise ValueError(f"pixels must be integers, got dtype {self.pixels.dtype}")
        lo, hi = int(self.pixels.min()), int(self.pixels.max())
        if lo < 0 or hi >= self.levels:
            raise ValueError(f"pixel values [{lo}, {hi}] fall outside [0, {self.levels})")

    @classmethod
    def from_array(cls, pixels, levels: int) -> "GrayFrame":
        arr = np.asarray(pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d pixel array, got {arr.ndim} dimensions")
        h, w = arr.shape
        return cls(width=w, height=h, levels=levels, pixels=arr)


class SourceKind(Enum):
    ANIMATED_IMAGE_FILE = "animated-image-file"
    FRAME_DIRECTORY = "frame-directory"


@dataclass(frozen=True)
class SequenceSource:
    """A labeled, resolvable origin for one frame sequence."""

    id: str
    kind: SourceKind
    path: Path

    @classmethod
    def from_path(cls, path, id: str | None = None) -> "SequenceSource":
        p = Path(path)
        kind = SourceKind.FRAME_DIRECTORY if p.is_dir() else SourceKind.ANIMATED_IMAGE_FILE
        return cls(id=id if id is not None else str(path), kind=kind, path=p)


@dataclass(frozen=True)
class PreprocessConfig:
    """How raw frames become analysis-ready grayscale rasters."""

    scale_factor: float = 1.0
    levels: int = 256
    grayscale_weights: tuple[float, float, float] = LUMA_WEIGHTS

    def __post_init__(self) -> None:
        if not 0.0 < self.scale_factor <= 1.0:
            raise ValueError(f"scale_factor must be in (0, 1], got {self.scale_factor}")
        if not 2 <= self.levels <= 65536:
            raise ValueError(f"levels must be in [2, 65536], got {self.levels}")


def to_grayscale(rgb, weights: tuple[float, float, float] = LUMA_WEIGHTS) -> np.ndarray:
    """Luma of 8-bit (r, g, b) values: round(wr*r + wg*g + wb*b), in [0, 255].

    Accepts any array whose last axis holds the three channels; the result
    drops that axis.
    """
    arr = np.asarray(rgb, dtype=np.float64)
    if arr.shape[-1] != 3:
        raise ValueError(f"expected 3 channels on the last axis, got shape {arr.shape}")
    luma = arr @ np.asarray(weights, dtype=np.float64)
    return np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8)


def _overlap_weights(n_src: int, n_out: int) -> np.ndarray:
    """Row i holds the overlap length of output box i with each source cell.

    Output box i covers the real interval [i*b, (i+1)*b) with b = n_src/n_out.
    """
    box = n_src / n_out
    weights = np.zeros((n_out, n_src), dtype=np.float64)
    for i in range(n_out):
        start = i * box
        end = (i + 1) * box
        k0 = int(math.floor(start))
        k1 = min(n_src, int(math.ceil(end)))
        for k in range(k0, k1):
            w = min(end, k + 1) - max(start, k)
            if w > 0:
                weights[i, k] = w
    return weights


def downscale(frame: GrayFrame, scale_factor: float) -> GrayFrame:
    """Box-filter (area averaging) downscale.

    Output dimensions are max(1, floor(dim * scale_factor)); each output
    pixel is the rounded area-weighted mean of its source box. A factor of
    1.0 returns the frame unchanged.
    """
    if not 0.0 < scale_factor <= 1.0:
        raise ValueError(f"scale_factor must be in (0, 1], got {scale_factor}")
    if scale_factor == 1.0:
        return frame
    out_h = max(1, math.floor(frame.height * scale_factor))
    out_w = max(1, math.floor(frame.width * scale_factor))
    w_rows = _overlap_weights(frame.height, out_h)
    w_cols = _overlap_weights(frame.width, out_w)
    box_area = (frame.height / out_h) * (frame.width / out_w)
    means = w_rows @ frame.pixels.astype(np.float64) @ w_cols.T / box_area
    pixels = np.floor(means + 0.5).astype(frame.pixels.dtype)
    return GrayFrame(width=out_w, height=out_h, levels=frame.levels, pixels=pixels)


def quantize(frame: GrayFrame, levels: int) -> GrayFrame:
    """Map a 256-level frame onto levels bins: bin = floor(v * levels / 256)."""
    if frame.levels != 256:
        raise ValueError(f"quantize expects a 256-level frame, got {frame.levels}")
    if not 2 <= levels <= 256:
        raise ValueError(f"levels must be in [2, 256] for 8-bit sources, got {levels}")
    if levels == 256:
        return frame
    pixels = ((frame.pixels.astype(np.int64) * levels) >> 8).astype(np.uint8)
    return GrayFrame(width=frame.width, height=frame.height, levels=levels, pixels=pixels)


def _preprocess(rgb: np.ndarray, cfg: PreprocessConfig) -> GrayFrame:
    gray = to_grayscale(rgb, cfg.grayscale_weights)
    frame = GrayFrame.from_array(gray, levels=256)
    frame = downscale(frame, cfg.scale_factor)
    return quantize(frame, cfg.levels)


def _iter_directory_frames(path: Path):
    names = sorted(
        p.name for p in path.iterdir()
        if p.is_file() and p.suffix.lower() in STILL_EXTENSIONS
    )
    for name in names:
        try:
            with Image.open(path / name) as im:
                yield name, np.asarray(im.convert("RGB"))
        except (UnidentifiedImageError, OSError, ValueError) as exc:
            raise SequenceDecodeError(f"cannot decode frame {name!r}: {exc}") from exc


def _iter_animated_frames(path: Path):
    try:
        with Image.open(path) as im:
            # Pillow composites each frame onto the prior canvas while
            # seeking, so partial-update frames come out whole.
            for index, frame in enumerate(ImageSequence.Iterator(im)):
                try:
                    yield f"frame {index}", np.asarray(frame.convert("RGB"))
                except (OSError, ValueError) as exc:
                    raise SequenceDecodeError(
                        f"cannot decode frame {index} of {path.name!r}: {exc}"
                    ) from exc
    except (UnidentifiedImageError, OSError) as exc:
        raise SequenceDecodeError(f"cannot decode {path}: {exc}") from exc


def decode_sequence(src: SequenceSource, cfg: PreprocessConfig) -> list[GrayFrame]:
    """Decode, preprocess, and validate one frame sequence.

    Frames come back in temporal order (native frame order for animated
    files, lexicographic filename order for directories) with identical
    dimensions and levels. Any undecodable frame aborts the sequence with a
    diagnostic naming it.
    """
    if not src.path.exists():
        raise SequenceDecodeError(f"sequence source does not exist: {src.path}")
    if src.kind is SourceKind.FRAME_DIRECTORY:
        frame_iter = _iter_directory_frames(src.path)
    else:
        frame_iter = _iter_animated_frames(src.path)

    frames: list[GrayFrame] = []
    for name, rgb in frame_iter:
        frame = _preprocess(rgb, cfg)
        if frames:
            first = frames[0]
            if (frame.width, frame.height) != (first.width, first.height):
                raise SequenceDecodeError(
                    f"{name} decodes to {frame.width}x{frame.height}, expected "
                    f"{first.width}x{first.height} ({src.path})"
                )
        frames.append(frame)
    if not frames:
        raise SequenceDecodeError(f"no decodable frames in {src.path}")
    return frames
