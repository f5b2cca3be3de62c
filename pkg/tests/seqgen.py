"""Synthetic frame-sequence builders used across the test suite.

All generators are seeded and deterministic. Frames are numpy arrays of
shape (height, width) holding integer intensities in [0, levels).
"""

import numpy as np

# Shared geometry for the teleport/static scenario.
SCENE_H = 64
SCENE_W = 64
SCENE_LEVELS = 20
NOISE_AMPLITUDE = 1  # one level = 5% of 20 levels
OBJECT_VALUE = 17
OBJECT_ROWS = slice(8, 56)
OBJECT_COLS_LEFT = slice(0, 32)
OBJECT_COLS_RIGHT = slice(32, 64)


def textured_background(seed=101, h=SCENE_H, w=SCENE_W, levels=SCENE_LEVELS):
    rng = np.random.default_rng(seed)
    return rng.integers(0, levels, size=(h, w), dtype=np.int64)


def _with_object(background, cols):
    scene = background.copy()
    scene[OBJECT_ROWS, cols] = OBJECT_VALUE
    return scene


def _noisy(scene, rng, levels=SCENE_LEVELS, amplitude=NOISE_AMPLITUDE):
    noise = rng.integers(-amplitude, amplitude + 1, size=scene.shape)
    return np.clip(scene + noise, 0, levels - 1)


def teleport_sequence(seed=101, n_frames=20):
    """First half: object at the left, clean. Second half: object jumped to
    the right, with fresh per-pixel noise on every frame."""
    background = textured_background(seed)
    scene_a = _with_object(background, OBJECT_COLS_LEFT)
    scene_b = _with_object(background, OBJECT_COLS_RIGHT)
    rng = np.random.default_rng(seed + 1)
    half = n_frames // 2
    frames = [scene_a.copy() for _ in range(half)]
    frames += [_noisy(scene_b, rng) for _ in range(n_frames - half)]
    return frames


def static_sequence(seed=101, n_frames=20):
    """Same scene as the first half of the teleport sequence, object never
    moves; only per-pixel noise varies between frames."""
    background = textured_background(seed)
    scene_a = _with_object(background, OBJECT_COLS_LEFT)
    rng = np.random.default_rng(seed + 2)
    return [_noisy(scene_a, rng) for _ in range(n_frames)]


def half_split_vertical(size=8):
    """Left half 0, right half 1."""
    frame = np.zeros((size, size), dtype=np.int64)
    frame[:, size // 2 :] = 1
    return frame


def half_split_horizontal(size=8):
    """Top half 0, bottom half 1."""
    frame = np.zeros((size, size), dtype=np.int64)
    frame[size // 2 :, :] = 1
    return frame


def checkerboard(size=8):
    rows = np.arange(size)[:, None]
    cols = np.arange(size)[None, :]
    return ((rows + cols) % 2).astype(np.int64)
