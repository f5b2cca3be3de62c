import numpy as np
import pytest
from PIL import Image

from changerank import GrayFrame

# One verdict line per acceptance criterion, echoed after the run summary so
# the pass/fail record is visible without -s or -rA.
ACCEPTANCE_LINES: list[str] = []


def record_verdict(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)


def as_gray_frames(arrays, levels):
    """Wrap raw (h, w) integer arrays as GrayFrames."""
    return [GrayFrame.from_array(np.asarray(a, dtype=np.int64), levels) for a in arrays]


def write_png_dir(directory, arrays, names=None):
    """Write grayscale arrays as PNG stills into a directory."""
    directory.mkdir(parents=True, exist_ok=True)
    if names is None:
        names = [f"frame_{i:03d}.png" for i in range(len(arrays))]
    for name, arr in zip(names, arrays):
        Image.fromarray(np.asarray(arr, dtype=np.uint8), "L").save(directory / name)
    return directory


def write_gif(path, arrays, duration=100):
    """Write grayscale arrays as one animated GIF."""
    images = [Image.fromarray(np.asarray(a, dtype=np.uint8), "L") for a in arrays]
    images[0].save(
        path, save_all=True, append_images=images[1:], duration=duration, loop=0
    )
    return path


@pytest.fixture
def png_dir_factory(tmp_path):
    counter = [0]

    def factory(arrays, names=None):
        counter[0] += 1
        return write_png_dir(tmp_path / f"seq{counter[0]}", arrays, names)

    return factory


@pytest.fixture
def gif_factory(tmp_path):
    counter = [0]

    def factory(arrays):
        counter[0] += 1
        return write_gif(tmp_path / f"anim{counter[0]}.gif", arrays)

    return factory
