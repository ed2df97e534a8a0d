"""RGB image <-> pure quaternion conversion, masks, and quality metrics.

A pixel (R, G, B) maps to the pure quaternion R i + G j + B k with channel
values kept on the 0..255 scale.  Masks are dense 0/1 matrices where one
entry governs all three channels of a pixel.
"""

import math
from dataclasses import dataclass

import numpy as np
from PIL import Image
from scipy.signal import convolve2d

PEAK = 255.0

# SSIM constants: 11x11 Gaussian window, sigma 1.5, K1/K2 from the standard
# definition, dynamic range 255.
_SSIM_C1 = (0.01 * PEAK) ** 2
_SSIM_C2 = (0.03 * PEAK) ** 2
_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5


@dataclass(frozen=True)
class MetricReport:
    """PSNR in dB (math.inf for identical images) and mean SSIM in [-1, 1]."""

    psnr_db: float
    ssim: float


def image_to_quaternion(img) -> np.ndarray:
    """Encode an (H, W, 3) RGB array as an (H, W, 4) pure quaternion matrix."""
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) RGB array, got {img.shape}")
    out = np.zeros(img.shape[:2] + (4,), dtype=np.float64)
    out[..., 1:] = img
    return out


def quaternion_to_image(A) -> np.ndarray:
    """Decode to 8-bit RGB: real parts dropped, channels clamped and rounded
    half-to-even."""
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 3 or A.shape[2] != 4:
        raise ValueError(f"expected an (H, W, 4) quaternion matrix, got {A.shape}")
    channels = np.clip(A[..., 1:], 0.0, PEAK)
    return np.rint(channels).astype(np.uint8)


def gen_mask(rows: int, cols: int, sr: float, seed: int) -> np.ndarray:
    """0/1 mask with exactly floor(sr * rows * cols) observed entries,
    placed by a seeded uniform shuffle."""
    if not 0.0 <= sr <= 1.0:
        raise ValueError("sampling rate must lie in [0, 1]")
    total = rows * cols
    k = int(math.floor(sr * total))
    rng = np.random.default_rng(seed)
    mask = np.zeros(total, dtype=np.float64)
    mask[rng.permutation(total)[:k]] = 1.0
    return mask.reshape(rows, cols)


def psnr(ref, test) -> float:
    """Peak signal-to-noise ratio over all pixels and channels, peak 255."""
    ref = np.asarray(ref, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if ref.shape != test.shape:
        raise ValueError(f"image shapes differ: {ref.shape} vs {test.shape}")
    mse = np.mean((ref - test) ** 2)
    if mse == 0.0:
        return math.inf
    return float(10.0 * np.log10(PEAK * PEAK / mse))


def _gaussian_window(size: int, sigma: float) -> np.ndarray:
    half = (size - 1) / 2.0
    coords = np.arange(size) - half
    g = np.exp(-(coords**2) / (2.0 * sigma**2))
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def _ssim_channel(x: np.ndarray, y: np.ndarray, window: np.ndarray) -> float:
    mu_x = convolve2d(x, window, mode="valid")
    mu_y = convolve2d(y, window, mode="valid")
    var_x = convolve2d(x * x, window, mode="valid") - mu_x * mu_x
    var_y = convolve2d(y * y, window, mode="valid") - mu_y * mu_y
    cov = convolve2d(x * y, window, mode="valid") - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + _SSIM_C1) * (2.0 * cov + _SSIM_C2)
    den = (mu_x * mu_x + mu_y * mu_y + _SSIM_C1) * (var_x + var_y + _SSIM_C2)
    return float(np.mean(num / den))


def ssim(ref, test) -> float:
    """Mean structural similarity, computed per channel and averaged."""
    ref = np.asarray(ref, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if ref.shape != test.shape:
        raise ValueError(f"image shapes differ: {ref.shape} vs {test.shape}")
    if ref.ndim != 3 or ref.shape[2] != 3:
        raise ValueError("ssim expects (H, W, 3) RGB arrays")
    if min(ref.shape[:2]) < _SSIM_WINDOW:
        raise ValueError(f"images must be at least {_SSIM_WINDOW} pixels per side")
    window = _gaussian_window(_SSIM_WINDOW, _SSIM_SIGMA)
    return float(np.mean([_ssim_channel(ref[..., c], test[..., c], window)
                          for c in range(3)]))


def compare_images(ref, test) -> MetricReport:
    return MetricReport(psnr_db=psnr(ref, test), ssim=ssim(ref, test))


def load_image(path) -> np.ndarray:
    """Read an image file as an (H, W, 3) uint8 RGB array."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def save_image(path, img) -> None:
    img = np.asarray(img, dtype=np.uint8)
    Image.fromarray(img, mode="RGB").save(path)


def save_mask(path, W) -> None:
    """Write a mask as single-channel PNG: 0 = missing, 255 = observed."""
    W = np.asarray(W)
    Image.fromarray((W > 0).astype(np.uint8) * 255, mode="L").save(path)


def load_mask(path) -> np.ndarray:
    with Image.open(path) as img:
        arr = np.asarray(img.convert("L"))
    return (arr >= 128).astype(np.float64)


def synthetic_test_image(height: int = 300, width: int = 300) -> np.ndarray:
    """Deterministic RGB test scene: smooth color gradients plus a few
    geometric shapes, giving an approximately low-rank image with edges."""
    y, x = np.mgrid[0:height, 0:width]
    xs = x / max(width - 1, 1)
    ys = y / max(height - 1, 1)

    r = 120 + 70 * np.sin(2.4 * np.pi * xs) + 45 * np.cos(1.7 * np.pi * ys)
    g = 110 + 65 * np.cos(1.9 * np.pi * xs + 0.8) + 50 * np.sin(2.6 * np.pi * ys)
    b = 128 + 60 * np.sin(1.3 * np.pi * (xs + ys)) + 35 * np.cos(3.1 * np.pi * ys)

    disk = (xs - 0.32) ** 2 + (ys - 0.38) ** 2 < 0.04
    r = np.where(disk, 235.0, r)
    g = np.where(disk, 90.0, g)
    box = (xs > 0.58) & (xs < 0.86) & (ys > 0.55) & (ys < 0.8)
    b = np.where(box, 225.0, b)
    g = np.where(box, g + 40.0, g)

    img = np.stack([r, g, b], axis=-1)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)
