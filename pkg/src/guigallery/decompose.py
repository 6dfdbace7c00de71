"""Turn screenshots into component records.

Annotated runtime screenshots are wirified straight from their metadata;
introduction screenshots go through a Detector. Both fill color profiles
from the cropped pixels and text from an OcrEngine. Also here: the
augmentation that rescales/offsets an annotated screenshot onto a poster
canvas, and the deterministic test doubles (uniform-rectangle detector,
sidecar OCR) that stand in for a trained model and a real OCR engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Protocol, Sequence

import numpy as np
from PIL import Image

from guigallery.colors import ColorThresholds, DEFAULT_THRESHOLDS, dominant_color
from guigallery.ingest import OCR_SIDECAR_SUFFIX
from guigallery.model import (
    BoundingBox,
    ComponentClass,
    ComponentRecord,
    ComponentSource,
    Detection,
    ScreenshotKind,
    ScreenshotRecord,
)

DEFAULT_MIN_CONFIDENCE = 0.5


def load_image(path: Path | str) -> np.ndarray:
    """Read an image file as (h, w, 3) uint8 RGB."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"))


def save_image(pixels: np.ndarray, path: Path | str) -> None:
    Image.fromarray(pixels, mode="RGB").save(path)


def crop(image: np.ndarray, box: BoundingBox) -> np.ndarray:
    return image[box.y : box.y2, box.x : box.x2]


@dataclass(frozen=True)
class ImageRegion:
    """A cropped region handed to OCR: pixels plus, when the image lives on
    disk, its source path and location within it."""

    pixels: np.ndarray
    box: BoundingBox
    source: Optional[Path] = None


class OcrEngine(Protocol):
    def read(self, region: ImageRegion) -> str: ...


class NullOcr:
    """OCR double that reads nothing."""

    def read(self, region: ImageRegion) -> str:
        return ""


class SidecarOcr:
    """Deterministic OCR double for synthetic images.

    Text is not rasterized into synthetic screenshots; instead a sidecar
    file `<image>.ocr.json` lists entries {x, y, w, h, text}. Reading a
    region returns the text of every entry whose box lies inside it, in
    sidecar order. Real OCR engines plug in through the same protocol.
    """

    def read(self, region: ImageRegion) -> str:
        if region.source is None:
            return ""
        sidecar = Path(str(region.source) + OCR_SIDECAR_SUFFIX)
        if not sidecar.is_file():
            return ""
        entries = json.loads(sidecar.read_text(encoding="utf-8"))
        found = []
        for entry in entries:
            inside = (
                entry["x"] >= region.box.x
                and entry["y"] >= region.box.y
                and entry["x"] + entry["w"] <= region.box.x2
                and entry["y"] + entry["h"] <= region.box.y2
            )
            if inside:
                found.append(str(entry["text"]))
        return " ".join(found)


def write_ocr_sidecar(image_path: Path | str, entries: Sequence[dict]) -> None:
    Path(str(image_path) + OCR_SIDECAR_SUFFIX).write_text(
        json.dumps(list(entries)), encoding="utf-8"
    )


class Detector(Protocol):
    def detect(self, image: np.ndarray) -> list[Detection]: ...


class DetectorError(Exception):
    """A detector failed or produced detections violating its contract."""


def wirify_annotated(
    screenshot: ScreenshotRecord,
    image: np.ndarray,
    ocr: OcrEngine,
    *,
    source: Optional[Path] = None,
    thresholds: ColorThresholds = DEFAULT_THRESHOLDS,
) -> list[ComponentRecord]:
    """One ComponentRecord per ground-truth annotation, with color and text
    filled from the cropped region. Records get confidence 1.0."""
    if screenshot.kind is not ScreenshotKind.ANNOTATED_RUNTIME:
        raise ValueError(
            f"screenshot {screenshot.screenshot_id} is not an annotated runtime dump"
        )
    records = []
    for i, (cls, box) in enumerate(screenshot.components or ()):
        region = crop(image, box)
        records.append(
            ComponentRecord(
                component_id=f"{screenshot.screenshot_id}-m{i:03d}",
                screenshot_id=screenshot.screenshot_id,
                app_id=screenshot.app_id,
                component_class=cls,
                box=box,
                color=dominant_color(region, thresholds),
                text=ocr.read(ImageRegion(region, box, source)),
                source=ComponentSource.METADATA,
                confidence=1.0,
            )
        )
    return records


def decompose_intro(
    screenshot: ScreenshotRecord,
    image: np.ndarray,
    detector: Detector,
    ocr: OcrEngine,
    min_confidence: float = DEFAULT_MIN_CONFIDENCE,
    *,
    source: Optional[Path] = None,
    thresholds: ColorThresholds = DEFAULT_THRESHOLDS,
) -> list[ComponentRecord]:
    """Run the detector on an introduction screenshot and keep detections at
    or above min_confidence as ComponentRecords."""
    if screenshot.kind is not ScreenshotKind.APP_INTRODUCTION:
        raise ValueError(
            f"screenshot {screenshot.screenshot_id} is not an introduction screenshot"
        )
    try:
        detections = detector.detect(image)
    except Exception as exc:
        raise DetectorError(
            f"detector failed on screenshot {screenshot.screenshot_id}: {exc}"
        ) from exc
    height, width = image.shape[:2]
    for det in detections:
        if not det.box.fits_within(width, height):
            raise DetectorError(
                f"out-of-bounds detection on screenshot {screenshot.screenshot_id}: {det.box}"
            )
    kept = [d for d in detections if d.confidence >= min_confidence]
    records = []
    for i, det in enumerate(kept):
        region = crop(image, det.box)
        records.append(
            ComponentRecord(
                component_id=f"{screenshot.screenshot_id}-d{i:03d}",
                screenshot_id=screenshot.screenshot_id,
                app_id=screenshot.app_id,
                component_class=det.component_class,
                box=det.box,
                color=dominant_color(region, thresholds),
                text=ocr.read(ImageRegion(region, det.box, source)),
                source=ComponentSource.DETECTOR,
                confidence=det.confidence,
            )
        )
    return records


# --- uniform-rectangle stub detector ---------------------------------------

RectPredicate = Callable[[tuple[int, int, int], BoundingBox], bool]


@dataclass(frozen=True)
class RectRule:
    """Labels a found uniform rectangle: first rule whose predicate accepts
    (fill color, box) assigns its class; unmatched rectangles are ignored."""

    predicate: RectPredicate
    component_class: ComponentClass


def color_rule(rgb: tuple[int, int, int], cls: ComponentClass) -> RectRule:
    """Rule matching rectangles of exactly this fill color."""
    target = tuple(rgb)
    return RectRule(lambda color, box: color == target, cls)


# Fill palette for synthetic components, one saturated color per class.
CLASS_COLORS: dict[ComponentClass, tuple[int, int, int]] = {
    ComponentClass.BUTTON: (230, 28, 28),
    ComponentClass.IMAGE_BUTTON: (240, 130, 22),
    ComponentClass.CHECK_BOX: (235, 235, 32),
    ComponentClass.RADIO_BUTTON: (130, 240, 30),
    ComponentClass.SWITCH: (28, 205, 40),
    ComponentClass.TOGGLE_BUTTON: (22, 230, 140),
    ComponentClass.PROGRESS_BAR: (26, 230, 230),
    ComponentClass.RATING_BAR: (32, 130, 240),
    ComponentClass.SEEK_BAR: (36, 36, 245),
    ComponentClass.SPINNER: (140, 42, 240),
    ComponentClass.CHRONOMETER: (240, 44, 230),
}


def default_rules() -> list[RectRule]:
    return [color_rule(rgb, cls) for cls, rgb in CLASS_COLORS.items()]


class _UniformRectDetector:
    def __init__(self, rules: Sequence[RectRule], confidence: float):
        self._rules = list(rules)
        self._confidence = confidence

    def detect(self, image: np.ndarray) -> list[Detection]:
        from scipy import ndimage

        background = image[0, 0]
        mask = (image != background).any(axis=2)
        labels, count = ndimage.label(mask)
        detections = []
        for idx, slc in enumerate(ndimage.find_objects(labels), start=1):
            if slc is None:
                continue
            ys, xs = slc
            patch = image[ys, xs]
            fill = patch[0, 0]
            # Must be a filled rectangle of one color to count.
            if not (patch == fill).all():
                continue
            box = BoundingBox(xs.start, ys.start, xs.stop - xs.start, ys.stop - ys.start)
            color = (int(fill[0]), int(fill[1]), int(fill[2]))
            for rule in self._rules:
                if rule.predicate(color, box):
                    detections.append(
                        Detection(rule.component_class, box, self._confidence)
                    )
                    break
        detections.sort(key=lambda d: (d.box.y, d.box.x))
        return detections


def stub_detector(
    rules: Optional[Sequence[RectRule]] = None, *, confidence: float = 1.0
) -> Detector:
    """Deterministic detector double: finds axis-aligned uniform-color
    rectangles distinct from the background (color of pixel (0, 0)) and
    labels them by the first matching rule."""
    return _UniformRectDetector(rules if rules is not None else default_rules(), confidence)


# --- screenshot augmentation ------------------------------------------------

@dataclass(frozen=True)
class AugmentParams:
    """Scale range, target canvas and seed for poster simulation."""

    scale_range: tuple[float, float] = (0.5, 0.9)
    canvas: tuple[int, int] = (1080, 1920)  # (width, height)
    seed: int = 0
    fill: tuple[int, int, int] = (255, 255, 255)

    def __post_init__(self) -> None:
        lo, hi = self.scale_range
        if not 0.0 < lo <= hi <= 1.0:
            raise ValueError(f"scale range must satisfy 0 < lo <= hi <= 1: {self.scale_range}")
        if self.canvas[0] <= 0 or self.canvas[1] <= 0:
            raise ValueError(f"non-positive canvas {self.canvas}")


@dataclass(frozen=True)
class AugmentResult:
    record: ScreenshotRecord  # transformed annotations; image path is stale
    canvas: np.ndarray
    scale: float
    offset: tuple[int, int]


def _round_half_up(value: float) -> int:
    return int(np.floor(value + 0.5))


def nn_scale(image: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Nearest-neighbor resample by integer index mapping (exact, no float
    sampling): output pixel j comes from source column (j * W) // out_w."""
    h, w = image.shape[:2]
    rows = (np.arange(out_h, dtype=np.int64) * h) // out_h
    cols = (np.arange(out_w, dtype=np.int64) * w) // out_w
    return image[rows][:, cols]


def transform_box(
    box: BoundingBox,
    sx: float,
    sy: float,
    out_w: int,
    out_h: int,
    offset: tuple[int, int],
) -> BoundingBox:
    """Apply the augmentation affine map to a box: edges scaled, rounded
    half-up to the nearest pixel, clamped into the placed region."""
    ox, oy = offset
    x1 = min(out_w - 1, _round_half_up(box.x * sx))
    y1 = min(out_h - 1, _round_half_up(box.y * sy))
    x2 = min(out_w, max(_round_half_up(box.x2 * sx), x1 + 1))
    y2 = min(out_h, max(_round_half_up(box.y2 * sy), y1 + 1))
    return BoundingBox(ox + x1, oy + y1, x2 - x1, y2 - y1)


def augment_screenshot(
    screenshot: ScreenshotRecord, image: np.ndarray, params: AugmentParams
) -> AugmentResult:
    """Scale the screenshot by a random factor, place it at a random offset
    on the canvas and transform every annotation with the same map.

    The output is a pure function of (pixels, params): the same seed gives a
    bit-identical canvas. Box edges are scaled by the effective ratio
    (rounded-dimension over original) and rounded half-up, which keeps every
    transformed box inside the placed region.
    """
    if screenshot.kind is not ScreenshotKind.ANNOTATED_RUNTIME:
        raise ValueError(
            f"screenshot {screenshot.screenshot_id} is not an annotated runtime dump"
        )
    height, width = image.shape[:2]
    if (height, width) != (screenshot.height, screenshot.width):
        raise ValueError(
            f"image is {width}x{height} but record says "
            f"{screenshot.width}x{screenshot.height}"
        )
    lo, hi = params.scale_range
    canvas_w, canvas_h = params.canvas
    if _round_half_up(width * hi) > canvas_w or _round_half_up(height * hi) > canvas_h:
        raise ValueError(
            f"canvas {params.canvas} too small for screenshot "
            f"{screenshot.screenshot_id} at scale {hi}"
        )

    rng = np.random.default_rng(params.seed)
    scale = float(rng.uniform(lo, hi))
    out_w = max(1, _round_half_up(width * scale))
    out_h = max(1, _round_half_up(height * scale))
    ox = int(rng.integers(0, canvas_w - out_w + 1))
    oy = int(rng.integers(0, canvas_h - out_h + 1))

    canvas = np.empty((canvas_h, canvas_w, 3), dtype=np.uint8)
    canvas[:, :] = np.asarray(params.fill, dtype=np.uint8)
    canvas[oy : oy + out_h, ox : ox + out_w] = nn_scale(image, out_w, out_h)

    sx = out_w / width
    sy = out_h / height
    transformed = [
        (cls, transform_box(box, sx, sy, out_w, out_h, (ox, oy)))
        for cls, box in screenshot.components or ()
    ]

    record = ScreenshotRecord(
        screenshot_id=screenshot.screenshot_id,
        app_id=screenshot.app_id,
        kind=ScreenshotKind.ANNOTATED_RUNTIME,
        image=screenshot.image,
        width=canvas_w,
        height=canvas_h,
        components=tuple(transformed),
    )
    return AugmentResult(record, canvas, scale, (ox, oy))
