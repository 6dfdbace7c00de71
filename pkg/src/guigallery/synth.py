"""Deterministic synthetic corpus generator.

Screenshots are flat canvases with axis-aligned solid rectangles planted on
a grid: good enough to exercise ingestion, color profiling, the uniform-
rectangle detector and augmentation end to end. Annotated screenshots use a
free 15-color palette (with optional accent stripes for richer histograms);
introduction screenshots plant exactly the per-class detector palette so the
stub detector can label them. Text is attached through OCR sidecars, never
rasterized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from guigallery.decompose import CLASS_COLORS, save_image, write_ocr_sidecar
from guigallery.ingest import dump_corpus
from guigallery.model import (
    Annotation,
    AppRecord,
    BoundingBox,
    CANONICAL_CLASSES,
    ComponentClass,
    ScreenshotKind,
    ScreenshotRecord,
)

BACKGROUND = (246, 246, 246)
DECOY_COLOR = (181, 181, 181)

CATEGORIES = ["social", "finance", "games", "productivity", "travel", "health"]

COMPANIES = [
    "acme studios",
    "bluefin labs",
    "cedar mobile",
    "driftwave",
    "emberworks",
    "futura apps",
    "gradient soft",
    "harborlight",
]

WORDS = [
    "login", "sign up", "submit", "cancel", "ok", "next", "back", "play",
    "pause", "buy now", "search", "settings", "share", "like", "follow",
    "add to cart", "checkout", "remind me", "start", "stop",
]

# (w_lo, w_hi, h_lo, h_hi) per class; tuned to a 120x128 grid cell.
SIZE_RANGES: dict[ComponentClass, tuple[int, int, int, int]] = {
    ComponentClass.BUTTON: (60, 100, 28, 44),
    ComponentClass.IMAGE_BUTTON: (40, 64, 40, 64),
    ComponentClass.CHECK_BOX: (18, 28, 18, 28),
    ComponentClass.RADIO_BUTTON: (18, 28, 18, 28),
    ComponentClass.SWITCH: (40, 60, 20, 28),
    ComponentClass.TOGGLE_BUTTON: (48, 80, 28, 40),
    ComponentClass.PROGRESS_BAR: (80, 108, 8, 16),
    ComponentClass.RATING_BAR: (80, 104, 18, 26),
    ComponentClass.SEEK_BAR: (80, 108, 10, 18),
    ComponentClass.SPINNER: (60, 100, 28, 40),
    ComponentClass.CHRONOMETER: (50, 90, 24, 36),
}

CLASS_WEIGHTS = [0.22, 0.12, 0.08, 0.08, 0.07, 0.07, 0.07, 0.07, 0.07, 0.08, 0.07]

PALETTE = list(CLASS_COLORS.values()) + [
    (245, 40, 130),  # rose
    (20, 20, 20),
    (250, 250, 250),
    (127, 127, 127),
]

TEXTY_CLASSES = {
    ComponentClass.BUTTON,
    ComponentClass.TOGGLE_BUTTON,
    ComponentClass.SPINNER,
    ComponentClass.CHRONOMETER,
}


@dataclass(frozen=True)
class Planted:
    component_class: ComponentClass
    box: BoundingBox
    fill: tuple[int, int, int]
    accent: Optional[tuple[int, int, int]] = None
    text: str = ""


def render(width: int, height: int, planted: Sequence[Planted]) -> np.ndarray:
    image = np.empty((height, width, 3), dtype=np.uint8)
    image[:, :] = BACKGROUND
    for item in planted:
        box = item.box
        image[box.y : box.y2, box.x : box.x2] = item.fill
        if item.accent is not None:
            ax = box.x + box.w // 4
            ay = box.y + box.h // 4
            image[ay : ay + max(1, box.h // 3), ax : ax + max(1, box.w // 3)] = item.accent
    return image


def plant_components(
    rng: np.random.Generator,
    width: int,
    height: int,
    count: int,
    *,
    detector_palette: bool,
    decoy: bool = False,
) -> tuple[list[Planted], Optional[BoundingBox]]:
    """Place non-touching rectangles on a shuffled grid.

    With decoy=True one extra cell gets a block that matches no detector
    rule; its box is returned separately and is not a component.
    """
    cols, grid_rows = 3, 5
    cell_w, cell_h = width // cols, height // grid_rows
    margin = 6
    cells = rng.permutation(cols * grid_rows)[: count + (1 if decoy else 0)]
    decoy_box: Optional[BoundingBox] = None
    if decoy:
        row, col = divmod(int(cells[-1]), cols)
        decoy_box = BoundingBox(col * cell_w + margin, row * cell_h + margin, 60, 40)
        cells = cells[:-1]
    planted = []
    for cell in cells:
        row, col = divmod(int(cell), cols)
        cls = CANONICAL_CLASSES[int(rng.choice(len(CANONICAL_CLASSES), p=CLASS_WEIGHTS))]
        w_lo, w_hi, h_lo, h_hi = SIZE_RANGES[cls]
        w = int(rng.integers(w_lo, min(w_hi, cell_w - 2 * margin) + 1))
        h = int(rng.integers(h_lo, min(h_hi, cell_h - 2 * margin) + 1))
        x = col * cell_w + margin + int(rng.integers(0, cell_w - 2 * margin - w + 1))
        y = row * cell_h + margin + int(rng.integers(0, cell_h - 2 * margin - h + 1))
        if detector_palette:
            fill = CLASS_COLORS[cls]
            accent = None
        else:
            fill = PALETTE[int(rng.integers(0, len(PALETTE)))]
            accent = None
            if w >= 30 and h >= 20 and rng.random() < 0.5:
                accent = PALETTE[int(rng.integers(0, len(PALETTE)))]
                if accent == fill:
                    accent = None
        text = ""
        if cls in TEXTY_CLASSES and rng.random() < 0.6:
            text = WORDS[int(rng.integers(0, len(WORDS)))]
        planted.append(Planted(cls, BoundingBox(x, y, w, h), fill, accent, text))
    return planted, decoy_box


def _sidecar_entries(planted: Sequence[Planted]) -> list[dict]:
    return [
        {"x": p.box.x, "y": p.box.y, "w": p.box.w, "h": p.box.h, "text": p.text}
        for p in planted
        if p.text
    ]


def make_apps(rng: np.random.Generator, count: int) -> list[AppRecord]:
    apps = []
    for i in range(count):
        company = COMPANIES[i % len(COMPANIES)]
        apps.append(
            AppRecord(
                app_id=f"app{i:03d}",
                name=f"{company.split()[0].title()} {CATEGORIES[i % len(CATEGORIES)].title()} {i}",
                category=CATEGORIES[int(rng.integers(0, len(CATEGORIES)))],
                developer=company,
                downloads=int(10 ** rng.uniform(3.0, 7.0)),
                rating=round(float(rng.uniform(2.0, 5.0)), 1),
            )
        )
    return apps


def generate_corpus(
    annotated_dir: Path | str,
    intro_dir: Path | str,
    *,
    apps: int = 25,
    shots_per_app: int = 4,
    intro_per_app: int = 2,
    size: tuple[int, int] = (360, 640),
    seed: int = 7,
) -> dict:
    """Write an annotated and an introduction corpus; returns count stats.

    Also writes `truths.jsonl` beside the introduction corpus with the
    planted ground-truth boxes, for the evaluation harness.
    """
    annotated_dir = Path(annotated_dir)
    intro_dir = Path(intro_dir)
    annotated_dir.mkdir(parents=True, exist_ok=True)
    intro_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    width, height = size

    app_records = make_apps(rng, apps)

    annotated_shots: list[ScreenshotRecord] = []
    n_annotated_components = 0
    for app in app_records:
        for j in range(shots_per_app):
            sid = f"{app.app_id}-r{j}"
            image_rel = f"{sid}.png"
            planted, _ = plant_components(
                rng, width, height, int(rng.integers(5, 9)), detector_palette=False
            )
            save_image(render(width, height, planted), annotated_dir / image_rel)
            write_ocr_sidecar(annotated_dir / image_rel, _sidecar_entries(planted))
            annotations: tuple[Annotation, ...] = tuple(
                (p.component_class, p.box) for p in planted
            )
            annotated_shots.append(
                ScreenshotRecord(
                    screenshot_id=sid,
                    app_id=app.app_id,
                    kind=ScreenshotKind.ANNOTATED_RUNTIME,
                    image=image_rel,
                    width=width,
                    height=height,
                    components=annotations,
                )
            )
            n_annotated_components += len(planted)
    dump_corpus(app_records, annotated_shots, annotated_dir)

    intro_shots: list[ScreenshotRecord] = []
    truth_rows: list[dict] = []
    n_intro_components = 0
    for app in app_records:
        for j in range(intro_per_app):
            sid = f"{app.app_id}-p{j}"
            image_rel = f"{sid}.png"
            planted, decoy_box = plant_components(
                rng,
                width,
                height,
                int(rng.integers(3, 7)),
                detector_palette=True,
                decoy=rng.random() < 0.4,
            )
            rendered = render(width, height, planted)
            if decoy_box is not None:
                rendered[decoy_box.y : decoy_box.y2, decoy_box.x : decoy_box.x2] = DECOY_COLOR
            save_image(rendered, intro_dir / image_rel)
            write_ocr_sidecar(intro_dir / image_rel, _sidecar_entries(planted))
            intro_shots.append(
                ScreenshotRecord(
                    screenshot_id=sid,
                    app_id=app.app_id,
                    kind=ScreenshotKind.APP_INTRODUCTION,
                    image=image_rel,
                    width=width,
                    height=height,
                )
            )
            for p in planted:
                truth_rows.append(
                    {
                        "screenshot_id": sid,
                        "class": p.component_class.value,
                        "x": p.box.x,
                        "y": p.box.y,
                        "w": p.box.w,
                        "h": p.box.h,
                    }
                )
            n_intro_components += len(planted)
    dump_corpus(app_records, intro_shots, intro_dir)
    with (intro_dir / "truths.jsonl").open("w", encoding="utf-8") as fh:
        for row in truth_rows:
            fh.write(json.dumps(row) + "\n")

    return {
        "apps": len(app_records),
        "annotated_screenshots": len(annotated_shots),
        "annotated_components": n_annotated_components,
        "intro_screenshots": len(intro_shots),
        "intro_components": n_intro_components,
    }
