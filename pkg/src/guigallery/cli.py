"""The `gallery` command line: ingest, decompose, augment, serve, eval, synth."""

from __future__ import annotations

import json
import sys
from collections import defaultdict
from pathlib import Path
from typing import NoReturn

import click
import numpy as np

from guigallery import evaluation, synth
from guigallery.colors import ColorThresholds, dominant_color
from guigallery.decompose import (
    AugmentParams,
    ImageRegion,
    SidecarOcr,
    augment_screenshot,
    crop,
    load_image,
    save_image,
    stub_detector,
    wirify_annotated,
)
from guigallery.ingest import (
    CorpusLoadError,
    dump_corpus,
    load_annotated_corpus,
    load_intro_corpus,
    relocate_images,
)
from guigallery.model import (
    AppRecord,
    BoundingBox,
    ComponentClass,
    ComponentRecord,
    ComponentSource,
    Detection,
    ScreenshotKind,
    ScreenshotRecord,
    validate_corpus,
)
from guigallery.store import Store


@click.group()
def main():
    """GUI component design gallery."""


def _fail(message: str) -> NoReturn:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _write_thumbs(store: Store, records: list[ComponentRecord], shots) -> None:
    store.thumbs_dir.mkdir(parents=True, exist_ok=True)
    by_shot: dict[str, list[ComponentRecord]] = defaultdict(list)
    for rec in records:
        by_shot[rec.screenshot_id].append(rec)
    for sid, recs in by_shot.items():
        image = load_image(store.image_path(shots[sid]))
        for rec in recs:
            save_image(crop(image, rec.box), store.thumb_path(rec.component_id))


@main.command()
@click.option("--annotated", "annotated_dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--intro", "intro_dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--out", "store_dir", type=click.Path(file_okay=False), required=True)
def ingest(annotated_dir, intro_dir, store_dir):
    """Load corpora, copy them into a store and wirify annotated screenshots."""
    if annotated_dir is None and intro_dir is None:
        _fail("nothing to ingest: pass --annotated and/or --intro")
    store = Store(store_dir)
    store.root.mkdir(parents=True, exist_ok=True)

    apps: dict[str, AppRecord] = {}
    screenshots: list[ScreenshotRecord] = []
    dropped = 0
    try:
        if annotated_dir is not None:
            corpus = load_annotated_corpus(annotated_dir)
            dropped += corpus.dropped_annotations
            for app in corpus.apps:
                apps.setdefault(app.app_id, app)
            screenshots += relocate_images(
                corpus.screenshots, corpus.root, store.root, "images/annotated"
            )
        if intro_dir is not None:
            corpus = load_intro_corpus(intro_dir)
            for app in corpus.apps:
                apps.setdefault(app.app_id, app)
            screenshots += relocate_images(
                corpus.screenshots, corpus.root, store.root, "images/intro"
            )
        violations = validate_corpus(list(apps.values()), screenshots)
        if violations:
            _fail("inconsistent corpus: " + "; ".join(violations))
        dump_corpus(list(apps.values()), screenshots, store.root)
    except CorpusLoadError as exc:
        _fail(str(exc))

    config = store.config()
    thresholds = ColorThresholds(
        config.color_black_v, config.color_gray_s, config.color_white_v
    )
    ocr = SidecarOcr()
    components: list[ComponentRecord] = []
    annotated = [s for s in screenshots if s.kind is ScreenshotKind.ANNOTATED_RUNTIME]
    for shot in annotated:
        path = store.image_path(shot)
        components += wirify_annotated(
            shot, load_image(path), ocr, source=path, thresholds=thresholds
        )
    store.write_components(components)
    _write_thumbs(store, components, {s.screenshot_id: s for s in screenshots})

    if dropped:
        click.echo(f"dropped {dropped} out-of-vocabulary annotations")
    click.echo(
        f"ingested {len(apps)} apps, {len(screenshots)} screenshots, "
        f"{len(components)} components -> {store.root}"
    )


def _read_detections(path: Path) -> dict[str, list[Detection]]:
    rows: dict[str, list[Detection]] = defaultdict(list)
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
                rows[str(row["screenshot_id"])].append(
                    Detection(
                        ComponentClass.parse(row["class"]),
                        BoundingBox(row["x"], row["y"], row["w"], row["h"]),
                        float(row["confidence"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                _fail(f"{path.name}:{lineno}: {exc}")
    return rows


@main.command()
@click.option("--store", "store_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--detector", "detector_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Import detections.jsonl from an external model instead of the stub.")
@click.option("--min-confidence", type=float, default=None)
@click.option("--export", "export_file", type=click.Path(dir_okay=False), default=None,
              help="Write raw detections (pre-threshold) for the eval harness.")
def decompose(store_dir, detector_file, min_confidence, export_file):
    """Decompose introduction screenshots into components."""
    store = Store(store_dir)
    data = store.load()
    config = store.config()
    if min_confidence is None:
        min_confidence = config.min_confidence
    thresholds = ColorThresholds(
        config.color_black_v, config.color_gray_s, config.color_white_v
    )
    intro = [s for s in data.screenshots if s.kind is ScreenshotKind.APP_INTRODUCTION]
    shots = {s.screenshot_id: s for s in data.screenshots}
    ocr = SidecarOcr()

    imported = _read_detections(Path(detector_file)) if detector_file else None
    detector = stub_detector() if imported is None else None

    produced: list[ComponentRecord] = []
    exported: list[dict] = []
    for shot in sorted(intro, key=lambda s: s.screenshot_id):
        path = store.image_path(shot)
        image = load_image(path)
        if imported is not None:
            detections = imported.get(shot.screenshot_id, [])
        else:
            detections = detector.detect(image)
        height, width = image.shape[:2]
        for det in detections:
            if not det.box.fits_within(width, height):
                _fail(f"out-of-bounds detection on screenshot {shot.screenshot_id}")
            exported.append(
                {
                    "screenshot_id": shot.screenshot_id,
                    "class": det.component_class.value,
                    "x": det.box.x,
                    "y": det.box.y,
                    "w": det.box.w,
                    "h": det.box.h,
                    "confidence": det.confidence,
                }
            )
        kept = [d for d in detections if d.confidence >= min_confidence]
        for i, det in enumerate(kept):
            region = crop(image, det.box)
            produced.append(
                ComponentRecord(
                    component_id=f"{shot.screenshot_id}-d{i:03d}",
                    screenshot_id=shot.screenshot_id,
                    app_id=shot.app_id,
                    component_class=det.component_class,
                    box=det.box,
                    color=dominant_color(region, thresholds),
                    text=ocr.read(ImageRegion(region, det.box, path)),
                    source=ComponentSource.DETECTOR,
                    confidence=det.confidence,
                )
            )

    # Re-running decompose replaces previous detector output.
    kept_existing = [c for c in data.components if c.source is not ComponentSource.DETECTOR]
    store.write_components(kept_existing + produced)
    _write_thumbs(store, produced, shots)

    if export_file:
        with Path(export_file).open("w", encoding="utf-8") as fh:
            for row in exported:
                fh.write(json.dumps(row) + "\n")
        click.echo(f"exported {len(exported)} detections -> {export_file}")
    click.echo(
        f"decomposed {len(intro)} introduction screenshots into {len(produced)} components"
    )


@main.command()
@click.option("--store", "store_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--scale", default="0.5:0.9", help="LO:HI scale range.")
@click.option("--canvas", default="1080x1920", help="WxH canvas size.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
def augment(store_dir, seed, scale, canvas, out_dir):
    """Rescale annotated screenshots onto poster canvases, boxes included."""
    try:
        lo, hi = (float(part) for part in scale.split(":"))
        canvas_w, canvas_h = (int(part) for part in canvas.lower().split("x"))
    except ValueError:
        _fail("expected --scale LO:HI and --canvas WxH")
    store = Store(store_dir)
    data = store.load()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    annotated = sorted(
        (s for s in data.screenshots if s.kind is ScreenshotKind.ANNOTATED_RUNTIME),
        key=lambda s: s.screenshot_id,
    )
    results = []
    for i, shot in enumerate(annotated):
        child_seed = int(np.random.SeedSequence([seed, i]).generate_state(1, np.uint64)[0])
        params = AugmentParams(
            scale_range=(lo, hi), canvas=(canvas_w, canvas_h), seed=child_seed
        )
        image = load_image(store.image_path(shot))
        try:
            result = augment_screenshot(shot, image, params)
        except ValueError as exc:
            _fail(str(exc))
        image_rel = f"{shot.screenshot_id}-aug.png"
        save_image(result.canvas, out / image_rel)
        results.append(
            ScreenshotRecord(
                screenshot_id=shot.screenshot_id,
                app_id=shot.app_id,
                kind=ScreenshotKind.ANNOTATED_RUNTIME,
                image=image_rel,
                width=canvas_w,
                height=canvas_h,
                components=result.record.components,
            )
        )
    dump_corpus(data.apps, results, out)
    click.echo(f"augmented {len(results)} screenshots -> {out}")


@main.command()
@click.option("--store", "store_dir", envvar="GALLERY_STORE",
              type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(store_dir, host, port):
    """Serve the gallery API over HTTP."""
    import uvicorn

    from guigallery.service import create_app

    app = create_app(Store(store_dir))
    uvicorn.run(app, host=host, port=port, log_level="warning")


def _read_truths(path: Path) -> dict[str, list]:
    rows: dict[str, list] = defaultdict(list)
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
                rows[str(row["screenshot_id"])].append(
                    (
                        ComponentClass.parse(row["class"]),
                        BoundingBox(row["x"], row["y"], row["w"], row["h"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                _fail(f"{path.name}:{lineno}: {exc}")
    return rows


@main.command(name="eval")
@click.option("--truth", "truth_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--pred", "pred_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--iou", "iou_threshold", type=float, default=evaluation.DEFAULT_IOU_THRESHOLD,
              show_default=True)
def eval_cmd(truth_file, pred_file, iou_threshold):
    """Evaluate detections against ground truth; prints a JSON report."""
    truths = _read_truths(Path(truth_file))
    preds = _read_detections(Path(pred_file))
    try:
        report = evaluation.evaluate(preds, truths, iou_threshold)
    except ValueError as exc:
        _fail(str(exc))
    click.echo(json.dumps(report.to_dict(), indent=2))


@main.command(name="synth")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--apps", type=int, default=25, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
def synth_cmd(out_dir, apps, seed):
    """Generate the synthetic demo corpus (annotated/ and intro/ subdirs)."""
    out = Path(out_dir)
    stats = synth.generate_corpus(out / "annotated", out / "intro", apps=apps, seed=seed)
    click.echo(json.dumps(stats))


if __name__ == "__main__":
    main()
