"""Load and dump the screenshot corpora.

A corpus directory holds JSON-lines files:

  apps.jsonl         app_id, name, category, developer, downloads, rating
  screenshots.jsonl  screenshot_id, app_id, image, width, height,
                     components: [{class, x, y, w, h}]   (annotated runtime)
  intro.jsonl        screenshot_id, app_id, image, width, height
                     (app introduction; image files must exist)

Missing ids are derived deterministically (app_id plus per-app ordinal), so
reloading the same bytes always yields the same records. Annotations whose
class is outside the 11-class vocabulary are dropped and tallied, not errors.
"""

from __future__ import annotations

import json
import shutil
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, Sequence

from guigallery.model import (
    Annotation,
    AppRecord,
    BoundingBox,
    ComponentClass,
    ScreenshotKind,
    ScreenshotRecord,
    validate_corpus,
)

APPS_FILE = "apps.jsonl"
SCREENSHOTS_FILE = "screenshots.jsonl"
INTRO_FILE = "intro.jsonl"

# Sidecar suffix for synthetic OCR metadata; copied along with images.
OCR_SIDECAR_SUFFIX = ".ocr.json"


class CorpusLoadError(Exception):
    """A corpus file is missing, malformed or inconsistent."""


@dataclass
class Corpus:
    """Loaded records plus the tally of dropped out-of-vocabulary annotations."""

    apps: list[AppRecord]
    screenshots: list[ScreenshotRecord]
    dropped_annotations: int = 0
    root: Path = field(default_factory=Path)

    def image_path(self, shot: ScreenshotRecord) -> Path:
        return self.root / shot.image


def _iter_jsonl(path: Path) -> Iterator[tuple[int, dict]]:
    if not path.is_file():
        raise CorpusLoadError(f"missing corpus file: {path}")
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusLoadError(f"{path.name}:{lineno}: malformed JSON ({exc})")
            if not isinstance(row, dict):
                raise CorpusLoadError(f"{path.name}:{lineno}: expected an object")
            yield lineno, row


def _require(row: dict, key: str, path: Path, lineno: int):
    if key not in row:
        raise CorpusLoadError(f"{path.name}:{lineno}: missing key {key!r}")
    return row[key]


def _load_apps(directory: Path) -> list[AppRecord]:
    path = directory / APPS_FILE
    apps = []
    for lineno, row in _iter_jsonl(path):
        try:
            apps.append(
                AppRecord(
                    app_id=str(_require(row, "app_id", path, lineno)),
                    name=str(_require(row, "name", path, lineno)),
                    category=str(_require(row, "category", path, lineno)),
                    developer=str(_require(row, "developer", path, lineno)),
                    downloads=int(_require(row, "downloads", path, lineno)),
                    rating=float(_require(row, "rating", path, lineno)),
                )
            )
        except (TypeError, ValueError) as exc:
            raise CorpusLoadError(f"{path.name}:{lineno}: {exc}")
    return apps


def _shot_id(row: dict, app_id: str, ordinals: dict[str, int]) -> str:
    sid = row.get("screenshot_id")
    if sid:
        return str(sid)
    ordinals[app_id] = ordinals.get(app_id, 0) + 1
    return f"{app_id}-s{ordinals[app_id]:03d}"


def _parse_box(entry: dict, path: Path, lineno: int) -> BoundingBox:
    try:
        x, y = int(entry["x"]), int(entry["y"])
        w, h = int(entry["w"]), int(entry["h"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusLoadError(f"{path.name}:{lineno}: bad box ({exc})")
    if w <= 0 or h <= 0:
        raise CorpusLoadError(f"{path.name}:{lineno}: non-positive box at line {lineno}")
    if x < 0 or y < 0:
        raise CorpusLoadError(f"{path.name}:{lineno}: negative box origin")
    return BoundingBox(x, y, w, h)


def _check_consistent(apps, screenshots, directory: Path) -> None:
    violations = validate_corpus(apps, screenshots)
    if violations:
        raise CorpusLoadError(
            f"inconsistent corpus in {directory}: " + "; ".join(violations)
        )


def load_annotated_corpus(directory: Path | str) -> Corpus:
    """Load the annotated-runtime corpus (apps.jsonl + screenshots.jsonl).

    Annotations with classes outside the vocabulary are dropped and counted
    in Corpus.dropped_annotations; any structural problem raises
    CorpusLoadError naming the file and line.
    """
    directory = Path(directory)
    apps = _load_apps(directory)
    path = directory / SCREENSHOTS_FILE
    screenshots: list[ScreenshotRecord] = []
    ordinals: dict[str, int] = {}
    dropped = 0
    for lineno, row in _iter_jsonl(path):
        app_id = str(_require(row, "app_id", path, lineno))
        sid = _shot_id(row, app_id, ordinals)
        width = int(_require(row, "width", path, lineno))
        height = int(_require(row, "height", path, lineno))
        components: list[Annotation] = []
        for entry in row.get("components", []):
            try:
                cls = ComponentClass.parse(str(entry.get("class")))
            except ValueError:
                dropped += 1
                continue
            box = _parse_box(entry, path, lineno)
            if not box.fits_within(width, height):
                raise CorpusLoadError(
                    f"{path.name}:{lineno}: out-of-bounds box in screenshot {sid}"
                )
            components.append((cls, box))
        try:
            screenshots.append(
                ScreenshotRecord(
                    screenshot_id=sid,
                    app_id=app_id,
                    kind=ScreenshotKind.ANNOTATED_RUNTIME,
                    image=str(_require(row, "image", path, lineno)),
                    width=width,
                    height=height,
                    components=tuple(components),
                )
            )
        except ValueError as exc:
            raise CorpusLoadError(f"{path.name}:{lineno}: {exc}")
    _check_consistent(apps, screenshots, directory)
    return Corpus(apps, screenshots, dropped, root=directory)


def load_intro_corpus(directory: Path | str) -> Corpus:
    """Load the app-introduction corpus (apps.jsonl + intro.jsonl).

    Every referenced image file must exist under the directory.
    """
    directory = Path(directory)
    apps = _load_apps(directory)
    path = directory / INTRO_FILE
    screenshots: list[ScreenshotRecord] = []
    ordinals: dict[str, int] = {}
    for lineno, row in _iter_jsonl(path):
        app_id = str(_require(row, "app_id", path, lineno))
        sid = _shot_id(row, app_id, ordinals)
        image = str(_require(row, "image", path, lineno))
        if not (directory / image).is_file():
            raise CorpusLoadError(f"{path.name}:{lineno}: missing image file {image}")
        try:
            screenshots.append(
                ScreenshotRecord(
                    screenshot_id=sid,
                    app_id=app_id,
                    kind=ScreenshotKind.APP_INTRODUCTION,
                    image=image,
                    width=int(_require(row, "width", path, lineno)),
                    height=int(_require(row, "height", path, lineno)),
                )
            )
        except ValueError as exc:
            raise CorpusLoadError(f"{path.name}:{lineno}: {exc}")
    _check_consistent(apps, screenshots, directory)
    return Corpus(apps, screenshots, root=directory)


def _app_row(app: AppRecord) -> dict:
    return {
        "app_id": app.app_id,
        "name": app.name,
        "category": app.category,
        "developer": app.developer,
        "downloads": app.downloads,
        "rating": app.rating,
    }


def _shot_row(shot: ScreenshotRecord) -> dict:
    row = {
        "screenshot_id": shot.screenshot_id,
        "app_id": shot.app_id,
        "image": shot.image,
        "width": shot.width,
        "height": shot.height,
    }
    if shot.kind is ScreenshotKind.ANNOTATED_RUNTIME:
        row["components"] = [
            {"class": cls.value, "x": box.x, "y": box.y, "w": box.w, "h": box.h}
            for cls, box in shot.components or ()
        ]
    return row


def _write_jsonl(path: Path, rows: Sequence[dict]) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def dump_corpus(
    apps: Sequence[AppRecord],
    screenshots: Sequence[ScreenshotRecord],
    directory: Path | str,
) -> None:
    """Write records back to disk; loading the directory reproduces them
    field for field. The corpus must be consistent."""
    violations = validate_corpus(apps, screenshots)
    if violations:
        raise ValueError("refusing to dump inconsistent corpus: " + "; ".join(violations))
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    _write_jsonl(directory / APPS_FILE, [_app_row(a) for a in apps])
    annotated = [s for s in screenshots if s.kind is ScreenshotKind.ANNOTATED_RUNTIME]
    intro = [s for s in screenshots if s.kind is ScreenshotKind.APP_INTRODUCTION]
    _write_jsonl(directory / SCREENSHOTS_FILE, [_shot_row(s) for s in annotated])
    _write_jsonl(directory / INTRO_FILE, [_shot_row(s) for s in intro])


def relocate_images(
    screenshots: Sequence[ScreenshotRecord],
    src_root: Path,
    dst_root: Path,
    prefix: str,
) -> list[ScreenshotRecord]:
    """Copy image files (and OCR sidecars) under dst_root/<prefix>/ and
    return records whose image paths point at the copies."""
    moved = []
    for shot in screenshots:
        rel = Path(prefix) / shot.image
        dst = dst_root / rel
        dst.parent.mkdir(parents=True, exist_ok=True)
        src = src_root / shot.image
        if not src.is_file():
            raise CorpusLoadError(f"missing image file {src}")
        shutil.copyfile(src, dst)
        sidecar = Path(str(src) + OCR_SIDECAR_SUFFIX)
        if sidecar.is_file():
            shutil.copyfile(sidecar, Path(str(dst) + OCR_SIDECAR_SUFFIX))
        moved.append(replace(shot, image=rel.as_posix()))
    return moved
