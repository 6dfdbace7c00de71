"""The STORE data directory: ingested corpus, component records, thumbnails,
an append-only notebook log and the threshold config.

Layout:

  STORE/
    apps.jsonl  screenshots.jsonl  intro.jsonl    # dumped corpus
    components.jsonl                              # decomposed components
    images/annotated/...  images/intro/...        # copied screenshot files
    images/thumbs/<component_id>.png              # cropped component images
    notebook.log                                  # append-only JSON lines
    gallery.conf                                  # optional key=value config

The notebook log replays to the same state however often the service
restarts; writes go through a single lock and are flushed+fsynced before
acknowledgement.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from guigallery.colors import ColorName, ColorProfile
from guigallery.index import SimilarityWeights
from guigallery.ingest import (
    CorpusLoadError,
    INTRO_FILE,
    load_annotated_corpus,
    load_intro_corpus,
)
from guigallery.model import (
    AppRecord,
    BoundingBox,
    ComponentClass,
    ComponentRecord,
    ComponentSource,
    ScreenshotRecord,
)

COMPONENTS_FILE = "components.jsonl"
NOTEBOOK_FILE = "notebook.log"
CONFIG_FILE = "gallery.conf"


# --- component record serialization ------------------------------------------

def component_to_row(rec: ComponentRecord) -> dict:
    return {
        "component_id": rec.component_id,
        "screenshot_id": rec.screenshot_id,
        "app_id": rec.app_id,
        "class": rec.component_class.value,
        "x": rec.box.x,
        "y": rec.box.y,
        "w": rec.box.w,
        "h": rec.box.h,
        "color": {
            "primary": rec.color.primary.value,
            "histogram": {name.value: frac for name, frac in rec.color.histogram.items()},
        },
        "text": rec.text,
        "source": rec.source.value,
        "confidence": rec.confidence,
    }


def component_from_row(row: dict) -> ComponentRecord:
    color = row["color"]
    return ComponentRecord(
        component_id=row["component_id"],
        screenshot_id=row["screenshot_id"],
        app_id=row["app_id"],
        component_class=ComponentClass.parse(row["class"]),
        box=BoundingBox(row["x"], row["y"], row["w"], row["h"]),
        color=ColorProfile(
            primary=ColorName.parse(color["primary"]),
            histogram={
                ColorName.parse(name): frac for name, frac in color["histogram"].items()
            },
        ),
        text=row["text"],
        source=ComponentSource(row["source"]),
        confidence=row["confidence"],
    )


# --- config -------------------------------------------------------------------

@dataclass(frozen=True)
class GalleryConfig:
    """Tunable thresholds, overridable via gallery.conf (key = value lines)."""

    min_confidence: float = 0.5
    color_black_v: float = 0.15
    color_gray_s: float = 0.15
    color_white_v: float = 0.85
    w_app: float = 0.2
    w_developer: float = 0.2
    w_class: float = 0.2
    w_color: float = 0.2
    w_text: float = 0.2
    min_apps: int = 1
    min_downloads: int = 0

    def similarity_weights(self) -> SimilarityWeights:
        return SimilarityWeights(
            self.w_app, self.w_developer, self.w_class, self.w_color, self.w_text
        )


def load_config(path: Path) -> GalleryConfig:
    """Parse a flat key = value file; '#' starts a comment, unknown keys fail."""
    if not path.is_file():
        return GalleryConfig()
    values: dict[str, float | int] = {}
    fields = {f: GalleryConfig.__dataclass_fields__[f].type for f in GalleryConfig.__dataclass_fields__}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path.name}:{lineno}: expected key = value")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in fields:
            raise ValueError(f"{path.name}:{lineno}: unknown config key {key!r}")
        values[key] = int(raw.strip()) if fields[key] == "int" else float(raw.strip())
    return GalleryConfig(**values)


# --- notebook -------------------------------------------------------------------

@dataclass(frozen=True)
class NotebookEntry:
    entry_id: str
    component_id: str
    note: str
    created_at: str  # UTC ISO-8601


class Notebook:
    """Append-only, file-backed notebook. State is the replay of the log."""

    def __init__(self, path: Path):
        self._path = path
        self._lock = threading.Lock()
        self._entries: dict[str, NotebookEntry] = {}  # insertion order = log order
        self._replay()

    def _replay(self) -> None:
        if not self._path.is_file():
            return
        with self._path.open(encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                op = json.loads(line)
                if op["op"] == "add":
                    entry = NotebookEntry(
                        op["entry_id"], op["component_id"], op["note"], op["created_at"]
                    )
                    self._entries[entry.entry_id] = entry
                elif op["op"] == "delete":
                    self._entries.pop(op["entry_id"], None)

    def _append(self, op: dict) -> None:
        with self._path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(op) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def add(self, component_id: str, note: str) -> NotebookEntry:
        with self._lock:
            entry = NotebookEntry(
                entry_id=uuid.uuid4().hex,
                component_id=component_id,
                note=note,
                created_at=datetime.now(timezone.utc).isoformat(),
            )
            self._append(
                {
                    "op": "add",
                    "entry_id": entry.entry_id,
                    "component_id": entry.component_id,
                    "note": entry.note,
                    "created_at": entry.created_at,
                }
            )
            self._entries[entry.entry_id] = entry
            return entry

    def delete(self, entry_id: str) -> bool:
        with self._lock:
            if entry_id not in self._entries:
                return False
            self._append({"op": "delete", "entry_id": entry_id})
            del self._entries[entry_id]
            return True

    def entries(self) -> list[NotebookEntry]:
        """Newest first, by append order."""
        with self._lock:
            return list(reversed(self._entries.values()))


# --- store ----------------------------------------------------------------------

@dataclass
class StoreData:
    apps: list[AppRecord] = field(default_factory=list)
    screenshots: list[ScreenshotRecord] = field(default_factory=list)
    components: list[ComponentRecord] = field(default_factory=list)


class Store:
    """Paths and load/save helpers for one gallery data directory."""

    def __init__(self, root: Path | str):
        self.root = Path(root)

    @property
    def images_dir(self) -> Path:
        return self.root / "images"

    @property
    def thumbs_dir(self) -> Path:
        return self.images_dir / "thumbs"

    @property
    def components_path(self) -> Path:
        return self.root / COMPONENTS_FILE

    @property
    def config_path(self) -> Path:
        return self.root / CONFIG_FILE

    def image_path(self, shot: ScreenshotRecord) -> Path:
        return self.root / shot.image

    def thumb_path(self, component_id: str) -> Path:
        return self.thumbs_dir / f"{component_id}.png"

    def config(self) -> GalleryConfig:
        return load_config(self.config_path)

    def notebook(self) -> Notebook:
        return Notebook(self.root / NOTEBOOK_FILE)

    def load(self) -> StoreData:
        if not self.root.is_dir():
            raise CorpusLoadError(f"store directory does not exist: {self.root}")
        annotated = load_annotated_corpus(self.root)
        screenshots = list(annotated.screenshots)
        if (self.root / INTRO_FILE).is_file():
            screenshots += load_intro_corpus(self.root).screenshots
        components = []
        if self.components_path.is_file():
            with self.components_path.open(encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        components.append(component_from_row(json.loads(line)))
        return StoreData(annotated.apps, screenshots, components)

    def write_components(self, components: Sequence[ComponentRecord]) -> None:
        with self.components_path.open("w", encoding="utf-8") as fh:
            for rec in components:
                fh.write(json.dumps(component_to_row(rec), ensure_ascii=False) + "\n")

    def append_components(self, components: Sequence[ComponentRecord]) -> None:
        with self.components_path.open("a", encoding="utf-8") as fh:
            for rec in components:
                fh.write(json.dumps(component_to_row(rec), ensure_ascii=False) + "\n")
